//! Half-system determinants modulo `p = 4m + 1`:
//!
//! `D(u, v) = det[χ(a_i+a_j) + χ(a_i−a_j) + u·χ(a_i² + v·a_j²)]_{0≤i,j≤2m}`
//!
//! and the congruence
//!
//! `D(u, v) ≡ (−1)^{m(2m+1)} u^{2m+1} v^{m(2m+1)} P_m ∏_{i<j}(a_j² − a_i²)²`
//!
//! with `P_m = ∏_{r=0}^{2m} C(2m, r)`. Also the two-antidiagonal lemma and
//! kernel determinant behind it, the sign-pair corollary, and the relation to
//! `T(d, p) = det[χ(j² + d k²)]`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Fp, PrimeCtx};
use crate::error::{Error, Result};
use crate::exactla::{det, det_leibniz, Field, Matrix};
use crate::report::Outcome;

/// `a₀, …, a_{2m}` in `𝔽_p` with pairwise distinct squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSystem {
    ctx: PrimeCtx,
    elems: Vec<u64>,
    strict: bool,
}

impl HalfSystem {
    /// Validates length `2m + 1` and distinct squares; `strict` records
    /// whether `{0} ⊔ H⁺ ⊔ (−H⁺)` partitions `𝔽_p`.
    pub fn new(ctx: &PrimeCtx, elems: &[i64]) -> Result<Self> {
        let m = ctx.m_strict();
        if elems.len() != 2 * m + 1 {
            return Err(Error::InvalidHalfSystem(format!(
                "expected {} elements, got {}",
                2 * m + 1,
                elems.len()
            )));
        }
        let p = ctx.modulus();
        let reduced: Vec<u64> = elems.iter().map(|&a| ctx.reduce(a)).collect();
        let mut squares = HashSet::new();
        for &a in &reduced {
            let sq = Fp::new(a as i64, p) * Fp::new(a as i64, p);
            if !squares.insert(sq.value()) {
                return Err(Error::InvalidHalfSystem(format!(
                    "{a}² repeats an earlier square mod {p}"
                )));
            }
        }
        let strict = is_partition(&reduced, p);
        Ok(HalfSystem {
            ctx: ctx.clone(),
            elems: reduced,
            strict,
        })
    }

    pub fn ctx(&self) -> &PrimeCtx {
        &self.ctx
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

fn is_partition(elems: &[u64], p: u64) -> bool {
    let mut seen = vec![false; p as usize];
    let mut zero = false;
    for &a in elems {
        if a == 0 {
            if zero {
                return false;
            }
            zero = true;
            continue;
        }
        for b in [a, p - a] {
            if seen[b as usize] {
                return false;
            }
            seen[b as usize] = true;
        }
    }
    zero && seen.iter().skip(1).all(|&s| s)
}

/// `(0, 1, …, 2m)`.
pub fn standard_half_system(ctx: &PrimeCtx) -> HalfSystem {
    let m = ctx.m_strict() as i64;
    HalfSystem::new(ctx, &(0..=2 * m).collect::<Vec<_>>()).expect("standard half-system")
}

/// A seeded shuffle of the standard system with each nonzero element
/// negated with probability ½.
pub fn random_half_system(ctx: &PrimeCtx, seed: u64) -> HalfSystem {
    let m = ctx.m_strict() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elems: Vec<i64> = (0..=2 * m).collect();
    elems.shuffle(&mut rng);
    for a in elems.iter_mut() {
        if *a != 0 && rng.gen_bool(0.5) {
            *a = -*a;
        }
    }
    HalfSystem::new(ctx, &elems).expect("signed permutation of a half-system")
}

fn chi_fp(ctx: &PrimeCtx, t: Fp) -> Fp {
    ctx.fp(ctx.chi(t.value() as i64) as i64)
}

/// The entry matrix of `D(u, v)` with Legendre symbols lifted to
/// `{−1, 0, 1}` and then embedded in `𝔽_p`.
pub fn d_matrix(hs: &HalfSystem, u: Fp, v: Fp) -> Matrix<Fp> {
    let ctx = &hs.ctx;
    let a: Vec<Fp> = hs.elems.iter().map(|&x| ctx.fp(x as i64)).collect();
    let k = a.len();
    Matrix::from_fn(k, k, |i, j| {
        let (ai, aj) = (a[i], a[j]);
        chi_fp(ctx, ai + aj) + chi_fp(ctx, ai - aj) + u * chi_fp(ctx, ai * ai + v * aj * aj)
    })
}

pub fn d_det(hs: &HalfSystem, u: Fp, v: Fp) -> Fp {
    det(&d_matrix(hs, u, v)).expect("square")
}

/// `P_m = ∏_{r=0}^{2m} C(2m, r)` over the integers.
pub fn binomial_product(m: usize) -> BigInt {
    let n = 2 * m;
    let mut row = BigInt::one();
    let mut acc = BigInt::one();
    for r in 0..n {
        // C(n, r+1) = C(n, r)(n−r)/(r+1)
        row = row * BigInt::from(n - r) / BigInt::from(r + 1);
        acc *= &row;
    }
    acc
}

/// `∏_{i<j}(a_j² − a_i²)²` in `𝔽_p`.
pub fn square_vandermonde(hs: &HalfSystem) -> Fp {
    let ctx = &hs.ctx;
    let sq: Vec<Fp> = hs
        .elems
        .iter()
        .map(|&a| ctx.fp(a as i64) * ctx.fp(a as i64))
        .collect();
    let mut acc = ctx.fp(1);
    for j in 0..sq.len() {
        for i in 0..j {
            let d = sq[j] - sq[i];
            acc = acc * d * d;
        }
    }
    acc
}

/// The right-hand side of the congruence in `𝔽_p`.
pub fn rhs_formula(hs: &HalfSystem, u: Fp, v: Fp) -> Fp {
    let ctx = &hs.ctx;
    let m = ctx.m_strict() as u64;
    let sign_exp = m * (2 * m + 1);
    let sign = if sign_exp.is_multiple_of(2) { ctx.fp(1) } else { ctx.fp(-1) };
    sign * u.pow(2 * m + 1)
        * v.pow(sign_exp)
        * ctx.fp_big(&binomial_product(m as usize))
        * square_vandermonde(hs)
}

pub fn verify(hs: &HalfSystem, u: Fp, v: Fp) -> Outcome {
    Outcome::new(
        format!("congruence(u={},v={})", u.value(), v.value()),
        rhs_formula(hs, u, v),
        d_det(hs, u, v),
    )
}

/// Coefficients of `K(X, Y) = Σ_{s≤m} α_s X^{m−s}Y^s + Σ_{s≤2m} β_s X^{2m−s}Y^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSpec<F> {
    m: usize,
    alpha: Vec<F>,
    beta: Vec<F>,
}

impl<F: Field> KernelSpec<F> {
    /// `m ≥ 1`: at `m = 0` the two antidiagonals are the same entry.
    pub fn new(m: usize, alpha: Vec<F>, beta: Vec<F>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("kernel order m must be at least 1".into()));
        }
        if alpha.len() != m + 1 || beta.len() != 2 * m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "m={m} needs {} α and {} β, got {} and {}",
                m + 1,
                2 * m + 1,
                alpha.len(),
                beta.len()
            )));
        }
        Ok(KernelSpec { m, alpha, beta })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &[F] {
        &self.alpha
    }

    pub fn beta(&self) -> &[F] {
        &self.beta
    }

    pub fn with_alpha(&self, alpha: Vec<F>) -> Result<Self> {
        KernelSpec::new(self.m, alpha, self.beta.clone())
    }

    /// `K(x, y)`.
    pub fn eval(&self, x: &F, y: &F) -> F {
        let n = 2 * self.m;
        let mut acc = x.zero_like();
        for (s, a) in self.alpha.iter().enumerate() {
            acc = acc.plus(&a.times(&x.pow((self.m - s) as u64)).times(&y.pow(s as u64)));
        }
        for (s, b) in self.beta.iter().enumerate() {
            acc = acc.plus(&b.times(&x.pow((n - s) as u64)).times(&y.pow(s as u64)));
        }
        acc
    }

    /// `B_{r,s} = α_s[r+s = m] + β_s[r+s = 2m]`.
    pub fn matrix(&self) -> Matrix<F> {
        let n = 2 * self.m;
        let zero = self.beta[0].zero_like();
        Matrix::from_fn(n + 1, n + 1, |r, s| {
            let mut e = zero.clone();
            if r + s == self.m {
                e = e.plus(&self.alpha[s]);
            }
            if r + s == n {
                e = e.plus(&self.beta[s]);
            }
            e
        })
    }

    fn sign_times_beta(&self) -> F {
        let n = 2 * self.m;
        let mut acc = self.beta[0].one_like();
        for b in &self.beta {
            acc = acc.times(b);
        }
        if (n * (n + 1) / 2) % 2 == 1 {
            acc = acc.negated();
        }
        acc
    }
}

/// `det B = (−1)^{n(n+1)/2} ∏ β_s`, `n = 2m`; checked against the Leibniz
/// expansion when `m ≤ 3` and elimination otherwise.
pub fn two_antidiag_det<F: Field>(spec: &KernelSpec<F>) -> Result<F> {
    let closed = spec.sign_times_beta();
    let b = spec.matrix();
    let direct = if spec.m <= 3 { det_leibniz(&b)? } else { det(&b)? };
    if closed != direct {
        return Err(Error::mismatch("two-antidiagonal determinant", &closed, &direct));
    }
    Ok(closed)
}

/// `det[K(x_i, x_j)] = (−1)^{n(n+1)/2} ∏β_s ∏_{i<j}(x_j − x_i)²`, checked
/// against the direct determinant and against the same kernel with `α`
/// replaced by `alt_alpha`.
pub fn kernel_det<F: Field>(xs: &[F], spec: &KernelSpec<F>, alt_alpha: Vec<F>) -> Result<F> {
    let n = 2 * spec.m;
    if xs.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} nodes for a kernel of order {n}",
            xs.len()
        )));
    }
    for j in 0..xs.len() {
        for i in 0..j {
            if xs[i] == xs[j] {
                return Err(Error::DuplicateNodes(i, j));
            }
        }
    }
    let mut vander = spec.sign_times_beta();
    for j in 0..xs.len() {
        for i in 0..j {
            let d = xs[j].minus(&xs[i]);
            vander = vander.times(&d).times(&d);
        }
    }
    let direct_for = |s: &KernelSpec<F>| det(&Matrix::from_fn(n + 1, n + 1, |i, j| s.eval(&xs[i], &xs[j])));
    let direct = direct_for(spec)?;
    if direct != vander {
        return Err(Error::mismatch("kernel determinant", &vander, &direct));
    }
    let moved = direct_for(&spec.with_alpha(alt_alpha)?)?;
    if moved != direct {
        return Err(Error::mismatch("kernel determinant after changing α", &direct, &moved));
    }
    Ok(vander)
}

/// `𝒟_p(δ₁, δ₂) = D(δ₁, δ₂)` on the standard half-system.
pub fn sign_pair_det(ctx: &PrimeCtx, d1: i64, d2: i64) -> Fp {
    d_det(&standard_half_system(ctx), ctx.fp(d1), ctx.fp(d2))
}

fn check_sign(d: i64) -> Result<()> {
    if d == 1 || d == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("sign {d} is not ±1")))
    }
}

/// Congruence, `χ(2𝒟) = 1`, `χ(𝒟) = (−1)^m` and `𝒟 ≠ 0` for one sign pair.
pub fn corollary_check(ctx: &PrimeCtx, d1: i64, d2: i64) -> Result<Vec<Outcome>> {
    check_sign(d1)?;
    check_sign(d2)?;
    let hs = standard_half_system(ctx);
    let (u, v) = (ctx.fp(d1), ctx.fp(d2));
    let dd = d_det(&hs, u, v);
    let m = ctx.m_strict();
    let tag = format!("({d1},{d2})");
    Ok(vec![
        Outcome::new(format!("corollary{tag}"), rhs_formula(&hs, u, v), dd),
        Outcome::new(format!("nonzero{tag}"), true, !dd.is_zero()),
        Outcome::new(format!("chi_2d{tag}"), 1, (ctx.fp(2) * dd).legendre()),
        Outcome::new(format!("chi_d{tag}"), if m.is_multiple_of(2) { 1 } else { -1 }, dd.legendre()),
    ])
}

/// `χ(P_m) = (−1)^m`, `χ(2P_m) = 1`, `((2m)!)² ≡ −1`, and `P_m` itself.
pub fn pm_checks(ctx: &PrimeCtx) -> Vec<Outcome> {
    let m = ctx.m_strict();
    let pm = ctx.fp_big(&binomial_product(m));
    let mut fact = BigInt::one();
    for k in 2..=(2 * m) {
        fact *= k;
    }
    let wilson = ctx.fp_big(&(&fact * &fact));
    vec![
        Outcome::new("chi_pm", if m.is_multiple_of(2) { 1 } else { -1 }, pm.legendre()),
        Outcome::new("chi_2pm", 1, (ctx.fp(2) * pm).legendre()),
        Outcome::new("wilson", ctx.fp(-1), wilson),
    ]
}

/// `T(d, p) = det[χ(j² + d k²)]_{0≤j,k≤2m}` in `𝔽_p`.
pub fn t_det(ctx: &PrimeCtx, d: i64) -> Fp {
    let m = ctx.m_strict() as i64;
    let k = (2 * m + 1) as usize;
    let mat = Matrix::from_fn(k, k, |j, kk| {
        let (j, kk) = (j as i64, kk as i64);
        let val = ctx.fp(j) * ctx.fp(j) + ctx.fp(d) * ctx.fp(kk) * ctx.fp(kk);
        ctx.fp(ctx.chi(val.value() as i64) as i64)
    });
    det(&mat).expect("square")
}

/// Square class of `T(d, p)`: `(2/p)` when `d` is a residue, `1` when not.
pub fn t_square_class(ctx: &PrimeCtx, d: i64) -> Result<Outcome> {
    let chi_d = ctx.chi(d);
    if chi_d == 0 {
        return Err(Error::InvalidArgument(format!("{d} ≡ 0 mod {}", ctx.p())));
    }
    let want = if chi_d == 1 { ctx.l() } else { 1 };
    Ok(Outcome::new(format!("t_square_class(d={d})"), want, t_det(ctx, d).legendre()))
}

/// `𝒟_p(δ₁, δ₂) ≡ δ₁^{2m+1} T(δ₂, p)` plus the square class of `T(δ₂, p)`.
pub fn t_cross_check(ctx: &PrimeCtx, d1: i64, d2: i64) -> Result<Vec<Outcome>> {
    check_sign(d1)?;
    check_sign(d2)?;
    let m = ctx.m_strict() as u64;
    let t = t_det(ctx, d2);
    let want = ctx.fp(d1).pow(2 * m + 1) * t;
    Ok(vec![
        Outcome::new(format!("t_congruence({d1},{d2})"), want, sign_pair_det(ctx, d1, d2)),
        t_square_class(ctx, d2)?,
    ])
}

/// `D(0, v) = 0` and `D(u, 0) = 0`.
pub fn degenerate_checks(hs: &HalfSystem, u: Fp, v: Fp) -> Vec<Outcome> {
    let ctx = &hs.ctx;
    vec![
        Outcome::new(format!("degenerate(u=0,v={})", v.value()), 0, d_det(hs, ctx.fp(0), v)),
        Outcome::new(format!("degenerate(u={},v=0)", u.value()), 0, d_det(hs, u, ctx.fp(0))),
    ]
}

/// Seeded `(A₀, u, v)` triples with `A₀` a random signed permutation.
pub fn random_triples(ctx: &PrimeCtx, seed: u64, count: usize) -> Vec<(HalfSystem, Fp, Fp)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ctx.modulus() as i64;
    (0..count)
        .map(|_| {
            let hs = random_half_system(ctx, rng.gen());
            let u = ctx.fp(rng.gen_range(0..p));
            let v = ctx.fp(rng.gen_range(0..p));
            (hs, u, v)
        })
        .collect()
}

impl std::fmt::Display for HalfSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_1_mod_4;
    use num_rational::BigRational;
    use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, ProptestConfig};

    fn ctx(p: u64) -> PrimeCtx {
        PrimeCtx::new(p).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn standard_systems() {
        let hs = standard_half_system(&ctx(5));
        assert_eq!(hs.elems(), &[0, 1, 2]);
        assert!(hs.strict());
        assert_eq!(standard_half_system(&ctx(13)).elems(), &[0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn invalid_systems_rejected() {
        let c = ctx(5);
        assert!(matches!(HalfSystem::new(&c, &[0, 1, 4]), Err(Error::InvalidHalfSystem(_))));
        assert!(matches!(HalfSystem::new(&c, &[0, 1]), Err(Error::InvalidHalfSystem(_))));
    }

    #[test]
    fn full_length_distinct_squares_is_a_partition() {
        // 2m+1 distinct squares exhaust the (p+1)/2 square classes, 0 included.
        let c = ctx(13);
        for seed in 0..20 {
            let hs = random_half_system(&c, seed);
            assert!(hs.strict());
            assert_eq!(random_half_system(&c, seed), hs);
        }
        let hs = HalfSystem::new(&ctx(5), &[0, 4, 2]).unwrap();
        assert!(hs.strict());
    }

    #[test]
    fn d_det_p5_example() {
        let c = ctx(5);
        let hs = standard_half_system(&c);
        let m = d_matrix(&hs, c.fp(1), c.fp(1));
        let want: Vec<Fp> = [0, 3, -1, 3, -2, 0, -1, 0, 0].iter().map(|&v| c.fp(v)).collect();
        assert_eq!(m.entries(), &want[..]);
        assert_eq!(d_det(&hs, c.fp(1), c.fp(1)), c.fp(2));
        assert_eq!(rhs_formula(&hs, c.fp(1), c.fp(1)), c.fp(-288));
        for v in 0..5 {
            assert_eq!(d_det(&hs, c.fp(0), c.fp(v)), c.fp(0));
        }
        assert_eq!(d_det(&hs, c.fp(1), c.fp(0)), c.fp(0));
    }

    #[test]
    fn exhaustive_small() {
        for p in [5, 13] {
            let c = ctx(p);
            let hs = standard_half_system(&c);
            for u in 0..p as i64 {
                for v in 0..p as i64 {
                    let o = verify(&hs, c.fp(u), c.fp(v));
                    assert!(o.holds(), "p={p}: {o}");
                }
            }
        }
    }

    #[test]
    fn random_triples_p17() {
        let c = ctx(17);
        for (hs, u, v) in random_triples(&c, 3, 30) {
            assert!(verify(&hs, u, v).holds(), "{hs}");
        }
    }

    #[test]
    fn binomial_products() {
        assert_eq!(binomial_product(1), BigInt::from(2));
        assert_eq!(binomial_product(2), BigInt::from(4 * 6 * 4));
        assert_eq!(binomial_product(0), BigInt::one());
    }

    #[test]
    fn pm_and_wilson() {
        for p in primes_1_mod_4(5, 101) {
            for o in pm_checks(&ctx(p)) {
                assert!(o.holds(), "p={p}: {o}");
            }
        }
        let c = ctx(13);
        assert_eq!(c.fp_big(&binomial_product(3)).legendre(), -1);
        let c = ctx(17);
        assert_eq!((c.fp(2) * c.fp_big(&binomial_product(4))).legendre(), 1);
    }

    #[test]
    fn corollary_small() {
        let c = ctx(5);
        assert_eq!(sign_pair_det(&c, 1, 1), c.fp(2));
        for p in [5, 13] {
            let c = ctx(p);
            for (d1, d2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                for o in corollary_check(&c, d1, d2).unwrap() {
                    assert!(o.holds(), "p={p}: {o}");
                }
            }
        }
        assert!(corollary_check(&c, 2, 1).is_err());
    }

    #[test]
    fn t_relation() {
        for p in [5, 13, 17] {
            let c = ctx(p);
            for (d1, d2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                for o in t_cross_check(&c, d1, d2).unwrap() {
                    assert!(o.holds(), "p={p}: {o}");
                }
            }
        }
        let c = ctx(13);
        assert_eq!(sign_pair_det(&c, -1, 1), -t_det(&c, 1));
        let o = t_square_class(&c, 2).unwrap();
        assert_eq!(o.expected, "1");
        assert!(o.holds());
        for d in 1..13 {
            assert!(t_square_class(&c, d).unwrap().holds(), "d={d}");
        }
    }

    #[test]
    fn two_antidiag_examples() {
        let spec = KernelSpec::new(3, qs(&[5, -2, 7, 1]), vec![q(1); 7]).unwrap();
        assert_eq!(two_antidiag_det(&spec).unwrap(), q(-1));
        let spec = KernelSpec::new(1, qs(&[9, 4]), qs(&[2, 3, 5])).unwrap();
        assert_eq!(two_antidiag_det(&spec).unwrap(), q(-30));
        assert!(KernelSpec::new(1, qs(&[1]), qs(&[1, 1, 1])).is_err());
        assert!(KernelSpec::new(0, qs(&[1]), qs(&[1])).is_err());
    }

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let spec = KernelSpec::new(1, qs(&[3, -1]), qs(&[1, 1, 1])).unwrap();
        assert_eq!(kernel_det(&qs(&[0, 1, 4]), &spec, qs(&[8, 8])).unwrap(), q(-144));
        let c = ctx(5);
        let f = |v: &[i64]| v.iter().map(|&x| c.fp(x)).collect::<Vec<_>>();
        let spec = KernelSpec::new(1, f(&[3, 4]), f(&[1, 1, 1])).unwrap();
        assert_eq!(kernel_det(&f(&[0, 1, 4]), &spec, f(&[0, 2])).unwrap(), c.fp(1));
        assert_eq!(
            kernel_det(&qs(&[0, 1, 1]), &KernelSpec::new(1, qs(&[1, 1]), qs(&[1, 1, 1])).unwrap(), qs(&[0, 0])),
            Err(Error::DuplicateNodes(1, 2))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn two_antidiag_closed_form(m in 1usize..=3, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut r = |k: usize| (0..k).map(|_| q(rng.gen_range(-9..=9))).collect::<Vec<_>>();
            let spec = KernelSpec::new(m, r(m + 1), r(2 * m + 1)).unwrap();
            prop_assert!(two_antidiag_det(&spec).is_ok());
        }

        #[test]
        fn kernel_alpha_invariant(m in 1usize..=3, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut nodes: Vec<i64> = (-20..=20).collect();
            nodes.shuffle(&mut rng);
            let xs = qs(&nodes[..2 * m + 1]);
            let mut r = |k: usize| (0..k).map(|_| q(rng.gen_range(-9..=9))).collect::<Vec<_>>();
            let spec = KernelSpec::new(m, r(m + 1), r(2 * m + 1)).unwrap();
            let alt = r(m + 1);
            prop_assert!(kernel_det(&xs, &spec, alt).is_ok());
        }

        #[test]
        fn square_factor_sign_and_order_invariant(seed in any::<u64>()) {
            let c = ctx(29);
            let hs = random_half_system(&c, seed);
            prop_assert_eq!(square_vandermonde(&hs), square_vandermonde(&standard_half_system(&c)));
        }
    }
}
