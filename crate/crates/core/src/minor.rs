//! The four-variable determinant
//! `det[x + χ(j−k+1) + χ(j)y + χ(k)z + χ(jk)w]_{0≤j,k<n}` through the
//! adjacent minor `H = [χ(j−k+1)]`.
//!
//! Writing the matrix as `H + U M Uᵀ` with `U = (𝟏, η)`, `η_j = χ(j)` and
//! `M = [[x, z], [y, w]]`, Sylvester's identity gives
//! `det H · det(I₂ + M G)` with `G = Uᵀ H⁻¹ U`, a 2×2 computation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::PrimeCtx;
use crate::error::{Error, Result};
use crate::exactla::{det, inverse, Matrix};
use crate::quadfield::UnitData;
use crate::report::Outcome;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `H = [χ(j−k+1)]_{0≤j,k<n}`.
pub fn build_h(ctx: &PrimeCtx) -> Matrix<BigRational> {
    let n = ctx.n();
    Matrix::from_fn(n, n, |j, k| q(ctx.chi(j as i64 - k as i64 + 1) as i64))
}

/// `η = (χ(0), …, χ(n−1))`.
pub fn eta(ctx: &PrimeCtx) -> Vec<BigRational> {
    (0..ctx.n()).map(|j| q(ctx.chi(j as i64) as i64)).collect()
}

/// `U = (𝟏, η)`, an `n × 2` matrix.
pub fn build_u(ctx: &PrimeCtx) -> Matrix<BigRational> {
    let e = eta(ctx);
    Matrix::from_fn(ctx.n(), 2, |j, c| if c == 0 { q(1) } else { e[j].clone() })
}

/// `det H` and `G = Uᵀ H⁻¹ U`, computed by exact inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversePackage {
    pub det_h: BigRational,
    pub g: Matrix<BigRational>,
}

impl InversePackage {
    /// `det H = LQ` and `G = [[LP/Q, 1], [(Q−1)/Q, 1]]`.
    pub fn closed_form(unit: &UnitData) -> Self {
        let l = unit.l_rat();
        let qq = &unit.q;
        let g = Matrix::from_rows(vec![
            vec![&l * &unit.big_p / qq, q(1)],
            vec![(qq - q(1)) / qq, q(1)],
        ])
        .expect("2x2");
        InversePackage { det_h: unit.lq(), g }
    }

    pub fn det_g(&self) -> BigRational {
        self.g.get(0, 0) * self.g.get(1, 1) - self.g.get(0, 1) * self.g.get(1, 0)
    }
}

/// Inverse package by direct computation. The structural facts `He₁ = η`
/// and `H⁻¹η = e₁` are checked on the way; a singular `H` is an error.
pub fn inverse_package(ctx: &PrimeCtx) -> Result<InversePackage> {
    let h = build_h(ctx);
    let n = ctx.n();
    let e = eta(ctx);
    if h.col(1) != e {
        return Err(Error::mismatch("column 1 of H", "η", Matrix::new(1, n, h.col(1))?));
    }
    let det_h = det(&h)?;
    let hinv = inverse(&h)?;
    let mut e1 = vec![q(0); n];
    e1[1] = q(1);
    let solved = hinv.mul_vec(&e)?;
    if solved != e1 {
        return Err(Error::mismatch("H⁻¹η", "e₁", Matrix::new(1, n, solved)?));
    }
    let u = build_u(ctx);
    let g = u.transpose().mul(&hinv)?.mul(&u)?;
    Ok(InversePackage { det_h, g })
}

/// Direct package against the closed form.
pub fn verify_inverse_package(pkg: &InversePackage, unit: &UnitData) -> Vec<Outcome> {
    let want = InversePackage::closed_form(unit);
    vec![
        Outcome::new("det_h", &want.det_h, &pkg.det_h),
        Outcome::new("g", &want.g, &pkg.g),
        Outcome::new("g_second_column", "[1, 1]", format!("[{}, {}]", pkg.g.get(0, 1), pkg.g.get(1, 1))),
    ]
}

/// A determinant sampled at 0, 1, 2 along a rank-one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub values: [BigRational; 3],
    pub slope: BigRational,
    pub intercept: BigRational,
}

fn linear_from(values: [BigRational; 3], what: &str) -> Result<LinearForm> {
    let second = &values[2] - q(2) * &values[1] + &values[0];
    if !second.is_zero() {
        return Err(Error::mismatch(format!("second difference of {what}"), 0, second));
    }
    Ok(LinearForm {
        slope: &values[1] - &values[0],
        intercept: values[0].clone(),
        values,
    })
}

/// `E(t) = det(H + t𝟏𝟏ᵀ) = det[t + χ(j−k+1)]` at `t = 0, 1, 2`.
pub fn e_linear(ctx: &PrimeCtx) -> Result<LinearForm> {
    let h = build_h(ctx);
    let ones = vec![q(1); ctx.n()];
    let mut vals = Vec::with_capacity(3);
    for t in 0..3 {
        let m = h.add(&Matrix::outer(&ones, &ones).scale(&q(t)))?;
        vals.push(det(&m)?);
    }
    linear_from(vals.try_into().expect("three values"), "E")
}

/// `F(ρ) = det(H + ρ𝟏ηᵀ) = det[χ(j−k+1) + ρχ(k)]` at `ρ = 0, 1, 2`.
pub fn f_linear(ctx: &PrimeCtx) -> Result<LinearForm> {
    let h = build_h(ctx);
    let ones = vec![q(1); ctx.n()];
    let e = eta(ctx);
    let mut vals = Vec::with_capacity(3);
    for rho in 0..3 {
        let m = h.add(&Matrix::outer(&ones, &e).scale(&q(rho)))?;
        vals.push(det(&m)?);
    }
    linear_from(vals.try_into().expect("three values"), "F")
}

pub fn verify_e_linear(ctx: &PrimeCtx, unit: &UnitData) -> Result<Vec<Outcome>> {
    let e = e_linear(ctx)?;
    Ok(vec![
        Outcome::new("e_slope", &unit.big_p, &e.slope),
        Outcome::new("e_intercept", unit.lq(), &e.intercept),
    ])
}

pub fn verify_f_linear(ctx: &PrimeCtx, unit: &UnitData) -> Result<Vec<Outcome>> {
    let f = f_linear(ctx)?;
    Ok(vec![
        Outcome::new("f_slope", unit.l_rat() * (&unit.q - q(1)), &f.slope),
        Outcome::new("f_intercept", unit.lq(), &f.intercept),
    ])
}

/// Exponents of `x, y, z, w`.
pub type Monomial = [u32; 4];

pub const VARS: [&str; 4] = ["x", "y", "z", "w"];

/// Sparse polynomial in `x, y, z, w` over ℚ. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly4 {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly4 {
    pub fn zero() -> Self {
        Poly4::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Poly4::zero().with_term([0; 4], c)
    }

    /// The variable with index `i` in `x, y, z, w` order.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Poly4::zero().with_term(e, q(1))
    }

    fn with_term(mut self, e: Monomial, c: BigRational) -> Self {
        self.add_term(e, c);
        self
    }

    fn add_term(&mut self, e: Monomial, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, rhs: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly4) -> Poly4 {
        self.add(&rhs.scale(&q(-1)))
    }

    pub fn scale(&self, s: &BigRational) -> Poly4 {
        let mut out = Poly4::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &Poly4) -> Poly4 {
        let mut out = Poly4::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn coeff(&self, e: Monomial) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn eval(&self, point: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }
}

/// `"1"`, `"x"`, `"xw"`, `"y^2z"` and so on.
pub fn monomial_name(e: &Monomial) -> String {
    let mut s = String::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => s.push_str(VARS[i]),
            _ => s.push_str(&format!("{}^{k}", VARS[i])),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Parse a name produced by [`monomial_name`] for the seven-term support.
pub fn monomial(name: &str) -> Monomial {
    let mut e = [0; 4];
    if name != "1" {
        for ch in name.chars() {
            let i = VARS.iter().position(|v| v.starts_with(ch)).expect("variable");
            e[i] += 1;
        }
    }
    e
}

impl fmt::Display for Poly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), std::cmp::Reverse(**e)));
        let mut first = true;
        for (e, c) in order {
            let name = monomial_name(e);
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if name == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&name)?;
            } else {
                write!(f, "{abs}{name}")?;
            }
        }
        Ok(())
    }
}

/// The monomials the four-variable determinant may contain.
pub const SUPPORT: [&str; 7] = ["1", "x", "y", "z", "w", "xw", "yz"];

/// `det H · (1 + tr(MG) + det M · det G)` with `M = [[x, z], [y, w]]`.
pub fn symbolic_det(pkg: &InversePackage) -> Poly4 {
    let (x, y, z, w) = (Poly4::var(0), Poly4::var(1), Poly4::var(2), Poly4::var(3));
    let g = |r, c| pkg.g.get(r, c).clone();
    // tr(MG) = x g₀₀ + z g₁₀ + y g₀₁ + w g₁₁
    let trace = x
        .scale(&g(0, 0))
        .add(&z.scale(&g(1, 0)))
        .add(&y.scale(&g(0, 1)))
        .add(&w.scale(&g(1, 1)));
    let det_m = x.mul(&w).sub(&y.mul(&z));
    Poly4::constant(q(1))
        .add(&trace)
        .add(&det_m.scale(&pkg.det_g()))
        .scale(&pkg.det_h)
}

/// The coefficient table in terms of `L, Q, P`:
/// `1, y, w ↦ LQ`, `x ↦ P`, `z ↦ L(Q−1)`, `xw ↦ P−LQ+L`, `yz ↦ −(P−LQ+L)`.
pub fn coefficient_table(unit: &UnitData) -> Vec<(&'static str, BigRational)> {
    let l = unit.l_rat();
    let lq = unit.lq();
    let p = unit.big_p.clone();
    let cross = &p - &lq + &l;
    vec![
        ("1", lq.clone()),
        ("x", p),
        ("y", lq.clone()),
        ("z", &l * (&unit.q - q(1))),
        ("w", lq),
        ("xw", cross.clone()),
        ("yz", -cross),
    ]
}

/// The closed-form polynomial
/// `(pB−A)((w+1)x − yz) + L(wx − (y+1)z) + L(B−A){w(1−x) + (y+1)(z+1)}`.
pub fn closed_polynomial(unit: &UnitData) -> Poly4 {
    let one = Poly4::constant(q(1));
    let (x, y, z, w) = (Poly4::var(0), Poly4::var(1), Poly4::var(2), Poly4::var(3));
    let first = w.add(&one).mul(&x).sub(&y.mul(&z)).scale(&unit.big_p);
    let second = w.mul(&x).sub(&y.add(&one).mul(&z)).scale(&unit.l_rat());
    let third = w
        .mul(&one.sub(&x))
        .add(&y.add(&one).mul(&z.add(&one)))
        .scale(&unit.lq());
    first.add(&second).add(&third)
}

/// Coefficient-by-coefficient comparison with the table, plus the support
/// bound and agreement with the closed-form polynomial.
pub fn verify_symbolic(poly: &Poly4, unit: &UnitData) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = coefficient_table(unit)
        .into_iter()
        .map(|(name, want)| Outcome::new(format!("coeff[{name}]"), want, poly.coeff(monomial(name))))
        .collect();
    let extra: Vec<String> = poly
        .support()
        .map(monomial_name)
        .filter(|n| !SUPPORT.contains(&n.as_str()))
        .collect();
    out.push(Outcome::new("support", "[]", format!("[{}]", extra.join(", "))));
    out.push(Outcome::new("closed_polynomial", closed_polynomial(unit), poly));
    out
}

/// `[x + χ(j−k+1) + χ(j)y + χ(k)z + χ(jk)w]` at a numeric point.
pub fn four_variable_matrix(ctx: &PrimeCtx, point: &[BigRational; 4]) -> Matrix<BigRational> {
    let n = ctx.n();
    let [x, y, z, w] = point;
    Matrix::from_fn(n, n, |j, k| {
        let (j, k) = (j as i64, k as i64);
        x + q(ctx.chi(j - k + 1) as i64)
            + q(ctx.chi(j) as i64) * y
            + q(ctx.chi(k) as i64) * z
            + q(ctx.chi(j * k) as i64) * w
    })
}

pub fn point_label(point: &[BigRational; 4]) -> String {
    format!("({},{},{},{})", point[0], point[1], point[2], point[3])
}

/// Symbolic value against the direct `n × n` determinant at one point.
pub fn eval_identity(ctx: &PrimeCtx, poly: &Poly4, point: &[BigRational; 4]) -> Result<Outcome> {
    let direct = det(&four_variable_matrix(ctx, point))?;
    Ok(Outcome::new(
        format!("eval_identity{}", point_label(point)),
        poly.eval(point),
        direct,
    ))
}

/// The sixteen points of `{0,1}⁴`.
pub fn grid_points() -> Vec<[BigRational; 4]> {
    (0..16u32)
        .map(|b| std::array::from_fn(|i| q(((b >> (3 - i)) & 1) as i64)))
        .collect()
}

pub fn sample_point() -> [BigRational; 4] {
    [q(2), q(-1), q(3), q(4)]
}

/// `13P + 8L − 4LQ`, the value at `(2, −1, 3, 4)`.
pub fn sample_point_value(unit: &UnitData) -> BigRational {
    q(13) * &unit.big_p + q(8) * unit.l_rat() - q(4) * unit.lq()
}

/// `count` integer points in `[−10, 10]⁴` drawn from a seeded generator.
pub fn random_points(seed: u64, count: usize) -> Vec<[BigRational; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| q(rng.gen_range(-10..=10))))
        .collect()
}

/// Integer matrix of `H` for callers that want the fraction-free kernel.
pub fn build_h_int(ctx: &PrimeCtx) -> Matrix<BigInt> {
    let n = ctx.n();
    Matrix::from_fn(n, n, |j, k| BigInt::from(ctx.chi(j as i64 - k as i64 + 1)))
}
