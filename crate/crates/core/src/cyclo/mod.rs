//! Exact arithmetic in `ℚ(ζ_p)` and the factorisation of the circulant-type
//! matrix `C(t) = [t + χ(s−r)]_{0≤r,s≤n}` as `λ V D 𝒰(t) D V`, with the
//! cofactor, Cauchy and product identities that turn it into the adjacent
//! minor evaluations `E(t) = Pt + LQ` and `F(ρ) = L{Q + (Q−1)ρ}`.
//!
//! `√p` is realised as the Gauss sum `Σ χ(t) ζ^t`.

mod elem;

pub use elem::CycloElem;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::PrimeCtx;
use crate::error::{Error, Result};
use crate::exactla::{cauchy_closed_form, cauchy_matrix, det, inverse, Field, Matrix};
use crate::quadfield::UnitData;
use crate::report::Outcome;

/// Default largest prime the cyclotomic suite runs on.
pub const DEFAULT_MAX_PRIME: u64 = 17;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `g = Σ_{t=1}^{p−1} χ(t) ζ^t`, checked to square to `p`.
pub fn gauss_sum(ctx: &PrimeCtx) -> Result<CycloElem> {
    if ctx.m().is_none() {
        return Err(Error::WrongResidueClass(ctx.p().to_string()));
    }
    let p = ctx.modulus() as usize;
    let mut g = CycloElem::zero(p);
    for t in 1..p as i64 {
        let z = CycloElem::zeta_pow(p, t);
        g = if ctx.chi(t) == 1 { g.add(&z) } else { g.sub(&z) };
    }
    let sq = g.mul(&g);
    if sq != CycloElem::from_int(p, p as i64) {
        return Err(Error::mismatch("Gauss sum squared", p, sq));
    }
    Ok(g)
}

/// Everything the factorisation needs, built once per prime.
#[derive(Clone, Debug)]
pub struct Package {
    ctx: PrimeCtx,
    unit: UnitData,
    p: usize,
    n: usize,
    pub sqrt_p: CycloElem,
    pub lambda: CycloElem,
    pub v: Matrix<CycloElem>,
    pub d: Vec<CycloElem>,
    /// `x_r = χ(r) ζ^{−r}` for `1 ≤ r ≤ n`, stored at index `r − 1`.
    pub x: Vec<CycloElem>,
    pub alpha: Vec<CycloElem>,
    pub omega: Vec<CycloElem>,
    pub kappa: CycloElem,
    pub f1: CycloElem,
    pub f2: CycloElem,
    pub xi: CycloElem,
}

impl Package {
    pub fn new(ctx: &PrimeCtx, unit: &UnitData) -> Result<Self> {
        let p = ctx.modulus() as usize;
        let n = ctx.n();
        if !n.is_multiple_of(2) {
            return Err(Error::WrongResidueClass(ctx.p().to_string()));
        }
        let z = |k: i64| CycloElem::zeta_pow(p, k);
        let one = CycloElem::from_int(p, 1);
        let l = ctx.l() as i64;
        let sqrt_p = gauss_sum(ctx)?;
        let lambda = sqrt_p.mul(&z((n / 2) as i64)).scale(&q(l));
        let n1 = n + 1;
        let v = Matrix::from_fn(n1, n1, |r, s| z((2 * r * s) as i64));
        let mut d = Vec::with_capacity(n1);
        for r in 0..n1 {
            let mut prod = one.clone();
            for m in (0..n1).filter(|&m| m != r) {
                prod = prod.mul(&z(2 * r as i64).sub(&z(2 * m as i64)));
            }
            d.push(prod.inv().ok_or(Error::NotInvertible)?);
        }
        let chi = |t: i64| ctx.chi(t) as i64;
        let x: Vec<CycloElem> = (1..=n as i64).map(|r| z(-r).scale(&q(chi(r)))).collect();
        let mut alpha = vec![one.clone()];
        alpha.extend(x.iter().map(|xr| xr.mul(xr)));
        let omega = vec![one.clone(); n1];
        let mut kappa = z((n * (n + 1)) as i64);
        for s in 0..n1 {
            for r in 0..s {
                kappa = kappa.mul(&z(2 * s as i64).sub(&z(2 * r as i64)));
            }
        }
        let (mut f1, mut f2) = (one.clone(), one.clone());
        for s in 1..=n as i64 {
            for r in 1..s {
                f1 = f1.mul(&z(s).scale(&q(chi(s))).sub(&z(r).scale(&q(chi(r)))));
                f2 = f2.mul(&one.add(&z(r + s).scale(&q(chi(r) * chi(s)))));
            }
        }
        let f2_inv = f2.inv().ok_or(Error::NotInvertible)?;
        let xi = f1
            .mul(&f1)
            .mul(&f2_inv)
            .mul(&f2_inv)
            .mul(&z(-((n * (n + 1)) as i64)))
            .scale(&q(l));
        Ok(Package {
            ctx: ctx.clone(),
            unit: unit.clone(),
            p,
            n,
            sqrt_p,
            lambda,
            v,
            d,
            x,
            alpha,
            omega,
            kappa,
            f1,
            f2,
            xi,
        })
    }

    pub fn ctx(&self) -> &PrimeCtx {
        &self.ctx
    }

    pub fn unit(&self) -> &UnitData {
        &self.unit
    }

    fn z(&self, k: i64) -> CycloElem {
        CycloElem::zeta_pow(self.p, k)
    }

    fn c(&self, v: &BigRational) -> CycloElem {
        CycloElem::from_rational(self.p, v)
    }

    fn l(&self) -> i64 {
        self.ctx.l() as i64
    }

    /// `A` and `B` embedded in the field.
    fn a_b(&self) -> (CycloElem, CycloElem) {
        (self.c(&self.unit.a), self.c(&self.unit.b))
    }

    pub fn d_matrix(&self) -> Matrix<CycloElem> {
        Matrix::diagonal(&self.d)
    }

    /// `𝒰(t)`: the middle factor, with `L√p·t` added at `(0, 0)`.
    pub fn u_mid(&self, t: &BigRational) -> Result<Matrix<CycloElem>> {
        let n1 = self.n + 1;
        let chi = |t: usize| self.ctx.chi(t as i64) as i64;
        let mut rows = Vec::with_capacity(n1);
        for r in 0..n1 {
            let mut row = Vec::with_capacity(n1);
            for s in 0..n1 {
                let (ri, si) = (r as i64, s as i64);
                let num = self
                    .z(-si - 2 * ri)
                    .scale(&q(chi(r)))
                    .add(&self.z(-2 * si - ri).scale(&q(chi(s))));
                let den = self.z(-ri - si).add(&CycloElem::from_int(self.p, chi(r) * chi(s)));
                let inv = den.inv().ok_or(Error::PoleEncountered { row: r, col: s })?;
                row.push(num.mul(&inv));
            }
            rows.push(row);
        }
        let mut u = Matrix::from_rows(rows)?;
        if !Zero::is_zero(t) {
            let corner = u.get(0, 0).add(&self.sqrt_p.scale(&(q(self.l()) * t)));
            u.set(0, 0, corner);
        }
        Ok(u)
    }

    /// `C(t) = [t + χ(s−r)]` as field constants.
    pub fn c_matrix(&self, t: &BigRational) -> Matrix<CycloElem> {
        let n1 = self.n + 1;
        Matrix::from_fn(n1, n1, |r, s| {
            self.c(&(t + q(self.ctx.chi(s as i64 - r as i64) as i64)))
        })
    }

    /// `λ V D M D V`.
    fn sandwich(&self, m: &Matrix<CycloElem>) -> Result<Matrix<CycloElem>> {
        let vd = self.v.mul(&self.d_matrix())?;
        let dv = self.d_matrix().mul(&self.v)?;
        Ok(vd.mul(m)?.mul(&dv)?.scale(&self.lambda))
    }

    /// `G = diag(1, x₁⁻¹, …, x_n⁻¹)`.
    pub fn g_diag(&self) -> Result<Matrix<CycloElem>> {
        let mut diag = vec![CycloElem::from_int(self.p, 1)];
        for xr in &self.x {
            diag.push(xr.inv().ok_or(Error::NotInvertible)?);
        }
        Ok(Matrix::diagonal(&diag))
    }

    /// `θ = (χ(0), …, χ(n))`.
    pub fn theta(&self) -> Vec<CycloElem> {
        (0..=self.n)
            .map(|s| CycloElem::from_int(self.p, self.ctx.chi(s as i64) as i64))
            .collect()
    }

    /// `R = λ⁻¹ D⁻¹ V⁻¹ ω₀θᵀ V⁻¹ D⁻¹`.
    pub fn r_matrix(&self) -> Result<Matrix<CycloElem>> {
        let vinv = inverse(&self.v)?;
        let dinv = inverse(&self.d_matrix())?;
        let w = Matrix::outer(&self.omega, &self.theta());
        let lam_inv = self.lambda.inv().ok_or(Error::NotInvertible)?;
        Ok(dinv.mul(&vinv)?.mul(&w)?.mul(&vinv)?.mul(&dinv)?.scale(&lam_inv))
    }

    /// `λⁿ (det D)² κ² ζ^{−n/2} Ξ`.
    pub fn normalising_product(&self) -> CycloElem {
        let det_d = self.d.iter().fold(CycloElem::from_int(self.p, 1), |acc, x| acc.mul(x));
        self.prefactor().mul(&self.xi).mul(&det_d).mul(&det_d)
    }

    // λⁿ κ² ζ^{−n/2}, the part of the normalising product without (det D)² Ξ.
    fn prefactor(&self) -> CycloElem {
        Field::pow(&self.lambda, self.n as u64)
            .mul(&self.kappa)
            .mul(&self.kappa)
            .mul(&self.z(-((self.n / 2) as i64)))
    }

    /// `λⁿ (det D)² κ² ζ^{−n/2}`, the scalar in front of the adjugate
    /// contraction.
    pub fn adjugate_scalar(&self) -> CycloElem {
        let det_d = self.d.iter().fold(CycloElem::from_int(self.p, 1), |acc, x| acc.mul(x));
        self.prefactor().mul(&det_d).mul(&det_d)
    }

    /// Cauchy nodes `X_{−1} = 1, X₀ = 0, X_r = x_r`.
    pub fn cauchy_nodes(&self) -> Vec<CycloElem> {
        let mut xs = vec![CycloElem::from_int(self.p, 1), CycloElem::zero(self.p)];
        xs.extend(self.x.iter().cloned());
        xs
    }
}

fn count_mismatches(a: &Matrix<CycloElem>, b: &Matrix<CycloElem>) -> usize {
    a.entries().iter().zip(b.entries()).filter(|(x, y)| x != y).count()
}

fn t_label(t: &BigRational) -> String {
    t.to_string()
}

/// `C(t) = λ V D 𝒰(t) D V`, entry by entry.
pub fn verify_vsemirnov(pkg: &Package, t: &BigRational) -> Result<Outcome> {
    let rhs = pkg.sandwich(&pkg.u_mid(t)?)?;
    let lhs = pkg.c_matrix(t);
    Ok(Outcome::new(
        format!("vsemirnov_mismatched_entries(t={})", t_label(t)),
        0,
        count_mismatches(&lhs, &rhs),
    ))
}

/// `V V⁻¹ = I`.
pub fn verify_v_inverse(pkg: &Package) -> Result<Outcome> {
    let prod = pkg.v.mul(&inverse(&pkg.v)?)?;
    let id = Matrix::identity(pkg.n + 1, &CycloElem::from_int(pkg.p, 1));
    Ok(Outcome::new("v_inverse_mismatched_entries", 0, count_mismatches(&prod, &id)))
}

/// Coefficients of `Φ_c(T)/Φ_c(ζ^{2c})`, lowest degree first.
fn lagrange_coeffs(pkg: &Package, c: usize) -> Result<Vec<CycloElem>> {
    let one = CycloElem::from_int(pkg.p, 1);
    let mut poly = vec![one.clone()];
    let mut at_node = one;
    let node = pkg.z(2 * c as i64);
    for m in (0..=pkg.n).filter(|&m| m != c) {
        let root = pkg.z(2 * m as i64);
        let mut next = vec![CycloElem::zero(pkg.p); poly.len() + 1];
        for (i, a) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a);
            next[i] = next[i].sub(&a.mul(&root));
        }
        poly = next;
        at_node = at_node.mul(&node.sub(&root));
    }
    let inv = at_node.inv().ok_or(Error::NotInvertible)?;
    Ok(poly.into_iter().map(|a| a.mul(&inv)).collect())
}

/// Cofactors of `V` against `κα`, `κζ^{−n/2}`, `𝔙₀₀/(d₀κ) = 1`, and the
/// interpolation form `𝔙_{rc}/det V = [Tʳ] Φ_c(T)/Φ_c(ζ^{2c})` for every
/// column `c`.
pub fn cofactor_identities(pkg: &Package) -> Result<Vec<Outcome>> {
    let n = pkg.n;
    let v = &pkg.v;
    let det_v = det(v)?;
    let det_v_inv = det_v.inv().ok_or(Error::NotInvertible)?;
    let tail = pkg.kappa.mul(&pkg.z(-((n / 2) as i64)));
    let (mut first, mut last, mut interp) = (0usize, 0usize, 0usize);
    let mut v00 = CycloElem::zero(pkg.p);
    for c in 0..=n {
        let lag = lagrange_coeffs(pkg, c)?;
        for (r, lag_r) in lag.iter().enumerate() {
            let cof = v.cofactor(r, c)?;
            if &cof.mul(&det_v_inv) != lag_r {
                interp += 1;
            }
            let d_inv = pkg.d[r].inv().ok_or(Error::NotInvertible)?;
            if c == 0 {
                let val = cof.mul(&d_inv);
                if r == 0 {
                    v00 = val.mul(&pkg.kappa.inv().ok_or(Error::NotInvertible)?);
                }
                if val != pkg.kappa.mul(&pkg.alpha[r]) {
                    first += 1;
                }
            }
            if c == n && cof.mul(&d_inv) != tail {
                last += 1;
            }
        }
    }
    Ok(vec![
        Outcome::new("cofactor_first_mismatches", 0, first),
        Outcome::new("cofactor_last_mismatches", 0, last),
        Outcome::new("cofactor_v00_over_d0_kappa", 1, v00),
        Outcome::new("cofactor_interpolation_mismatches", 0, interp),
    ])
}

/// The diagonal Cauchy determinants `I` (nodes `X_{−1..n}`) and `J`
/// (nodes `X_{0..n}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyPair {
    pub i: CycloElem,
    pub j: CycloElem,
}

/// `I` and `J` by direct determinant and by the Cauchy closed form, their
/// expanded product forms, and `I = (A√p − Bp)Ξ`, `J = A√p·Ξ`.
pub fn compute_i_j(pkg: &Package) -> Result<(CauchyPair, Vec<Outcome>)> {
    let nodes = pkg.cauchy_nodes();
    let i_direct = det(&cauchy_matrix(&nodes, &nodes)?)?;
    let i_closed = cauchy_closed_form(&nodes, &nodes)?;
    let j_nodes = &nodes[1..];
    let j_direct = det(&cauchy_matrix(j_nodes, j_nodes)?)?;
    let j_closed = cauchy_closed_form(j_nodes, j_nodes)?;

    let p = pkg.p;
    let one = CycloElem::from_int(p, 1);
    let (mut plus, mut minus, mut vs, mut den, mut x2) =
        (one.clone(), one.clone(), one.clone(), one.clone(), one.clone());
    for (r, xr) in pkg.x.iter().enumerate() {
        let a = one.add(xr);
        let b = one.sub(xr);
        plus = plus.mul(&a).mul(&a);
        minus = minus.mul(&b).mul(&b);
        x2 = x2.mul(xr).mul(xr);
        for xs in &pkg.x {
            den = den.mul(&one.add(&xr.mul(xs)));
        }
        for xs in &pkg.x[r + 1..] {
            let diff = xr.sub(xs);
            vs = vs.mul(&diff).mul(&diff);
        }
    }
    let common = vs.mul(&x2).mul(&den.inv().ok_or(Error::NotInvertible)?);
    let sign = |e: u64| if e.is_multiple_of(2) { q(1) } else { q(-1) };
    let pp = p as u64;
    #[allow(clippy::manual_div_ceil)]
    let i_expanded = minus.mul(&common).scale(&sign((pp + 3) / 4));
    let j_expanded = plus
        .sub(&minus)
        .mul(&common)
        .scale(&(sign((pp - 1) / 4) * BigRational::new(1.into(), 2.into())));

    let (a, b) = pkg.a_b();
    let pc = CycloElem::from_int(p, p as i64);
    let i_eval = a.mul(&pkg.sqrt_p).sub(&b.mul(&pc)).mul(&pkg.xi);
    let j_eval = a.mul(&pkg.sqrt_p).mul(&pkg.xi);

    let outcomes = vec![
        Outcome::new("i_cauchy_closed_form", &i_direct, &i_closed),
        Outcome::new("j_cauchy_closed_form", &j_direct, &j_closed),
        Outcome::new("i_expanded", &i_expanded, &i_direct),
        Outcome::new("j_expanded", &j_expanded, &j_direct),
        Outcome::new("i_eval", &i_eval, &i_direct),
        Outcome::new("j_eval", &j_eval, &j_direct),
    ];
    Ok((CauchyPair { i: i_direct, j: j_direct }, outcomes))
}

/// `∏(1 ± x_r)² = (−1)^{n/2} ζ^{−n(n+1)/2} (Bp ± A√p)`.
///
/// If the `+` identity fails but holds with `√p` replaced by `−√p`, the
/// Gauss-sum sign disagrees with the positive real root and the result is
/// [`Error::Convention`].
pub fn verify_product_identities(pkg: &Package) -> Result<Vec<Outcome>> {
    let p = pkg.p;
    let one = CycloElem::from_int(p, 1);
    let (mut plus, mut minus) = (one.clone(), one.clone());
    for xr in &pkg.x {
        let a = one.add(xr);
        let b = one.sub(xr);
        plus = plus.mul(&a).mul(&a);
        minus = minus.mul(&b).mul(&b);
    }
    let n = pkg.n as i64;
    let sign = if (n / 2) % 2 == 0 { q(1) } else { q(-1) };
    let front = pkg.z(-n * (n + 1) / 2).scale(&sign);
    let (a, b) = pkg.a_b();
    let bp = b.scale(&q(p as i64));
    let a_root = a.mul(&pkg.sqrt_p);
    let want_plus = front.mul(&bp.add(&a_root));
    let want_minus = front.mul(&bp.sub(&a_root));
    if plus != want_plus && (plus == want_minus || plus == want_plus.neg()) {
        return Err(Error::Convention(format!(
            "p = {p}: the product identity holds only with the sign of the Gauss sum (or of (A, B)) reversed"
        )));
    }
    Ok(vec![
        Outcome::new("prod_plus", want_plus, plus),
        Outcome::new("prod_minus", want_minus, minus),
    ])
}

/// `λⁿ (det D)² κ² ζ^{−n/2} Ξ` against `1/p`.
pub fn verify_normalising(pkg: &Package) -> Outcome {
    Outcome::new(
        "normalising",
        BigRational::new(1.into(), (pkg.p as i64).into()),
        pkg.normalising_product(),
    )
}

fn bordered_difference(pkg: &Package, mid: &Matrix<CycloElem>, g: &Matrix<CycloElem>) -> Result<CycloElem> {
    let bordered = mid.add(&Matrix::outer(&pkg.alpha, &pkg.omega))?;
    let with = det(&g.mul(&bordered)?.mul(g)?)?;
    let without = det(&g.mul(mid)?.mul(g)?)?;
    Ok(with.sub(&without))
}

/// The two bordered differences
///
/// `det(G(𝒰(t)+αωᵀ)G) − det(G𝒰(t)G) = −I − {L√p·t − 1}J`
///
/// `det(G(𝒰+ρR+αωᵀ)G) − det(G(𝒰+ρR)G) = −I − {L√p·ρ − 1}J − ρΞp^{−1/2}{Bp − A√p − √p}`
///
/// and `λ V D R D V = ω₀θᵀ`.
pub fn verify_diff_identities(
    pkg: &Package,
    ij: &CauchyPair,
    t: &BigRational,
    rho: &BigRational,
) -> Result<Vec<Outcome>> {
    let p = pkg.p;
    let g = pkg.g_diag()?;
    let l_root = pkg.sqrt_p.scale(&q(pkg.l()));
    let one = CycloElem::from_int(p, 1);
    let base = ij.i.neg();

    let lhs_t = bordered_difference(pkg, &pkg.u_mid(t)?, &g)?;
    let rhs_t = base.sub(&l_root.scale(t).sub(&one).mul(&ij.j));

    let r = pkg.r_matrix()?;
    let mid_rho = pkg.u_mid(&BigRational::zero())?.add(&r.scale(&CycloElem::from_rational(p, rho)))?;
    let lhs_rho = bordered_difference(pkg, &mid_rho, &g)?;
    let (a, b) = pkg.a_b();
    let inv_root = pkg.sqrt_p.scale(&BigRational::new(1.into(), (p as i64).into()));
    let brace = b
        .scale(&q(p as i64))
        .sub(&a.mul(&pkg.sqrt_p))
        .sub(&pkg.sqrt_p);
    let rhs_rho = base
        .sub(&l_root.scale(rho).sub(&one).mul(&ij.j))
        .sub(&pkg.xi.mul(&inv_root).mul(&brace).scale(rho));

    let r_back = pkg.sandwich(&r)?;
    let w = Matrix::outer(&pkg.omega, &pkg.theta());

    Ok(vec![
        Outcome::new(format!("diff_t(t={})", t_label(t)), rhs_t, lhs_t),
        Outcome::new(format!("diff_rho(rho={})", t_label(rho)), rhs_rho, lhs_rho),
        Outcome::new("r_factor_mismatched_entries", 0, count_mismatches(&r_back, &w)),
    ])
}

/// `det(M + αωᵀ) − det M = ωᵀ adj(M) α`.
fn adjugate_contraction(pkg: &Package, mid: &Matrix<CycloElem>) -> Result<CycloElem> {
    let bordered = mid.add(&Matrix::outer(&pkg.alpha, &pkg.omega))?;
    Ok(det(&bordered)?.sub(&det(mid)?))
}

/// `E(t)` and `F(ρ)` through `λⁿ(det D)²κ²ζ^{−n/2}·ωᵀ adj(·) α`.
pub fn adjugate_e_f(pkg: &Package, t: &BigRational, rho: &BigRational) -> Result<(BigRational, BigRational)> {
    let scalar = pkg.adjugate_scalar();
    let e = scalar.mul(&adjugate_contraction(pkg, &pkg.u_mid(t)?)?);
    let r = pkg.r_matrix()?;
    let mid_rho = pkg
        .u_mid(&BigRational::zero())?
        .add(&r.scale(&CycloElem::from_rational(pkg.p, rho)))?;
    let f = scalar.mul(&adjugate_contraction(pkg, &mid_rho)?);
    let e = e
        .as_rational()
        .ok_or_else(|| Error::mismatch("E(t) from the adjugate route", "a rational number", &e))?;
    let f = f
        .as_rational()
        .ok_or_else(|| Error::mismatch("F(ρ) from the adjugate route", "a rational number", &f))?;
    Ok((e, f))
}

/// Adjugate-route `E(t)`, `F(ρ)` against `Pt + LQ` and `L{Q + (Q−1)ρ}`.
pub fn verify_adjugate_e_f(pkg: &Package, t: &BigRational, rho: &BigRational) -> Result<Vec<Outcome>> {
    let (e, f) = adjugate_e_f(pkg, t, rho)?;
    let u = &pkg.unit;
    let l = u.l_rat();
    Ok(vec![
        Outcome::new(format!("adjugate_e(t={})", t_label(t)), &u.big_p * t + u.lq(), e),
        Outcome::new(
            format!("adjugate_f(rho={})", t_label(rho)),
            &l * (&u.q + (&u.q - BigRational::one()) * rho),
            f,
        ),
    ])
}

/// The raw bordered difference `det(𝒰(t)+αωᵀ) − det 𝒰(t)`, which the
/// adjugate route needs, in closed form: `L·p·Ξ·(Pt + LQ)`.
pub fn raw_difference_closed_form(pkg: &Package, t: &BigRational) -> CycloElem {
    let u = &pkg.unit;
    let lin = &u.big_p * t + u.lq();
    pkg.xi.scale(&(q(pkg.l()) * q(pkg.p as i64) * lin))
}

pub fn raw_difference(pkg: &Package, t: &BigRational) -> Result<CycloElem> {
    adjugate_contraction(pkg, &pkg.u_mid(t)?)
}
