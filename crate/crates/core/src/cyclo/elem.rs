use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactla::Field;

/// An element of `ℚ(ζ_p)` in the power basis `1, ζ, …, ζ^{p−2}`.
///
/// Stored as integer numerators over one positive common denominator, in
/// lowest terms, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    p: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloElem {
    fn normalized(p: usize, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), p - 1);
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            return CycloElem { p, num, den: BigInt::one() };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        CycloElem { p, num, den }
    }

    pub fn zero(p: usize) -> Self {
        CycloElem {
            p,
            num: vec![BigInt::zero(); p - 1],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(p: usize, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); p - 1];
        num[0] = q.numer().clone();
        CycloElem::normalized(p, num, q.denom().clone())
    }

    pub fn from_int(p: usize, v: i64) -> Self {
        CycloElem::from_rational(p, &BigRational::from_integer(v.into()))
    }

    /// Coordinates in the power basis; `coeffs.len()` must be `p − 1`.
    pub fn from_coeffs(p: usize, coeffs: &[BigRational]) -> Self {
        assert_eq!(coeffs.len(), p - 1, "power-basis length");
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        CycloElem::normalized(p, num, den)
    }

    /// Coefficients of a polynomial in `ζ` of any length, reduced with
    /// `ζ^p = 1` and `Φ_p(ζ) = 0`.
    fn from_wrapped(p: usize, mut full: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(full.len(), p);
        let top = full.pop().expect("length p");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        CycloElem::normalized(p, full, den)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(p: usize, k: i64) -> Self {
        let mut full = vec![BigInt::zero(); p];
        full[k.rem_euclid(p as i64) as usize] = BigInt::one();
        CycloElem::from_wrapped(p, full, BigInt::one())
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "different cyclotomic fields");
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return CycloElem::normalized(self.p, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CycloElem::normalized(self.p, num, &self.den * &rhs.den)
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            p: self.p,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "different cyclotomic fields");
        let p = self.p;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        CycloElem::from_wrapped(p, full, &self.den * &rhs.den)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloElem::normalized(self.p, num, &self.den * q.denom())
    }

    /// The automorphism `ζ ↦ ζ^k`, `p ∤ k`.
    pub fn conjugate(&self, k: i64) -> Self {
        let p = self.p;
        assert!(k.rem_euclid(p as i64) != 0, "ζ ↦ ζ^0 is not an automorphism");
        let mut full = vec![BigInt::zero(); p];
        for (i, c) in self.num.iter().enumerate() {
            full[(i as i64 * k).rem_euclid(p as i64) as usize] += c;
        }
        CycloElem::from_wrapped(p, full, self.den.clone())
    }

    /// Inverse by extended Euclid against `Φ_p = 1 + x + … + x^{p−1}`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let a: Vec<BigRational> = self.num.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let phi = vec![BigRational::one(); self.p];
        let s = poly_inverse_mod(&a, &phi)?;
        let mut coeffs = vec![BigRational::zero(); self.p - 1];
        for (i, c) in s.into_iter().enumerate() {
            coeffs[i] = c;
        }
        // a was den·self, so den·s is the inverse of self.
        Some(CycloElem::from_coeffs(self.p, &coeffs).scale(&BigRational::from_integer(self.den.clone())))
    }

    /// `N(a) = ∏_k σ_k(a)`, a rational number.
    pub fn norm(&self) -> BigRational {
        let prod = self.co_norm().mul(self);
        prod.as_rational().expect("the norm lies in ℚ")
    }

    // ∏_{k=2}^{p−1} σ_k(a)
    fn co_norm(&self) -> Self {
        let mut prod = CycloElem::from_int(self.p, 1);
        for k in 2..self.p as i64 {
            prod = prod.mul(&self.conjugate(k));
        }
        prod
    }

    /// Inverse as `∏_{k≥2} σ_k(a) / N(a)`; an independent route used to
    /// check the Euclidean one.
    pub fn inv_by_norm(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let co = self.co_norm();
        let n = co.mul(self).as_rational().expect("the norm lies in ℚ");
        Some(co.scale(&n.recip()))
    }

    pub fn pow_i(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("nonzero base") } else { self.clone() };
        Field::pow(&base, e.unsigned_abs())
    }
}

type QPoly = Vec<BigRational>;

fn trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn poly_sub_scaled_shift(a: &mut QPoly, b: &[BigRational], c: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        a[i + shift] -= c * bi;
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    let mut quo = vec![BigRational::zero(); r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        poly_sub_scaled_shift(&mut r, &b, &c, shift);
        quo[shift] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out = a.to_vec();
    poly_sub_scaled_shift(&mut out, b, &BigRational::one(), 0);
    trim(out)
}

/// `s` with `a·s ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let (mut r0, mut r1) = (trim(m.to_vec()), poly_divmod(a, m).1);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let s: QPoly = s0.iter().map(|x| x * &c).collect();
    Some(poly_divmod(&s, m).1)
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let abs = q.abs();
            if first {
                if q.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if q.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !One::is_one(&abs) {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        f.write_str("ζ")?;
                    } else {
                        write!(f, "ζ^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Field for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.p)
    }
    fn one_like(&self) -> Self {
        CycloElem::from_int(self.p, 1)
    }
    fn from_i64_like(&self, v: i64) -> Self {
        CycloElem::from_int(self.p, v)
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}
