//! Invariants of the real quadratic field `ℚ(√p)` for a prime `p ≡ 1 (mod 4)`:
//! the fundamental unit, the class number, and the coordinates `(A, B)` of
//! `ε^{(2−L)h} = A + B√p` together with `Q = B − A` and `P = pB − A`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::PrimeCtx;
use crate::error::{Error, Result};

/// Below this prime the unit is found by direct search over `v`; above it by
/// the continued fraction of `(1+√p)/2`.
pub const SEARCH_CUTOFF: u64 = 150;

/// `u + v√p` with `2u, 2v ∈ ℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    u: BigRational,
    v: BigRational,
    p: BigInt,
}

impl QuadElem {
    pub fn new(u: BigRational, v: BigRational, p: BigInt) -> Result<Self> {
        let two = BigRational::from_integer(2.into());
        if !(&u * &two).is_integer() || !(&v * &two).is_integer() {
            return Err(Error::InvalidArgument(format!(
                "{u} + {v}√{p} is off the half-integer lattice"
            )));
        }
        Ok(QuadElem { u, v, p })
    }

    /// `(u + v√p) / 2` from integers.
    pub fn halves(u: BigInt, v: BigInt, p: BigInt) -> Self {
        let two = BigInt::from(2);
        QuadElem {
            u: BigRational::new(u, two.clone()),
            v: BigRational::new(v, two),
            p,
        }
    }

    pub fn one(p: BigInt) -> Self {
        QuadElem {
            u: BigRational::one(),
            v: BigRational::zero(),
            p,
        }
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// `u² − p v²`.
    pub fn norm(&self) -> BigRational {
        &self.u * &self.u - BigRational::from_integer(self.p.clone()) * &self.v * &self.v
    }

    pub fn mul(&self, rhs: &QuadElem) -> QuadElem {
        assert_eq!(self.p, rhs.p, "elements of different fields");
        let p = BigRational::from_integer(self.p.clone());
        QuadElem {
            u: &self.u * &rhs.u + p * &self.v * &rhs.v,
            v: &self.u * &rhs.v + &self.v * &rhs.u,
            p: self.p.clone(),
        }
    }

    pub fn pow(&self, mut e: u64) -> QuadElem {
        let mut acc = QuadElem::one(self.p.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `u + v√p > 1` under the embedding with `√p > 0`, decided exactly.
    pub fn exceeds_one(&self) -> bool {
        // Compare v√p with 1 − u by signs and squares.
        let rhs = BigRational::one() - &self.u;
        let lhs_sign = self.v.signum();
        let p = BigRational::from_integer(self.p.clone());
        let lhs_sq = &self.v * &self.v * p;
        let rhs_sq = &rhs * &rhs;
        match (lhs_sign.is_positive(), rhs.is_positive()) {
            (true, false) => true,
            (true, true) => lhs_sq > rhs_sq,
            (false, true) => false,
            (false, false) => {
                if lhs_sign.is_zero() {
                    rhs.is_negative()
                } else {
                    lhs_sq < rhs_sq
                }
            }
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let two = BigRational::from_integer(2.into());
        let (u2, v2) = (&self.u * &two, &self.v * &two);
        if self.u.is_integer() && self.v.is_integer() {
            write!(f, "{} + {}√{}", self.u, self.v, self.p)
        } else {
            write!(f, "({} + {}√{})/2", u2, v2, self.p)
        }
    }
}

fn perfect_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

/// Smallest unit `> 1` found by scanning `v = 1, 2, …, v_limit` for
/// `u² − p v² = ±4`; the smaller `u` wins when both signs solve.
pub fn fundamental_unit_by_search(ctx: &PrimeCtx, v_limit: u64) -> Option<QuadElem> {
    let p = ctx.p();
    for v in 1..=v_limit {
        let pv2 = p * BigInt::from(v) * BigInt::from(v);
        let minus = perfect_sqrt(&(&pv2 - 4));
        let plus = perfect_sqrt(&(&pv2 + 4));
        if let Some(u) = minus.or(plus) {
            return Some(QuadElem::halves(u, BigInt::from(v), p.clone()));
        }
    }
    None
}

/// Fundamental unit from the continued fraction of `ω = (1+√p)/2`.
///
/// Convergents `h/k` are tested for `N(h − kω) = h² − hk − ((p−1)/4)k² = ±1`;
/// the first hit gives `ε = h − kω̄ = (2h − k + k√p)/2`.
pub fn fundamental_unit_by_continued_fraction(ctx: &PrimeCtx) -> QuadElem {
    let p = ctx.p().clone();
    let s = p.sqrt();
    let c = (&p - 1) / 4;
    // Complete quotients (P + √p)/Q.
    let (mut big_p, mut big_q) = (BigInt::one(), BigInt::from(2));
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (&big_p + &s).div_floor(&big_q);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let norm: BigInt = &h * &h - &h * &k - &c * &k * &k;
        if norm.abs().is_one() {
            return QuadElem::halves(BigInt::from(2) * &h - &k, k.clone(), p);
        }
        big_p = &a * &big_q - &big_p;
        big_q = (&p - &big_p * &big_p) / &big_q;
    }
}

/// The smallest unit `> 1` of the ring of integers of `ℚ(√p)`.
pub fn fundamental_unit(ctx: &PrimeCtx) -> QuadElem {
    if ctx.modulus() < SEARCH_CUTOFF {
        if let Some(e) = fundamental_unit_by_search(ctx, 1_000_000) {
            return e;
        }
    }
    fundamental_unit_by_continued_fraction(ctx)
}

/// Indefinite binary quadratic form `a x² + b xy + c y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    fn discriminant(&self) -> i128 {
        self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128
    }
}

/// Reduced forms of discriminant `p`: `0 < b < √p` and
/// `√p − b < 2|a| < √p + b`.
pub fn reduced_forms(ctx: &PrimeCtx) -> Vec<Form> {
    let d = ctx.modulus() as i64;
    let s = (d as u64).sqrt() as i64;
    let mut out = Vec::new();
    for b in (1..=s).filter(|b| b % 2 == 1) {
        let ac = (b * b - d) / 4;
        let target = -ac;
        for a_abs in 1..=target {
            if target % a_abs != 0 {
                continue;
            }
            if !is_reduced_pair(a_abs, b, d) {
                continue;
            }
            for a in [a_abs, -a_abs] {
                let c = ac / a;
                out.push(Form { a, b, c });
            }
        }
    }
    out
}

// √d − b < 2|a| < √d + b with √d irrational.
fn is_reduced_pair(a_abs: i64, b: i64, d: i64) -> bool {
    let two_a = 2 * a_abs;
    let lower = (two_a + b) * (two_a + b) > d;
    let upper = two_a - b < 0 || (two_a - b) * (two_a - b) < d;
    lower && upper
}

/// `ρ(a, b, c) = (c, b', (b'² − D)/(4c))` with `b' ≡ −b (mod 2c)` and
/// `√D − 2|c| < b' < √D`.
pub fn rho(f: Form, d: i64) -> Form {
    let s = (d as u64).sqrt() as i64;
    let m = 2 * f.c.abs();
    let b = s - (s + f.b).rem_euclid(m);
    let c = (b * b - d) / (4 * f.c);
    Form { a: f.c, b, c }
}

/// Number of cycles of reduced forms of discriminant `p` under `ρ`, i.e.
/// the narrow class number. For `p ≡ 1 (mod 4)` the fundamental unit has
/// norm −1, so this is also the class number; that norm is asserted.
pub fn class_number(ctx: &PrimeCtx) -> Result<u64> {
    if ctx.m().is_none() {
        return Err(Error::WrongResidueClass(ctx.p().to_string()));
    }
    let eps = fundamental_unit(ctx);
    let norm = eps.norm();
    if norm != BigRational::from_integer((-1).into()) {
        return Err(Error::mismatch("norm of the fundamental unit", "-1", norm));
    }
    Ok(narrow_class_number(ctx))
}

pub fn narrow_class_number(ctx: &PrimeCtx) -> u64 {
    let d = ctx.modulus() as i64;
    let forms = reduced_forms(ctx);
    let mut seen: HashSet<Form> = HashSet::new();
    let mut cycles = 0;
    for f in &forms {
        if seen.contains(f) {
            continue;
        }
        cycles += 1;
        let mut g = *f;
        loop {
            debug_assert_eq!(g.discriminant(), d as i128);
            seen.insert(g);
            g = rho(g, d);
            if g == *f {
                break;
            }
        }
    }
    cycles
}

/// `ε`, `h`, and the coordinates of `ε^{(2−L)h}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitData {
    pub p: BigInt,
    pub l: i8,
    pub eps: QuadElem,
    pub h: u64,
    pub a: BigRational,
    pub b: BigRational,
    pub q: BigRational,
    pub big_p: BigRational,
}

impl UnitData {
    /// `(2 − L)·h`.
    pub fn exponent(&self) -> u64 {
        (2 - self.l as i64) as u64 * self.h
    }

    pub fn l_rat(&self) -> BigRational {
        BigRational::from_integer(self.l.into())
    }

    /// `L·Q = L(B − A)`.
    pub fn lq(&self) -> BigRational {
        self.l_rat() * &self.q
    }

    /// `(p, L, A, B, L(B−A))` as comma-separated exact values.
    pub fn row(&self) -> String {
        format!("{},{},{},{},{}", self.p, self.l, self.a, self.b, self.lq())
    }
}

/// Assemble `L`, `ε`, `h`, raise `ε` to `(2−L)h`, and read off `A, B, Q, P`.
pub fn unit_data(ctx: &PrimeCtx) -> Result<UnitData> {
    let h = class_number(ctx)?;
    let eps = fundamental_unit(ctx);
    let l = ctx.l();
    let e = (2 - l as i64) as u64 * h;
    let power = eps.pow(e);
    let sign = if e.is_multiple_of(2) { 1 } else { -1 };
    let norm = power.norm();
    if norm != BigRational::from_integer(sign.into()) {
        return Err(Error::mismatch("norm of the unit power", sign, norm));
    }
    let a = power.u().clone();
    let b = power.v().clone();
    let q = &b - &a;
    if q.is_zero() {
        return Err(Error::mismatch("Q = B − A", "nonzero", "0"));
    }
    let big_p = BigRational::from_integer(ctx.p().clone()) * &b - &a;
    Ok(UnitData {
        p: ctx.p().clone(),
        l,
        eps,
        h,
        a,
        b,
        q,
        big_p,
    })
}

impl UnitData {
    pub fn h_as_u32(&self) -> u32 {
        self.h.to_u32().unwrap_or(u32::MAX)
    }
}
