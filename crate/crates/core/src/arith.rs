//! Primality, residues mod `p`, and the Legendre symbol.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeCtx`]. Residues are then held in a
/// `u64` and every product of two residues fits in a `u128`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// Deterministic primality by trial division up to `√x`.
pub fn is_prime(x: &BigInt) -> bool {
    if x < &BigInt::from(2) {
        return false;
    }
    if let Some(small) = x.to_u64() {
        return is_prime_u64(small);
    }
    if x.is_even() {
        return false;
    }
    let limit = x.sqrt();
    let mut d = BigInt::from(3);
    while d <= limit {
        if (x % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

fn is_prime_u64(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x < 4 {
        return true;
    }
    if x.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by quadratic reciprocity.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    assert!(n.is_positive() && n.is_odd(), "jacobi modulus must be odd and positive");
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i8;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

fn jacobi_u64(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` with `(0/p) = 0`.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    if !is_prime(p) || p == &BigInt::from(2) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    Ok(jacobi(a, p))
}

/// `base^exp mod modulus` over big integers.
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> BigInt {
    base.mod_floor(modulus).modpow(exp, modulus)
}

/// A validated odd prime together with the quantities derived from it.
///
/// In strict mode `p ≡ 1 (mod 4)` is enforced and `m = (p−1)/4` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCtx {
    p: BigInt,
    modulus: u64,
    n: u64,
    m: Option<u64>,
    l: i8,
}

impl PrimeCtx {
    /// Strict context: `p` prime with `p ≡ 1 (mod 4)`.
    pub fn new(p: impl Into<BigInt>) -> Result<Self> {
        let ctx = Self::odd(p)?;
        if ctx.m.is_none() {
            return Err(Error::WrongResidueClass(ctx.p.to_string()));
        }
        Ok(ctx)
    }

    /// Relaxed context: any odd prime. `m` is absent unless `p ≡ 1 (mod 4)`.
    pub fn odd(p: impl Into<BigInt>) -> Result<Self> {
        let p: BigInt = p.into();
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if p == BigInt::from(2) {
            return Err(Error::NotOddPrime(p.to_string()));
        }
        let modulus = match p.to_u64() {
            Some(v) if v <= MAX_PRIME => v,
            _ => return Err(Error::OutOfRange(p.to_string())),
        };
        let n = (modulus - 1) / 2;
        let m = (modulus % 4 == 1).then_some((modulus - 1) / 4);
        // (2/p) = (−1)^((p²−1)/8)
        let e = ((&p * &p - 1u32) / 8u32).is_odd();
        let l = if e { -1 } else { 1 };
        Ok(PrimeCtx {
            p,
            modulus,
            n,
            m,
            l,
        })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// `p` as a machine word, for indexing and residue arithmetic.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(p−1)/2`.
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `(p−1)/4`; present iff `p ≡ 1 (mod 4)`.
    pub fn m(&self) -> Option<usize> {
        self.m.map(|m| m as usize)
    }

    /// `(p−1)/4`, for callers that hold a strict context.
    pub fn m_strict(&self) -> usize {
        self.m().expect("strict prime context")
    }

    /// `L = (2/p)`.
    pub fn l(&self) -> i8 {
        self.l
    }

    /// `χ(t) = (t/p)` for a machine integer.
    pub fn chi(&self, t: i64) -> i8 {
        jacobi_u64(self.reduce(t), self.modulus)
    }

    /// `χ(t)` for a big integer.
    pub fn chi_big(&self, t: &BigInt) -> i8 {
        jacobi(t, &self.p)
    }

    /// Residue of `t` in `[0, p)`.
    pub fn reduce(&self, t: i64) -> u64 {
        t.rem_euclid(self.modulus as i64) as u64
    }

    pub fn fp(&self, t: i64) -> Fp {
        Fp::new(t, self.modulus)
    }

    pub fn fp_big(&self, t: &BigInt) -> Fp {
        let v = t.mod_floor(&self.p).to_u64().expect("residue fits");
        Fp { v, p: self.modulus }
    }
}

impl fmt::Display for PrimeCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} n={} L={}", self.p, self.n, self.l)?;
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        Ok(())
    }
}

/// A residue modulo a prime `p ≤ MAX_PRIME`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(t: i64, p: u64) -> Self {
        Fp {
            v: t.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Symmetric representative in `(−p/2, p/2]`.
    pub fn centered(self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        Some(self.pow(self.p - 2))
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    /// Legendre symbol of this residue.
    pub fn legendre(self) -> i8 {
        jacobi_u64(self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        let s = self.v + o.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v },
            p: self.p,
        }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

/// Odd primes `p ≡ 1 (mod 4)` in `[from, to]`.
pub fn primes_1_mod_4(from: u64, to: u64) -> Vec<u64> {
    (from.max(5)..=to)
        .filter(|&q| q % 4 == 1 && is_prime_u64(q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&big(0), &big(5)).unwrap(), 0);
        assert_eq!(legendre(&big(2), &big(5)).unwrap(), -1);
        assert_eq!(legendre(&big(2), &big(17)).unwrap(), 1);
        assert_eq!(legendre(&big(-3), &big(7)).unwrap(), 1);
    }

    #[test]
    fn legendre_rejects_non_primes() {
        assert!(matches!(legendre(&big(1), &big(9)), Err(Error::NotOddPrime(_))));
        assert!(matches!(legendre(&big(1), &big(2)), Err(Error::NotOddPrime(_))));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&big(41)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(91)));
        assert!(!is_prime(&big(0)));
        assert!(is_prime(&big(2)));
        assert!(is_prime(&big(999_983)));
        assert!(!is_prime(&big(999_981)));
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (x, &expect) in sieve.iter().enumerate() {
            assert_eq!(is_prime(&big(x as i64)), expect, "x = {x}");
        }
    }

    #[test]
    fn prime_ctx_examples() {
        let c = PrimeCtx::new(13).unwrap();
        assert_eq!((c.n(), c.m(), c.l()), (6, Some(3), -1));
        assert_eq!(PrimeCtx::new(9), Err(Error::NotPrime("9".into())));
        assert_eq!(PrimeCtx::new(7), Err(Error::WrongResidueClass("7".into())));
        let relaxed = PrimeCtx::odd(7).unwrap();
        assert_eq!(relaxed.m(), None);
        assert_eq!(relaxed.l(), 1);
        assert!(matches!(PrimeCtx::odd(2), Err(Error::NotOddPrime(_))));
    }

    #[test]
    fn two_is_residue_iff_p_is_pm1_mod_8() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
            let c = PrimeCtx::odd(p).unwrap();
            let expect = if p % 8 == 1 || p % 8 == 7 { 1 } else { -1 };
            assert_eq!(c.l(), expect);
            assert_eq!(c.chi(2), expect);
        }
    }

    #[test]
    fn euler_criterion_small_primes() {
        for p in (3..=101i64).filter(|&q| is_prime(&big(q))) {
            let ctx = PrimeCtx::odd(p).unwrap();
            for z in 0..p {
                let e = mod_pow(&big(z), &big((p - 1) / 2), &big(p));
                let expect = match ctx.chi(z) {
                    0 => big(0),
                    1 => big(1),
                    _ => big(p - 1),
                };
                assert_eq!(e, expect, "p={p} z={z}");
                assert_eq!(ctx.chi_big(&big(z)), ctx.chi(z));
            }
        }
    }

    #[test]
    fn fp_field_ops() {
        let a = Fp::new(-3, 13);
        assert_eq!(a.value(), 10);
        assert_eq!(a.centered(), -3);
        assert_eq!((a * a.inverse().unwrap()).value(), 1);
        assert_eq!((a + Fp::new(3, 13)).value(), 0);
        assert_eq!((-a).value(), 3);
        assert_eq!(Fp::new(0, 13).inverse(), None);
    }

    #[test]
    fn primes_in_range() {
        assert_eq!(primes_1_mod_4(5, 41), vec![5, 13, 17, 29, 37, 41]);
        assert_eq!(primes_1_mod_4(5, 97).len(), 11);
    }
}
