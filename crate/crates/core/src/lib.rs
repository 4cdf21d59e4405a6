//! Exact verification of two families of Legendre-symbol determinant
//! evaluations for primes `p ≡ 1 (mod 4)`.
//!
//! * The four-variable determinant
//!   `det[x + χ(j−k+1) + χ(j)y + χ(k)z + χ(jk)w]` over `0 ≤ j,k < (p−1)/2`,
//!   reduced to the adjacent minor `H = [χ(j−k+1)]` and its inverse package
//!   ([`minor`]), with the cyclotomic factorisation machinery behind it
//!   ([`cyclo`]) and the real quadratic field invariants it is expressed in
//!   ([`quadfield`]).
//! * The mod-`p` congruence for half-system determinants
//!   `det[χ(a_i+a_j) + χ(a_i−a_j) + u χ(a_i² + v a_j²)]` ([`halfsys`]).
//!
//! Every computation is exact: big integers, big rationals, residues mod `p`
//! and elements of `ℚ(ζ_p)`. The [`suites`] module bundles the individual
//! checks into per-prime verification runs that emit [`report::Report`]s;
//! the `legdet` binary is a thin command-line front end over it.

pub mod arith;
pub mod cyclo;
pub mod error;
pub mod exactla;
pub mod halfsys;
pub mod minor;
pub mod quadfield;
pub mod report;
pub mod suites;

pub use arith::{is_prime, legendre, Fp, PrimeCtx};
pub use error::{Error, Result};
pub use exactla::{Field, Matrix};
pub use quadfield::{QuadElem, UnitData};
pub use report::{Outcome, Report, Status};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational used throughout.
pub type Rat = num_rational::BigRational;
