//! Fundamental unit, class number and the `(p, L, A, B, LQ)` row for each
//! prime p ≡ 1 (mod 4) below a bound, next to `det H` computed directly.
//!
//! cargo run --example invariants_table -- 101

use legdet::arith::primes_1_mod_4;
use legdet::exactla::bareiss_det;
use legdet::minor::build_h_int;
use legdet::quadfield::unit_data;
use legdet::PrimeCtx;

fn main() -> legdet::Result<()> {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(61);
    println!("{:>4} {:>3} {:>28} {:>3}  row / det H", "p", "L", "ε", "h");
    for p in primes_1_mod_4(5, bound) {
        let ctx = PrimeCtx::new(p)?;
        let u = unit_data(&ctx)?;
        let det_h = bareiss_det(&build_h_int(&ctx))?;
        println!("{p:>4} {:>3} {:>28} {:>3}  {}  {det_h}", u.l, u.eps.to_string(), u.h, u.row());
    }
    Ok(())
}
