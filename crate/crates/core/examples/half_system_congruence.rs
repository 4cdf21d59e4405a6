//! The half-system determinant mod p on random half-systems, the sign-pair
//! corollary, and the square classes of P_m.
//!
//! cargo run --example half_system_congruence -- 29 5

use legdet::halfsys::{corollary_check, d_det, pm_checks, random_half_system, rhs_formula};
use legdet::PrimeCtx;

fn main() -> legdet::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(29);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let ctx = PrimeCtx::new(p)?;
    let hs = random_half_system(&ctx, seed);
    println!("A0 = {hs}");
    for (u, v) in [(1, 1), (2, 3), (5, p as i64 - 1), (0, 4)] {
        let (u, v) = (ctx.fp(u), ctx.fp(v));
        println!(
            "u={:<3} v={:<3} det = {:<3} rhs = {}",
            u.value(),
            v.value(),
            d_det(&hs, u, v).value(),
            rhs_formula(&hs, u, v).value()
        );
    }
    for (d1, d2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        for o in corollary_check(&ctx, d1, d2)? {
            println!("{o}");
        }
    }
    for o in pm_checks(&ctx) {
        println!("{o}");
    }
    Ok(())
}
