//! Builds the inverse package for one prime, reduces the bordered
//! determinant to a polynomial in (x, y, z, w), and checks it against brute
//! force at a few points.
//!
//! cargo run --example four_variable_identity -- 13

use legdet::minor::{eval_identity, grid_points, inverse_package, random_points, sample_point, symbolic_det};
use legdet::quadfield::unit_data;
use legdet::PrimeCtx;

fn main() -> legdet::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(13);
    let ctx = PrimeCtx::new(p)?;
    let unit = unit_data(&ctx)?;
    let pkg = inverse_package(&ctx)?;
    let g = |r, c| pkg.g.get(r, c).to_string();
    println!("p = {p}, det H = {}, G = [[{}, {}], [{}, {}]]", pkg.det_h, g(0, 0), g(0, 1), g(1, 0), g(1, 1));
    let poly = symbolic_det(&pkg);
    println!("det = {poly}");
    println!("P = {}, L = {}, Q = {}", unit.big_p, unit.l, unit.q);

    let mut points = grid_points();
    points.push(sample_point());
    points.extend(random_points(7, 5));
    let mut bad = 0;
    for pt in &points {
        let o = eval_identity(&ctx, &poly, pt)?;
        if !o.holds() {
            bad += 1;
            println!("{o}");
        }
    }
    println!("{} points, {bad} mismatches", points.len());
    Ok(())
}
