//! Runs the cyclotomic suite for one prime and prints every check, including
//! the ones that do not hold.
//!
//! cargo run --release --example cyclotomic_suite -- 13

use legdet::report::{write_reports, Format};
use legdet::suites::{cyclo_suite, Options};

fn main() -> legdet::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let reports = cyclo_suite(p, &Options::default())?;
    write_reports(std::io::stdout().lock(), &reports, Format::Text).expect("stdout");
    Ok(())
}
