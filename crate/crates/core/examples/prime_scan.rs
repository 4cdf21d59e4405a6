//! Scans a prime range with several suites in parallel and summarises the
//! failures per check.
//!
//! cargo run --release --example prime_scan -- 5 101

use std::collections::BTreeMap;

use legdet::suites::{scan, Options, Suite};

fn main() -> legdet::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let from = args.next().flatten().unwrap_or(5);
    let to = args.next().flatten().unwrap_or(101);
    let opts = Options { points: 10, ..Options::default() };
    let suites = [Suite::Invariants, Suite::Verify48, Suite::Corollary410];
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let reports = scan(from, to, &suites, jobs, &opts)?;

    let mut failed: BTreeMap<&str, usize> = BTreeMap::new();
    for r in reports.iter().filter(|r| !r.passed()) {
        *failed.entry(r.check.as_str()).or_default() += 1;
    }
    println!("{} reports over [{from}, {to}]", reports.len());
    if failed.is_empty() {
        println!("all passed");
    }
    for (check, n) in failed {
        println!("{check}: {n} failures");
    }
    Ok(())
}
