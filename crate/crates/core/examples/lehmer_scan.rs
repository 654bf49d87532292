//! Scan a range for composite n with φ(n) | n - 1.
//!
//! ```text
//! cargo run --release --example lehmer_scan -- 10000000 4
//! ```

use lehmerlab::lehmer_search::{scan_range, ScanConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let hi: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1_000_000);
    let workers: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);

    let report = scan_range(&ScanConfig::new(2, hi).workers(workers))?;
    println!("range [{}, {}], {} workers", report.lo, report.hi, workers);
    println!("composites tested: {}", report.composites_tested);
    println!("candidates: {:?}", report.lehmer_candidates);
    println!("elapsed: {} ms", report.elapsed_ms);
    Ok(())
}
