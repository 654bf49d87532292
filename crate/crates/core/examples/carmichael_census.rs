//! Count Carmichael numbers below successive powers of ten.

use lehmerlab::lehmer_search::{scan_range, ScanConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let top: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    let report = scan_range(&ScanConfig::new(2, 10u64.pow(top)).carmichael(true).workers(4))?;
    let found = report.carmichael_found.unwrap_or_default();
    for k in 3..=top {
        let bound = 10u64.pow(k);
        println!("below 10^{k}: {}", found.iter().filter(|&&n| n < bound).count());
    }
    println!("first few: {:?}", &found[..found.len().min(8)]);
    Ok(())
}
