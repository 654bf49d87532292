//! Sort catalog groups by whether φ(G) divides |G| - 1.

use lehmerlab::catalog_verify::{scan_relation2, HarnessOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(32);
    let buckets = scan_relation2(&HarnessOptions::new(max).workers(4))?;
    for (label, records) in
        [("holds", &buckets.holds), ("fails", &buckets.fails), ("phi(G) = 0", &buckets.undefined_zero_phi)]
    {
        let names: Vec<_> = records.iter().filter(|r| !r.is_cyclic).map(|r| r.name.as_str()).collect();
        let cyclic = records.iter().filter(|r| r.is_cyclic).count();
        println!("{label}: {cyclic} cyclic, noncyclic: {}", names.join(", "));
    }
    Ok(())
}
