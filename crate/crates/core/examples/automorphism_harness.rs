//! Test |Aut(G)| | |G| - 1 over the catalog and list the groups where it holds.

use lehmerlab::catalog_verify::{disagreements, verify_theorem1, HarnessOptions, CATALOG_NOTE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(64);
    let records = verify_theorem1(&HarnessOptions::new(max).workers(4))?;
    println!("{} groups of order <= {max} ({CATALOG_NOTE})", records.len());
    let holds: Vec<_> = records.iter().filter(|r| r.condition1).map(|r| r.name.as_str()).collect();
    println!("|Aut(G)| divides |G| - 1 for: {}", holds.join(", "));
    println!("disagreements with the prediction: {}", disagreements(&records).len());
    Ok(())
}
