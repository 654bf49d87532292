//! |Aut(G)| for every abelian group of a given order.

use lehmerlab::abelian_aut::{abelian_specs_of_order, aut_order, AbelianSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(72);
    for spec in abelian_specs_of_order(n)? {
        println!("{:<32} {:<14} |Aut| = {}", spec.name(), spec.to_string(), aut_order(&spec));
    }

    let big: AbelianSpec = "2^1,1,1,1,1,1,1,1".parse()?;
    println!("\n{}: |Aut| = {}", big.name(), aut_order(&big));
    Ok(())
}
