//! Which abelian groups of order up to N satisfy |Aut(G)| | |G| - 1?

use lehmerlab::abelian_aut::{abelian_specs_of_order, satisfies_condition1};
use lehmerlab::arith::is_prime;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4096);
    let mut hits = Vec::new();
    let mut total = 0usize;
    for n in 2..=max {
        for spec in abelian_specs_of_order(n)? {
            total += 1;
            if satisfies_condition1(&spec)? {
                hits.push((spec.name(), spec.is_cyclic() && is_prime(n)));
            }
        }
    }
    println!("{total} abelian groups of order <= {max}");
    let prime_cyclic = hits.iter().filter(|(_, p)| *p).count();
    println!("{} satisfy the condition, {prime_cyclic} of them cyclic of prime order", hits.len());
    let names: Vec<_> = hits.iter().take(20).map(|(name, _)| name.as_str()).collect();
    println!("{}", names.join(", "));
    Ok(())
}
