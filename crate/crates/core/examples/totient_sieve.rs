//! Sieve φ over a window and compare a few values with factorization.

use lehmerlab::arith::{euler_phi, factorize};
use lehmerlab::lehmer_search::sieve_phi_segment;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lo = 1_000_000_000_000u64;
    let values = sieve_phi_segment(lo, lo + 20)?;
    for (n, phi) in values {
        assert_eq!(phi, euler_phi(n));
        println!("phi({n}) = {phi:<14} n = {}", factorize(n)?);
    }
    Ok(())
}
