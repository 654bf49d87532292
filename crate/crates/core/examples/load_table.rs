//! Load a Cayley table from disk, or report why it is not a group.
//!
//! ```text
//! cargo run --example load_table -- crates/core/examples/tables/frobenius21.table
//! ```

use std::fs::File;
use std::io::BufReader;

use lehmerlab::group_engine::{aut_order_bruteforce, load_cayley_table, order_cap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let default = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tables/frobenius21.table");
    let path = std::env::args().nth(1).unwrap_or_else(|| default.to_string());
    match load_cayley_table(BufReader::new(File::open(&path)?)) {
        Ok(g) => {
            println!("{path}: order {}, abelian {}", g.order(), g.is_abelian());
            println!("exp = {}, phi = {}", g.exponent(), g.phi_g());
            println!("|Aut| = {}", aut_order_bruteforce(&g, order_cap())?);
        }
        Err(e) => println!("{path}: rejected: {e}"),
    }
    Ok(())
}
