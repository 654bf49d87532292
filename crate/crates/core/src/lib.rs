//! Computational tools around Lehmer's totient problem and its
//! group-theoretic analogue `|Aut(G)|` divides `|G| - 1`.
//!
//! * [`arith`]: primality, factorization, Euler's totient, Carmichael and
//!   Lehmer predicates on `u64`.
//! * [`lehmer_search`]: a parallel segmented totient sieve that scans
//!   ranges for composite `n` with `φ(n) | n - 1`.
//! * [`abelian_aut`]: exact `|Aut(G)|` for finite abelian groups.
//! * [`group_engine`]: Cayley-table groups, standard families, exponent,
//!   generalized totient and brute-force automorphism counting.
//! * [`catalog_verify`]: harnesses that run the divisibility conditions over
//!   a catalog of small groups.
//! * [`cli`]: the `lehmerlab` command-line front end.

pub mod abelian_aut;
pub mod arith;
pub mod catalog_verify;
pub mod cli;
pub mod group_engine;
pub mod lehmer_search;
