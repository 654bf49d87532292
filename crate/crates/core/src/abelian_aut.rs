//! Automorphism counts of finite abelian groups in closed form.
//!
//! An abelian `p`-group is described by its ascending exponent partition
//! `n_1 <= ... <= n_k`, i.e. `Z_{p^n_1} x ... x Z_{p^n_k}`. With
//! `a_r = max{s : n_s = n_r}` and `b_r = min{s : n_s = n_r}` (1-based),
//!
//! ```text
//! |Aut| = ∏_i (p^{a_i} - p^{i-1}) · ∏_u p^{n_u (k - a_u)} · ∏_v p^{(n_v - 1)(k - b_v + 1)}
//! ```
//!
//! and the count for an arbitrary finite abelian group is the product over
//! its primary components. All results are exact [`BigUint`]s.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("partition must be nonempty with positive parts")]
    BadPartition,
    #[error("prime {0} appears in more than one component")]
    DuplicatePrime(u64),
    #[error("index {r} out of range 1..={k}")]
    IndexOutOfRange { r: usize, k: usize },
    #[error("|Aut(G)| | |G| - 1 needs a group of order at least 2")]
    TrivialGroup,
    #[error("cannot parse abelian spec {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// The abelian `p`-group `∏ Z_{p^{n_i}}`, with the partition kept ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimaryComponent {
    p: u64,
    partition: Vec<u32>,
}

impl PrimaryComponent {
    /// Sorts `partition` ascending.
    pub fn new(p: u64, mut partition: Vec<u32>) -> Result<Self, AbelianError> {
        if !arith::is_prime(p) {
            return Err(AbelianError::NotPrime(p));
        }
        if partition.is_empty() || partition.contains(&0) {
            return Err(AbelianError::BadPartition);
        }
        partition.sort_unstable();
        Ok(PrimaryComponent { p, partition })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn partition(&self) -> &[u32] {
        &self.partition
    }

    pub fn rank(&self) -> usize {
        self.partition.len()
    }

    /// `Σ n_i`, so the component has order `p^log_order`.
    pub fn log_order(&self) -> u32 {
        self.partition.iter().sum()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.log_order())
    }

    pub fn is_cyclic_of_prime_order(&self) -> bool {
        self.partition == [1]
    }
}

impl fmt::Display for PrimaryComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^", self.p)?;
        for (i, n) in self.partition.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// A finite abelian group as primary components over distinct primes,
/// stored in increasing prime order. No components means the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianSpec {
    components: Vec<PrimaryComponent>,
}

impl AbelianSpec {
    pub fn trivial() -> Self {
        AbelianSpec::default()
    }

    pub fn new(mut components: Vec<PrimaryComponent>) -> Result<Self, AbelianError> {
        components.sort_by_key(|c| c.p);
        if let Some(w) = components.windows(2).find(|w| w[0].p == w[1].p) {
            return Err(AbelianError::DuplicatePrime(w[0].p));
        }
        Ok(AbelianSpec { components })
    }

    pub fn components(&self) -> &[PrimaryComponent] {
        &self.components
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    /// Cyclic iff each primary component has a single part.
    pub fn is_cyclic(&self) -> bool {
        self.components.iter().all(|c| c.rank() == 1)
    }

    /// `Z_{p^n}` factors in component order, e.g. `[2, 4, 3]` for `2^1,2;3^1`.
    pub fn cyclic_factors(&self) -> Vec<u64> {
        self.components.iter().flat_map(|c| c.partition.iter().map(move |&n| c.p.pow(n))).collect()
    }

    /// Human-readable name such as `Z_2 x Z_4 x Z_3`.
    pub fn name(&self) -> String {
        if self.is_trivial() {
            return "1".to_string();
        }
        self.cyclic_factors().iter().map(|q| format!("Z_{q}")).collect::<Vec<_>>().join(" x ")
    }
}

/// Text form `p^e1,e2,...;q^f1,...`; the trivial group is written `1`.
impl fmt::Display for AbelianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Grammar (whitespace around tokens is ignored):
///
/// ```text
/// spec      := "1" | component (";" component)*
/// component := prime "^" exponent ("," exponent)*
/// ```
impl FromStr for AbelianSpec {
    type Err = AbelianError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fail = |reason: String| AbelianError::Parse { text: text.to_string(), reason };
        let trimmed = text.trim();
        if trimmed == "1" {
            return Ok(AbelianSpec::trivial());
        }
        if trimmed.is_empty() {
            return Err(fail("empty spec".into()));
        }
        let mut components = Vec::new();
        for part in trimmed.split(';') {
            let (p, exps) =
                part.split_once('^').ok_or_else(|| fail(format!("component {:?} lacks '^'", part.trim())))?;
            let p: u64 = p.trim().parse().map_err(|_| fail(format!("bad prime {:?}", p.trim())))?;
            let partition = exps
                .split(',')
                .map(|e| e.trim().parse::<u32>().map_err(|_| fail(format!("bad exponent {:?}", e.trim()))))
                .collect::<Result<Vec<_>, _>>()?;
            components.push(PrimaryComponent::new(p, partition).map_err(|e| fail(e.to_string()))?);
        }
        AbelianSpec::new(components).map_err(|e| fail(e.to_string()))
    }
}

fn check_index(partition: &[u32], r: usize) -> Result<(), AbelianError> {
    if r == 0 || r > partition.len() {
        return Err(AbelianError::IndexOutOfRange { r, k: partition.len() });
    }
    Ok(())
}

/// `max{s : n_s = n_r}`, 1-based, for an ascending partition.
pub fn a_index(partition: &[u32], r: usize) -> Result<usize, AbelianError> {
    check_index(partition, r)?;
    let target = partition[r - 1];
    Ok(partition.iter().rposition(|&n| n == target).unwrap() + 1)
}

/// `min{s : n_s = n_r}`, 1-based, for an ascending partition.
pub fn b_index(partition: &[u32], r: usize) -> Result<usize, AbelianError> {
    check_index(partition, r)?;
    let target = partition[r - 1];
    Ok(partition.iter().position(|&n| n == target).unwrap() + 1)
}

/// `|Aut(∏ Z_{p^{n_i}})|`.
pub fn aut_order_primary(c: &PrimaryComponent) -> BigUint {
    let p = BigUint::from(c.p);
    let k = c.rank();
    let nu = &c.partition;
    let mut first = BigUint::one();
    let mut log_p: u64 = 0;
    for r in 1..=k {
        let a = a_index(nu, r).expect("r in range");
        let b = b_index(nu, r).expect("r in range");
        first *= p.pow(a as u32) - p.pow(r as u32 - 1);
        let n = nu[r - 1] as u64;
        log_p += n * (k - a) as u64;
        log_p += (n - 1) * (k - b + 1) as u64;
    }
    first * p.pow(u32::try_from(log_p).expect("exponent fits u32"))
}

/// Product of [`aut_order_primary`] over components; 1 for the trivial group.
pub fn aut_order(spec: &AbelianSpec) -> BigUint {
    spec.components.iter().map(aut_order_primary).product()
}

pub fn group_order(spec: &AbelianSpec) -> BigUint {
    spec.components.iter().map(PrimaryComponent::order).product()
}

/// `Z_n` as `∏ Z_{p^e}` over the prime powers exactly dividing `n`.
pub fn decompose_cyclic(n: u64) -> Result<AbelianSpec, arith::ArithError> {
    let f = arith::factorize(n)?;
    let components = f.factors().iter().map(|&(p, e)| PrimaryComponent { p, partition: vec![e] }).collect();
    Ok(AbelianSpec { components })
}

/// `|G| - 1 ≡ 0 (mod |Aut(G)|)`.
pub fn satisfies_condition1(spec: &AbelianSpec) -> Result<bool, AbelianError> {
    if spec.is_trivial() {
        return Err(AbelianError::TrivialGroup);
    }
    let order = group_order(spec);
    Ok(((order - 1u32) % aut_order(spec)).is_zero())
}

/// Ascending partitions of `n` into positive parts, in lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            if part != rest && rest - part < part {
                continue;
            }
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Every abelian group of order `n`, one spec per isomorphism class.
///
/// The cyclic group comes first; the rest follow the lexicographic order of
/// the per-prime partitions.
pub fn abelian_specs_of_order(n: u64) -> Result<Vec<AbelianSpec>, arith::ArithError> {
    let f = arith::factorize(n)?;
    let mut specs = vec![AbelianSpec::trivial()];
    for &(p, e) in f.factors() {
        let mut parts = partitions(e);
        // the single-part partition [e] sorts last; put the cyclic one first
        parts.rotate_right(1);
        let mut next = Vec::with_capacity(specs.len() * parts.len());
        for spec in &specs {
            for part in &parts {
                let mut components = spec.components.clone();
                components.push(PrimaryComponent { p, partition: part.clone() });
                next.push(AbelianSpec { components });
            }
        }
        specs = next;
    }
    Ok(specs)
}

/// Whether `p` divides `|Aut|` of the component, the quantity behind the
/// criterion `p ∤ |Aut(G)| ⇒ G ≅ Z_p`.
pub fn prime_divides_aut(c: &PrimaryComponent) -> bool {
    aut_order_primary(c).is_multiple_of(&BigUint::from(c.p))
}
