//! Verification harnesses over a catalog of small groups.
//!
//! The catalog is representative, not exhaustive: for each order `n` it holds
//! `Z_n`, every abelian group of order `n`, the dihedral and dicyclic groups,
//! `S_3, S_4, A_4, A_5, S_5`, the Heisenberg groups mod odd `p`, and any
//! user-supplied tables. Duplicates are dropped by a fingerprint (order,
//! abelian flag, element-order multiset, center size, `|Aut|`), which is a
//! heuristic and does not decide isomorphism.
//!
//! Catalog groups are generated and verified one order at a time, so tables
//! of different orders are never held in memory together.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::abelian_aut::{self, AbelianSpec};
use crate::arith;
use crate::group_engine::{self as ge, CayleyGroup, Condition2Verdict, GroupError};

/// Abelian groups up to this order get both the brute-force and the formula
/// automorphism count, and the two must agree.
pub const CROSS_CHECK_ORDER: usize = 128;

pub const CATALOG_NOTE: &str = "catalog is representative, not exhaustive";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("max order must be at least 2, got {0}")]
    MaxOrderTooSmall(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{name}: brute-force |Aut| = {brute} but the abelian formula gives {formula}")]
    FormulaMismatch { name: String, brute: BigUint, formula: BigUint },
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cyclic,
    Abelian,
    Symmetric,
    Alternating,
    Heisenberg,
    Dihedral,
    Dicyclic,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutMethod {
    Bruteforce,
    Formula,
    /// Both routes ran and agreed.
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Fingerprint {
    order: usize,
    abelian: bool,
    element_orders: Vec<u32>,
    center: usize,
    aut: BigUint,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub group: CayleyGroup,
    pub family: Family,
    pub spec: Option<AbelianSpec>,
    pub aut_order: BigUint,
    pub aut_method: AutMethod,
}

impl CatalogEntry {
    fn fingerprint(&self) -> Fingerprint {
        let mut element_orders = self.group.element_orders().to_vec();
        element_orders.sort_unstable();
        Fingerprint {
            order: self.group.order(),
            abelian: self.group.is_abelian(),
            element_orders,
            center: self.group.center().len(),
            aut: self.aut_order.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HarnessOptions {
    pub max_order: usize,
    pub extra_tables: Vec<CayleyGroup>,
    pub workers: usize,
}

impl HarnessOptions {
    pub fn new(max_order: usize) -> Self {
        HarnessOptions { max_order, extra_tables: Vec::new(), workers: 1 }
    }

    pub fn extra(mut self, tables: Vec<CayleyGroup>) -> Self {
        self.extra_tables = tables;
        self
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.workers = n.max(1);
        self
    }
}

type Candidate = (CayleyGroup, Family, Option<AbelianSpec>);

fn candidates_of_order(n: usize, max_order: usize, extras: &[CayleyGroup]) -> Result<Vec<Candidate>, GroupError> {
    let mut out = Vec::new();
    let extras = extras.iter().filter(|g| g.order() == n).map(|g| (g.clone(), Family::Table, None));
    if n > max_order {
        out.extend(extras);
        return Ok(out);
    }
    let n64 = n as u64;
    out.push((ge::make_cyclic(n64)?, Family::Cyclic, Some(abelian_aut::decompose_cyclic(n64).expect("n >= 1"))));
    for spec in abelian_aut::abelian_specs_of_order(n64).expect("n >= 1").into_iter().skip(1) {
        out.push((ge::make_abelian(&spec)?, Family::Abelian, Some(spec)));
    }
    for (k, order) in [(3u64, 6usize), (4, 24), (5, 120)] {
        if n == order {
            out.push((ge::make_symmetric(k)?, Family::Symmetric, None));
        }
    }
    for (k, order) in [(4u64, 12usize), (5, 60)] {
        if n == order {
            out.push((ge::make_alternating(k)?, Family::Alternating, None));
        }
    }
    if let Some(p) = (3..=n64).find(|p| p * p * p == n64) {
        if arith::is_prime(p) {
            out.push((ge::make_heisenberg(p)?, Family::Heisenberg, None));
        }
    }
    if n.is_multiple_of(2) && n >= 6 {
        out.push((ge::make_dihedral(n64 / 2)?, Family::Dihedral, None));
    }
    if n.is_multiple_of(4) && n >= 8 {
        out.push((ge::make_dicyclic(n64 / 4)?, Family::Dicyclic, None));
    }
    out.extend(extras);
    Ok(out)
}

fn measure(group: CayleyGroup, family: Family, spec: Option<AbelianSpec>) -> Result<CatalogEntry, CatalogError> {
    let m = group.order();
    let formula = spec.as_ref().map(abelian_aut::aut_order);
    let (aut_order, aut_method) = match formula {
        Some(f) if m > CROSS_CHECK_ORDER => (f, AutMethod::Formula),
        Some(f) => {
            let brute = ge::aut_order_bruteforce(&group, ge::order_cap())?;
            if brute != f {
                return Err(CatalogError::FormulaMismatch { name: group.name().to_string(), brute, formula: f });
            }
            (brute, AutMethod::Both)
        }
        None => (ge::aut_order_bruteforce(&group, ge::order_cap())?, AutMethod::Bruteforce),
    };
    Ok(CatalogEntry { group, family, spec, aut_order, aut_method })
}

/// Deduplicated catalog entries of exactly order `n`, in priority order.
fn entries_of_order(n: usize, opts: &HarnessOptions) -> Result<Vec<CatalogEntry>, CatalogError> {
    let measured: Vec<CatalogEntry> = candidates_of_order(n, opts.max_order, &opts.extra_tables)?
        .into_par_iter()
        .map(|(g, family, spec)| measure(g, family, spec))
        .collect::<Result<_, _>>()?;
    let mut seen = HashSet::new();
    Ok(measured.into_iter().filter(|e| seen.insert(e.fingerprint())).collect())
}

fn check_options(opts: &HarnessOptions) -> Result<(), CatalogError> {
    if opts.max_order < 2 {
        return Err(CatalogError::MaxOrderTooSmall(opts.max_order));
    }
    if opts.max_order > ge::order_cap() {
        return Err(GroupError::CapExceeded { order: opts.max_order.to_string(), cap: ge::order_cap() }.into());
    }
    if let Some(g) = opts.extra_tables.iter().find(|g| g.order() < 2) {
        return Err(GroupError::InvalidParameter(format!("{}: the trivial group cannot be verified", g.name())).into());
    }
    Ok(())
}

fn orders_to_visit(opts: &HarnessOptions) -> Vec<usize> {
    let mut orders: Vec<usize> = (2..=opts.max_order).collect();
    orders.extend(opts.extra_tables.iter().map(CayleyGroup::order).filter(|&m| m > opts.max_order));
    orders.sort_unstable();
    orders.dedup();
    orders
}

/// Visit every catalog entry in ascending order of group order.
pub fn for_each_entry(
    opts: &HarnessOptions,
    mut visit: impl FnMut(CatalogEntry) -> Result<(), CatalogError>,
) -> Result<(), CatalogError> {
    check_options(opts)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build()?;
    for n in orders_to_visit(opts) {
        for entry in pool.install(|| entries_of_order(n, opts))? {
            visit(entry)?;
        }
    }
    Ok(())
}

/// The whole catalog up to `max_order` (plus extras), materialized.
pub fn build_catalog(max_order: usize, extra_tables: &[CayleyGroup]) -> Result<Vec<CatalogEntry>, CatalogError> {
    let opts = HarnessOptions::new(max_order).extra(extra_tables.to_vec());
    let mut out = Vec::new();
    for_each_entry(&opts, |e| {
        out.push(e);
        Ok(())
    })?;
    Ok(out)
}

fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// One group's verdicts on `|Aut(G)| | |G| - 1` and `φ(G) | |G| - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRecord {
    pub name: String,
    pub family: Family,
    pub order: usize,
    pub is_abelian: bool,
    pub is_cyclic: bool,
    #[serde(serialize_with = "big_as_string")]
    pub aut_order: BigUint,
    pub aut_method: AutMethod,
    pub condition1: bool,
    /// Prediction: cyclic of prime or Lehmer order.
    pub expected1: bool,
    pub agrees: bool,
    pub exponent: u64,
    pub phi_g: u64,
    pub condition2: Condition2Verdict,
}

impl VerifyRecord {
    pub fn from_entry(entry: &CatalogEntry) -> Result<Self, CatalogError> {
        let g = &entry.group;
        let m = g.order();
        let condition1 = (BigUint::from(m - 1) % &entry.aut_order).is_zero();
        let is_cyclic = g.is_cyclic();
        let lehmer = arith::is_lehmer(m as u64).expect("catalog orders are >= 2");
        let expected1 = is_cyclic && (arith::is_prime(m as u64) || lehmer);
        Ok(VerifyRecord {
            name: g.name().to_string(),
            family: entry.family,
            order: m,
            is_abelian: g.is_abelian(),
            is_cyclic,
            aut_order: entry.aut_order.clone(),
            aut_method: entry.aut_method,
            condition1,
            expected1,
            agrees: condition1 == expected1,
            exponent: g.exponent(),
            phi_g: g.phi_g(),
            condition2: g.check_condition2()?,
        })
    }
}

fn collect_records(opts: &HarnessOptions) -> Result<Vec<VerifyRecord>, CatalogError> {
    let mut records = Vec::new();
    for_each_entry(opts, |e| {
        records.push(VerifyRecord::from_entry(&e)?);
        Ok(())
    })?;
    records.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
    Ok(records)
}

/// Check `|Aut(G)| | |G| - 1` against its predicted truth value on every catalog
/// group. Records are sorted by `(order, name)`; callers treat any record
/// with `agrees == false` as a hard failure.
pub fn verify_theorem1(opts: &HarnessOptions) -> Result<Vec<VerifyRecord>, CatalogError> {
    collect_records(opts)
}

pub fn disagreements(records: &[VerifyRecord]) -> Vec<&VerifyRecord> {
    records.iter().filter(|r| !r.agrees).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Relation2Buckets {
    pub holds: Vec<VerifyRecord>,
    pub fails: Vec<VerifyRecord>,
    pub undefined_zero_phi: Vec<VerifyRecord>,
}

impl Relation2Buckets {
    pub fn find(&self, name: &str) -> Option<&'static str> {
        let has = |v: &[VerifyRecord]| v.iter().any(|r| r.name == name);
        if has(&self.holds) {
            Some("holds")
        } else if has(&self.fails) {
            Some("fails")
        } else if has(&self.undefined_zero_phi) {
            Some("undefined_zero_phi")
        } else {
            None
        }
    }
}

/// Sort catalog groups by their verdict on `|G| - 1 ≡ 0 (mod φ(G))`.
pub fn scan_relation2(opts: &HarnessOptions) -> Result<Relation2Buckets, CatalogError> {
    let mut buckets = Relation2Buckets::default();
    for r in collect_records(opts)? {
        match r.condition2 {
            Condition2Verdict::Holds { .. } => buckets.holds.push(r),
            Condition2Verdict::Fails { .. } => buckets.fails.push(r),
            Condition2Verdict::UndefinedZeroPhi => buckets.undefined_zero_phi.push(r),
        }
    }
    Ok(buckets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(entries: &[CatalogEntry]) -> Vec<&str> {
        entries.iter().map(|e| e.group.name()).collect()
    }

    #[test]
    fn tiny_catalogs() {
        let c = build_catalog(2, &[]).unwrap();
        assert_eq!(names(&c), ["Z_2"]);
        assert!(matches!(build_catalog(1, &[]), Err(CatalogError::MaxOrderTooSmall(1))));
    }

    #[test]
    fn order_eight_catalog() {
        let c = build_catalog(8, &[]).unwrap();
        let n = names(&c);
        for expected in ["Z_8", "Z_2 x Z_4", "Z_2 x Z_2 x Z_2", "D_4", "Q_8", "Z_6", "S_3", "Z_2 x Z_2"] {
            assert!(n.contains(&expected), "missing {expected}: {n:?}");
        }
        // S_3 and D_3 share a fingerprint, S_3 is kept
        assert!(!n.contains(&"D_3"));
        // 2,3,4(2),5,6(2),7,8(5)
        assert_eq!(c.len(), 13);
    }

    #[test]
    fn heisenberg_enters_at_27() {
        let c = build_catalog(27, &[]).unwrap();
        assert!(names(&c).contains(&"Heis_3"));
    }

    #[test]
    fn extras_are_deduplicated() {
        let s3 = ge::make_symmetric(3).unwrap().with_name("my_s3");
        let weird = ge::direct_product(&ge::make_cyclic(3).unwrap(), &ge::make_symmetric(3).unwrap()).unwrap();
        let c = build_catalog(6, &[s3, weird]).unwrap();
        let n = names(&c);
        assert!(!n.contains(&"my_s3"));
        assert!(n.contains(&"Z_3 x S_3"));
    }

    #[test]
    fn records_small() {
        let recs = verify_theorem1(&HarnessOptions::new(12)).unwrap();
        assert!(disagreements(&recs).is_empty());
        let z4 = recs.iter().find(|r| r.name == "Z_4").unwrap();
        assert!(!z4.condition1 && !z4.expected1 && z4.agrees);
        let v4 = recs.iter().find(|r| r.name == "Z_2 x Z_2").unwrap();
        assert!(!v4.condition1 && !v4.expected1 && !v4.is_cyclic);
        assert!(recs.windows(2).all(|w| (w[0].order, &w[0].name) <= (w[1].order, &w[1].name)));
    }

    #[test]
    fn relation2_small() {
        let b = scan_relation2(&HarnessOptions::new(8)).unwrap();
        assert_eq!(b.find("Q_8"), Some("fails"));
        assert_eq!(b.find("S_3"), Some("undefined_zero_phi"));
        assert_eq!(b.find("Z_2 x Z_2 x Z_2"), Some("holds"));
        assert_eq!(b.find("nope"), None);
    }
}
