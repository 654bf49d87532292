//! Finite groups given by explicit Cayley tables.
//!
//! Elements are indices `0..m` with the identity at `0`. Tables are validated
//! on construction, so every [`CayleyGroup`] value is a group: Latin square,
//! two-sided identity at index 0, two-sided inverses and associativity.
//! Associativity is checked with Light's test against a generating set, which
//! is sound because the set of elements `g` with `(xy)g = x(yg)` for all
//! `x, y` is closed under multiplication.

mod automorphisms;
mod families;
mod table_io;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

pub use automorphisms::{aut_order_bruteforce, generating_set};
pub use families::{
    direct_product, make_abelian, make_alternating, make_cyclic, make_dicyclic, make_dihedral, make_heisenberg,
    make_symmetric,
};
pub use table_io::{load_cayley_table, write_cayley_table, TableError};

pub const DEFAULT_ORDER_CAP: usize = 512;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Largest table order the constructors and the brute-force automorphism
/// counter accept. Process-wide; defaults to [`DEFAULT_ORDER_CAP`].
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

const MAX_REPORTED_VIOLATIONS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EntryOutOfRange { row: usize, col: usize, value: u64 },
    IdentityRow { col: usize },
    IdentityColumn { row: usize },
    RepeatedInRow { row: usize, value: u32 },
    RepeatedInColumn { col: usize, value: u32 },
    NoInverse { element: usize },
    NotAssociative { x: u32, y: u32, z: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row}, {col}) = {value} is not an element")
            }
            Violation::IdentityRow { col } => write!(f, "0 * {col} != {col}: element 0 is not a left identity"),
            Violation::IdentityColumn { row } => write!(f, "{row} * 0 != {row}: element 0 is not a right identity"),
            Violation::RepeatedInRow { row, value } => write!(f, "row {row} repeats {value}"),
            Violation::RepeatedInColumn { col, value } => write!(f, "column {col} repeats {value}"),
            Violation::NoInverse { element } => write!(f, "element {element} has no two-sided inverse"),
            Violation::NotAssociative { x, y, z } => {
                write!(f, "({x} * {y}) * {z} != {x} * ({y} * {z})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {order} exceeds the table cap {cap}")]
    CapExceeded { order: String, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("table is not a group: {}", fmt_violations(.0))]
    Axioms(Vec<Violation>),
    #[error("element {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("the trivial group is excluded from this check")]
    TrivialGroup,
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A finite group as a full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    element_orders: Vec<u32>,
}

impl fmt::Debug for CayleyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

impl CayleyGroup {
    /// Validate a row-major `m x m` table and wrap it. At most ten
    /// violations are reported.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u64>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidParameter("a group has at least one element".into()));
        }
        if order > order_cap() {
            return Err(GroupError::CapExceeded { order: order.to_string(), cap: order_cap() });
        }
        assert_eq!(table.len(), order * order, "table must have m*m entries");
        let mut violations = Vec::new();
        for (k, &v) in table.iter().enumerate() {
            if v >= order as u64 {
                violations.push(Violation::EntryOutOfRange { row: k / order, col: k % order, value: v });
                if violations.len() == MAX_REPORTED_VIOLATIONS {
                    break;
                }
            }
        }
        if !violations.is_empty() {
            return Err(GroupError::Axioms(violations));
        }
        let table: Vec<u32> = table.into_iter().map(|v| v as u32).collect();
        Self::from_checked_entries(name.into(), order, table)
    }

    pub(crate) fn from_checked_entries(name: String, order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        let violations = axiom_violations(order, &table);
        if !violations.is_empty() {
            return Err(GroupError::Axioms(violations));
        }
        let mut g = CayleyGroup { name, order, table, element_orders: Vec::new() };
        g.element_orders = (0..order as u32).map(|x| g.compute_order(x)).collect();
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.order + y as usize]
    }

    pub fn row(&self, x: u32) -> &[u32] {
        let m = self.order;
        &self.table[x as usize * m..(x as usize + 1) * m]
    }

    pub fn inverse(&self, x: u32) -> u32 {
        self.row(x).iter().position(|&v| v == 0).expect("validated group") as u32
    }

    fn compute_order(&self, x: u32) -> u32 {
        let mut t = 1;
        let mut acc = x;
        while acc != 0 {
            acc = self.mul(acc, x);
            t += 1;
        }
        t
    }

    /// Least `t >= 1` with `x^t = e`.
    pub fn element_order(&self, x: usize) -> Result<u32, GroupError> {
        self.element_orders.get(x).copied().ok_or(GroupError::IndexOutOfRange { index: x, order: self.order })
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)))
    }

    /// Generalized totient: how many elements have order equal to the exponent.
    pub fn phi_g(&self) -> u64 {
        let exp = self.exponent();
        self.element_orders.iter().filter(|&&o| o as u64 == exp).count() as u64
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.order as u32).filter(|&x| (0..self.order as u32).all(|y| self.mul(x, y) == self.mul(y, x))).collect()
    }

    /// `|G / Z(G)|`, the order of the inner automorphism group.
    pub fn inn_order(&self) -> u64 {
        (self.order / self.center().len()) as u64
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order as u32;
        (0..m).all(|x| (x + 1..m).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders.iter().any(|&o| o as usize == self.order)
    }

    /// `|G| - 1 ≡ 0 (mod |Aut(G)|)`, with `|Aut(G)|` counted by brute force.
    pub fn satisfies_condition1(&self) -> Result<bool, GroupError> {
        if self.order < 2 {
            return Err(GroupError::TrivialGroup);
        }
        let aut = aut_order_bruteforce(self, order_cap())?;
        Ok((num_bigint::BigUint::from(self.order - 1) % aut) == num_bigint::BigUint::ZERO)
    }

    /// `|G| - 1 ≡ 0 (mod φ(G))`.
    pub fn check_condition2(&self) -> Result<Condition2Verdict, GroupError> {
        if self.order < 2 {
            return Err(GroupError::TrivialGroup);
        }
        let phi = self.phi_g();
        if phi == 0 {
            return Ok(Condition2Verdict::UndefinedZeroPhi);
        }
        let remainder = (self.order as u64 - 1) % phi;
        Ok(if remainder == 0 { Condition2Verdict::Holds { phi } } else { Condition2Verdict::Fails { phi, remainder } })
    }

    /// Elements reachable from the identity by right multiplication with
    /// `gens`, i.e. the subgroup they generate.
    pub fn subgroup_generated(&self, gens: &[u32]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        member
    }
}

fn axiom_violations(m: usize, table: &[u32]) -> Vec<Violation> {
    let at = |x: usize, y: usize| table[x * m + y];
    let mut v = Vec::new();
    let full = |v: &Vec<Violation>| v.len() >= MAX_REPORTED_VIOLATIONS;

    for j in 0..m {
        if at(0, j) as usize != j {
            v.push(Violation::IdentityRow { col: j });
        }
        if at(j, 0) as usize != j {
            v.push(Violation::IdentityColumn { row: j });
        }
    }
    let mut seen = vec![false; m];
    for i in 0..m {
        seen.iter_mut().for_each(|s| *s = false);
        for j in 0..m {
            let x = at(i, j) as usize;
            if std::mem::replace(&mut seen[x], true) {
                v.push(Violation::RepeatedInRow { row: i, value: x as u32 });
                break;
            }
        }
    }
    for j in 0..m {
        seen.iter_mut().for_each(|s| *s = false);
        for i in 0..m {
            let x = at(i, j) as usize;
            if std::mem::replace(&mut seen[x], true) {
                v.push(Violation::RepeatedInColumn { col: j, value: x as u32 });
                break;
            }
        }
    }
    if !v.is_empty() {
        v.truncate(MAX_REPORTED_VIOLATIONS);
        return v;
    }

    for x in 0..m {
        let y = (0..m).find(|&y| at(x, y) == 0).expect("Latin row contains 0");
        if at(y, x) != 0 {
            v.push(Violation::NoInverse { element: x });
            if full(&v) {
                return v;
            }
        }
    }

    // Light's test over a generating set found by scanning indices in order.
    let mut member = vec![false; m];
    member[0] = true;
    let mut gens = Vec::new();
    let mut reached = 1;
    for g in 1..m {
        if member[g] {
            continue;
        }
        gens.push(g);
        let mut stack: Vec<usize> = (0..m).filter(|&x| member[x]).collect();
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = at(x, s) as usize;
                if !member[y] {
                    member[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        if reached == m {
            break;
        }
    }
    for &z in &gens {
        for x in 0..m {
            for y in 0..m {
                if at(at(x, y) as usize, z) != at(x, at(y, z) as usize) {
                    v.push(Violation::NotAssociative { x: x as u32, y: y as u32, z: z as u32 });
                    if full(&v) {
                        return v;
                    }
                }
            }
        }
    }
    v
}

/// Outcome of checking `|G| - 1 ≡ 0 (mod φ(G))`.
///
/// When no element attains the exponent, `φ(G) = 0` and the congruence has
/// no meaning; that case is reported separately instead of being decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Condition2Verdict {
    Holds { phi: u64 },
    Fails { phi: u64, remainder: u64 },
    UndefinedZeroPhi,
}

impl Condition2Verdict {
    pub fn phi_value(&self) -> u64 {
        match *self {
            Condition2Verdict::Holds { phi } | Condition2Verdict::Fails { phi, .. } => phi,
            Condition2Verdict::UndefinedZeroPhi => 0,
        }
    }

    pub fn remainder(&self) -> Option<u64> {
        match *self {
            Condition2Verdict::Holds { .. } => Some(0),
            Condition2Verdict::Fails { remainder, .. } => Some(remainder),
            Condition2Verdict::UndefinedZeroPhi => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Condition2Verdict::Holds { .. } => "holds",
            Condition2Verdict::Fails { .. } => "fails",
            Condition2Verdict::UndefinedZeroPhi => "undefined_zero_phi",
        }
    }
}
