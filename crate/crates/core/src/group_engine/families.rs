//! Constructors for standard families. Every constructor goes through full
//! table validation.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::{order_cap, CayleyGroup, GroupError};
use crate::abelian_aut::{self, AbelianSpec};
use crate::arith;

fn check_cap(order: u128) -> Result<usize, GroupError> {
    if order > order_cap() as u128 {
        return Err(GroupError::CapExceeded { order: order.to_string(), cap: order_cap() });
    }
    Ok(order as usize)
}

fn build(name: String, m: usize, op: impl Fn(usize, usize) -> usize) -> Result<CayleyGroup, GroupError> {
    let mut table = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            table.push(op(x, y) as u32);
        }
    }
    CayleyGroup::from_checked_entries(name, m, table)
}

pub fn make_cyclic(n: u64) -> Result<CayleyGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic group of order 0".into()));
    }
    let m = check_cap(n as u128)?;
    build(format!("Z_{n}"), m, |x, y| (x + y) % m)
}

/// Mixed-radix direct product of the cyclic factors of `spec`.
pub fn make_abelian(spec: &AbelianSpec) -> Result<CayleyGroup, GroupError> {
    let order = abelian_aut::group_order(spec);
    if order > BigUint::from(order_cap()) {
        return Err(GroupError::CapExceeded { order: order.to_string(), cap: order_cap() });
    }
    let radices: Vec<usize> = spec.cyclic_factors().into_iter().map(|q| q as usize).collect();
    let m: usize = radices.iter().product();
    build(spec.name(), m, |mut x, mut y| {
        let mut out = 0;
        let mut place = 1;
        for &q in &radices {
            out += ((x % q + y % q) % q) * place;
            x /= q;
            y /= q;
            place *= q;
        }
        out
    })
}

/// Symmetries of the regular `n`-gon, order `2n`. Element `r^i s^f` is
/// stored at `i + n f`.
pub fn make_dihedral(n: u64) -> Result<CayleyGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::InvalidParameter(format!("dihedral needs n >= 3, got {n}")));
    }
    let m = check_cap(2 * n as u128)?;
    let n = n as usize;
    build(format!("D_{n}"), m, |x, y| {
        let (i, a) = (x % n, x / n);
        let (j, b) = (y % n, y / n);
        let k = if a == 0 { (i + j) % n } else { (i + n - j) % n };
        k + n * ((a + b) % 2)
    })
}

/// Dicyclic group of order `4n`: `a^{2n} = 1`, `x^2 = a^n`, `x a x^{-1} = a^{-1}`.
/// Element `a^i x^f` is stored at `i + 2n f`; `n = 2` gives `Q_8`.
pub fn make_dicyclic(n: u64) -> Result<CayleyGroup, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidParameter(format!("dicyclic needs n >= 2, got {n}")));
    }
    let m = check_cap(4 * n as u128)?;
    let n = n as usize;
    let r = 2 * n;
    let name = if n == 2 { "Q_8".to_string() } else { format!("Dic_{n}") };
    build(name, m, |x, y| {
        let (i, a) = (x % r, x / r);
        let (j, b) = (y % r, y / r);
        match (a, b) {
            (0, 0) => (i + j) % r,
            (0, 1) => (i + j) % r + r,
            (1, 0) => (i + r - j) % r + r,
            _ => (i + r - j + n) % r,
        }
    })
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    // lexicographic, so the identity comes first
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

fn is_even(p: &[u8]) -> bool {
    let inversions: usize = (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum();
    inversions.is_multiple_of(2)
}

fn permutation_group(name: String, perms: Vec<Vec<u8>>) -> Result<CayleyGroup, GroupError> {
    let m = check_cap(perms.len() as u128)?;
    let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    build(name, m, |x, y| {
        // (σ ∘ τ)(k) = σ(τ(k))
        let composed: Vec<u8> = perms[y].iter().map(|&k| perms[x][k as usize]).collect();
        index[composed.as_slice()]
    })
}

pub fn make_symmetric(n: u64) -> Result<CayleyGroup, GroupError> {
    if !(1..=5).contains(&n) {
        return Err(GroupError::InvalidParameter(format!("symmetric group needs 1 <= n <= 5, got {n}")));
    }
    permutation_group(format!("S_{n}"), permutations(n as usize))
}

pub fn make_alternating(n: u64) -> Result<CayleyGroup, GroupError> {
    if !(1..=5).contains(&n) {
        return Err(GroupError::InvalidParameter(format!("alternating group needs 1 <= n <= 5, got {n}")));
    }
    let even = permutations(n as usize).into_iter().filter(|p| is_even(p)).collect();
    permutation_group(format!("A_{n}"), even)
}

/// Upper unitriangular 3x3 matrices over `F_p`, order `p^3`. The triple
/// `(a, b, c)` for `[[1, a, c], [0, 1, b], [0, 0, 1]]` is stored at
/// `a + p b + p^2 c`.
pub fn make_heisenberg(p: u64) -> Result<CayleyGroup, GroupError> {
    if p == 2 || !arith::is_prime(p) {
        return Err(GroupError::InvalidParameter(format!("Heisenberg group needs an odd prime, got {p}")));
    }
    let m = check_cap((p as u128).pow(3))?;
    let p = p as usize;
    let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
    build(format!("Heis_{p}"), m, |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
    })
}

/// `G x H` with `(g, h)` stored at `g + |G| h`.
pub fn direct_product(g: &CayleyGroup, h: &CayleyGroup) -> Result<CayleyGroup, GroupError> {
    let m = check_cap(g.order() as u128 * h.order() as u128)?;
    let paren = |s: &str| if s.contains(" x ") { format!("({s})") } else { s.to_string() };
    let name = format!("{} x {}", paren(g.name()), paren(h.name()));
    let gm = g.order();
    build(name, m, |x, y| {
        let a = g.mul((x % gm) as u32, (y % gm) as u32) as usize;
        let b = h.mul((x / gm) as u32, (y / gm) as u32) as usize;
        a + gm * b
    })
}
