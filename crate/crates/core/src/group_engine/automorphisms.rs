//! Exact `|Aut(G)|` by backtracking over images of a generating set.
//!
//! An automorphism is determined by the images of generators `g_1 .. g_k`.
//! Let `S_j` be the automorphisms fixing `g_1 .. g_j`. Then
//! `|Aut(G)| = ∏_j [S_j : S_{j+1}]`, and the index `[S_j : S_{j+1}]` is the
//! number of images `h` of `g_{j+1}` such that the partial assignment
//! `g_i ↦ g_i (i <= j), g_{j+1} ↦ h` extends to an automorphism. Each such
//! extension question is answered by a depth-first search that stops at the
//! first success, so the count is exact without visiting every automorphism.
//!
//! Candidate images are restricted to elements of the same order.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{CayleyGroup, GroupError};

const UNSET: u32 = u32::MAX;

/// Greedy generating set: repeatedly add the element that enlarges the
/// generated subgroup the most. Ties prefer larger element order, then the
/// smaller index.
pub fn generating_set(g: &CayleyGroup) -> Vec<u32> {
    let m = g.order();
    let mut gens = Vec::new();
    let mut member = g.subgroup_generated(&gens);
    let mut size = 1;

    let mut by_order: Vec<u32> = (1..m as u32).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_orders()[x as usize]), x));

    while size < m {
        let mut best: Option<(usize, u32)> = None;
        gens.push(0);
        for &x in &by_order {
            if member[x as usize] {
                continue;
            }
            *gens.last_mut().unwrap() = x;
            let grown = g.subgroup_generated(&gens).iter().filter(|&&b| b).count();
            if best.is_none_or(|(s, _)| grown > s) {
                best = Some((grown, x));
                if grown == m {
                    break;
                }
            }
        }
        let (grown, x) = best.expect("a proper subgroup misses some element");
        *gens.last_mut().unwrap() = x;
        member = g.subgroup_generated(&gens);
        size = grown;
    }
    gens
}

struct Search<'a> {
    g: &'a CayleyGroup,
    gens: Vec<u32>,
    // candidate images for each generator, same element order
    candidates: Vec<Vec<u32>>,
}

impl Search<'_> {
    /// Extend `gens[i] ↦ images[i]` to the subgroup they generate. Returns
    /// `None` if the assignment is not a well-defined injective homomorphism
    /// there.
    fn partial_map(&self, images: &[u32]) -> Option<(Vec<u32>, Vec<bool>)> {
        let m = self.g.order();
        let pairs: Vec<(u32, u32)> = self.gens.iter().copied().zip(images.iter().copied()).collect();
        let mut map = vec![UNSET; m];
        let mut used = vec![false; m];
        map[0] = 0;
        used[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            let fx = map[x as usize];
            for &(s, t) in &pairs {
                let y = self.g.mul(x, s) as usize;
                let fy = self.g.mul(fx, t);
                if map[y] == UNSET {
                    if used[fy as usize] {
                        return None;
                    }
                    map[y] = fy;
                    used[fy as usize] = true;
                    stack.push(y as u32);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some((map, used))
    }

    fn extends(&self, images: &mut Vec<u32>) -> bool {
        let Some((_, used)) = self.partial_map(images) else {
            return false;
        };
        let level = images.len();
        if level == self.gens.len() {
            return true;
        }
        for &h in &self.candidates[level] {
            if used[h as usize] {
                continue;
            }
            images.push(h);
            let ok = self.extends(images);
            images.pop();
            if ok {
                return true;
            }
        }
        false
    }
}

/// Exact number of automorphisms of `g`. Refuses groups above `cap`.
pub fn aut_order_bruteforce(g: &CayleyGroup, cap: usize) -> Result<BigUint, GroupError> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded { order: g.order().to_string(), cap });
    }
    let gens = generating_set(g);
    let orders = g.element_orders();
    let candidates = gens
        .iter()
        .map(|&s| (1..g.order() as u32).filter(|&h| orders[h as usize] == orders[s as usize]).collect())
        .collect();
    let search = Search { g, gens, candidates };

    let mut total = BigUint::from(1u32);
    for level in 0..search.gens.len() {
        let fixed = &search.gens[..level];
        let orbit = search.candidates[level]
            .par_iter()
            .filter(|&&h| {
                let mut images = fixed.to_vec();
                images.push(h);
                search.extends(&mut images)
            })
            .count();
        total *= orbit;
    }
    Ok(total)
}
