use std::collections::HashSet;

use lehmerlab::abelian_aut::{
    abelian_specs_of_order, aut_order, decompose_cyclic, group_order, satisfies_condition1, AbelianSpec,
};
use lehmerlab::arith::{euler_phi, is_lehmer, is_prime};
use lehmerlab::catalog_verify::{build_catalog, scan_relation2, verify_theorem1, HarnessOptions};
use lehmerlab::group_engine::{
    direct_product, make_abelian, make_cyclic, make_dicyclic, make_heisenberg, Condition2Verdict,
};
use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;

/// `Z_{m_1} x ... x Z_{m_k}` with elements encoded as mixed-radix integers.
struct Abelian<'a> {
    moduli: &'a [u64],
}

impl Abelian<'_> {
    fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn decode(&self, mut x: u64) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = x % m;
                x /= m;
                c
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> u64 {
        v.iter().zip(self.moduli).rev().fold(0, |acc, (&c, &m)| acc * m + c)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = a.iter().zip(&b).zip(self.moduli).map(|((x, y), m)| (x + y) % m).collect();
        self.encode(&s)
    }

    fn scale(&self, k: u64, a: u64) -> u64 {
        let s: Vec<u64> = self.decode(a).iter().zip(self.moduli).map(|(x, m)| (x * k) % m).collect();
        self.encode(&s)
    }

    /// Choose the image of basis vector `j` onward, given the images of the
    /// span of the earlier ones. Returns false once `count` passes `limit`.
    fn extend(&self, j: usize, span: &[u64], count: &mut u64, limit: u64) -> bool {
        if j == self.moduli.len() {
            *count += 1;
            return *count <= limit;
        }
        let m = self.moduli[j];
        for img in 0..self.order() {
            if self.scale(m, img) != 0 {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * m as usize);
            let mut seen = HashSet::new();
            let mut injective = true;
            'outer: for c in 0..m {
                let shift = self.scale(c, img);
                for &s in span {
                    let v = self.add(s, shift);
                    if !seen.insert(v) {
                        injective = false;
                        break 'outer;
                    }
                    next.push(v);
                }
            }
            if injective && !self.extend(j + 1, &next, count, limit) {
                return false;
            }
        }
        true
    }
}

/// Count automorphisms by choosing the image of each basis vector and
/// keeping only choices injective on the span so far.
fn aut_by_basis_images(moduli: &[u64], limit: u64) -> Option<u64> {
    let mut count = 0;
    Abelian { moduli }.extend(0, &[0], &mut count, limit).then_some(count)
}

#[test]
fn abelian_formula_matches_basis_image_oracle() {
    let mut compared = 0;
    for n in 2..=64u64 {
        for spec in abelian_specs_of_order(n).unwrap() {
            let moduli = spec.cyclic_factors();
            if let Some(count) = aut_by_basis_images(&moduli, 200_000) {
                assert_eq!(aut_order(&spec), BigUint::from(count), "{}", spec.name());
                compared += 1;
            }
        }
    }
    assert!(compared >= 100, "only {compared} groups compared");
}

#[test]
fn condition1_on_abelian_groups_picks_out_prime_cyclic_groups() {
    let mut total = 0;
    for n in 2..=10_000u64 {
        let prime = is_prime(n);
        let lehmer = is_lehmer(n).unwrap();
        for spec in abelian_specs_of_order(n).unwrap() {
            let expected = spec.is_cyclic() && (prime || lehmer);
            assert_eq!(satisfies_condition1(&spec).unwrap(), expected, "{}", spec.name());
            total += 1;
        }
    }
    assert!(total > 20_000);
}

#[test]
fn cyclic_groups_bridge_both_totients() {
    for n in 1..=512u64 {
        let g = make_cyclic(n).unwrap();
        assert_eq!(g.phi_g(), euler_phi(n), "phi(Z_{n})");
        assert_eq!(g.exponent(), n);
    }
    for n in 2..=10_000u64 {
        assert_eq!(aut_order(&decompose_cyclic(n).unwrap()), BigUint::from(euler_phi(n)), "Aut(Z_{n})");
    }
}

#[test]
fn inner_automorphisms_divide_all_automorphisms() {
    for entry in build_catalog(128, &[]).unwrap() {
        let inn = BigUint::from(entry.group.inn_order());
        assert!(
            (&entry.aut_order % &inn) == BigUint::from(0u32),
            "{}: {} vs {}",
            entry.group.name(),
            entry.aut_order,
            inn
        );
        assert_eq!(entry.group.inn_order() * entry.group.center().len() as u64, entry.group.order() as u64);
    }
}

#[test]
fn nonabelian_groups_never_satisfy_condition1() {
    let records = verify_theorem1(&HarnessOptions::new(128).workers(2)).unwrap();
    let nonabelian: Vec<_> = records.iter().filter(|r| !r.is_abelian).collect();
    assert!(nonabelian.len() > 50);
    assert!(nonabelian.iter().all(|r| !r.condition1));
    assert!(records.iter().all(|r| r.agrees));
}

#[test]
fn groups_of_prime_exponent_satisfy_relation2() {
    // Every nonidentity element has order p, so phi(G) = |G| - 1.
    let mut groups = vec![make_heisenberg(3).unwrap(), make_heisenberg(5).unwrap()];
    for (p, rank) in [(2u64, 1u32), (2, 5), (3, 3), (5, 2), (7, 2), (11, 1)] {
        let spec: AbelianSpec = format!("{p}^{}", vec!["1"; rank as usize].join(",")).parse().unwrap();
        groups.push(make_abelian(&spec).unwrap());
    }
    for g in groups {
        let m = g.order() as u64;
        assert_eq!(g.phi_g(), m - 1, "{}", g.name());
        assert_eq!(g.check_condition2().unwrap(), Condition2Verdict::Holds { phi: m - 1 });
    }
}

#[test]
fn relation2_buckets_partition_the_catalog() {
    let opts = HarnessOptions::new(81).workers(3);
    let b = scan_relation2(&opts).unwrap();
    let total = b.holds.len() + b.fails.len() + b.undefined_zero_phi.len();
    assert_eq!(total, verify_theorem1(&opts).unwrap().len());
    assert!(b.undefined_zero_phi.iter().all(|r| r.phi_g == 0 && !r.is_abelian));
    // Abelian groups always have elements of maximal order.
    assert!(b.holds.iter().chain(&b.fails).all(|r| r.phi_g > 0));
    for r in &b.holds {
        assert_eq!((r.order as u64 - 1) % r.phi_g, 0, "{}", r.name);
    }
    for r in &b.fails {
        assert_ne!((r.order as u64 - 1) % r.phi_g, 0, "{}", r.name);
    }
}

#[test]
fn extra_table_above_max_order_is_verified() {
    let q8 = make_dicyclic(2).unwrap();
    let big = direct_product(&q8, &make_cyclic(3).unwrap()).unwrap().with_name("Q_8 x Z_3");
    let records = verify_theorem1(&HarnessOptions::new(4).extra(vec![big])).unwrap();
    let names: Vec<_> = records.iter().map(|r| (r.order, r.name.as_str())).collect();
    assert_eq!(names, [(2, "Z_2"), (3, "Z_3"), (4, "Z_2 x Z_2"), (4, "Z_4"), (24, "Q_8 x Z_3")]);
    assert_eq!(records[4].aut_order, BigUint::from(48u32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coprime_cyclic_products_are_cyclic(m in 1u64..24, n in 1u64..24) {
        prop_assume!(m.gcd(&n) == 1);
        let g = direct_product(&make_cyclic(m).unwrap(), &make_cyclic(n).unwrap()).unwrap();
        prop_assert!(g.is_cyclic());
        prop_assert_eq!(g.phi_g(), euler_phi(m * n));
    }

    #[test]
    fn abelian_tables_match_their_spec(n in 2u64..200) {
        for spec in abelian_specs_of_order(n).unwrap() {
            let g = make_abelian(&spec).unwrap();
            prop_assert_eq!(BigUint::from(g.order()), group_order(&spec));
            prop_assert!(g.is_abelian());
            prop_assert_eq!(g.is_cyclic(), spec.is_cyclic());
            let lcm = spec.cyclic_factors().iter().fold(1u64, |a, &b| a.lcm(&b));
            prop_assert_eq!(g.exponent(), lcm);
        }
    }
}
