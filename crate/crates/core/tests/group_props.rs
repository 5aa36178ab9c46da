//! Subgroup enumeration against brute-force closure, and group-ring identities.

use std::collections::BTreeSet;

use proptest::prelude::*;

use crossprod::group::{all_subgroups, subgroup_count, ElementaryAbelian, Subgroup};
use crossprod::group_ring::{norm_element, GroupRingElement};
use crossprod::int::Int;

/// Every subgroup as the closure of some set of at most `rank` elements,
/// collected as element-index sets.
fn brute_force_subgroups(g: ElementaryAbelian) -> BTreeSet<Vec<usize>> {
    fn close(g: ElementaryAbelian, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        loop {
            let mut grown = set.clone();
            for &a in &set {
                for &b in gens {
                    grown.insert(g.mul_index(a, b));
                }
            }
            if grown.len() == set.len() {
                return set.into_iter().collect();
            }
            set = grown;
        }
    }
    let n = g.order();
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..=g.rank() {
        let mut next = Vec::new();
        for gens in &frontier {
            out.insert(close(g, gens));
            let start = gens.last().map_or(1, |l| l + 1);
            for x in start..n {
                let mut more = gens.clone();
                more.push(x);
                next.push(more);
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn subgroup_enumeration_matches_closure() {
    for (p, r) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 2)] {
        let g = ElementaryAbelian::new(p, r).unwrap();
        let listed: BTreeSet<Vec<usize>> = all_subgroups(g).iter().map(|h| h.element_indices().to_vec()).collect();
        let brute = brute_force_subgroups(g);
        assert_eq!(listed, brute, "(Z/{p})^{r}");
        assert_eq!(listed.len() as u64, subgroup_count(p, r));
        assert_eq!(all_subgroups(g).len(), listed.len(), "no duplicates");
    }
}

#[test]
fn subgroup_counts() {
    assert_eq!(subgroup_count(3, 4), 212);
    assert_eq!(subgroup_count(5, 4), 1120);
    assert_eq!(subgroup_count(2, 3), 16);
    assert_eq!(all_subgroups(ElementaryAbelian::new(3, 4).unwrap()).len(), 212);
}

#[test]
fn transversals_partition_the_group() {
    let g = ElementaryAbelian::new(3, 3).unwrap();
    for h in all_subgroups(g) {
        let reps = h.transversal();
        assert_eq!(reps.len() * h.order(), g.order());
        let mut seen = BTreeSet::new();
        for &r in &reps {
            assert_eq!(h.coset_rep(r), r);
            for &x in h.element_indices() {
                assert!(seen.insert(g.mul_index(r, x)));
            }
        }
    }
}

fn element(g: ElementaryAbelian) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec(-5i64..=5, g.order())
        .prop_map(move |v| GroupRingElement::from_dense(g, &v.into_iter().map(Int::from).collect::<Vec<_>>()))
}

fn z3x3() -> ElementaryAbelian {
    ElementaryAbelian::new(3, 2).unwrap()
}

proptest! {
    #[test]
    fn augmentation_is_multiplicative(a in element(z3x3()), b in element(z3x3())) {
        prop_assert_eq!((a.clone() * b.clone()).augmentation(), a.augmentation() * b.augmentation());
    }

    #[test]
    fn ring_axioms(a in element(z3x3()), b in element(z3x3()), c in element(z3x3())) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * GroupRingElement::one(z3x3()), a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn norm_absorbs_subgroup(a in element(z3x3()), k in 0usize..6) {
        let g = z3x3();
        let h = all_subgroups(g).into_iter().nth(k).unwrap();
        let n = norm_element(&h);
        for x in h.elements() {
            prop_assert_eq!(n.translate(&x), n.clone());
        }
        // N·(x - 1) = 0 for x in H
        for x in h.elements() {
            prop_assert!((n.clone() * GroupRingElement::g_minus_one(g, &x)).is_zero());
        }
        prop_assert_eq!((n.clone() * a.clone()).augmentation(), Int::from(h.order()) * a.augmentation());
    }
}

#[test]
fn generated_subgroup_is_canonical() {
    let g = ElementaryAbelian::new(3, 3).unwrap();
    let a = g.element(&[1, 2, 0]).unwrap();
    let b = g.element(&[0, 1, 1]).unwrap();
    let h1 = Subgroup::generated_by(g, &[a.clone(), b.clone()]);
    let h2 = Subgroup::generated_by(g, &[g.mul(&a, &b), g.pow(&b, 2)]);
    assert_eq!(h1, h2);
    assert_eq!(h1.order(), 9);
}
