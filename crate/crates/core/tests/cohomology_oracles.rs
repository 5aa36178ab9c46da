//! Cohomology routines against brute force and structural identities.

mod common;

use rand::Rng;

use common::*;
use crossprod::cohomology::{
    carry_cocycle, coboundary1, cocycle_class_order, extension_lattice, h1, h1_invariants, is_cocycle1, is_cocycle2,
    solve_coboundary, tate_h0, tate_h_minus1, Cochain1, Cocycle2,
};
use crossprod::group::{all_subgroups, ElementaryAbelian, Subgroup};
use crossprod::int::Int;
use crossprod::lattice::GLattice;
use crossprod::linalg::{solve_integer, FinAbInvariants};
use crossprod::matrix::IntMatrix;

fn random_cochain(rng: &mut rand_chacha::ChaCha8Rng, lat: &GLattice, h: &Subgroup) -> Cochain1 {
    let n = lat.rank();
    Cochain1::from_fn(h.clone(), n, |g| if g.is_identity() { vec![Int::ZERO; n] } else { random_vec(rng, n, 4) }).unwrap()
}

/// Whether the 1-cocycle `z` is `h ↦ (h-1)x` for some `x`.
fn is_coboundary1(lat: &GLattice, z: &Cochain1) -> bool {
    let h = z.subgroup();
    let blocks: Vec<IntMatrix> = h.basis().iter().map(|b| lat.action_matrix(b).minus_identity()).collect();
    let mut a = IntMatrix::zeros(0, lat.rank());
    let mut rhs = Vec::new();
    for (b, m) in h.basis().iter().zip(&blocks) {
        a = a.vstack(m);
        rhs.extend(z.value(b).iter().cloned());
    }
    solve_integer(&a, &rhs).unwrap().is_some()
}

#[test]
fn h1_agrees_with_brute_force_on_random_lattices() {
    let mut rng = rng(0x5eed_0001);
    let mut checked = 0;
    for (g, budget) in small_groups() {
        for _ in 0..5 {
            let lat = random_lattice(&mut rng, g, budget);
            for h in all_subgroups(g) {
                let fast = h1_invariants(&lat, &h).unwrap();
                let full = h1(&lat, &h).unwrap();
                assert_eq!(fast, full.invariants, "routes disagree over {h} for {lat:?}");
                assert!(h1_matches_brute_force(&lat, &h, &fast), "brute force disagrees over {h}: {fast} for {lat:?}");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 20);
}

#[test]
fn h1_generators_have_the_stated_orders() {
    let mut rng = rng(0x5eed_0002);
    for (g, budget) in small_groups() {
        for _ in 0..3 {
            let lat = random_lattice(&mut rng, g, budget);
            let h = Subgroup::whole(g);
            let res = h1(&lat, &h).unwrap();
            assert_eq!(res.generators.len(), res.invariants.factors.len());
            for (z, f) in res.generators.iter().zip(&res.invariants.factors) {
                assert!(is_cocycle1(&lat, z).unwrap());
                let f = f.to_i64().unwrap();
                for k in 1..=f {
                    assert_eq!(is_coboundary1(&lat, &z.scale(&Int::from(k))), k == f, "order of generator is {f}");
                }
            }
        }
    }
}

#[test]
fn h1_is_independent_of_coordinates() {
    let mut rng = rng(0x5eed_0003);
    for (g, budget) in small_groups() {
        let lat = random_lattice(&mut rng, g, budget);
        let (u, inv) = random_unimodular(&mut rng, lat.rank(), 20);
        let moved = conjugate(&lat, &u, &inv);
        // a coordinate permutation as well
        let n = lat.rank();
        let mut perm = IntMatrix::zeros(n, n);
        for i in 0..n {
            perm[((i + 1) % n, i)] = Int::ONE;
        }
        let permuted = conjugate(&lat, &perm, &perm.transpose());
        for h in all_subgroups(g) {
            let base = h1_invariants(&lat, &h).unwrap();
            assert_eq!(h1_invariants(&moved, &h).unwrap(), base);
            assert_eq!(h1_invariants(&permuted, &h).unwrap(), base);
            assert_eq!(h1(&moved, &h).unwrap().invariants, base);
        }
    }
}

#[test]
fn permutation_lattices_are_h1_trivial() {
    for (p, r) in [(3, 2), (2, 3)] {
        let g = ElementaryAbelian::new(p, r).unwrap();
        let subs = all_subgroups(g);
        for h in &subs {
            let lat = GLattice::permutation(g, h);
            for k in &subs {
                assert!(h1_invariants(&lat, k).unwrap().is_trivial(), "Z[G/{h}] over {k}");
            }
        }
    }
}

#[test]
fn coboundaries_are_cocycles() {
    let mut rng = rng(0x5eed_0004);
    for (g, budget) in small_groups() {
        for _ in 0..4 {
            let lat = random_lattice(&mut rng, g, budget);
            for h in all_subgroups(g) {
                // degree 0 → 1
                let x = random_vec(&mut rng, lat.rank(), 5);
                let dx = Cochain1::from_fn(h.clone(), lat.rank(), |e| lat.g_minus_one(e, &x)).unwrap();
                assert!(is_cocycle1(&lat, &dx).unwrap());
                // degree 1 → 2
                let v = random_cochain(&mut rng, &lat, &h);
                let dv = coboundary1(&lat, &v).unwrap();
                assert!(is_cocycle2(&lat, &dv).unwrap());
                let w = solve_coboundary(&lat, &dv).unwrap().expect("a coboundary is solvable");
                assert_eq!(coboundary1(&lat, &w).unwrap(), dv);
            }
        }
    }
}

#[test]
fn carry_classes_have_order_p() {
    for p in [2u32, 3, 5] {
        let g = ElementaryAbelian::new(p, 1).unwrap();
        let whole = Subgroup::whole(g);
        let z = GLattice::trivial(g);
        let c = carry_cocycle(&z, &whole, &[Int::ONE]).unwrap();
        assert!(is_cocycle2(&z, &c).unwrap());
        assert!(solve_coboundary(&z, &c).unwrap().is_none());
        assert_eq!(cocycle_class_order(&z, &c).unwrap(), Int::from(p));
        // induced modules are cohomologically trivial
        let reg = GLattice::regular(g);
        let norm = vec![Int::ONE; g.order()];
        let c = carry_cocycle(&reg, &whole, &norm).unwrap();
        assert_eq!(cocycle_class_order(&reg, &c).unwrap(), Int::ONE);
    }
}

#[test]
fn extension_exists_iff_cocycle() {
    let mut rng = rng(0x5eed_0005);
    let mut seen = [0usize; 2];
    for (g, _) in small_groups() {
        let base = GLattice::direct_sum(&[&GLattice::trivial(g), &GLattice::trivial(g)]).unwrap();
        let whole = Subgroup::whole(g);
        for trial in 0..12 {
            let v = random_cochain(&mut rng, &base, &whole);
            let mut c = coboundary1(&base, &v).unwrap();
            if g.rank() == 1 {
                c = c.add(&carry_cocycle(&base, &whole, &[Int::ONE, Int::from(2)]).unwrap());
            }
            if trial % 2 == 1 {
                // perturb one entry away from the identity row and column
                let n = g.order();
                let a = rng.random_range(1..n);
                let b = rng.random_range(1..n);
                let k = rng.random_range(0..base.rank());
                c.values_mut()[a * n + b][k] += Int::ONE;
            }
            let cocycle = is_cocycle2(&base, &c).unwrap();
            let ext = extension_lattice(&base, &c);
            assert_eq!(ext.is_ok(), cocycle);
            seen[cocycle as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn extension_h1_reflects_class_order() {
    // H¹(G, Z ⊕_c I[G]) is cyclic of order |G| / ord[c]
    for p in [2u32, 3] {
        let g = ElementaryAbelian::new(p, 1).unwrap();
        let whole = Subgroup::whole(g);
        let z = GLattice::trivial(g);
        let carry = carry_cocycle(&z, &whole, &[Int::ONE]).unwrap();
        let twisted = extension_lattice(&z, &carry).unwrap();
        assert!(h1_invariants(&twisted, &whole).unwrap().is_trivial());
        let split = extension_lattice(&z, &Cocycle2::zero(whole.clone(), 1)).unwrap();
        assert_eq!(h1_invariants(&split, &whole).unwrap(), FinAbInvariants::cyclic(p));
    }
}

#[test]
fn tate_groups_of_standard_lattices() {
    let g = ElementaryAbelian::new(3, 2).unwrap();
    let whole = Subgroup::whole(g);
    let z = GLattice::trivial(g);
    let ig = GLattice::augmentation_ideal(g);
    assert_eq!(tate_h0(&z, &whole).unwrap(), FinAbInvariants::cyclic(9));
    assert!(tate_h_minus1(&z, &whole).unwrap().is_trivial());
    // Ĥ⁻¹(G, I[G]) ≅ G and Ĥ⁰(G, I[G]) = 0
    let inv = tate_h_minus1(&ig, &whole).unwrap();
    assert_eq!(inv.factors, vec![Int::from(3), Int::from(3)]);
    assert!(tate_h0(&ig, &whole).unwrap().is_trivial());
    // H¹(G, I[G]) ≅ Ĥ⁰(G, Z)
    assert_eq!(h1_invariants(&ig, &whole).unwrap(), FinAbInvariants::cyclic(9));
}

