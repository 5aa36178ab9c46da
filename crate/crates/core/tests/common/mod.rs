//! Shared generators and brute-force oracles for the integration tests.
//! Also compiled into the acceptance suite of the command-line crate.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crossprod::cohomology::{carry_cocycle, extension_lattice};
use crossprod::group::{all_subgroups, ElementaryAbelian, Projection, Subgroup};
use crossprod::int::Int;
use crossprod::lattice::GLattice;
use crossprod::linalg::FinAbInvariants;
use crossprod::matrix::IntMatrix;
use crossprod::relation_module::RelationModule;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<Int>> =
        (0..rows).map(|_| (0..cols).map(|_| Int::from(rng.random_range(-bound..=bound))).collect()).collect();
    IntMatrix::from_rows(cols, data)
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Int> {
    (0..n).map(|_| Int::from(rng.random_range(-bound..=bound))).collect()
}

/// A random unimodular `U` together with `U⁻¹`, built from elementary operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Int::from(rng.random_range(-2i64..=2));
        // U ← (I - c·e_i e_jᵀ) U and U⁻¹ ← U⁻¹ (I + c·e_i e_jᵀ)
        u.sub_row_multiple(i, j, &c);
        inv.sub_col_multiple(j, i, &-c);
    }
    (u, inv)
}

/// The lattice in the coordinates `x' = U x`.
pub fn conjugate(lat: &GLattice, u: &IntMatrix, inv: &IntMatrix) -> GLattice {
    let g = lat.group();
    let actions = (0..g.rank()).map(|i| u.mul(lat.generator_action(i)).mul(inv)).collect();
    let labels = (0..lat.rank()).map(|i| format!("e{i}")).collect();
    GLattice::new(g, actions, labels).expect("conjugate of a lattice")
}

/// Small indecomposable-ish pieces over `g`, each of rank at most `budget`.
pub fn building_blocks(g: ElementaryAbelian, budget: usize) -> Vec<GLattice> {
    let mut out = vec![GLattice::trivial(g)];
    for h in all_subgroups(g) {
        if h.order() > 1 && g.order() / h.order() <= budget {
            out.push(GLattice::permutation(g, &h));
        }
    }
    if g.order() - 1 <= budget {
        out.push(GLattice::augmentation_ideal(g));
    }
    let rel = RelationModule::new(g);
    if rel.lattice().rank() <= budget {
        out.push(rel.lattice().clone());
    }
    for i in 0..g.rank() {
        let proj = Projection::new(g, &[i]).expect("coordinate");
        let c = proj.target();
        if c.order() - 1 <= budget {
            out.push(GLattice::augmentation_ideal(c).inflate(&proj).unwrap());
        }
        if c.order() <= budget {
            let z = GLattice::trivial(c);
            let carry = carry_cocycle(&z, &Subgroup::whole(c), &[Int::ONE]).unwrap();
            out.push(extension_lattice(&z, &carry).unwrap().inflate(&proj).unwrap());
        }
    }
    out
}

/// A random direct sum of building blocks with rank in `1..=budget`, in scrambled coordinates.
pub fn random_lattice(rng: &mut ChaCha8Rng, g: ElementaryAbelian, budget: usize) -> GLattice {
    let blocks = building_blocks(g, budget);
    let mut chosen: Vec<&GLattice> = Vec::new();
    let mut rank = 0;
    loop {
        let b = &blocks[rng.random_range(0..blocks.len())];
        if rank + b.rank() > budget {
            break;
        }
        rank += b.rank();
        chosen.push(b);
        if rng.random_bool(0.2) {
            break;
        }
    }
    if chosen.is_empty() {
        chosen.push(&blocks[0]);
    }
    let sum = GLattice::direct_sum(&chosen).unwrap();
    let (u, inv) = random_unimodular(rng, sum.rank(), 3 * sum.rank());
    conjugate(&sum, &u, &inv)
}

/// `rank Λ^H` from the character formula `(1/|H|) Σ tr(h)`.
pub fn fixed_rank_by_trace(lat: &GLattice, h: &Subgroup) -> usize {
    let total: i64 = h
        .elements()
        .map(|g| {
            let a = lat.action_matrix(&g);
            (0..a.rows()).map(|i| a[(i, i)].to_i64().unwrap()).sum::<i64>()
        })
        .sum();
    assert_eq!(total % h.order() as i64, 0);
    (total / h.order() as i64) as usize
}

/// Number of `H`-fixed vectors in `(Z/m)^rank`, by enumeration.
pub fn fixed_mod_count(lat: &GLattice, h: &Subgroup, m: i64) -> u64 {
    let r = lat.rank();
    let gens: Vec<Vec<Vec<i64>>> = h
        .basis()
        .iter()
        .map(|g| {
            let a = lat.action_matrix(g);
            (0..r).map(|i| (0..r).map(|j| a[(i, j)].to_i64().unwrap()).collect()).collect()
        })
        .collect();
    let mut x = vec![0i64; r];
    let mut count = 0;
    loop {
        let fixed = gens.iter().all(|a| {
            (0..r).all(|i| {
                let s: i64 = (0..r).map(|j| a[i][j] * x[j]).sum();
                (s - x[i]).rem_euclid(m) == 0
            })
        });
        count += fixed as u64;
        // odometer increment
        let mut k = 0;
        while k < r {
            x[k] += 1;
            if x[k] < m {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == r {
            return count;
        }
    }
}

/// `|H¹(H, Λ)[m]| = |(Λ/m)^H| / m^{rank Λ^H}`, from `0 → Λ →m Λ → Λ/m → 0`.
pub fn brute_h1_torsion(lat: &GLattice, h: &Subgroup, m: i64) -> u64 {
    let d = fixed_rank_by_trace(lat, h) as u32;
    let count = fixed_mod_count(lat, h, m);
    let denom = (m as u64).pow(d);
    assert_eq!(count % denom, 0);
    count / denom
}

/// `|A[m]|` for a finite abelian group given by its invariant factors.
pub fn torsion_count(inv: &FinAbInvariants, m: i64) -> u64 {
    assert!(inv.is_finite());
    inv.factors.iter().map(|f| Int::from(m).gcd(f).to_i64().unwrap() as u64).product()
}

pub fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The small test groups with a rank budget for brute-force enumeration.
pub fn small_groups() -> Vec<(ElementaryAbelian, usize)> {
    vec![
        (ElementaryAbelian::new(2, 1).unwrap(), 8),
        (ElementaryAbelian::new(3, 1).unwrap(), 8),
        (ElementaryAbelian::new(2, 2).unwrap(), 8),
        (ElementaryAbelian::new(3, 2).unwrap(), 5),
    ]
}

/// Whether the library's `H¹(H, Λ)` agrees with brute force at every divisor of `|H|`.
pub fn h1_matches_brute_force(lat: &GLattice, h: &Subgroup, inv: &FinAbInvariants) -> bool {
    inv.is_finite()
        && divisors(h.order() as i64).into_iter().all(|m| torsion_count(inv, m) == brute_h1_torsion(lat, h, m))
        // |H| kills H¹, so the full group is the |H|-torsion
        && inv.order().unwrap() == Int::from(torsion_count(inv, h.order() as i64))
}
