//! Randomized properties of the Hermite and Smith forms and the solvers.

use proptest::prelude::*;

use crossprod::int::Int;
use crossprod::linalg::{
    hnf, is_hermite, is_smith, kernel_basis, lattice_membership, quotient_invariants, right_kernel_basis, snf,
    solve_integer, solve_or_certify, Solvability,
};
use crossprod::matrix::IntMatrix;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r).prop_map(move |rows| {
            IntMatrix::from_rows(c, rows.into_iter().map(|row| row.into_iter().map(Int::from).collect()).collect())
        })
    })
}

/// Matrices whose rank is usually deficient: products of thin factors.
fn low_rank(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (matrix(max_dim, 3), 1..=2usize).prop_flat_map(|(a, k)| {
        let cols = a.cols();
        prop::collection::vec(prop::collection::vec(-3i64..=3, cols), k).prop_map(move |rows| {
            let b = IntMatrix::from_rows(cols, rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect());
            // (rows × k)·(k × cols), through the columns of a
            let left = IntMatrix::from_rows(k, (0..a.rows()).map(|i| a.row(i)[..k.min(a.cols())].to_vec()).map(|mut v| {
                v.resize(k, Int::ZERO);
                v
            }).collect());
            left.mul(&b)
        })
    })
}

/// `D_k`: gcd of all `k × k` minors, by brute force (small matrices only).
fn determinantal_divisor(a: &IntMatrix, k: usize) -> Int {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = Int::ZERO;
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            let m = IntMatrix::from_rows(k, rs.iter().map(|&r| cs.iter().map(|&c| a[(r, c)].clone()).collect()).collect());
            g = g.gcd(&m.determinant());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_is_certified(a in prop_oneof![matrix(6, 9), low_rank(6)]) {
        let sf = snf(&a);
        prop_assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.s.clone());
        prop_assert!(sf.u.is_unimodular());
        prop_assert!(sf.v.is_unimodular());
        prop_assert_eq!(sf.v.mul(&sf.v_inv), IntMatrix::identity(a.cols()));
        prop_assert!(is_smith(&sf.s));
        let nonzero = sf.diagonal().iter().filter(|d| !d.is_zero()).count();
        prop_assert_eq!(nonzero, sf.rank);
    }

    #[test]
    fn hermite_form_is_certified(a in prop_oneof![matrix(6, 9), low_rank(6)]) {
        let hf = hnf(&a);
        prop_assert_eq!(hf.u.mul(&a), hf.h.clone());
        prop_assert!(hf.u.is_unimodular());
        prop_assert!(is_hermite(&hf.h));
        prop_assert_eq!(hf.rank(), snf(&a).rank);
    }

    #[test]
    fn solvers_agree(a in matrix(5, 6), x in prop::collection::vec(-4i64..=4, 5), noise in prop::collection::vec(-2i64..=2, 5)) {
        let x: Vec<Int> = x.into_iter().take(a.cols()).map(Int::from).chain(std::iter::repeat(Int::ZERO)).take(a.cols()).collect();
        let solvable = a.mul_vec(&x);
        let b: Vec<Int> = solvable.iter().zip(noise.iter().chain(std::iter::repeat(&0))).map(|(v, n)| v + Int::from(*n)).collect();
        for rhs in [solvable, b] {
            let sol = solve_integer(&a, &rhs).unwrap();
            let member = lattice_membership(&a.transpose(), &rhs).unwrap();
            prop_assert_eq!(sol.is_some(), member.is_some());
            if let Some(s) = sol {
                prop_assert_eq!(a.mul_vec(&s), rhs.clone());
            }
            if let Some(c) = member {
                prop_assert_eq!(a.transpose().vec_mul(&c), rhs.clone());
            }
            if let Solvability::Infeasible(cert) = solve_or_certify(&a, &rhs).unwrap() {
                prop_assert!(cert.validates(&a, &rhs));
            }
        }
    }

    #[test]
    fn kernels_are_saturated(a in prop_oneof![matrix(5, 5), low_rank(5)]) {
        let k = right_kernel_basis(&a);
        prop_assert_eq!(k.rows(), a.cols() - snf(&a).rank);
        for i in 0..k.rows() {
            prop_assert!(a.mul_vec(k.row(i)).iter().all(Int::is_zero));
        }
        if k.rows() > 0 {
            // a saturated sublattice has a free quotient
            let q = quotient_invariants(a.cols(), &k).unwrap();
            prop_assert!(q.factors.is_empty());
        }
        let left = kernel_basis(&a);
        for i in 0..left.rows() {
            prop_assert!(a.vec_mul(left.row(i)).iter().all(Int::is_zero));
        }
    }

    #[test]
    fn smith_diagonal_matches_minors(a in matrix(4, 7)) {
        let d = snf(&a).diagonal();
        let mut prev = Int::ONE;
        for k in 1..=d.len() {
            let dk = determinantal_divisor(&a, k);
            if dk.is_zero() {
                prop_assert!(d[k - 1].is_zero());
                break;
            }
            prop_assert_eq!(d[k - 1].clone(), dk.div_exact(&prev));
            prev = dk;
        }
    }

    #[test]
    fn quotient_order_is_determinant(a in matrix(4, 6)) {
        if a.is_square() {
            let q = quotient_invariants(a.cols(), &a).unwrap();
            let det = a.determinant().abs();
            if det.is_zero() {
                prop_assert!(!q.is_finite());
            } else {
                prop_assert_eq!(q.order().unwrap(), det);
            }
        }
    }
}
