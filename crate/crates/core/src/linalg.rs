//! Exact linear algebra over the integers.
//!
//! Everything here is built on two elimination kernels: a row-style Hermite
//! normal form (`U·A = H`) and a Smith normal form with both transforms
//! (`U·A·V = S`). Kernels, integer solvability, sublattice membership and the
//! isomorphism type of finitely generated quotients are all derived from
//! those two.
//!
//! Pivots are always chosen by minimal absolute value and eliminated with
//! nearest-integer quotients, which keeps intermediate entries small on the
//! sparse 0/±1 matrices produced by the lattice constructions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::int::Int;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Row Hermite normal form `H = U·A` with `U` unimodular.
///
/// The non-zero rows of `H` come first; row `i` has its leading entry in
/// column `pivots[i]`, that entry is positive, and every entry above it lies
/// in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Smith normal form `S = U·A·V` with `U`, `V` unimodular.
///
/// `v_inv` is the inverse of `V`; its rows are a basis of the column space
/// adapted to the diagonal, which is how quotient generators are read off.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

fn sub_row(rows: &mut [Vec<Int>], target: usize, source: usize, q: &Int, from: usize) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t[from..].iter_mut().zip(&s[from..]) {
        if !y.is_zero() {
            x.sub_mul_assign(q, y);
        }
    }
}

fn negate_row(row: &mut [Int]) {
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v = -&*v;
        }
    }
}

fn hnf_rows(mut h: Vec<Vec<Int>>, cols: usize, mut u: Option<Vec<Vec<Int>>>) -> (Vec<Vec<Int>>, Option<Vec<Vec<Int>>>, Vec<usize>) {
    let m = h.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].cmp_abs(&h[b][c]));
            let Some(best) = best else { break };
            h.swap(r, best);
            if let Some(u) = u.as_mut() {
                u.swap(r, best);
            }
            let mut clean = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_nearest(&h[r][c]);
                sub_row(&mut h, i, r, &q, c);
                if let Some(u) = u.as_mut() {
                    sub_row(u, i, r, &q, 0);
                }
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < m && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                negate_row(&mut h[r]);
                if let Some(u) = u.as_mut() {
                    negate_row(&mut u[r]);
                }
            }
            for i in 0..r {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                sub_row(&mut h, i, r, &q, c);
                if let Some(u) = u.as_mut() {
                    sub_row(u, i, r, &q, 0);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    (h, u, pivots)
}

/// Row Hermite normal form with transform.
pub fn hnf(a: &IntMatrix) -> HermiteForm {
    let m = a.rows();
    let (h, u, pivots) = hnf_rows(a.row_vecs().to_vec(), a.cols(), Some(IntMatrix::identity(m).into_row_vecs()));
    HermiteForm {
        h: IntMatrix::from_rows(a.cols(), h),
        u: IntMatrix::from_rows(m, u.expect("transform tracked")),
        pivots,
    }
}

/// The non-zero rows of the Hermite normal form: the canonical basis of the row span.
pub fn hnf_basis(a: &IntMatrix) -> IntMatrix {
    let (mut h, _, pivots) = hnf_rows(a.row_vecs().to_vec(), a.cols(), None);
    h.truncate(pivots.len());
    IntMatrix::from_rows(a.cols(), h)
}

/// Smith normal form with both transforms.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.row_vecs().to_vec();
    let mut u = IntMatrix::identity(m).into_row_vecs();
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n).into_row_vecs();

    // Column operations are applied to `s` and `v`; the inverse operation is
    // applied to the rows of `v_inv`.
    fn col_sub(s: &mut [Vec<Int>], v: &mut IntMatrix, v_inv: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
        for row in s.iter_mut() {
            if !row[source].is_zero() {
                let x = row[source].clone();
                row[target].sub_mul_assign(q, &x);
            }
        }
        v.sub_col_multiple(target, source, q);
        let neg = -q;
        sub_row(v_inv, source, target, &neg, 0);
    }
    fn col_swap(s: &mut [Vec<Int>], v: &mut IntMatrix, v_inv: &mut [Vec<Int>], a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in s.iter_mut() {
            row.swap(a, b);
        }
        v.swap_cols(a, b);
        v_inv.swap(a, b);
    }

    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| s[i][j].cmp_abs(&s[bi][bj]) == Ordering::Less) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        col_swap(&mut s, &mut v, &mut v_inv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_nearest(&s[t][t]);
                sub_row(&mut s, i, t, &q, t);
                sub_row(&mut u, i, t, &q, 0);
                dirty |= !s[i][t].is_zero();
            }
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_nearest(&s[t][t]);
                col_sub(&mut s, &mut v, &mut v_inv, j, t, &q);
                dirty |= !s[t][j].is_zero();
            }
            if dirty {
                // Move the smallest surviving entry of row/column t onto the diagonal.
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..m {
                    if !s[i][t].is_zero() && s[i][t].cmp_abs(&s[bi][bj]) == Ordering::Less {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !s[t][j].is_zero() && s[t][j].cmp_abs(&s[bi][bj]) == Ordering::Less {
                        (bi, bj) = (t, j);
                    }
                }
                if bi != t {
                    s.swap(t, bi);
                    u.swap(t, bi);
                }
                if bj != t {
                    col_swap(&mut s, &mut v, &mut v_inv, t, bj);
                }
                continue;
            }
            let pivot = s[t][t].clone();
            let offender = (t + 1..m).find(|&i| s[i][t + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = Int::small(-1);
                    sub_row(&mut s, t, i, &minus_one, t);
                    sub_row(&mut u, t, i, &minus_one, 0);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            negate_row(&mut s[t]);
            negate_row(&mut u[t]);
        }
        t += 1;
    }
    SmithForm {
        s: IntMatrix::from_rows(n, s),
        u: IntMatrix::from_rows(m, u),
        v,
        v_inv: IntMatrix::from_rows(n, v_inv),
        rank: t,
    }
}

/// A checkable proof that `A·x = b` has no integer solution: a row vector
/// `w` with `w·A ≡ 0` and `w·b ≢ 0` modulo `modulus` (exactly, when the
/// modulus is zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    pub functional: Vec<Int>,
    pub modulus: Int,
}

impl InfeasibilityCertificate {
    /// Re-validates the certificate against the system it claims to refute.
    pub fn validates(&self, a: &IntMatrix, b: &[Int]) -> bool {
        if self.functional.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        let reduce = |x: &Int| {
            if self.modulus.is_zero() {
                x.clone()
            } else {
                x.mod_floor(&self.modulus)
            }
        };
        let wa = a.vec_mul(&self.functional);
        let wb: Int = self.functional.iter().zip(b).map(|(w, v)| w * v).sum();
        wa.iter().all(|x| reduce(x).is_zero()) && !reduce(&wb).is_zero()
    }
}

/// Outcome of an integer linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solvability {
    Solution(Vec<Int>),
    Infeasible(InfeasibilityCertificate),
}

/// Solves `A·x = b` over the integers, returning either a solution or a
/// certificate of infeasibility read off the Smith form.
pub fn solve_or_certify(a: &IntMatrix, b: &[Int]) -> Result<Solvability, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let sf = snf(a);
    let c = sf.u.mul_vec(b);
    let mut y = vec![Int::ZERO; a.cols()];
    for (k, ck) in c.iter().enumerate() {
        let d = if k < sf.rank { sf.s[(k, k)].clone() } else { Int::ZERO };
        if !ck.is_multiple_of(&d) {
            return Ok(Solvability::Infeasible(InfeasibilityCertificate {
                functional: sf.u.row(k).to_vec(),
                modulus: d,
            }));
        }
        if k < sf.rank {
            y[k] = ck.div_exact(&d);
        }
    }
    Ok(Solvability::Solution(sf.v.mul_vec(&y)))
}

/// Some integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>, LinalgError> {
    Ok(match solve_or_certify(a, b)? {
        Solvability::Solution(x) => Some(x),
        Solvability::Infeasible(_) => None,
    })
}

/// Z-basis (as rows, in Hermite form) of the left kernel `{x : x·A = 0}`.
///
/// The kernel of an integer matrix is a direct summand, so the basis is
/// saturated: the quotient of `Z^rows` by it is free.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let hf = hnf(a);
    let rank = hf.rank();
    let kernel = hf.u.select_rows(rank..a.rows());
    hnf_basis(&kernel)
}

/// Z-basis (as rows) of the right kernel `{x : A·x = 0}`.
pub fn right_kernel_basis(a: &IntMatrix) -> IntMatrix {
    kernel_basis(&a.transpose())
}

/// Isomorphism type `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbInvariants {
    pub factors: Vec<Int>,
    pub free_rank: usize,
}

impl FinAbInvariants {
    pub fn trivial() -> FinAbInvariants {
        FinAbInvariants { factors: Vec::new(), free_rank: 0 }
    }

    pub fn cyclic(n: impl Into<Int>) -> FinAbInvariants {
        let n = n.into();
        if n.is_one() {
            FinAbInvariants::trivial()
        } else {
            FinAbInvariants { factors: vec![n], free_rank: 0 }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank == 0 && self.factors.len() <= 1 || self.free_rank == 1 && self.factors.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.factors.iter().cloned().product())
    }

    /// Builds the invariants from raw diagonal entries (any order, zeros allowed)
    /// of a relation matrix on `generators` free generators.
    fn from_diagonal(generators: usize, diagonal: &[Int]) -> FinAbInvariants {
        let nonzero: Vec<Int> = diagonal.iter().filter(|d| !d.is_zero()).map(Int::abs).collect();
        let free_rank = generators - nonzero.len();
        let factors = nonzero.into_iter().filter(|d| !d.is_one()).collect();
        FinAbInvariants { factors, free_rank }
    }
}

impl fmt::Display for FinAbInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Invariants of `Z^ambient_rank / rowspan(sub_basis)`.
pub fn quotient_invariants(ambient_rank: usize, sub_basis: &IntMatrix) -> Result<FinAbInvariants, LinalgError> {
    if sub_basis.cols() != ambient_rank {
        return Err(LinalgError::DimensionMismatch(format!(
            "sublattice rows have length {} in an ambient lattice of rank {ambient_rank}",
            sub_basis.cols()
        )));
    }
    let sf = snf(sub_basis);
    let diag = sf.diagonal();
    let mut full = diag;
    full.resize(ambient_rank, Int::ZERO);
    Ok(FinAbInvariants::from_diagonal(ambient_rank, &full))
}

/// A row-span in Hermite form together with the transform back to the
/// original generators, for repeated membership and reduction queries.
#[derive(Clone, Debug)]
pub struct RowSpan {
    basis: IntMatrix,
    pivots: Vec<usize>,
    // rows of U paired with the non-zero rows of H
    transform: IntMatrix,
}

impl RowSpan {
    pub fn new(generators: &IntMatrix) -> RowSpan {
        let hf = hnf(generators);
        let rank = hf.rank();
        RowSpan {
            basis: hf.h.select_rows(0..rank),
            transform: hf.u.select_rows(0..rank),
            pivots: hf.pivots,
        }
    }

    /// Hermite basis of the span.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coefficients `c` with `v = c·generators`, or `None` if `v` is not in the span.
    pub fn express(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.basis.cols(), "vector length mismatch");
        let mut rest = v.to_vec();
        let mut y = vec![Int::ZERO; self.rank()];
        for (r, &c) in self.pivots.iter().enumerate() {
            if rest[c].is_zero() {
                continue;
            }
            let pivot = &self.basis[(r, c)];
            if !rest[c].is_multiple_of(pivot) {
                return None;
            }
            let q = rest[c].div_exact(pivot);
            for (x, b) in rest[c..].iter_mut().zip(&self.basis.row(r)[c..]) {
                if !b.is_zero() {
                    x.sub_mul_assign(&q, b);
                }
            }
            y[r] = q;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.transform.vec_mul(&y))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.express(v).is_some()
    }

    /// Canonical representative of `v` modulo the span: every pivot
    /// coordinate is reduced into `[0, pivot)`. Two vectors are congruent
    /// modulo the span iff their reductions agree.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut rest = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let q = rest[c].div_floor(&self.basis[(r, c)]);
            if q.is_zero() {
                continue;
            }
            for (x, b) in rest[c..].iter_mut().zip(&self.basis.row(r)[c..]) {
                if !b.is_zero() {
                    x.sub_mul_assign(&q, b);
                }
            }
        }
        rest
    }
}

/// Membership of `v` in the Z-span of the rows of `sub_basis`, with expressing
/// coefficients when it holds.
pub fn lattice_membership(sub_basis: &IntMatrix, v: &[Int]) -> Result<Option<Vec<Int>>, LinalgError> {
    if v.len() != sub_basis.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "vector of length {} against rows of length {}",
            v.len(),
            sub_basis.cols()
        )));
    }
    Ok(RowSpan::new(sub_basis).express(v))
}

/// Checks the row Hermite normal form shape conditions.
pub fn is_hermite(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        let lead = h.row(i).iter().position(|x| !x.is_zero());
        match lead {
            None => seen_zero = true,
            Some(c) => {
                if seen_zero || last_pivot.is_some_and(|p| c <= p) {
                    return false;
                }
                let pivot = &h[(i, c)];
                if pivot.signum() <= 0 {
                    return false;
                }
                for k in 0..i {
                    let x = &h[(k, c)];
                    if x.is_negative() || x >= pivot {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

/// Checks that `s` is diagonal with non-negative entries forming a divisibility chain.
pub fn is_smith(s: &IntMatrix) -> bool {
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j && !s[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<&Int> = (0..s.rows().min(s.cols())).map(|i| &s[(i, i)]).collect();
    if diag.iter().any(|d| d.is_negative()) {
        return false;
    }
    diag.windows(2).all(|w| w[1].is_multiple_of(w[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let hf = hnf(&id);
        assert_eq!(hf.h, id);
        assert_eq!(hf.u, id);
        let z = IntMatrix::zeros(2, 3);
        let hf = hnf(&z);
        assert_eq!(hf.h, z);
        assert_eq!(hf.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_two_by_two() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let hf = hnf(&a);
        assert_eq!(hf.u.mul(&a), hf.h);
        assert!(hf.u.is_unimodular());
        assert!(is_hermite(&hf.h));
        // det 2: pivots 1 then 2
        assert_eq!(hf.h[(0, 0)], Int::ONE);
        assert_eq!(hf.h[(1, 1)], Int::small(2));
        assert!(hf.h[(1, 0)].is_zero());
    }

    #[test]
    fn snf_examples() {
        let s = snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), ints(&[1, 6]));
        let s = snf(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(s.s, IntMatrix::from_i64(&[&[0]]));
        let s = snf(&IntMatrix::from_i64(&[&[3, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), ints(&[3, 3]));
    }

    #[test]
    fn snf_transforms_and_inverse() {
        let a = IntMatrix::from_i64(&[&[4, 6, 2], &[2, 8, 0], &[6, 2, 10], &[1, 1, 1]]);
        let sf = snf(&a);
        assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.s);
        assert!(is_smith(&sf.s));
        assert_eq!(sf.v.mul(&sf.v_inv), IntMatrix::identity(3));
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_i64(&[&[2]]);
        assert_eq!(solve_integer(&a, &ints(&[4])).unwrap(), Some(ints(&[2])));
        match solve_or_certify(&a, &ints(&[3])).unwrap() {
            Solvability::Infeasible(cert) => assert!(cert.validates(&a, &ints(&[3]))),
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert!(solve_integer(&a, &ints(&[1, 2])).is_err());
        // inconsistent over Q: certificate with modulus 0
        let b = IntMatrix::from_i64(&[&[1], &[1]]);
        match solve_or_certify(&b, &ints(&[1, 2])).unwrap() {
            Solvability::Infeasible(cert) => {
                assert!(cert.modulus.is_zero());
                assert!(cert.validates(&b, &ints(&[1, 2])));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn kernel_examples() {
        let a = IntMatrix::from_i64(&[&[1], &[-1]]);
        assert_eq!(kernel_basis(&a), IntMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).rows(), 0);
        // non-saturated generators still give a saturated kernel
        let a = IntMatrix::from_i64(&[&[2], &[4]]);
        let k = kernel_basis(&a);
        assert_eq!(k, IntMatrix::from_i64(&[&[2, -1]]));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_invariants(1, &IntMatrix::from_i64(&[&[3]])).unwrap();
        assert_eq!(q, FinAbInvariants::cyclic(3));
        let q = quotient_invariants(2, &IntMatrix::identity(2)).unwrap();
        assert!(q.is_trivial());
        let q = quotient_invariants(2, &IntMatrix::from_i64(&[&[2, 0]])).unwrap();
        assert_eq!(q, FinAbInvariants { factors: ints(&[2]), free_rank: 1 });
        assert_eq!(q.to_string(), "Z/2 + Z");
        assert!(quotient_invariants(3, &IntMatrix::from_i64(&[&[2, 0]])).is_err());
    }

    #[test]
    fn membership_examples() {
        let span = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(lattice_membership(&span, &ints(&[4, 3])).unwrap(), Some(ints(&[2, 3])));
        assert_eq!(lattice_membership(&span, &ints(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn reduction_is_canonical() {
        let span = RowSpan::new(&IntMatrix::from_i64(&[&[2, 1, 0], &[0, 3, 3]]));
        let v = ints(&[5, 7, 1]);
        let w: Vec<Int> = v
            .iter()
            .zip(span.basis().row(0))
            .zip(span.basis().row(1))
            .map(|((a, b), c)| a + &(b * &Int::small(-4)) + c * Int::small(7))
            .collect();
        assert_eq!(span.reduce(&v), span.reduce(&w));
    }
}
