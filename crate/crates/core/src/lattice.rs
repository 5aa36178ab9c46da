//! G-lattices: free Z-modules of finite rank with an action of an elementary
//! abelian group, given by one integer matrix per generator.
//!
//! Matrices act on column vectors: `g·x = A_g x`. The constructor checks that
//! generator matrices commute and have order dividing `p`, which is exactly
//! what is needed for them to define an action of `(Z/p)^r`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{Element, ElementaryAbelian, Projection, Subgroup};
use crate::int::Int;
use crate::linalg::{hnf_basis, right_kernel_basis};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("expected {expected} action matrices, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("action matrix for generator {0} has the wrong shape")]
    BadShape(usize),
    #[error("actions of generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("action of generator {0} does not have order dividing p")]
    WrongOrder(usize),
    #[error("{0} labels for a lattice of rank {1}")]
    BadLabels(usize, usize),
    #[error("map does not commute with the action of generator {0}")]
    NotEquivariant(usize),
    #[error("lattices are over different groups")]
    GroupMismatch,
    #[error("vector of length {got} in a lattice of rank {rank}")]
    WrongLength { rank: usize, got: usize },
    #[error("vector is not fixed by the subgroup")]
    NotFixed,
}

/// Row-sparse copy of an action matrix, for applying it many times.
#[derive(Clone, Debug, Default)]
pub struct Sparse {
    rows: Vec<Vec<(usize, Int)>>,
}

impl Sparse {
    fn new(m: &IntMatrix) -> Sparse {
        Sparse {
            rows: (0..m.rows())
                .map(|i| m.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect())
                .collect(),
        }
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Int::ZERO;
                for (j, a) in row {
                    if !x[*j].is_zero() {
                        acc.add_mul_assign(a, &x[*j]);
                    }
                }
                acc
            })
            .collect()
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct LatticeData {
    group: ElementaryAbelian,
    labels: Vec<String>,
    actions: Vec<IntMatrix>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "LatticeData", into = "LatticeData")]
pub struct GLattice {
    group: ElementaryAbelian,
    labels: Vec<String>,
    actions: Vec<IntMatrix>,
    sparse: Vec<Sparse>,
}

impl TryFrom<LatticeData> for GLattice {
    type Error = LatticeError;
    fn try_from(d: LatticeData) -> Result<GLattice, LatticeError> {
        GLattice::new(d.group, d.actions, d.labels)
    }
}

impl From<GLattice> for LatticeData {
    fn from(l: GLattice) -> LatticeData {
        LatticeData { group: l.group, labels: l.labels, actions: l.actions }
    }
}

impl PartialEq for GLattice {
    fn eq(&self, other: &GLattice) -> bool {
        self.group == other.group && self.labels == other.labels && self.actions == other.actions
    }
}

impl Eq for GLattice {}

impl fmt::Debug for GLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GLattice").field("group", &self.group).field("rank", &self.rank()).finish()
    }
}

fn unit(n: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::ZERO; n];
    v[i] = Int::ONE;
    v
}

impl GLattice {
    pub fn new(group: ElementaryAbelian, actions: Vec<IntMatrix>, labels: Vec<String>) -> Result<GLattice, LatticeError> {
        if actions.len() != group.rank() {
            return Err(LatticeError::WrongGeneratorCount { expected: group.rank(), got: actions.len() });
        }
        let n = labels.len();
        for (i, a) in actions.iter().enumerate() {
            if !a.is_square() {
                return Err(LatticeError::BadShape(i));
            }
            if a.rows() != n {
                return Err(LatticeError::BadLabels(n, a.rows()));
            }
        }
        let sparse: Vec<Sparse> = actions.iter().map(Sparse::new).collect();
        for j in 0..n {
            let e = unit(n, j);
            let images: Vec<Vec<Int>> = sparse.iter().map(|s| s.apply(&e)).collect();
            for (a, sa) in sparse.iter().enumerate() {
                let mut x = images[a].clone();
                for _ in 1..group.p() {
                    x = sa.apply(&x);
                }
                if x != e {
                    return Err(LatticeError::WrongOrder(a));
                }
                for b in a + 1..sparse.len() {
                    if sa.apply(&images[b]) != sparse[b].apply(&images[a]) {
                        return Err(LatticeError::NotCommuting(a, b));
                    }
                }
            }
        }
        Ok(GLattice { group, labels, actions, sparse })
    }

    fn unchecked(group: ElementaryAbelian, actions: Vec<IntMatrix>, labels: Vec<String>) -> GLattice {
        let sparse = actions.iter().map(Sparse::new).collect();
        GLattice { group, labels, actions, sparse }
    }

    pub fn group(&self) -> ElementaryAbelian {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_label_prefix(mut self, prefix: &str) -> GLattice {
        for l in self.labels.iter_mut() {
            *l = format!("{prefix}{l}");
        }
        self
    }

    pub fn generator_action(&self, i: usize) -> &IntMatrix {
        &self.actions[i]
    }

    /// `g·x`.
    pub fn act(&self, g: &Element, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.rank(), "vector length does not match lattice rank");
        let mut y = x.to_vec();
        for (i, &e) in g.exponents().iter().enumerate() {
            for _ in 0..e {
                y = self.sparse[i].apply(&y);
            }
        }
        y
    }

    pub fn act_index(&self, g: usize, x: &[Int]) -> Vec<Int> {
        self.act(&self.group.from_index(g), x)
    }

    /// Sparse matrix of `g`, for repeated application.
    pub fn sparse_action(&self, g: &Element) -> Sparse {
        Sparse::new(&self.action_matrix(g))
    }

    pub fn action_matrix(&self, g: &Element) -> IntMatrix {
        let cols: Vec<Vec<Int>> = (0..self.rank()).map(|j| self.act(g, &unit(self.rank(), j))).collect();
        IntMatrix::from_columns(self.rank(), &cols)
    }

    /// `(g - 1)x`.
    pub fn g_minus_one(&self, g: &Element, x: &[Int]) -> Vec<Int> {
        let mut y = self.act(g, x);
        for (a, b) in y.iter_mut().zip(x) {
            *a -= b;
        }
        y
    }

    /// Matrix of the norm `Σ_{h∈H} h`.
    pub fn norm_matrix(&self, h: &Subgroup) -> IntMatrix {
        let n = self.rank();
        let cols: Vec<Vec<Int>> = (0..n)
            .map(|j| {
                let e = unit(n, j);
                let mut acc = vec![Int::ZERO; n];
                for g in h.elements() {
                    for (a, b) in acc.iter_mut().zip(self.act(&g, &e)) {
                        *a += b;
                    }
                }
                acc
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    pub fn is_fixed(&self, h: &Subgroup, x: &[Int]) -> bool {
        h.basis().iter().all(|b| self.act(b, x) == x)
    }

    /// Saturated basis (rows) of `Λ^H`.
    pub fn fixed_sublattice(&self, h: &Subgroup) -> IntMatrix {
        let n = self.rank();
        if h.rank() == 0 {
            return IntMatrix::identity(n);
        }
        let mut stacked = IntMatrix::zeros(0, n);
        for b in h.basis() {
            let m = self.action_matrix(b).minus_identity();
            stacked = stacked.vstack(&m);
        }
        right_kernel_basis(&stacked)
    }

    /// Hermite basis (rows) of `Σ_i (g_i - 1)Λ`.
    pub fn ih_sublattice(&self, elements: &[Element]) -> IntMatrix {
        self.ih_sublattice_of(elements, &IntMatrix::identity(self.rank()))
    }

    /// Hermite basis of `Σ_i (g_i - 1)S` for the sublattice `S` spanned by the rows of `span`.
    pub fn ih_sublattice_of(&self, elements: &[Element], span: &IntMatrix) -> IntMatrix {
        let mut rows = Vec::new();
        for g in elements {
            for k in 0..span.rows() {
                rows.push(self.g_minus_one(g, span.row(k)));
            }
        }
        hnf_basis(&IntMatrix::from_rows(self.rank(), rows))
    }

    pub fn trivial(group: ElementaryAbelian) -> GLattice {
        Self::unchecked(group, vec![IntMatrix::identity(1); group.rank()], vec!["1".into()])
    }

    /// `Z[G]`, basis indexed by group elements in index order.
    pub fn regular(group: ElementaryAbelian) -> GLattice {
        Self::permutation(group, &Subgroup::trivial(group))
    }

    /// `Z[G/H]` on the canonical transversal of `H`; coordinate `i` is the coset of the `i`-th representative.
    pub fn permutation(group: ElementaryAbelian, h: &Subgroup) -> GLattice {
        let reps = h.transversal();
        let n = reps.len();
        let actions = group
            .generators()
            .iter()
            .map(|s| {
                let si = group.index(s);
                let mut m = IntMatrix::zeros(n, n);
                for (j, &g) in reps.iter().enumerate() {
                    let target = h.coset_rep(group.mul_index(si, g));
                    let i = reps.binary_search(&target).expect("coset representative");
                    m[(i, j)] = Int::ONE;
                }
                m
            })
            .collect();
        let labels = if h.order() == 1 {
            reps.iter().map(|&g| group.from_index(g).to_string()).collect()
        } else {
            reps.iter().map(|&g| format!("{}H", group.from_index(g))).collect()
        };
        Self::unchecked(group, actions, labels)
    }

    /// `I[G]` with basis `g - 1` for `g ≠ 1` in index order.
    pub fn augmentation_ideal(group: ElementaryAbelian) -> GLattice {
        let n = group.order() - 1;
        let pos = |g: usize| g.checked_sub(1);
        let actions = group
            .generators()
            .iter()
            .map(|s| {
                let si = group.index(s);
                let mut m = IntMatrix::zeros(n, n);
                // s(g-1) = (sg - 1) - (s - 1)
                for g in 1..group.order() {
                    let j = g - 1;
                    if let Some(i) = pos(group.mul_index(si, g)) {
                        m[(i, j)] += Int::ONE;
                    }
                    m[(si - 1, j)] -= Int::ONE;
                }
                m
            })
            .collect();
        let labels = (1..group.order()).map(|g| format!("{}-1", group.from_index(g))).collect();
        Self::unchecked(group, actions, labels)
    }

    /// The same lattice viewed over the source of a quotient map.
    pub fn inflate(&self, proj: &Projection) -> Result<GLattice, LatticeError> {
        if proj.target() != self.group {
            return Err(LatticeError::GroupMismatch);
        }
        let src = proj.source();
        let actions = src.generators().iter().map(|s| self.action_matrix(&proj.apply(s))).collect();
        Ok(Self::unchecked(src, actions, self.labels.clone()))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(parts: &[&GLattice]) -> Result<GLattice, LatticeError> {
        let group = parts.first().map(|l| l.group).ok_or(LatticeError::GroupMismatch)?;
        if parts.iter().any(|l| l.group != group) {
            return Err(LatticeError::GroupMismatch);
        }
        let n: usize = parts.iter().map(|l| l.rank()).sum();
        let mut actions = vec![IntMatrix::zeros(n, n); group.rank()];
        let mut offset = 0;
        for l in parts {
            for (a, la) in actions.iter_mut().zip(&l.actions) {
                for i in 0..l.rank() {
                    for j in 0..l.rank() {
                        a[(offset + i, offset + j)] = la[(i, j)].clone();
                    }
                }
            }
            offset += l.rank();
        }
        let labels = parts.iter().flat_map(|l| l.labels.iter().cloned()).collect();
        Ok(Self::unchecked(group, actions, labels))
    }
}

/// An equivariant map, stored as a `target.rank × source.rank` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHom {
    matrix: IntMatrix,
}

impl LatticeHom {
    pub fn new(source: &GLattice, target: &GLattice, matrix: IntMatrix) -> Result<LatticeHom, LatticeError> {
        if source.group != target.group {
            return Err(LatticeError::GroupMismatch);
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(LatticeError::WrongLength { rank: target.rank(), got: matrix.rows() });
        }
        for i in 0..source.group.rank() {
            if matrix.mul(&source.actions[i]) != target.actions[i].mul(&matrix) {
                return Err(LatticeError::NotEquivariant(i));
            }
        }
        Ok(LatticeHom { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }
}
