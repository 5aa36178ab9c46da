//! The relation module `A₂(H)`: the kernel of `⊕_i Z[H]d_i → Z[H]`, `d_i ↦ s_i - 1`.
//!
//! The kernel is computed as a saturated sublattice of the free module and
//! given its Hermite basis, so coordinates on `A₂(H)` are canonical. For
//! rank-2 groups, [`A2Presentation`] adds the three module generators
//! `x = (s2-1)d1 - (s1-1)d2`, `b1 = N1 d1`, `b2 = N2 d2`, the residue map
//! `π` built from them, and the commutator blocks used by the rank-2
//! canonical cocycle.

use crate::group::{Element, ElementaryAbelian, Subgroup};
use crate::group_ring::{norm_element, GroupRingElement};
use crate::int::Int;
use crate::lattice::GLattice;
use crate::linalg::{kernel_basis, quotient_invariants, right_kernel_basis, solve_integer, FinAbInvariants, RowSpan};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationModuleError {
    #[error("vector does not lie in the relation module")]
    NotInModule,
    #[error("the three-generator presentation needs a group of rank 2, got rank {0}")]
    NotRankTwo(usize),
    #[error("element has no expression in the module generators")]
    NoExpression,
}

/// `A₂(H)` together with its embedding in the free module `⊕_i Z[H]d_i`.
#[derive(Clone, Debug)]
pub struct RelationModule {
    group: ElementaryAbelian,
    lattice: GLattice,
    // rows: basis vectors of A₂ in free coordinates
    inclusion: IntMatrix,
    span: RowSpan,
}

impl RelationModule {
    pub fn new(group: ElementaryAbelian) -> RelationModule {
        let order = group.order();
        let free_rank = group.rank() * order;
        let boundary = Self::boundary_matrix(group);
        let inclusion = kernel_basis(&boundary);
        let span = RowSpan::new(&inclusion);
        let k = inclusion.rows();
        let free_action = |s: usize, v: &[Int]| -> Vec<Int> {
            let mut out = vec![Int::ZERO; free_rank];
            for (idx, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, g) = (idx / order, idx % order);
                out[i * order + group.mul_index(s, g)] = c.clone();
            }
            out
        };
        let actions = group
            .generators()
            .iter()
            .map(|s| {
                let si = group.index(s);
                let cols: Vec<Vec<Int>> = (0..k)
                    .map(|j| span.express(&free_action(si, inclusion.row(j))).expect("kernel is a submodule"))
                    .collect();
                IntMatrix::from_columns(k, &cols)
            })
            .collect();
        let labels = (0..k).map(|j| format!("a{j}")).collect();
        let lattice = GLattice::new(group, actions, labels).expect("relation module action is valid");
        RelationModule { group, lattice, inclusion, span }
    }

    /// Matrix of `⊕Z[H]d_i → Z[H]` acting on row vectors; row `i·|H| + g` is the image of `g·d_i`.
    pub fn boundary_matrix(group: ElementaryAbelian) -> IntMatrix {
        let order = group.order();
        let mut m = IntMatrix::zeros(group.rank() * order, order);
        for (i, s) in group.generators().iter().enumerate() {
            let si = group.index(s);
            for g in 0..order {
                m[(i * order + g, group.mul_index(g, si))] += Int::ONE;
                m[(i * order + g, g)] -= Int::ONE;
            }
        }
        m
    }

    pub fn group(&self) -> ElementaryAbelian {
        self.group
    }

    pub fn lattice(&self) -> &GLattice {
        &self.lattice
    }

    pub fn free_rank(&self) -> usize {
        self.group.rank() * self.group.order()
    }

    /// Basis of `A₂(H)` as rows in free coordinates.
    pub fn inclusion(&self) -> &IntMatrix {
        &self.inclusion
    }

    /// Free-module vector `Σ_i α_i d_i`.
    pub fn free_vector(&self, coefficients: &[GroupRingElement]) -> Vec<Int> {
        assert_eq!(coefficients.len(), self.group.rank());
        coefficients.iter().flat_map(GroupRingElement::to_dense).collect()
    }

    pub fn to_free(&self, x: &[Int]) -> Vec<Int> {
        self.inclusion.vec_mul(x)
    }

    pub fn from_free(&self, v: &[Int]) -> Result<Vec<Int>, RelationModuleError> {
        self.span.express(v).ok_or(RelationModuleError::NotInModule)
    }

    /// `Z^{free} / A₂(H)`, which by exactness is free of rank `|H| - 1`.
    pub fn cokernel_invariants(&self) -> FinAbInvariants {
        quotient_invariants(self.free_rank(), &self.inclusion).expect("dimensions agree")
    }
}

/// Coefficients `(α, β, γ)` with `y = α·u + β·b1 + γ·b2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorExpression {
    pub u: GroupRingElement,
    pub b1: GroupRingElement,
    pub b2: GroupRingElement,
}

/// `A₂` of a rank-2 group with its three module generators.
#[derive(Clone, Debug)]
pub struct A2Presentation {
    module: RelationModule,
    x: Vec<Int>,
    b: [Vec<Int>; 2],
    sign: Int,
    // columns: g·u, then g·b1, then g·b2, g in index order
    generators: IntMatrix,
}

impl A2Presentation {
    /// `alternate_sign` makes the distinguished generator `u = -x`, i.e. `(s1-1)d2 - (s2-1)d1`.
    pub fn new(group: ElementaryAbelian, alternate_sign: bool) -> Result<A2Presentation, RelationModuleError> {
        if group.rank() != 2 {
            return Err(RelationModuleError::NotRankTwo(group.rank()));
        }
        let module = RelationModule::new(group);
        let s1 = group.generator(0);
        let s2 = group.generator(1);
        let x_free = module.free_vector(&[
            GroupRingElement::g_minus_one(group, &s2),
            -GroupRingElement::g_minus_one(group, &s1),
        ]);
        let n1 = norm_element(&Subgroup::generated_by(group, &[s1]));
        let n2 = norm_element(&Subgroup::generated_by(group, &[s2]));
        let zero = GroupRingElement::zero(group);
        let b1_free = module.free_vector(&[n1, zero.clone()]);
        let b2_free = module.free_vector(&[zero, n2]);
        let x = module.from_free(&x_free)?;
        let b = [module.from_free(&b1_free)?, module.from_free(&b2_free)?];
        let sign = if alternate_sign { Int::small(-1) } else { Int::ONE };
        let u: Vec<Int> = x.iter().map(|v| v * &sign).collect();
        let lat = module.lattice();
        let mut cols = Vec::with_capacity(3 * group.order());
        for gen in [&u, &b[0], &b[1]] {
            for g in group.elements() {
                cols.push(lat.act(&g, gen));
            }
        }
        let generators = IntMatrix::from_columns(lat.rank(), &cols);
        Ok(A2Presentation { module, x, b, sign, generators })
    }

    pub fn module(&self) -> &RelationModule {
        &self.module
    }

    pub fn lattice(&self) -> &GLattice {
        self.module.lattice()
    }

    pub fn group(&self) -> ElementaryAbelian {
        self.module.group()
    }

    /// `(s2-1)d1 - (s1-1)d2`, the commutator element of the rank-2 extension.
    pub fn x(&self) -> &[Int] {
        &self.x
    }

    /// The distinguished generator `u`: `x`, or `-x` under the alternate sign.
    pub fn u(&self) -> Vec<Int> {
        self.x.iter().map(|v| v * &self.sign).collect()
    }

    pub fn u_sign(&self) -> &Int {
        &self.sign
    }

    pub fn b1(&self) -> &[Int] {
        &self.b[0]
    }

    pub fn b2(&self) -> &[Int] {
        &self.b[1]
    }

    /// Columns `g·u, g·b1, g·b2` over all `g`.
    pub fn generator_matrix(&self) -> &IntMatrix {
        &self.generators
    }

    /// Whether `u, b1, b2` generate `A₂` as a module.
    pub fn generates(&self) -> bool {
        quotient_invariants(self.lattice().rank(), &self.generators.transpose()).map(|q| q.is_trivial()).unwrap_or(false)
    }

    fn split(&self, coeffs: &[Int]) -> GeneratorExpression {
        let n = self.group().order();
        let group = self.group();
        GeneratorExpression {
            u: GroupRingElement::from_dense(group, &coeffs[..n]),
            b1: GroupRingElement::from_dense(group, &coeffs[n..2 * n]),
            b2: GroupRingElement::from_dense(group, &coeffs[2 * n..]),
        }
    }

    /// One expression of `y` in the module generators (not unique).
    pub fn express(&self, y: &[Int]) -> Result<GeneratorExpression, RelationModuleError> {
        let coeffs = solve_integer(&self.generators, y).map_err(|_| RelationModuleError::NoExpression)?;
        coeffs.map(|c| self.split(&c)).ok_or(RelationModuleError::NoExpression)
    }

    /// Rebuilds an element from an expression.
    pub fn evaluate(&self, e: &GeneratorExpression) -> Vec<Int> {
        let mut coeffs = e.u.to_dense();
        coeffs.extend(e.b1.to_dense());
        coeffs.extend(e.b2.to_dense());
        self.generators.mul_vec(&coeffs)
    }

    /// A basis of all relations `(α, β, γ)` with `α·u + β·b1 + γ·b2 = 0`.
    pub fn relations(&self) -> Vec<GeneratorExpression> {
        let k = right_kernel_basis(&self.generators);
        (0..k.rows()).map(|i| self.split(k.row(i))).collect()
    }

    /// Whether the augmentation of the `u`-coefficient vanishes mod `p` on
    /// every relation, i.e. whether `π` below is well defined.
    pub fn residue_well_defined(&self) -> bool {
        let p = Int::from(self.group().p());
        self.relations().iter().all(|r| r.u.augmentation().is_multiple_of(&p))
    }

    /// `π(y)`: the augmentation of the `u`-coefficient of `y`, mod `p`.
    pub fn pi(&self, y: &[Int]) -> Result<u32, RelationModuleError> {
        let e = self.express(y)?;
        let p = Int::from(self.group().p());
        Ok(e.u.augmentation().mod_floor(&p).to_i64().expect("residue fits") as u32)
    }

    /// `Σ_{i<a} Σ_{j<b} s2^i s1^j · x`.
    pub fn commutator_block(&self, a: u32, b: u32) -> Vec<Int> {
        let group = self.group();
        let lat = self.lattice();
        let mut acc = vec![Int::ZERO; lat.rank()];
        for i in 0..a {
            for j in 0..b {
                let g = group.element(&[j, i]).expect("rank 2");
                for (s, v) in acc.iter_mut().zip(lat.act(&g, &self.x)) {
                    *s += v;
                }
            }
        }
        acc
    }

    /// `s` applied to an element of `A₂`.
    pub fn act(&self, g: &Element, y: &[Int]) -> Vec<Int> {
        self.lattice().act(g, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(p: u32, r: usize) -> ElementaryAbelian {
        ElementaryAbelian::new(p, r).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(RelationModule::new(grp(3, 2)).lattice().rank(), 10);
        assert_eq!(RelationModule::new(grp(3, 1)).lattice().rank(), 1);
        assert_eq!(RelationModule::new(grp(2, 2)).lattice().rank(), 5);
    }

    #[test]
    fn cyclic_case_is_norm_line() {
        let g = grp(3, 1);
        let m = RelationModule::new(g);
        assert_eq!(m.inclusion(), &IntMatrix::from_i64(&[&[1, 1, 1]]));
    }

    #[test]
    fn kernel_is_exact() {
        let g = grp(3, 2);
        let m = RelationModule::new(g);
        let b = RelationModule::boundary_matrix(g);
        assert!(m.inclusion().mul(&b).is_zero());
        // free of rank |H| - 1: the image is I[H]
        let q = m.cokernel_invariants();
        assert_eq!(q, FinAbInvariants { factors: vec![], free_rank: 8 });
    }

    #[test]
    fn presentation_basics() {
        let g = grp(3, 2);
        let pres = A2Presentation::new(g, false).unwrap();
        assert!(pres.generates());
        assert!(pres.residue_well_defined());
        assert_eq!(pres.pi(&pres.u()).unwrap(), 1);
        assert_eq!(pres.pi(pres.b1()).unwrap(), 0);
        assert_eq!(pres.pi(pres.b2()).unwrap(), 0);
        let e = pres.express(pres.b2()).unwrap();
        assert_eq!(pres.evaluate(&e), pres.b2());
        assert!(A2Presentation::new(grp(3, 1), false).is_err());
    }
}
