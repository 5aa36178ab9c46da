//! Degeneracy of the commutator data, linearized.
//!
//! A pair `g, h` degenerates the element `u` of a lattice `Λ` (relative to a
//! fixing subgroup `H0`) when `u = (g-1)a + (h-1)b` for some `a, b ∈ Λ^{H0}`.
//! That is one integer linear system in the coordinates of `a` and `b` over
//! a basis of `Λ^{H0}`; it either has a solution, which is re-substituted,
//! or a Smith-form certificate of infeasibility, which is re-validated and
//! additionally cross-checked by Hermite-form membership.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::construction::Context;
use crate::group::{Element, Subgroup};
use crate::int::Int;
use crate::lattice::GLattice;
use crate::linalg::{solve_or_certify, InfeasibilityCertificate, RowSpan, Solvability};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DegeneracyError {
    #[error("target is not fixed by the fixing subgroup")]
    TargetNotFixed,
    #[error("target has length {got}, lattice rank is {rank}")]
    WrongLength { rank: usize, got: usize },
    #[error("the pair generates a cyclic group")]
    CyclicPair,
    #[error("solver returned a witness that does not re-substitute")]
    BadWitness,
    #[error("infeasibility certificate failed validation")]
    BadCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum WitnessResult {
    /// `u = (g-1)a + (h-1)b`, both in `Λ^{H0}`.
    Witness { a: Vec<Int>, b: Vec<Int> },
    /// No such `a, b`. The certificate refutes the coordinate system and
    /// `membership_agrees` records that `u` also fails Hermite-form
    /// membership in `(g-1)Λ^{H0} + (h-1)Λ^{H0}`.
    NoWitness { certificate: InfeasibilityCertificate, membership_agrees: bool },
}

impl WitnessResult {
    pub fn is_witness(&self) -> bool {
        matches!(self, WitnessResult::Witness { .. })
    }
}

/// Searches for `a, b ∈ Λ^{H0}` with `u = (g-1)a + (h-1)b`.
pub fn degeneracy_witness(
    lat: &GLattice,
    fixing: &Subgroup,
    g: &Element,
    h: &Element,
    u: &[Int],
) -> Result<WitnessResult, DegeneracyError> {
    let fixed = lat.fixed_sublattice(fixing);
    degeneracy_witness_in(lat, fixing, &fixed, g, h, u)
}

/// As [`degeneracy_witness`], with a precomputed basis (rows) of `Λ^{H0}`.
pub fn degeneracy_witness_in(
    lat: &GLattice,
    fixing: &Subgroup,
    fixed: &IntMatrix,
    g: &Element,
    h: &Element,
    u: &[Int],
) -> Result<WitnessResult, DegeneracyError> {
    if u.len() != lat.rank() {
        return Err(DegeneracyError::WrongLength { rank: lat.rank(), got: u.len() });
    }
    if !lat.is_fixed(fixing, u) {
        return Err(DegeneracyError::TargetNotFixed);
    }
    let d = fixed.rows();
    let mut cols = Vec::with_capacity(2 * d);
    for e in [g, h] {
        for k in 0..d {
            cols.push(lat.g_minus_one(e, fixed.row(k)));
        }
    }
    let system = IntMatrix::from_columns(lat.rank(), &cols);
    match solve_or_certify(&system, u).expect("dimensions agree") {
        Solvability::Solution(x) => {
            let a = fixed.vec_mul(&x[..d]);
            let b = fixed.vec_mul(&x[d..]);
            let mut lhs = lat.g_minus_one(g, &a);
            for (s, t) in lhs.iter_mut().zip(lat.g_minus_one(h, &b)) {
                *s += t;
            }
            if lhs != u || !lat.is_fixed(fixing, &a) || !lat.is_fixed(fixing, &b) {
                return Err(DegeneracyError::BadWitness);
            }
            Ok(WitnessResult::Witness { a, b })
        }
        Solvability::Infeasible(certificate) => {
            if !certificate.validates(&system, u) {
                return Err(DegeneracyError::BadCertificate);
            }
            let span = RowSpan::new(&lat.ih_sublattice_of(&[g.clone(), h.clone()], fixed));
            Ok(WitnessResult::NoWitness { certificate, membership_agrees: !span.contains(u) })
        }
    }
}

/// Class of the commutator element of a pair in `Ĥ⁻¹`, as a canonical
/// representative modulo `(g-1)M^{G34} + (h-1)M^{G34}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiClass {
    pub m: [u32; 2],
    pub n: [u32; 2],
    pub representative: Vec<Int>,
    pub is_zero: bool,
}

/// Commutator pairing on `G12`, valued in classes of `M^{G34}`.
pub struct PhiPairing<'a> {
    ctx: &'a Context,
    fixed: IntMatrix,
    spans: BTreeMap<Vec<Element>, RowSpan>,
}

impl<'a> PhiPairing<'a> {
    pub fn new(ctx: &'a Context) -> PhiPairing<'a> {
        PhiPairing { ctx, fixed: ctx.m().fixed_sublattice(&ctx.g34()), spans: BTreeMap::new() }
    }

    /// Basis (rows) of `M^{G34}`.
    pub fn fixed_basis(&self) -> &IntMatrix {
        &self.fixed
    }

    fn lift(&self, m: [u32; 2]) -> Element {
        self.ctx.group().element(&[m[0], m[1], 0, 0]).expect("rank 4")
    }

    fn span(&mut self, g: &Element, h: &Element) -> &RowSpan {
        // the sublattice only depends on the subgroup the pair generates
        let key = Subgroup::generated_by(self.ctx.group(), &[g.clone(), h.clone()]).basis().to_vec();
        let (ctx, fixed) = (self.ctx, &self.fixed);
        self.spans.entry(key).or_insert_with(|| RowSpan::new(&ctx.m().ih_sublattice_of(&[g.clone(), h.clone()], fixed)))
    }

    /// `φ(s^m, s^n)`.
    pub fn class(&mut self, m: [u32; 2], n: [u32; 2]) -> Result<PhiClass, DegeneracyError> {
        let (g, h) = (self.lift(m), self.lift(n));
        if Subgroup::generated_by(self.ctx.group(), &[g.clone(), h.clone()]).is_cyclic() {
            return Err(DegeneracyError::CyclicPair);
        }
        let u = self.ctx.embed_a2(&self.ctx.commutator_u(m, n), self.ctx.m().rank());
        let representative = self.span(&g, &h).reduce(&u);
        let is_zero = representative.iter().all(Int::is_zero);
        Ok(PhiClass { m, n, representative, is_zero })
    }

    /// Whether `φ(g^s, h^t) = st·φ(g, h)` as classes.
    pub fn bimultiplicative_at(&mut self, m: [u32; 2], n: [u32; 2], s: u32, t: u32) -> Result<bool, DegeneracyError> {
        let p = self.ctx.p();
        let ms = [m[0] * s % p, m[1] * s % p];
        let nt = [n[0] * t % p, n[1] * t % p];
        let (g, h) = (self.lift(ms), self.lift(nt));
        if Subgroup::generated_by(self.ctx.group(), &[g.clone(), h.clone()]).is_cyclic() {
            return Err(DegeneracyError::CyclicPair);
        }
        let st = Int::from(s * t);
        let mut diff = self.ctx.commutator_u(ms, nt);
        for (a, b) in diff.iter_mut().zip(self.ctx.commutator_u(m, n)) {
            a.sub_mul_assign(&st, &b);
        }
        let diff = self.ctx.embed_a2(&diff, self.ctx.m().rank());
        Ok(self.span(&g, &h).contains(&diff))
    }
}

/// All ordered pairs `(m, n)` of exponent vectors generating a non-cyclic subgroup of `G12`.
pub fn noncyclic_pairs(p: u32) -> Vec<([u32; 2], [u32; 2])> {
    let mut out = Vec::new();
    for a in 0..p * p {
        for b in 0..p * p {
            let m = [a / p, a % p];
            let n = [b / p, b % p];
            if (m[0] * n[1] + p * p - m[1] * n[0] % p) % p != 0 {
                out.push((m, n));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyScan {
    /// Verdict from the single pair `(s1, s2)`.
    pub shortcut_nonzero: bool,
    /// One entry per non-cyclic ordered pair.
    pub classes: Vec<PhiClass>,
    /// True iff some pair has a zero class.
    pub degenerate: bool,
    pub shortcut_agrees: bool,
}

/// Full pairwise scan plus the single-pair shortcut.
pub fn is_degenerate_matrix(ctx: &Context) -> Result<DegeneracyScan, DegeneracyError> {
    let mut phi = PhiPairing::new(ctx);
    let shortcut_nonzero = !phi.class([1, 0], [0, 1])?.is_zero;
    let mut classes = Vec::new();
    for (m, n) in noncyclic_pairs(ctx.p()) {
        classes.push(phi.class(m, n)?);
    }
    let degenerate = classes.iter().any(|c| c.is_zero);
    Ok(DegeneracyScan { shortcut_nonzero, shortcut_agrees: shortcut_nonzero == !degenerate, classes, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ElementaryAbelian;

    #[test]
    fn pair_count() {
        assert_eq!(noncyclic_pairs(3).len(), 48);
        assert_eq!(noncyclic_pairs(2).len(), 6);
    }

    #[test]
    fn regular_witness() {
        let g = ElementaryAbelian::new(3, 2).unwrap();
        let lat = GLattice::regular(g);
        let triv = Subgroup::trivial(g);
        let mut u = vec![Int::ZERO; 9];
        let s1 = g.generator(0);
        u[g.index(&s1)] = Int::ONE;
        u[0] = Int::small(-1);
        let r = degeneracy_witness(&lat, &triv, &s1, &g.generator(1), &u).unwrap();
        assert!(r.is_witness());
        let r = degeneracy_witness(&lat, &triv, &s1, &g.generator(1), &{
            let mut v = vec![Int::ZERO; 9];
            v[0] = Int::ONE;
            v
        })
        .unwrap();
        assert!(matches!(r, WitnessResult::NoWitness { membership_agrees: true, .. }));
    }
}
