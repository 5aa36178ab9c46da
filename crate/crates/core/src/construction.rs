//! The rank-4 construction: `Q`, the twisted lattice `M_ω`, the family of
//! subgroups used to kill its `H¹`, and the lattice `M = M_ω ⊕ P`.
//!
//! With `G = (Z/p)^4`, `G12 = G/⟨s3,s4⟩`, `G3 = G/⟨s1,s2,s4⟩` and
//! `G4 = G/⟨s1,s2,s3⟩`:
//!
//! * `Q = A₂(G12) ⊕ K3 ⊕ K4` with `K_j = A₂(G_j) ⊕ Z[G_j]`, all inflated to `G`;
//! * `ω = e12·c12 + e3·c3 + e4·c4` (inflated), where `c12` is the rank-2
//!   canonical cocycle and `c3`, `c4` are carry cocycles valued in the
//!   `A₂(G_j)` line of `K_j`; the default coefficients are `(1, -1, -1)`;
//! * `M_ω = Q ⊕ I[G]` twisted by `ω`;
//! * `𝓗 = {G} ∪ {⟨τ, s3, s4⟩ : τ ∈ G12}`, and for each `H ∈ 𝓗` a 1-cocycle
//!   `f_H : H → M_ω` whose `I[G]` part is `|res ω|·(h-1)`;
//! * `M = M_ω ⊕ ⊕_H Z[G/H]` with `s·u_{g_i H} = u_{g_j H} + g_j·f_H(h)`
//!   where `s·g_i = g_j·h`.

use serde::{Deserialize, Serialize};

use crate::cohomology::{
    carry_cocycle, c12_cocycle, cocycle_class_order, extension_lattice, is_cocycle1, is_cocycle2, Cochain1,
    CohomologyError, Cocycle2,
};
use crate::group::{standard_projections, ElementaryAbelian, GroupError, Projection, Subgroup};
use crate::int::Int;
use crate::lattice::{GLattice, LatticeError};
use crate::matrix::IntMatrix;
use crate::relation_module::{A2Presentation, RelationModule, RelationModuleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContextError {
    #[error("p = 2 is not supported: the residue argument needs an odd prime")]
    EvenPrime,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    RelationModule(#[from] RelationModuleError),
    #[error("construction invariant failed: {0}")]
    Invariant(String),
    #[error("element is not fixed by <s3, s4>")]
    NotFixed,
    #[error("expected a vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// Which combination of the three canonical cocycles forms `ω`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaVariant {
    /// `c12 - c3 - c4`.
    #[default]
    Standard,
    /// `c12 + c3 + c4`.
    Alternate,
    /// `-c3 - c4`, with no rank-2 part; a control for the degeneracy test.
    Control,
}

impl OmegaVariant {
    pub fn coefficients(self) -> [i64; 3] {
        match self {
            OmegaVariant::Standard => [1, -1, -1],
            OmegaVariant::Alternate => [1, 1, 1],
            OmegaVariant::Control => [0, -1, -1],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BuildOptions {
    /// Keep one family member per `τ ∈ G12` (with repeats) instead of one per distinct subgroup.
    pub multiset_family: bool,
    /// Use `u = (s1-1)d2 - (s2-1)d1` as the distinguished generator of `A₂(G12)`.
    pub alternate_u_sign: bool,
    pub omega: OmegaVariant,
}

/// A named block of consecutive coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub name: String,
    pub offset: usize,
    pub rank: usize,
}

/// One member of the family `𝓗` with its trivializing data.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub subgroup: Subgroup,
    /// Order of the class of `ω` restricted to the subgroup.
    pub class_order: Int,
    /// Canonical coset representatives, in coordinate order.
    pub transversal: Vec<usize>,
    /// The 1-cocycle `f_H : H → M_ω`.
    pub f: Cochain1,
    /// First coordinate of this member's `Z[G/H]` block inside `M`.
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct Context {
    p: u32,
    options: BuildOptions,
    group: ElementaryAbelian,
    projections: [Projection; 3],
    a2: A2Presentation,
    k: [GLattice; 2],
    q: GLattice,
    q_summands: Vec<Summand>,
    c12: Cocycle2,
    c3: Cocycle2,
    c4: Cocycle2,
    omega: Cocycle2,
    m_omega: GLattice,
    family: Vec<FamilyMember>,
    permutation: GLattice,
    m: GLattice,
}

/// `K = A₂(C) ⊕ Z[C]` for a cyclic group `C` of order `p`.
fn k_lattice(group: ElementaryAbelian) -> Result<GLattice, ContextError> {
    let a2 = RelationModule::new(group).lattice().clone().with_label_prefix("N");
    Ok(GLattice::direct_sum(&[&a2, &GLattice::regular(group)])?)
}

fn embedding(total: usize, s: &Summand) -> IntMatrix {
    let mut m = IntMatrix::zeros(total, s.rank);
    for i in 0..s.rank {
        m[(s.offset + i, i)] = Int::ONE;
    }
    m
}

impl Context {
    pub fn build(p: u32, options: BuildOptions) -> Result<Context, ContextError> {
        if p == 2 {
            return Err(ContextError::EvenPrime);
        }
        let group = ElementaryAbelian::new(p, 4)?;
        let projections = standard_projections(group)?;
        let [g12, g3, g4] = [projections[0].target(), projections[1].target(), projections[2].target()];

        let a2 = A2Presentation::new(g12, options.alternate_u_sign)?;
        let k = [k_lattice(g3)?, k_lattice(g4)?];
        let parts = [
            a2.lattice().inflate(&projections[0])?.with_label_prefix("A12:"),
            k[0].inflate(&projections[1])?.with_label_prefix("K3:"),
            k[1].inflate(&projections[2])?.with_label_prefix("K4:"),
        ];
        let q = GLattice::direct_sum(&[&parts[0], &parts[1], &parts[2]])?;
        let mut offset = 0;
        let q_summands: Vec<Summand> = ["A12", "K3", "K4"]
            .iter()
            .zip(&parts)
            .map(|(name, l)| {
                let s = Summand { name: name.to_string(), offset, rank: l.rank() };
                offset += l.rank();
                s
            })
            .collect();

        let c12 = c12_cocycle(&a2);
        let mut unit = vec![Int::ZERO; k[0].rank()];
        unit[0] = Int::ONE;
        let c3 = carry_cocycle(&k[0], &Subgroup::whole(g3), &unit)?;
        let c4 = carry_cocycle(&k[1], &Subgroup::whole(g4), &unit)?;
        for (name, lat, c) in [("c12", a2.lattice(), &c12), ("c3", &k[0], &c3), ("c4", &k[1], &c4)] {
            if !is_cocycle2(lat, c)? {
                return Err(ContextError::Invariant(format!("{name} is not a cocycle")));
            }
        }

        let mut ctx = Context {
            p,
            options,
            group,
            projections,
            a2,
            k,
            m_omega: q.clone(),
            q,
            q_summands,
            c12,
            c3,
            c4,
            omega: Cocycle2::zero(Subgroup::trivial(group), 0),
            family: Vec::new(),
            permutation: GLattice::trivial(group),
            m: GLattice::trivial(group),
        };
        let omega = ctx.combination(options.omega.coefficients().map(Int::from))?;
        if !is_cocycle2(&ctx.q, &omega)? {
            return Err(ContextError::Invariant("omega is not a cocycle".into()));
        }
        ctx.m_omega = extension_lattice(&ctx.q, &omega)?;
        ctx.omega = omega;
        ctx.family = ctx.build_family()?;
        let (permutation, m) = ctx.build_m()?;
        ctx.permutation = permutation;
        ctx.m = m;
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn options(&self) -> BuildOptions {
        self.options
    }

    pub fn group(&self) -> ElementaryAbelian {
        self.group
    }

    /// The quotient maps onto `G12`, `G3`, `G4`.
    pub fn projections(&self) -> &[Projection; 3] {
        &self.projections
    }

    pub fn a2(&self) -> &A2Presentation {
        &self.a2
    }

    pub fn k_lattices(&self) -> &[GLattice; 2] {
        &self.k
    }

    pub fn q(&self) -> &GLattice {
        &self.q
    }

    pub fn q_summands(&self) -> &[Summand] {
        &self.q_summands
    }

    pub fn c12(&self) -> &Cocycle2 {
        &self.c12
    }

    pub fn c3(&self) -> &Cocycle2 {
        &self.c3
    }

    pub fn c4(&self) -> &Cocycle2 {
        &self.c4
    }

    pub fn omega(&self) -> &Cocycle2 {
        &self.omega
    }

    pub fn m_omega(&self) -> &GLattice {
        &self.m_omega
    }

    pub fn family(&self) -> &[FamilyMember] {
        &self.family
    }

    /// `⊕_{H∈𝓗} Z[G/H]` with its untwisted action.
    pub fn permutation_lattice(&self) -> &GLattice {
        &self.permutation
    }

    pub fn m(&self) -> &GLattice {
        &self.m
    }

    /// `⟨s3, s4⟩`, the kernel of the map onto `G12`.
    pub fn g34(&self) -> Subgroup {
        self.projections[0].kernel()
    }

    /// `e12·inf c12 + e3·inf c3 + e4·inf c4` as a cocycle on `G` valued in `Q`.
    pub fn combination(&self, coefficients: [Int; 3]) -> Result<Cocycle2, ContextError> {
        let whole = Subgroup::whole(self.group);
        let n = self.q.rank();
        let mut total = Cocycle2::zero(whole.clone(), n);
        for (t, (c, coef)) in [&self.c12, &self.c3, &self.c4].into_iter().zip(coefficients).enumerate() {
            if coef.is_zero() {
                continue;
            }
            let inflated = c.inflate(&self.projections[t], &whole)?;
            let mapped = inflated.map(&embedding(n, &self.q_summands[t])).scale(&coef);
            total = total.add(&mapped);
        }
        Ok(total)
    }

    fn family_subgroups(&self) -> Vec<Subgroup> {
        let g = self.group;
        let mut out = vec![Subgroup::whole(g)];
        let g12 = self.projections[0].target();
        for tau in g12.elements() {
            let e = tau.exponents();
            let lift = g.element(&[e[0], e[1], 0, 0]).expect("rank 4");
            let h = Subgroup::generated_by(g, &[lift, g.generator(2), g.generator(3)]);
            if self.options.multiset_family || !out.contains(&h) {
                out.push(h);
            }
        }
        out
    }

    /// `v_t(x) = Σ_{y ∈ H_t} c_t(x, y)` for the image `H_t` of `h` in the `t`-th quotient.
    fn v_table(&self, t: usize, h: &Subgroup) -> Result<(Subgroup, Cochain1), ContextError> {
        let c = [&self.c12, &self.c3, &self.c4][t];
        let image = self.projections[t].image(h);
        let rank = c.rank();
        let v = Cochain1::from_fn(image.clone(), rank, |x| {
            let mut acc = vec![Int::ZERO; rank];
            for y in image.elements() {
                for (a, b) in acc.iter_mut().zip(c.value(x, &y)) {
                    *a += b;
                }
            }
            acc
        })?;
        Ok((image, v))
    }

    /// `v_H(h̄) = Σ_{ȳ ∈ H12} c12(h̄, ȳ)` for `h̄` in the image `H12` of `h`.
    pub fn v_h(&self, h: &Subgroup) -> Result<Cochain1, ContextError> {
        Ok(self.v_table(0, h)?.1)
    }

    /// The explicit 1-cochain `ĉ_j(σ^i) = (k/p)·i·N_j` on the image of `h` in `G_j`, valued in `K_j`.
    pub fn c_hat(&self, j: usize, h: &Subgroup, k: &Int) -> Result<Cochain1, ContextError> {
        assert!(j == 3 || j == 4, "c_hat is defined for the cyclic quotients");
        let t = j - 2;
        let image = self.projections[t].image(h);
        let rank = self.k[t - 1].rank();
        let factor = k.div_floor(&Int::from(self.p));
        Ok(Cochain1::from_fn(image, rank, |x| {
            let mut v = vec![Int::ZERO; rank];
            v[0] = &factor * Int::from(x.exponents()[0]);
            v
        })?)
    }

    /// `f_H`: a 1-cocycle `H → M_ω` with `I[G]` part `k·(h-1)`, `k = |res ω|`.
    ///
    /// The `Q` part is `-Σ_t e_t·(k/|H_t|)·inf v_t`, which satisfies
    /// `δ(Q part) = -k·res ω` because `δv_t = |H_t|·c_t`.
    fn f_h(&self, h: &Subgroup, k: &Int) -> Result<Cochain1, ContextError> {
        let coef = self.options.omega.coefficients();
        let nq = self.q.rank();
        let total = self.m_omega.rank();
        let mut f = Cochain1::zero(h.clone(), total);
        for t in 0..3 {
            if coef[t] == 0 {
                continue;
            }
            let (image, v) = self.v_table(t, h)?;
            let order = Int::from(image.order());
            if !k.is_multiple_of(&order) {
                return Err(ContextError::Invariant(format!("class order {k} not divisible by |H_t| = {order}")));
            }
            let factor = -(Int::from(coef[t]) * k.div_exact(&order));
            let inflated = v.inflate(&self.projections[t], h)?;
            let mut emb = IntMatrix::zeros(total, v.rank());
            for i in 0..v.rank() {
                emb[(self.q_summands[t].offset + i, i)] = Int::ONE;
            }
            f = f.add(&inflated.map(&emb).scale(&factor));
        }
        let values: Vec<Vec<Int>> = f
            .values()
            .iter()
            .zip(h.element_indices())
            .map(|(v, &g)| {
                let mut v = v.clone();
                if g != 0 {
                    v[nq + g - 1] += k;
                }
                v
            })
            .collect();
        Ok(Cochain1::new(h.clone(), total, values)?)
    }

    fn build_family(&self) -> Result<Vec<FamilyMember>, ContextError> {
        let mut offset = self.m_omega.rank();
        let mut out = Vec::new();
        for h in self.family_subgroups() {
            let res = self.omega.restrict(&h)?;
            let class_order = cocycle_class_order(&self.q, &res)?;
            let f = self.f_h(&h, &class_order)?;
            if !is_cocycle1(&self.m_omega, &f)? {
                return Err(ContextError::Invariant(format!("f_H is not a cocycle for H = {h}")));
            }
            let transversal = h.transversal();
            let len = transversal.len();
            out.push(FamilyMember { subgroup: h, class_order, transversal, f, offset });
            offset += len;
        }
        Ok(out)
    }

    fn build_m(&self) -> Result<(GLattice, GLattice), ContextError> {
        let g = self.group;
        let blocks: Vec<GLattice> = self
            .family
            .iter()
            .enumerate()
            .map(|(i, mem)| GLattice::permutation(g, &mem.subgroup).with_label_prefix(&format!("P{i}:")))
            .collect();
        let refs: Vec<&GLattice> = blocks.iter().collect();
        let permutation = GLattice::direct_sum(&refs)?;
        let nw = self.m_omega.rank();
        let total = nw + permutation.rank();
        let mut actions = Vec::with_capacity(g.rank());
        for (gi, s) in g.generators().iter().enumerate() {
            let si = g.index(s);
            let mut a = IntMatrix::zeros(total, total);
            let aw = self.m_omega.generator_action(gi);
            for r in 0..nw {
                for c in 0..nw {
                    a[(r, c)] = aw[(r, c)].clone();
                }
            }
            for mem in &self.family {
                let h = &mem.subgroup;
                for (i, &gi_rep) in mem.transversal.iter().enumerate() {
                    let moved = g.mul_index(si, gi_rep);
                    let rep = h.coset_rep(moved);
                    let j = mem.transversal.binary_search(&rep).expect("canonical representative");
                    let hh = g.mul_index(g.index(&g.inverse(&g.from_index(rep))), moved);
                    let col = mem.offset + i;
                    a[(mem.offset + j, col)] = Int::ONE;
                    let twist = self.m_omega.act_index(rep, mem.f.value_index(hh));
                    for (r, v) in twist.into_iter().enumerate() {
                        a[(r, col)] = v;
                    }
                }
            }
            actions.push(a);
        }
        let mut labels = self.m_omega.labels().to_vec();
        labels.extend(permutation.labels().iter().cloned());
        let m = GLattice::new(g, actions, labels)?;
        Ok((permutation, m))
    }

    /// `x ∈ A₂(G12)` placed in `M` (equivalently `M_ω` or `Q`) through the first summand.
    pub fn embed_a2(&self, x: &[Int], rank: usize) -> Vec<Int> {
        let mut v = vec![Int::ZERO; rank];
        v[..x.len()].clone_from_slice(x);
        v
    }

    /// The distinguished generator `u` of `A₂(G12)` as an element of `M`.
    pub fn u12_in_m(&self) -> Vec<Int> {
        self.embed_a2(&self.a2.u(), self.m.rank())
    }

    /// `π` on `A₂(G12)`.
    pub fn pi(&self, x: &[Int]) -> Result<u32, ContextError> {
        Ok(self.a2.pi(x)?)
    }

    /// `c12(s^m, s^n) - c12(s^n, s^m)`, computed from the double-sum formula
    /// `s1^{m1}·w(m2, n1) - s1^{n1}·w(n2, m1)`.
    pub fn commutator_u(&self, m: [u32; 2], n: [u32; 2]) -> Vec<Int> {
        let g12 = self.a2.group();
        let lat = self.a2.lattice();
        let s1 = |e: u32| g12.element(&[e, 0]).expect("rank 2");
        let mut v = lat.act(&s1(m[0]), &self.a2.commutator_block(m[1], n[0]));
        let w = lat.act(&s1(n[0]), &self.a2.commutator_block(n[1], m[0]));
        for (a, b) in v.iter_mut().zip(w) {
            *a -= b;
        }
        v
    }

    /// `π'` on `M^{⟨s3,s4⟩}`: `π` of the `A₂(G12)` coordinates.
    pub fn pi_prime(&self, m: &[Int]) -> Result<u32, ContextError> {
        if m.len() != self.m.rank() {
            return Err(ContextError::WrongLength { expected: self.m.rank(), got: m.len() });
        }
        if !self.m.is_fixed(&self.g34(), m) {
            return Err(ContextError::NotFixed);
        }
        self.pi(&m[..self.a2.lattice().rank()])
    }

    /// `(i+1)·c12 - i·c3 - i·c4`, inflated to `G` and valued in `Q`.
    pub fn exponent_cocycle(&self, i: i64) -> Result<Cocycle2, ContextError> {
        self.combination([Int::from(i + 1), Int::from(-i), Int::from(-i)])
    }

    /// Ranks of `Q`, `M_ω`, `P`, `M`.
    pub fn ranks(&self) -> [usize; 4] {
        [self.q.rank(), self.m_omega.rank(), self.permutation.rank(), self.m.rank()]
    }

    /// `max(|H12|, |H3|, |H4|)` for the images of `h`.
    pub fn max_image_order(&self, h: &Subgroup) -> usize {
        self.projections.iter().map(|p| p.image(h).order()).max().unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two() {
        assert_eq!(Context::build(2, BuildOptions::default()).unwrap_err(), ContextError::EvenPrime);
    }
}
