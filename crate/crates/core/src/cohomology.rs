//! Cochains and cohomology of elementary abelian groups on G-lattices.
//!
//! Cochains are total tables over a subgroup `H`, laid out in the
//! subgroup's element order. Everything that needs a solve works on values
//! at the echelon generators `h_1, ..., h_s` of `H` instead: for an
//! elementary abelian group a 1-cocycle (or a cochain `w` with `δw = c`) is
//! determined by those values, subject to one norm condition per generator
//! and one commutation condition per pair. That keeps systems at
//! `s·rank(Λ)` unknowns rather than `|H|·rank(Λ)`.

use serde::{Deserialize, Serialize};

use crate::group::{Element, Projection, Subgroup};
use crate::int::Int;
use crate::lattice::{GLattice, LatticeError, Sparse};
use crate::linalg::{
    quotient_invariants, right_kernel_basis, snf, solve_integer, FinAbInvariants, RowSpan,
};
use crate::matrix::IntMatrix;
use crate::relation_module::A2Presentation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("table has {got} entries, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("value of length {got} in a lattice of rank {rank}")]
    WrongRank { rank: usize, got: usize },
    #[error("subgroup and lattice live over different groups")]
    GroupMismatch,
    #[error("{0} is not contained in the subgroup the cochain is defined on")]
    NotASubgroup(String),
    #[error("expected a cyclic subgroup of order p")]
    NotCyclic,
    #[error("the cocycle must be defined on the whole group")]
    NotWholeGroup,
    #[error("cocycle is not normalized")]
    NotNormalized,
    #[error("value is not fixed by the group")]
    NotFixed,
    #[error("twisted action is not a group action: {0}")]
    NotAnAction(LatticeError),
    #[error("cocycle table at ({0}, {1}) disagrees with the action its generator rows define")]
    TableDisagrees(String, String),
    #[error("no multiple of the class up to the group order is a coboundary (input is not a cocycle)")]
    NoClassOrder,
}

fn check_values(rank: usize, values: &[Vec<Int>]) -> Result<(), CohomologyError> {
    match values.iter().find(|v| v.len() != rank) {
        Some(v) => Err(CohomologyError::WrongRank { rank, got: v.len() }),
        None => Ok(()),
    }
}

fn add_into(acc: &mut [Int], v: &[Int]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

fn sub_into(acc: &mut [Int], v: &[Int]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a -= b;
        }
    }
}

fn scaled(v: &[Int], k: &Int) -> Vec<Int> {
    v.iter().map(|x| x * k).collect()
}

/// A 1-cochain `H → Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain1 {
    subgroup: Subgroup,
    rank: usize,
    values: Vec<Vec<Int>>,
}

impl Cochain1 {
    pub fn new(subgroup: Subgroup, rank: usize, values: Vec<Vec<Int>>) -> Result<Cochain1, CohomologyError> {
        if values.len() != subgroup.order() {
            return Err(CohomologyError::WrongSize { expected: subgroup.order(), got: values.len() });
        }
        check_values(rank, &values)?;
        Ok(Cochain1 { subgroup, rank, values })
    }

    pub fn zero(subgroup: Subgroup, rank: usize) -> Cochain1 {
        let values = vec![vec![Int::ZERO; rank]; subgroup.order()];
        Cochain1 { subgroup, rank, values }
    }

    pub fn from_fn(subgroup: Subgroup, rank: usize, mut f: impl FnMut(&Element) -> Vec<Int>) -> Result<Cochain1, CohomologyError> {
        let values = subgroup.elements().map(|g| f(&g)).collect();
        Self::new(subgroup, rank, values)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Values in the subgroup's element order.
    pub fn values(&self) -> &[Vec<Int>] {
        &self.values
    }

    pub fn value(&self, g: &Element) -> &[Int] {
        self.value_index(self.subgroup.group().index(g))
    }

    /// Value at the element with the given ambient index.
    pub fn value_index(&self, g: usize) -> &[Int] {
        let pos = self.subgroup.position(g).expect("element outside the cochain's domain");
        &self.values[pos]
    }

    pub fn is_normalized(&self) -> bool {
        self.values[0].iter().all(Int::is_zero)
    }

    pub fn scale(&self, k: &Int) -> Cochain1 {
        Cochain1 { subgroup: self.subgroup.clone(), rank: self.rank, values: self.values.iter().map(|v| scaled(v, k)).collect() }
    }

    pub fn add(&self, other: &Cochain1) -> Cochain1 {
        assert_eq!(self.subgroup, other.subgroup);
        assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            add_into(a, b);
        }
        out
    }

    /// Applies a linear map (matrix acting on column vectors) to every value.
    pub fn map(&self, m: &IntMatrix) -> Cochain1 {
        assert_eq!(m.cols(), self.rank);
        Cochain1 { subgroup: self.subgroup.clone(), rank: m.rows(), values: self.values.iter().map(|v| m.mul_vec(v)).collect() }
    }

    pub fn restrict(&self, k: &Subgroup) -> Result<Cochain1, CohomologyError> {
        if !k.is_subgroup_of(&self.subgroup) {
            return Err(CohomologyError::NotASubgroup(k.to_string()));
        }
        let values = k.element_indices().iter().map(|&g| self.value_index(g).to_vec()).collect();
        Ok(Cochain1 { subgroup: k.clone(), rank: self.rank, values })
    }

    /// Pulls back along a quotient map, onto a subgroup `h` of the source whose image lies in the domain.
    pub fn inflate(&self, proj: &Projection, h: &Subgroup) -> Result<Cochain1, CohomologyError> {
        if proj.target() != self.subgroup.group() || h.group() != proj.source() {
            return Err(CohomologyError::GroupMismatch);
        }
        if !proj.image(h).is_subgroup_of(&self.subgroup) {
            return Err(CohomologyError::NotASubgroup(h.to_string()));
        }
        let values = h.element_indices().iter().map(|&g| self.value_index(proj.apply_index(g)).to_vec()).collect();
        Ok(Cochain1 { subgroup: h.clone(), rank: self.rank, values })
    }
}

/// A 2-cochain `H × H → Λ`, stored row-major over the subgroup's element order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle2 {
    subgroup: Subgroup,
    rank: usize,
    values: Vec<Vec<Int>>,
}

impl Cocycle2 {
    pub fn new(subgroup: Subgroup, rank: usize, values: Vec<Vec<Int>>) -> Result<Cocycle2, CohomologyError> {
        let n = subgroup.order();
        if values.len() != n * n {
            return Err(CohomologyError::WrongSize { expected: n * n, got: values.len() });
        }
        check_values(rank, &values)?;
        Ok(Cocycle2 { subgroup, rank, values })
    }

    pub fn zero(subgroup: Subgroup, rank: usize) -> Cocycle2 {
        let n = subgroup.order();
        Cocycle2 { subgroup, rank, values: vec![vec![Int::ZERO; rank]; n * n] }
    }

    pub fn from_fn(
        subgroup: Subgroup,
        rank: usize,
        mut f: impl FnMut(&Element, &Element) -> Vec<Int>,
    ) -> Result<Cocycle2, CohomologyError> {
        let elems: Vec<Element> = subgroup.elements().collect();
        let mut values = Vec::with_capacity(elems.len() * elems.len());
        for g in &elems {
            for h in &elems {
                values.push(f(g, h));
            }
        }
        Self::new(subgroup, rank, values)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[Vec<Int>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Vec<Int>] {
        &mut self.values
    }

    fn at(&self, i: usize, j: usize) -> &[Int] {
        &self.values[i * self.subgroup.order() + j]
    }

    pub fn value(&self, g: &Element, h: &Element) -> &[Int] {
        let grp = self.subgroup.group();
        self.value_index(grp.index(g), grp.index(h))
    }

    pub fn value_index(&self, g: usize, h: usize) -> &[Int] {
        let i = self.subgroup.position(g).expect("element outside the cocycle's domain");
        let j = self.subgroup.position(h).expect("element outside the cocycle's domain");
        self.at(i, j)
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.subgroup.order();
        (0..n).all(|k| self.at(0, k).iter().all(Int::is_zero) && self.at(k, 0).iter().all(Int::is_zero))
    }

    pub fn scale(&self, k: &Int) -> Cocycle2 {
        Cocycle2 { subgroup: self.subgroup.clone(), rank: self.rank, values: self.values.iter().map(|v| scaled(v, k)).collect() }
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        assert_eq!(self.subgroup, other.subgroup);
        assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            add_into(a, b);
        }
        out
    }

    /// Applies a linear map (matrix acting on column vectors) to every value.
    pub fn map(&self, m: &IntMatrix) -> Cocycle2 {
        assert_eq!(m.cols(), self.rank);
        Cocycle2 { subgroup: self.subgroup.clone(), rank: m.rows(), values: self.values.iter().map(|v| m.mul_vec(v)).collect() }
    }

    pub fn restrict(&self, k: &Subgroup) -> Result<Cocycle2, CohomologyError> {
        if !k.is_subgroup_of(&self.subgroup) {
            return Err(CohomologyError::NotASubgroup(k.to_string()));
        }
        let idx = k.element_indices();
        let mut values = Vec::with_capacity(idx.len() * idx.len());
        for &g in idx {
            for &h in idx {
                values.push(self.value_index(g, h).to_vec());
            }
        }
        Ok(Cocycle2 { subgroup: k.clone(), rank: self.rank, values })
    }

    pub fn inflate(&self, proj: &Projection, h: &Subgroup) -> Result<Cocycle2, CohomologyError> {
        if proj.target() != self.subgroup.group() || h.group() != proj.source() {
            return Err(CohomologyError::GroupMismatch);
        }
        if !proj.image(h).is_subgroup_of(&self.subgroup) {
            return Err(CohomologyError::NotASubgroup(h.to_string()));
        }
        let img: Vec<usize> = h.element_indices().iter().map(|&g| proj.apply_index(g)).collect();
        let mut values = Vec::with_capacity(img.len() * img.len());
        for &g in &img {
            for &k in &img {
                values.push(self.value_index(g, k).to_vec());
            }
        }
        Ok(Cocycle2 { subgroup: h.clone(), rank: self.rank, values })
    }
}

fn check_group(lat: &GLattice, h: &Subgroup) -> Result<(), CohomologyError> {
    if lat.group() != h.group() {
        Err(CohomologyError::GroupMismatch)
    } else {
        Ok(())
    }
}

fn element_actions(lat: &GLattice, h: &Subgroup) -> Vec<Sparse> {
    h.elements().map(|g| lat.sparse_action(&g)).collect()
}

/// `f(gh) = f(g) + g·f(h)` for all pairs.
pub fn is_cocycle1(lat: &GLattice, f: &Cochain1) -> Result<bool, CohomologyError> {
    let h = &f.subgroup;
    check_group(lat, h)?;
    let grp = h.group();
    let acts = element_actions(lat, h);
    let idx = h.element_indices();
    for (i, &g) in idx.iter().enumerate() {
        for (j, &k) in idx.iter().enumerate() {
            let mut rhs = acts[i].apply(&f.values[j]);
            add_into(&mut rhs, &f.values[i]);
            if rhs != f.value_index(grp.mul_index(g, k)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The 2-cocycle identity `g·c(h,k) - c(gh,k) + c(g,hk) - c(g,h) = 0` on every triple.
pub fn is_cocycle2(lat: &GLattice, c: &Cocycle2) -> Result<bool, CohomologyError> {
    let h = &c.subgroup;
    check_group(lat, h)?;
    let grp = h.group();
    let n = h.order();
    let idx = h.element_indices();
    let acts = element_actions(lat, h);
    let prod: Vec<Vec<usize>> =
        idx.iter().map(|&a| idx.iter().map(|&b| h.position(grp.mul_index(a, b)).expect("closed")).collect()).collect();
    for g in 0..n {
        for a in 0..n {
            for b in 0..n {
                let mut lhs = acts[g].apply(c.at(a, b));
                sub_into(&mut lhs, c.at(prod[g][a], b));
                add_into(&mut lhs, c.at(g, prod[a][b]));
                sub_into(&mut lhs, c.at(g, a));
                if lhs.iter().any(|x| !x.is_zero()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `δv(g,h) = g·v(h) - v(gh) + v(g)`.
pub fn coboundary1(lat: &GLattice, v: &Cochain1) -> Result<Cocycle2, CohomologyError> {
    let h = &v.subgroup;
    check_group(lat, h)?;
    let grp = h.group();
    let idx = h.element_indices();
    let acts = element_actions(lat, h);
    let mut values = Vec::with_capacity(idx.len() * idx.len());
    for (i, &g) in idx.iter().enumerate() {
        for (j, &k) in idx.iter().enumerate() {
            let mut x = acts[i].apply(&v.values[j]);
            sub_into(&mut x, v.value_index(grp.mul_index(g, k)));
            add_into(&mut x, &v.values[i]);
            values.push(x);
        }
    }
    Cocycle2::new(h.clone(), v.rank, values)
}

/// Constraint system on generator values `(x_1, ..., x_s)`: one norm block
/// `N_{h_i} x_i` per generator and one commutation block
/// `(h_i - 1)x_j - (h_j - 1)x_i` per pair `i < j`.
fn generator_constraints(lat: &GLattice, h: &Subgroup) -> IntMatrix {
    let n = lat.rank();
    let s = h.rank();
    let p = h.group().p();
    let mats: Vec<IntMatrix> = h.basis().iter().map(|b| lat.action_matrix(b)).collect();
    let pairs = s * (s - 1) / 2;
    let mut m = IntMatrix::zeros((s + pairs) * n, s * n);
    let put = |m: &mut IntMatrix, rb: usize, cb: usize, block: &IntMatrix, sign: i64| {
        for r in 0..n {
            for c in 0..n {
                let v = &block[(r, c)];
                if !v.is_zero() {
                    m[(rb * n + r, cb * n + c)] = v * Int::small(sign);
                }
            }
        }
    };
    for (i, a) in mats.iter().enumerate() {
        let mut norm = IntMatrix::identity(n);
        let mut power = IntMatrix::identity(n);
        for _ in 1..p {
            power = power.mul(a);
            norm = norm.add(&power);
        }
        put(&mut m, i, i, &norm, 1);
    }
    let mut rb = s;
    for i in 0..s {
        for j in i + 1..s {
            put(&mut m, rb, j, &mats[i].minus_identity(), 1);
            put(&mut m, rb, i, &mats[j].minus_identity(), -1);
            rb += 1;
        }
    }
    m
}

/// Extends generator values to a full table by `w(g·h_i) = w(g) + g·x_i + c(g, h_i)`.
fn extend_from_generators(lat: &GLattice, h: &Subgroup, x: &[Vec<Int>], c: Option<&Cocycle2>) -> Vec<Vec<Int>> {
    let grp = h.group();
    let n = lat.rank();
    let mut table: Vec<Option<Vec<Int>>> = vec![None; h.order()];
    table[0] = Some(vec![Int::ZERO; n]);
    let mut reached = vec![0usize];
    for (i, b) in h.basis().iter().enumerate() {
        let bi = grp.index(b);
        let mut next = Vec::with_capacity(reached.len() * grp.p() as usize);
        for &g0 in &reached {
            let mut g = g0;
            next.push(g);
            for _ in 1..grp.p() {
                let gpos = h.position(g).expect("in subgroup");
                let prev = table[gpos].clone().expect("computed");
                let mut val = lat.act_index(g, &x[i]);
                add_into(&mut val, &prev);
                if let Some(c) = c {
                    add_into(&mut val, c.value_index(g, bi));
                }
                g = grp.mul_index(g, bi);
                table[h.position(g).expect("in subgroup")] = Some(val);
                next.push(g);
            }
        }
        reached = next;
    }
    table.into_iter().map(|v| v.expect("every element reached")).collect()
}

fn split_blocks(v: &[Int], n: usize) -> Vec<Vec<Int>> {
    v.chunks(n).map(<[Int]>::to_vec).collect()
}

/// Some `v` with `δv = c`, or `None` when the class of `c` is non-zero.
///
/// Solves for `w = -v` on generator values and rebuilds the table; the
/// returned cochain is re-checked against `c` on every pair.
pub fn solve_coboundary(lat: &GLattice, c: &Cocycle2) -> Result<Option<Cochain1>, CohomologyError> {
    let h = &c.subgroup;
    check_group(lat, h)?;
    let n = lat.rank();
    let s = h.rank();
    if s == 0 {
        return Ok(Some(Cochain1::zero(h.clone(), n)));
    }
    let grp = h.group();
    let a = generator_constraints(lat, h);
    let mut rhs = Vec::with_capacity(a.rows());
    let gens: Vec<usize> = h.basis().iter().map(|b| grp.index(b)).collect();
    for &gi in &gens {
        // -Σ_{l=1}^{p-1} c(h^l, h)
        let mut acc = vec![Int::ZERO; n];
        let mut g = gi;
        for _ in 1..grp.p() {
            sub_into(&mut acc, c.value_index(g, gi));
            g = grp.mul_index(g, gi);
        }
        rhs.extend(acc);
    }
    for i in 0..s {
        for j in i + 1..s {
            let mut v = c.value_index(gens[j], gens[i]).to_vec();
            sub_into(&mut v, c.value_index(gens[i], gens[j]));
            rhs.extend(v);
        }
    }
    let Some(x) = solve_integer(&a, &rhs).expect("dimensions agree") else {
        return Ok(None);
    };
    let w = extend_from_generators(lat, h, &split_blocks(&x, n), Some(c));
    let v = Cochain1::new(h.clone(), n, w.iter().map(|x| x.iter().map(|e| -e).collect()).collect())?;
    if &coboundary1(lat, &v)? != c {
        // only reachable when c violates the cocycle identity
        return Ok(None);
    }
    Ok(Some(v))
}

/// Order of the class of `c` in `H²(H, Λ)`: the least `p^e` with `p^e·c` a coboundary.
pub fn cocycle_class_order(lat: &GLattice, c: &Cocycle2) -> Result<Int, CohomologyError> {
    let p = Int::from(c.subgroup.group().p());
    let mut k = Int::ONE;
    for _ in 0..=c.subgroup.rank() {
        if solve_coboundary(lat, &c.scale(&k))?.is_some() {
            return Ok(k);
        }
        k = &k * &p;
    }
    Err(CohomologyError::NoClassOrder)
}

/// `c(h^i, h^j) = value` if `i + j ≥ p`, else 0, on a cyclic subgroup `⟨h⟩` of order `p`.
pub fn carry_cocycle(lat: &GLattice, h: &Subgroup, value: &[Int]) -> Result<Cocycle2, CohomologyError> {
    check_group(lat, h)?;
    if h.rank() != 1 {
        return Err(CohomologyError::NotCyclic);
    }
    if !lat.is_fixed(h, value) {
        return Err(CohomologyError::NotFixed);
    }
    let grp = h.group();
    let p = grp.p();
    let gen = &h.basis()[0];
    // exponent of each element with respect to the generator
    let mut exp = vec![0u32; h.order()];
    let mut g = grp.identity();
    for i in 0..p {
        exp[h.position(grp.index(&g)).expect("in subgroup")] = i;
        g = grp.mul(&g, gen);
    }
    let zero = vec![Int::ZERO; lat.rank()];
    let idx = h.element_indices().to_vec();
    let mut values = Vec::with_capacity(idx.len() * idx.len());
    for a in 0..idx.len() {
        for b in 0..idx.len() {
            values.push(if exp[a] + exp[b] >= p { value.to_vec() } else { zero.clone() });
        }
    }
    Cocycle2::new(h.clone(), lat.rank(), values)
}

/// The rank-2 canonical cocycle on the whole group of `pres`, valued in `A₂`:
/// with `m_i + n_i = q_i p + r_i`,
/// `c(s^m, s^n) = s1^{m1}·w(m2, n1) + q1·b1 + q2·s1^{r1}·b2`
/// where `w(a, b) = Σ_{i<a} Σ_{j<b} s2^i s1^j x`.
pub fn c12_cocycle(pres: &A2Presentation) -> Cocycle2 {
    let grp = pres.group();
    let p = grp.p();
    let lat = pres.lattice();
    Cocycle2::from_fn(Subgroup::whole(grp), lat.rank(), |m, n| {
        let (m, n) = (m.exponents(), n.exponents());
        let s1 = |e: u32| grp.element(&[e, 0]).expect("rank 2");
        let mut v = lat.act(&s1(m[0]), &pres.commutator_block(m[1], n[0]));
        let (q1, r1) = ((m[0] + n[0]) / p, (m[0] + n[0]) % p);
        let q2 = (m[1] + n[1]) / p;
        if q1 > 0 {
            add_into(&mut v, &scaled(pres.b1(), &Int::from(q1)));
        }
        if q2 > 0 {
            add_into(&mut v, &scaled(&lat.act(&s1(r1), pres.b2()), &Int::from(q2)));
        }
        v
    })
    .expect("table shape")
}

/// `Λ ⊕ I[G]` with `g·(0, g'-1) = (c(g,g'), g(g'-1))`; coordinates of `Λ`
/// first, then `g - 1` for `g ≠ 1` in index order.
///
/// The generator matrices are verified to define an action, which fails
/// exactly when `c` is not a normalized cocycle.
pub fn extension_lattice(lat: &GLattice, c: &Cocycle2) -> Result<GLattice, CohomologyError> {
    let grp = lat.group();
    if c.subgroup.group() != grp || c.subgroup.order() != grp.order() {
        return Err(CohomologyError::NotWholeGroup);
    }
    if !c.is_normalized() {
        return Err(CohomologyError::NotNormalized);
    }
    let n = lat.rank();
    let order = grp.order();
    let total = n + order - 1;
    let mut actions = Vec::with_capacity(grp.rank());
    for (i, s) in grp.generators().iter().enumerate() {
        let si = grp.index(s);
        let a = lat.generator_action(i);
        let mut m = IntMatrix::zeros(total, total);
        for r in 0..n {
            for col in 0..n {
                m[(r, col)] = a[(r, col)].clone();
            }
        }
        for g in 1..order {
            let col = n + g - 1;
            for (r, v) in c.value_index(si, g).iter().enumerate() {
                m[(r, col)] = v.clone();
            }
            let sg = grp.mul_index(si, g);
            if sg != 0 {
                m[(n + sg - 1, col)] += Int::ONE;
            }
            m[(n + si - 1, col)] -= Int::ONE;
        }
        actions.push(m);
    }
    let mut labels = lat.labels().to_vec();
    labels.extend((1..order).map(|g| format!("{}-1", grp.from_index(g))));
    let ext = GLattice::new(grp, actions, labels).map_err(CohomologyError::NotAnAction)?;
    // The generators determine the action; the rest of the table must agree with it.
    for g in 1..order {
        let act = ext.sparse_action(&grp.from_index(g));
        for h in 1..order {
            let mut e = vec![Int::ZERO; total];
            e[n + h - 1] = Int::ONE;
            let mut expected = c.value_index(g, h).to_vec();
            expected.resize(total, Int::ZERO);
            let gh = grp.mul_index(g, h);
            if gh != 0 {
                expected[n + gh - 1] += Int::ONE;
            }
            expected[n + g - 1] -= Int::ONE;
            if act.apply(&e) != expected {
                return Err(CohomologyError::TableDisagrees(grp.from_index(g).to_string(), grp.from_index(h).to_string()));
            }
        }
    }
    Ok(ext)
}

/// `H¹(H, Λ)` with generating cocycles; `generators[k]` has order `invariants.factors[k]`.
#[derive(Clone, Debug)]
pub struct H1 {
    pub invariants: FinAbInvariants,
    pub generators: Vec<Cochain1>,
}

/// Coboundary rows `((h_i - 1)e_t)_i`, one per basis vector `e_t` of `Λ`.
fn coboundary_rows(lat: &GLattice, h: &Subgroup) -> IntMatrix {
    let n = lat.rank();
    let blocks: Vec<IntMatrix> = h.basis().iter().map(|b| lat.action_matrix(b).minus_identity().transpose()).collect();
    let mut out = IntMatrix::zeros(n, 0);
    for b in &blocks {
        out = out.hstack(b);
    }
    out
}

/// Invariant factors of `H¹(H, Λ)` only.
///
/// `Z¹` is a saturated sublattice of the generator-value space, so the
/// torsion of `Z^{s·n} / B¹` is exactly `Z¹/B¹`; no kernel is needed.
pub fn h1_invariants(lat: &GLattice, h: &Subgroup) -> Result<FinAbInvariants, CohomologyError> {
    check_group(lat, h)?;
    if h.rank() == 0 {
        return Ok(FinAbInvariants::trivial());
    }
    let rows = coboundary_rows(lat, h);
    let q = quotient_invariants(rows.cols(), &rows).expect("dimensions agree");
    Ok(FinAbInvariants { factors: q.factors, free_rank: 0 })
}

/// `H¹(H, Λ)` through an explicit basis of `Z¹`, with generating cocycles.
pub fn h1(lat: &GLattice, h: &Subgroup) -> Result<H1, CohomologyError> {
    check_group(lat, h)?;
    let n = lat.rank();
    if h.rank() == 0 {
        return Ok(H1 { invariants: FinAbInvariants::trivial(), generators: Vec::new() });
    }
    let z1 = right_kernel_basis(&generator_constraints(lat, h));
    let z1_span = RowSpan::new(&z1);
    let b1 = coboundary_rows(lat, h);
    let coords: Vec<Vec<Int>> = (0..b1.rows())
        .map(|t| z1_span.express(b1.row(t)).expect("coboundaries are cocycles"))
        .collect();
    let rel = IntMatrix::from_rows(z1.rows(), coords);
    let sf = snf(&rel);
    let d = z1.rows();
    let diag = sf.diagonal();
    let mut invariants = FinAbInvariants::trivial();
    let mut generators = Vec::new();
    for k in 0..d {
        let dk = diag.get(k).cloned().unwrap_or(Int::ZERO);
        if dk.is_one() {
            continue;
        }
        if dk.is_zero() {
            invariants.free_rank += 1;
            continue;
        }
        invariants.factors.push(dk);
        let x = z1.vec_mul(sf.v_inv.row(k));
        let table = extend_from_generators(lat, h, &split_blocks(&x, n), None);
        generators.push(Cochain1::new(h.clone(), n, table)?);
    }
    Ok(H1 { invariants, generators })
}

/// `Ĥ⁰(H, Λ) = Λ^H / N_H Λ`.
pub fn tate_h0(lat: &GLattice, h: &Subgroup) -> Result<FinAbInvariants, CohomologyError> {
    check_group(lat, h)?;
    let fixed = lat.fixed_sublattice(h);
    let span = RowSpan::new(&fixed);
    let norm = lat.norm_matrix(h);
    let rows: Vec<Vec<Int>> =
        (0..norm.cols()).map(|j| span.express(&norm.column(j)).expect("norms are fixed")).collect();
    Ok(quotient_invariants(fixed.rows(), &IntMatrix::from_rows(fixed.rows(), rows)).expect("dimensions agree"))
}

/// `Ĥ⁻¹(H, Λ) = ker N_H / I_H Λ`.
pub fn tate_h_minus1(lat: &GLattice, h: &Subgroup) -> Result<FinAbInvariants, CohomologyError> {
    check_group(lat, h)?;
    let kernel = right_kernel_basis(&lat.norm_matrix(h));
    let span = RowSpan::new(&kernel);
    let ih = lat.ih_sublattice(h.basis());
    let rows: Vec<Vec<Int>> = (0..ih.rows()).map(|i| span.express(ih.row(i)).expect("I_H Λ lies in ker N_H")).collect();
    Ok(quotient_invariants(kernel.rows(), &IntMatrix::from_rows(kernel.rows(), rows)).expect("dimensions agree"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ElementaryAbelian;
    use crate::relation_module::RelationModule;

    fn grp(p: u32, r: usize) -> ElementaryAbelian {
        ElementaryAbelian::new(p, r).unwrap()
    }

    #[test]
    fn carry_cocycle_basics() {
        let g3 = grp(3, 1);
        let a2 = RelationModule::new(g3);
        let lat = a2.lattice();
        let whole = Subgroup::whole(g3);
        let c = carry_cocycle(lat, &whole, &[Int::ONE]).unwrap();
        assert!(is_cocycle2(lat, &c).unwrap());
        assert!(c.is_normalized());
        let s = g3.generator(0);
        assert_eq!(c.value(&s, &g3.pow(&s, 2)), &[Int::ONE]);
        assert_eq!(c.value(&g3.identity(), &s), &[Int::ZERO]);
        assert!(solve_coboundary(lat, &c).unwrap().is_none());
        assert_eq!(cocycle_class_order(lat, &c).unwrap(), Int::small(3));
        // p·c = δv with v(s^i) = i·N
        let v = solve_coboundary(lat, &c.scale(&Int::small(3))).unwrap().unwrap();
        assert_eq!(coboundary1(lat, &v).unwrap(), c.scale(&Int::small(3)));
    }

    #[test]
    fn c12_is_cocycle_of_order_p_squared() {
        let g12 = grp(3, 2);
        let pres = A2Presentation::new(g12, false).unwrap();
        let c = c12_cocycle(&pres);
        assert!(is_cocycle2(pres.lattice(), &c).unwrap());
        let s1 = g12.generator(0);
        assert_eq!(c.value(&s1, &g12.pow(&s1, 2)), pres.b1());
        assert_eq!(cocycle_class_order(pres.lattice(), &c).unwrap(), Int::small(9));
    }

    #[test]
    fn perturbed_table_fails() {
        let g3 = grp(3, 1);
        let a2 = RelationModule::new(g3);
        let mut c = carry_cocycle(a2.lattice(), &Subgroup::whole(g3), &[Int::ONE]).unwrap();
        c.values_mut()[5][0] += Int::ONE;
        assert!(!is_cocycle2(a2.lattice(), &c).unwrap());
        assert!(extension_lattice(a2.lattice(), &c).is_err());
    }

    #[test]
    fn small_h1_and_tate() {
        let g3 = grp(3, 1);
        let whole = Subgroup::whole(g3);
        let reg = GLattice::regular(g3);
        assert!(h1_invariants(&reg, &whole).unwrap().is_trivial());
        assert!(tate_h_minus1(&reg, &whole).unwrap().is_trivial());
        let triv = GLattice::trivial(g3);
        assert_eq!(tate_h0(&triv, &whole).unwrap(), FinAbInvariants::cyclic(3));
        let aug = GLattice::augmentation_ideal(g3);
        assert!(tate_h0(&aug, &whole).unwrap().is_trivial());
        let full = h1(&aug, &whole).unwrap();
        assert_eq!(full.invariants, FinAbInvariants::cyclic(3));
        assert!(is_cocycle1(&aug, &full.generators[0]).unwrap());
    }
}
