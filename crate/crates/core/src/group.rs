//! Elementary abelian p-groups `(Z/p)^r`, their elements and subgroups.
//!
//! Elements are exponent vectors with entries in `[0, p)`. Each element also
//! has an integer index (base-`p` digits, first generator most significant),
//! so index order and lexicographic order of exponent vectors coincide. Every
//! table in the crate is laid out in that order.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("group of order {p}^{rank} is too large to enumerate")]
    TooLarge { p: u32, rank: usize },
    #[error("element has {got} exponents, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("expected a group of rank {expected}, got rank {got}")]
    WrongRank { expected: usize, got: usize },
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The group `(Z/p)^rank` with ordered generators `s1, ..., s_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementaryAbelian {
    p: u32,
    rank: usize,
}

/// Generous cap on group order; everything here tabulates over the group.
const MAX_ORDER: u64 = 1 << 20;

impl ElementaryAbelian {
    pub fn new(p: u32, rank: usize) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if rank == 0 {
            return Err(GroupError::ZeroRank);
        }
        match (p as u64).checked_pow(rank as u32) {
            Some(n) if n <= MAX_ORDER => Ok(ElementaryAbelian { p, rank }),
            _ => Err(GroupError::TooLarge { p, rank }),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.rank as u32)
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.rank])
    }

    /// The `i`-th generator (zero-based).
    pub fn generator(&self, i: usize) -> Element {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        Element(e)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank).map(|i| self.generator(i)).collect()
    }

    pub fn element(&self, exps: &[u32]) -> Result<Element, GroupError> {
        if exps.len() != self.rank {
            return Err(GroupError::WrongLength { expected: self.rank, got: exps.len() });
        }
        Ok(Element(exps.iter().map(|e| e % self.p).collect()))
    }

    pub fn index(&self, g: &Element) -> usize {
        g.0.iter().fold(0, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn from_index(&self, mut idx: usize) -> Element {
        let mut e = vec![0; self.rank];
        for slot in e.iter_mut().rev() {
            *slot = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        Element(e)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn inverse(&self, a: &Element) -> Element {
        Element(a.0.iter().map(|x| (self.p - x) % self.p).collect())
    }

    pub fn pow(&self, a: &Element, k: u64) -> Element {
        let k = (k % self.p as u64) as u32;
        Element(a.0.iter().map(|x| x * k % self.p).collect())
    }

    /// Product of indices, without materialising elements.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.rank {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }
}

impl fmt::Display for ElementaryAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z/{})^{}", self.p, self.rank)
    }
}

/// A group element as a reduced exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(Vec<u32>);

impl Element {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { format!("s{}", i + 1) } else { format!("s{}^{e}", i + 1) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small: Fermat
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Reduced row echelon form over F_p, zero rows dropped.
fn rref(p: u32, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// A subgroup, stored as an F_p echelon basis plus its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "SubgroupData", into = "SubgroupData")]
pub struct Subgroup {
    group: ElementaryAbelian,
    basis: Vec<Element>,
    elements: Vec<usize>,
}

#[derive(Clone, Serialize, Deserialize)]
struct SubgroupData {
    group: ElementaryAbelian,
    basis: Vec<Element>,
}

impl From<SubgroupData> for Subgroup {
    fn from(d: SubgroupData) -> Subgroup {
        Subgroup::generated_by(d.group, &d.basis)
    }
}

impl From<Subgroup> for SubgroupData {
    fn from(s: Subgroup) -> SubgroupData {
        SubgroupData { group: s.group, basis: s.basis }
    }
}

impl Subgroup {
    pub fn generated_by(group: ElementaryAbelian, gens: &[Element]) -> Subgroup {
        let basis = rref(group.p, gens.iter().map(|g| g.0.clone()).collect());
        Self::from_echelon(group, basis.into_iter().map(Element).collect())
    }

    fn from_echelon(group: ElementaryAbelian, basis: Vec<Element>) -> Subgroup {
        let mut elements = vec![0usize];
        for b in &basis {
            let bi = group.index(b);
            let mut next = Vec::with_capacity(elements.len() * group.p as usize);
            for &e in &elements {
                let mut x = e;
                for _ in 0..group.p {
                    next.push(x);
                    x = group.mul_index(x, bi);
                }
            }
            elements = next;
        }
        elements.sort_unstable();
        Subgroup { group, basis, elements }
    }

    pub fn trivial(group: ElementaryAbelian) -> Subgroup {
        Self::from_echelon(group, Vec::new())
    }

    pub fn whole(group: ElementaryAbelian) -> Subgroup {
        Self::generated_by(group, &group.generators())
    }

    pub fn group(&self) -> ElementaryAbelian {
        self.group
    }

    /// Echelon basis; these are the generators every computation iterates over.
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.basis.len() <= 1
    }

    /// Sorted element indices.
    pub fn element_indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements.iter().map(|&i| self.group.from_index(i))
    }

    /// Position of an element (by ambient index) in this subgroup's element list.
    pub fn position(&self, idx: usize) -> Option<usize> {
        self.elements.binary_search(&idx).ok()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.position(self.group.index(g)).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.basis.iter().all(|b| other.contains(b))
    }

    /// Canonical representative (smallest index) of the coset `g·H`.
    pub fn coset_rep(&self, g: usize) -> usize {
        self.elements.iter().map(|&h| self.group.mul_index(g, h)).min().expect("subgroup is non-empty")
    }

    /// Sorted canonical coset representatives of `G/H`.
    pub fn transversal(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = (0..self.group.order()).filter(|&g| self.coset_rep(g) == g).collect();
        reps.sort_unstable();
        reps
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.basis.iter().map(Element::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

fn gaussian_binomials(p: u32, rank: usize) -> Vec<u64> {
    // number of k-dimensional subspaces of F_p^rank
    (0..=rank)
        .map(|k| {
            let mut num = 1u64;
            let mut den = 1u64;
            for i in 0..k {
                num *= (p as u64).pow((rank - i) as u32) - 1;
                den *= (p as u64).pow((i + 1) as u32) - 1;
            }
            num / den
        })
        .collect()
}

/// Total number of subgroups of `(Z/p)^rank`.
pub fn subgroup_count(p: u32, rank: usize) -> u64 {
    gaussian_binomials(p, rank).iter().sum()
}

/// Every subgroup exactly once, ordered by order and then by echelon basis.
pub fn all_subgroups(group: ElementaryAbelian) -> Vec<Subgroup> {
    let (p, r) = (group.p, group.rank);
    let mut out = Vec::new();
    for k in 0..=r {
        for pivots in combinations(r, k) {
            // free slots: (row, col) with col > pivot of that row and col not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| (c + 1..r).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
                .collect();
            let total = (p as u64).pow(free.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![0u32; r]; k];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                for &(i, j) in &free {
                    rows[i][j] = (code % p as u64) as u32;
                    code /= p as u64;
                }
                out.push(Subgroup::from_echelon(group, rows.into_iter().map(Element).collect()));
            }
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.basis.cmp(&b.basis)));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The quotient map `(Z/p)^r → (Z/p)^k` that keeps a fixed list of coordinates.
///
/// Its kernel is the subgroup generated by the dropped generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    source: ElementaryAbelian,
    target: ElementaryAbelian,
    coords: Vec<usize>,
}

impl Projection {
    pub fn new(source: ElementaryAbelian, coords: &[usize]) -> Result<Projection, GroupError> {
        let target = ElementaryAbelian::new(source.p, coords.len())?;
        assert!(coords.iter().all(|&c| c < source.rank), "coordinate out of range");
        Ok(Projection { source, target, coords: coords.to_vec() })
    }

    pub fn source(&self) -> ElementaryAbelian {
        self.source
    }

    pub fn target(&self) -> ElementaryAbelian {
        self.target
    }

    pub fn apply(&self, g: &Element) -> Element {
        Element(self.coords.iter().map(|&c| g.0[c]).collect())
    }

    pub fn apply_index(&self, g: usize) -> usize {
        self.target.index(&self.apply(&self.source.from_index(g)))
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = h.basis.iter().map(|b| self.apply(b)).collect();
        Subgroup::generated_by(self.target, &gens)
    }

    pub fn kernel(&self) -> Subgroup {
        let gens: Vec<Element> =
            (0..self.source.rank).filter(|i| !self.coords.contains(i)).map(|i| self.source.generator(i)).collect();
        Subgroup::generated_by(self.source, &gens)
    }
}

/// The three quotient maps of a rank-4 group: onto the first two
/// coordinates, onto the third, and onto the fourth.
pub fn standard_projections(group: ElementaryAbelian) -> Result<[Projection; 3], GroupError> {
    if group.rank != 4 {
        return Err(GroupError::WrongRank { expected: 4, got: group.rank });
    }
    Ok([Projection::new(group, &[0, 1])?, Projection::new(group, &[2])?, Projection::new(group, &[3])?])
}

/// Images of `h` in the quotients by the last two, and by all but the third
/// and fourth, generators respectively.
pub fn quotient_images(h: &Subgroup) -> Result<[Subgroup; 3], GroupError> {
    let [a, b, c] = standard_projections(h.group)?;
    Ok([a.image(h), b.image(h), c.image(h)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u32, r: usize) -> ElementaryAbelian {
        ElementaryAbelian::new(p, r).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(g(3, 4).order(), 81);
        assert_eq!(g(3, 1).order(), 3);
        assert_eq!(g(5, 2).order(), 25);
        assert_eq!(ElementaryAbelian::new(4, 2), Err(GroupError::NotPrime(4)));
        assert_eq!(ElementaryAbelian::new(1, 2), Err(GroupError::NotPrime(1)));
        assert_eq!(ElementaryAbelian::new(3, 0), Err(GroupError::ZeroRank));
    }

    #[test]
    fn index_round_trip_and_order() {
        let grp = g(3, 3);
        for i in 0..grp.order() {
            assert_eq!(grp.index(&grp.from_index(i)), i);
        }
        let elems: Vec<Element> = grp.elements().collect();
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(grp.index(&grp.generator(0)), 9);
    }

    #[test]
    fn mul_index_matches_mul() {
        let grp = g(3, 3);
        for a in 0..grp.order() {
            for b in 0..grp.order() {
                let m = grp.mul(&grp.from_index(a), &grp.from_index(b));
                assert_eq!(grp.mul_index(a, b), grp.index(&m));
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(g(3, 2)).len(), 6);
        assert_eq!(all_subgroups(g(3, 4)).len(), 212);
        assert_eq!(all_subgroups(g(2, 1)).len(), 2);
        assert_eq!(subgroup_count(3, 4), 212);
        let orders: Vec<usize> = all_subgroups(g(3, 2)).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 3, 3, 3, 3, 9]);
    }

    #[test]
    fn echelon_dedups_generating_sets() {
        let grp = g(3, 4);
        let t = grp.element(&[1, 2, 0, 0]).unwrap();
        let a = Subgroup::generated_by(grp, &[t.clone(), grp.generator(2), grp.generator(3)]);
        let b = Subgroup::generated_by(grp, &[grp.pow(&t, 2), grp.generator(3), grp.generator(2)]);
        assert_eq!(a, b);
        assert_eq!(a.order(), 27);
    }

    #[test]
    fn images() {
        let grp = g(3, 4);
        let s = |i| grp.generator(i);
        let [a, b, c] = quotient_images(&Subgroup::generated_by(grp, &[s(0)])).unwrap();
        assert_eq!((a.order(), b.order(), c.order()), (3, 1, 1));
        let [a, b, c] = quotient_images(&Subgroup::generated_by(grp, &[s(2), s(3)])).unwrap();
        assert_eq!((a.order(), b.order(), c.order()), (1, 3, 3));
        let [a, b, c] = quotient_images(&Subgroup::generated_by(grp, &[grp.mul(&s(0), &s(2))])).unwrap();
        assert_eq!(a, Subgroup::generated_by(a.group(), &[a.group().generator(0)]));
        assert_eq!((b.order(), c.order()), (3, 1));
        assert!(quotient_images(&Subgroup::whole(g(3, 2))).is_err());
    }

    #[test]
    fn transversal_size() {
        let grp = g(3, 4);
        let h = Subgroup::generated_by(grp, &[grp.generator(2), grp.generator(3)]);
        let t = h.transversal();
        assert_eq!(t.len(), 9);
        assert_eq!(t[0], 0);
    }
}
