//! The integral group ring `Z[G]` of an elementary abelian group, sparse.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::group::{Element, ElementaryAbelian, Subgroup};
use crate::int::Int;

/// A finitely supported integer combination of group elements, keyed by element index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    group: ElementaryAbelian,
    coeffs: BTreeMap<usize, Int>,
}

impl GroupRingElement {
    pub fn zero(group: ElementaryAbelian) -> Self {
        GroupRingElement { group, coeffs: BTreeMap::new() }
    }

    pub fn one(group: ElementaryAbelian) -> Self {
        Self::monomial(group, &group.identity(), Int::ONE)
    }

    pub fn monomial(group: ElementaryAbelian, g: &Element, c: impl Into<Int>) -> Self {
        let mut x = Self::zero(group);
        x.add_term(group.index(g), c.into());
        x
    }

    /// `g - 1`.
    pub fn g_minus_one(group: ElementaryAbelian, g: &Element) -> Self {
        Self::monomial(group, g, 1) - Self::one(group)
    }

    pub fn from_terms(group: ElementaryAbelian, terms: impl IntoIterator<Item = (Element, Int)>) -> Self {
        let mut x = Self::zero(group);
        for (g, c) in terms {
            x.add_term(group.index(&g), c);
        }
        x
    }

    /// Interprets a dense coefficient vector indexed by element index.
    pub fn from_dense(group: ElementaryAbelian, v: &[Int]) -> Self {
        assert_eq!(v.len(), group.order());
        let coeffs = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        GroupRingElement { group, coeffs }
    }

    pub fn to_dense(&self) -> Vec<Int> {
        let mut v = vec![Int::ZERO; self.group.order()];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    fn add_term(&mut self, idx: usize, c: Int) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(idx).or_insert(Int::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn group(&self) -> ElementaryAbelian {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, g: &Element) -> Int {
        self.coeffs.get(&self.group.index(g)).cloned().unwrap_or(Int::ZERO)
    }

    /// Non-zero terms in element order.
    pub fn terms(&self) -> impl Iterator<Item = (Element, &Int)> + '_ {
        self.coeffs.iter().map(|(&i, c)| (self.group.from_index(i), c))
    }

    /// Sum of coefficients; the ring map `Z[G] → Z` sending every element to 1.
    pub fn augmentation(&self) -> Int {
        self.coeffs.values().sum()
    }

    pub fn scale(&self, k: &Int) -> Self {
        let mut out = Self::zero(self.group);
        for (&i, c) in &self.coeffs {
            out.add_term(i, c * k);
        }
        out
    }

    /// Left multiplication by a group element (a permutation of the support).
    pub fn translate(&self, g: &Element) -> Self {
        let gi = self.group.index(g);
        let coeffs = self.coeffs.iter().map(|(&i, c)| (self.group.mul_index(gi, i), c.clone())).collect();
        GroupRingElement { group: self.group, coeffs }
    }
}

/// Sum of all elements of `h`.
pub fn norm_element(h: &Subgroup) -> GroupRingElement {
    let group = h.group();
    GroupRingElement { group, coeffs: h.element_indices().iter().map(|&i| (i, Int::ONE)).collect() }
}

impl Add for GroupRingElement {
    type Output = GroupRingElement;
    fn add(mut self, rhs: GroupRingElement) -> GroupRingElement {
        assert_eq!(self.group, rhs.group);
        for (i, c) in rhs.coeffs {
            self.add_term(i, c);
        }
        self
    }
}

impl Neg for GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(&Int::small(-1))
    }
}

impl Sub for GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: GroupRingElement) -> GroupRingElement {
        self + (-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.group, rhs.group);
        let mut out = GroupRingElement::zero(self.group);
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                out.add_term(self.group.mul_index(i, j), a * b);
            }
        }
        out
    }
}

impl Mul for GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: GroupRingElement) -> GroupRingElement {
        &self * &rhs
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (g, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (mag.is_one(), g.is_identity()) {
                (true, true) => f.write_str("1")?,
                (true, false) => write!(f, "{g}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{g}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_and_augmentation() {
        let g = ElementaryAbelian::new(3, 4).unwrap();
        let s3 = Subgroup::generated_by(g, &[g.generator(2)]);
        let n3 = norm_element(&s3);
        assert_eq!(n3.to_string(), "1 + s3 + s3^2");
        assert_eq!(n3.augmentation(), Int::small(3));
        assert_eq!(norm_element(&Subgroup::trivial(g)), GroupRingElement::one(g));
        let g34 = Subgroup::generated_by(g, &[g.generator(2), g.generator(3)]);
        assert_eq!(norm_element(&g34).terms().count(), 9);

        let s1 = g.generator(0);
        assert!(GroupRingElement::g_minus_one(g, &s1).augmentation().is_zero());
        let x = GroupRingElement::monomial(g, &g.mul(&s1, &g.generator(1)), 2) + GroupRingElement::monomial(g, &g.identity(), 5);
        assert_eq!(x.augmentation(), Int::small(7));
    }

    #[test]
    fn norm_kills_augmentation() {
        let g = ElementaryAbelian::new(3, 2).unwrap();
        let h = Subgroup::whole(g);
        let n = norm_element(&h);
        for e in h.elements() {
            assert!((&n * &GroupRingElement::g_minus_one(g, &e)).is_zero());
        }
    }
}
