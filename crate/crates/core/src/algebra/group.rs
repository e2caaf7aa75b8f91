//! Finite abelian groups given as products of cyclic groups and additive
//! groups of finite fields.
//!
//! Every element flattens to a digit vector (one digit per cyclic factor,
//! one per field coefficient). The mixed-radix integer of that vector is the
//! element's canonical index, and index order coincides with the
//! lexicographic order of coordinates.

use std::fmt;

use super::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

/// Groups larger than this are refused by every exhaustive routine.
pub const ORDER_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupFactor {
    Cyclic(u64),
    /// The additive group of a finite field.
    Field(FieldDescriptor),
}

impl GroupFactor {
    pub fn order(&self) -> u64 {
        match self {
            GroupFactor::Cyclic(n) => *n,
            GroupFactor::Field(f) => f.order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Residue(u64),
    Field(FieldElement),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<Coord>,
}

impl GroupElement {
    pub fn new(coords: Vec<Coord>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// Concatenates coordinates: the element `(self, other)` of a product group.
    pub fn pair(&self, other: &GroupElement) -> GroupElement {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        GroupElement { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &Coord, f: &mut fmt::Formatter<'_>| match c {
            Coord::Residue(r) => write!(f, "{r}"),
            Coord::Field(x) => write!(f, "{x}"),
        };
        if let [c] = self.coords.as_slice() {
            return show(c, f);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            show(c, f)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    factors: Vec<GroupFactor>,
    radices: Vec<u64>,
    weights: Vec<u64>,
    order: u64,
}

impl GroupDescriptor {
    pub fn new(factors: Vec<GroupFactor>) -> Result<Self> {
        let mut radices = Vec::new();
        for factor in &factors {
            match factor {
                GroupFactor::Cyclic(0) => {
                    return Err(Error::Precondition("cyclic factor of order 0".into()))
                }
                GroupFactor::Cyclic(n) => radices.push(*n),
                GroupFactor::Field(f) => {
                    radices.extend(std::iter::repeat_n(f.characteristic(), f.degree() as usize))
                }
            }
        }
        let mut weights = vec![1u64; radices.len()];
        let mut acc = 1u64;
        for (w, r) in weights.iter_mut().zip(&radices).rev() {
            *w = acc;
            acc = acc.checked_mul(*r).ok_or(Error::Overflow("group order"))?;
        }
        Ok(GroupDescriptor { factors, radices, weights, order: acc })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![GroupFactor::Cyclic(n)])
    }

    /// Product `Z_{n_1} x ... x Z_{n_t}`.
    pub fn cyclic_product(moduli: &[u64]) -> Result<Self> {
        Self::new(moduli.iter().map(|&n| GroupFactor::Cyclic(n)).collect())
    }

    /// The direct product `self x other`.
    pub fn product(&self, other: &GroupDescriptor) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::new(factors)
    }

    pub fn factors(&self) -> &[GroupFactor] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Digit radices of the flattened coordinate vector.
    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub fn is_odd(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn ensure_within_cap(&self) -> Result<()> {
        if self.order > ORDER_CAP {
            return Err(Error::GroupTooLarge { order: self.order, cap: ORDER_CAP });
        }
        Ok(())
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.factors.len()
            && self.factors.iter().zip(&x.coords).all(|(f, c)| match (f, c) {
                (GroupFactor::Cyclic(n), Coord::Residue(r)) => r < n,
                (GroupFactor::Field(fd), Coord::Field(e)) => fd.contains(e),
                _ => false,
            })
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ForeignElement(format!("{x} is not an element of {self}")))
        }
    }

    pub fn digits(&self, x: &GroupElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.radices.len());
        for c in &x.coords {
            match c {
                Coord::Residue(r) => out.push(*r),
                Coord::Field(e) => out.extend_from_slice(e.coeffs()),
            }
        }
        out
    }

    pub fn from_digits(&self, digits: &[u64]) -> GroupElement {
        let mut pos = 0;
        let coords = self
            .factors
            .iter()
            .map(|f| match f {
                GroupFactor::Cyclic(n) => {
                    pos += 1;
                    Coord::Residue(digits[pos - 1] % n)
                }
                GroupFactor::Field(fd) => {
                    let n = fd.degree() as usize;
                    let coeffs = digits[pos..pos + n].iter().map(|d| d % fd.characteristic()).collect();
                    pos += n;
                    Coord::Field(fd.element(coeffs).expect("reduced digits"))
                }
            })
            .collect();
        GroupElement { coords }
    }

    /// Builds an element from plain residues, one per digit. Convenient for
    /// cyclic groups and prime fields, where digits and coordinates agree.
    pub fn elem(&self, digits: &[u64]) -> Result<GroupElement> {
        if digits.len() != self.radices.len() || digits.iter().zip(&self.radices).any(|(d, r)| d >= r) {
            return Err(Error::ForeignElement(format!("{digits:?} in {self}")));
        }
        Ok(self.from_digits(digits))
    }

    pub fn index_of(&self, x: &GroupElement) -> u64 {
        self.digits(x).iter().zip(&self.weights).map(|(d, w)| d * w).sum()
    }

    pub fn element_at(&self, index: u64) -> GroupElement {
        let digits: Vec<u64> = self
            .radices
            .iter()
            .zip(&self.weights)
            .map(|(r, w)| index / w % r)
            .collect();
        self.from_digits(&digits)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_at(i))
    }

    pub fn zero(&self) -> GroupElement {
        self.from_digits(&vec![0; self.radices.len()])
    }

    /// Canonical generators: one per digit position.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.radices.len())
            .map(|i| {
                let mut d = vec![0; self.radices.len()];
                d[i] = 1;
                self.from_digits(&d)
            })
            .collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let (da, db) = (self.digits(a), self.digits(b));
        let d: Vec<u64> = self.radices.iter().enumerate().map(|(i, r)| (da[i] + db[i]) % r).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let (da, db) = (self.digits(a), self.digits(b));
        let d: Vec<u64> = self
            .radices
            .iter()
            .enumerate()
            .map(|(i, r)| (da[i] + r - db[i]) % r)
            .collect();
        self.from_digits(&d)
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.sub(&self.zero(), a)
    }

    /// `c * a` for an integer `c`.
    pub fn scale(&self, a: &GroupElement, c: u64) -> GroupElement {
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .zip(&self.radices)
            .map(|(x, r)| ((*x as u128 * c as u128) % *r as u128) as u64)
            .collect();
        self.from_digits(&d)
    }

    /// Index of `a - b` computed directly on canonical indices.
    pub fn sub_index(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for (r, w) in self.radices.iter().zip(&self.weights) {
            let (x, y) = (a / w % r, b / w % r);
            out += (x + r - y) % r * w;
        }
        out
    }

    pub fn add_index(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for (r, w) in self.radices.iter().zip(&self.weights) {
            let (x, y) = (a / w % r, b / w % r);
            out += (x + y) % r * w;
        }
        out
    }

    pub fn neg_index(&self, a: u64) -> u64 {
        self.sub_index(0, a)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial group");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            match factor {
                GroupFactor::Cyclic(n) => write!(f, "Z_{n}")?,
                GroupFactor::Field(fd) => write!(f, "{fd}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_field;

    #[test]
    fn index_order_is_lexicographic() {
        let g = GroupDescriptor::new(vec![
            GroupFactor::Cyclic(3),
            GroupFactor::Field(build_field(2, 2).unwrap()),
        ])
        .unwrap();
        assert_eq!(g.order(), 12);
        let all: Vec<_> = g.elements().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.index_of(x), i as u64);
        }
    }

    #[test]
    fn index_arithmetic_matches_elements() {
        let g = GroupDescriptor::cyclic_product(&[4, 6]).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let (x, y) = (g.element_at(a), g.element_at(b));
                assert_eq!(g.element_at(g.sub_index(a, b)), g.sub(&x, &y));
                assert_eq!(g.element_at(g.add_index(a, b)), g.add(&x, &y));
            }
        }
    }

    #[test]
    fn membership_and_display() {
        let g = GroupDescriptor::cyclic_product(&[85, 2]).unwrap();
        let x = g.elem(&[84, 1]).unwrap();
        assert!(g.contains(&x));
        assert_eq!(x.to_string(), "(84,1)");
        assert!(g.elem(&[85, 0]).is_err());
        assert_eq!(g.to_string(), "Z_85 x Z_2");
        assert!(GroupDescriptor::cyclic(0).is_err());
        assert!(GroupDescriptor::cyclic(ORDER_CAP + 1).unwrap().ensure_within_cap().is_err());
    }
}
