//! Direct products of finite fields, `R_v = GF(q_1) x ... x GF(q_t)`.

use std::fmt;

use super::field::{build_field, FieldDescriptor, FieldElement};
use super::group::{Coord, GroupDescriptor, GroupElement, GroupFactor};
use crate::arith::prime_power;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    factors: Vec<FieldDescriptor>,
    order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement {
    coords: Vec<FieldElement>,
}

impl RingElement {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Units are exactly the elements with every coordinate nonzero.
    pub fn is_unit(&self) -> bool {
        self.coords.iter().all(|c| !c.is_zero())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Builds `R_v` from its prime-power factor orders.
pub fn build_ring(factors: &[u64]) -> Result<RingDescriptor> {
    let fields = factors
        .iter()
        .map(|&q| {
            let (p, n) = prime_power(q)?;
            build_field(p, n)
        })
        .collect::<Result<Vec<_>>>()?;
    RingDescriptor::new(fields)
}

impl RingDescriptor {
    pub fn new(factors: Vec<FieldDescriptor>) -> Result<Self> {
        let order = factors
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.order()))
            .ok_or(Error::Overflow("ring order"))?;
        Ok(RingDescriptor { factors, order })
    }

    pub fn factors(&self) -> &[FieldDescriptor] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Factor orders `q_1, ..., q_t`.
    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(FieldDescriptor::order).collect()
    }

    pub fn additive_group(&self) -> GroupDescriptor {
        GroupDescriptor::new(self.factors.iter().cloned().map(GroupFactor::Field).collect())
            .expect("ring order already checked")
    }

    pub fn element(&self, coords: Vec<FieldElement>) -> Result<RingElement> {
        let ok = coords.len() == self.factors.len()
            && self.factors.iter().zip(&coords).all(|(f, c)| f.contains(c));
        if !ok {
            return Err(Error::ForeignElement(format!("R_{}", self.order)));
        }
        Ok(RingElement { coords })
    }

    /// Element whose i-th coordinate is the prime-field constant `values[i]`.
    pub fn from_constants(&self, values: &[u64]) -> Result<RingElement> {
        if values.len() != self.factors.len() {
            return Err(Error::ForeignElement(format!("R_{}", self.order)));
        }
        let coords = self.factors.iter().zip(values).map(|(f, &v)| f.constant(v)).collect();
        Ok(RingElement { coords })
    }

    pub fn one(&self) -> RingElement {
        RingElement { coords: self.factors.iter().map(FieldDescriptor::one).collect() }
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coords: self.factors.iter().map(FieldDescriptor::zero).collect() }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, FieldDescriptor::add)
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, FieldDescriptor::sub)
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, FieldDescriptor::mul)
    }

    pub fn pow(&self, a: &RingElement, exp: u64) -> RingElement {
        let coords = self.factors.iter().zip(&a.coords).map(|(f, x)| f.pow(x, exp)).collect();
        RingElement { coords }
    }

    pub fn to_group_element(&self, a: &RingElement) -> GroupElement {
        GroupElement::new(a.coords.iter().cloned().map(Coord::Field).collect())
    }

    pub fn from_group_element(&self, x: &GroupElement) -> Result<RingElement> {
        let coords = x
            .coords()
            .iter()
            .map(|c| match c {
                Coord::Field(e) => Ok(e.clone()),
                Coord::Residue(_) => Err(Error::ForeignElement(format!("R_{}", self.order))),
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }

    /// Nonzero associate classes. A class is identified by its support: the
    /// set of coordinates that range over `GF(q_i)^*` (the rest are zero).
    /// Classes are ordered by support size, then lexicographically.
    pub fn nonzero_associate_classes(&self) -> Vec<Vec<usize>> {
        let t = self.factors.len();
        let mut classes: Vec<Vec<usize>> = (1u64..1 << t)
            .map(|mask| (0..t).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        classes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        classes
    }

    fn zip(
        &self,
        a: &RingElement,
        b: &RingElement,
        op: impl Fn(&FieldDescriptor, &FieldElement, &FieldElement) -> FieldElement,
    ) -> RingElement {
        let coords = self
            .factors
            .iter()
            .zip(a.coords.iter().zip(&b.coords))
            .map(|(f, (x, y))| op(f, x, y))
            .collect();
        RingElement { coords }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_products_of_fields() {
        let r = build_ring(&[7, 13, 19]).unwrap();
        assert_eq!(r.order(), 1729);
        assert_eq!(r.factor_orders(), vec![7, 13, 19]);
        assert_eq!(build_ring(&[4]).unwrap().factors()[0].degree(), 2);
        assert_eq!(build_ring(&[6]), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn unit_detection() {
        let r = build_ring(&[7, 13]).unwrap();
        assert!(r.from_constants(&[1, 5]).unwrap().is_unit());
        assert!(!r.from_constants(&[0, 5]).unwrap().is_unit());
    }

    #[test]
    fn associate_class_order() {
        let r = build_ring(&[7, 13, 19]).unwrap();
        let classes = r.nonzero_associate_classes();
        assert_eq!(
            classes,
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
    }
}
