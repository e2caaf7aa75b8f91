//! Finite fields GF(p^n) in a polynomial basis.
//!
//! The modulus is the lexicographically least monic irreducible polynomial
//! of the requested degree (coefficients compared low-degree-first), so the
//! same `(p, n)` always yields the same field and the same primitive element.

use std::fmt;

use super::poly;
use crate::arith::{checked_pow, factorize, is_prime};
use crate::error::{Error, Result};

/// Largest characteristic accepted; keeps coefficient products inside `u64`.
pub const MAX_CHARACTERISTIC: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    p: u64,
    n: u32,
    modulus: Vec<u64>,
    order: u64,
}

/// Polynomial-basis coordinates, low degree first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [c] = self.coeffs.as_slice() {
            return write!(f, "{c}");
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Builds GF(p^n) with the lexicographically least monic irreducible modulus.
pub fn build_field(p: u64, n: u32) -> Result<FieldDescriptor> {
    if !is_prime(p) || p > MAX_CHARACTERISTIC {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Precondition("field degree must be at least 1".into()));
    }
    let order = checked_pow(p, n)?;
    if n == 1 {
        return Ok(FieldDescriptor { p, n, modulus: vec![0, 1], order });
    }
    // Enumerate the n free coefficients with c0 as the most significant digit.
    let mut free = vec![0u64; n as usize];
    loop {
        let mut candidate = free.clone();
        candidate.push(1);
        if poly::is_irreducible(&candidate, p) {
            return Ok(FieldDescriptor { p, n, modulus: candidate, order });
        }
        let mut pos = n as usize;
        loop {
            if pos == 0 {
                return Err(Error::NoIrreducible { p, n });
            }
            pos -= 1;
            free[pos] += 1;
            if free[pos] < p {
                break;
            }
            free[pos] = 0;
        }
    }
}

impl FieldDescriptor {
    /// Field with an explicitly given modulus; used when reading design files.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) || p > MAX_CHARACTERISTIC {
            return Err(Error::NotPrime(p));
        }
        let n = modulus.len().saturating_sub(1) as u32;
        let bad = |why: &str| Err(Error::Precondition(format!("modulus {modulus:?}: {why}")));
        if n == 0 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return bad("must be monic with coefficients below p");
        }
        if n == 1 {
            if modulus != [0, 1] {
                return bad("prime fields use the modulus x");
            }
        } else if !poly::is_irreducible(&modulus, p) {
            return bad("reducible");
        }
        let order = checked_pow(p, n)?;
        Ok(FieldDescriptor { p, n, modulus, order })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// The prime-field element `c mod p`.
    pub fn constant(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        let e = FieldElement { coeffs };
        if !self.contains(&e) {
            return Err(Error::ForeignElement(format!("GF({})", self.order)));
        }
        Ok(e)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.coeffs.len() == self.n as usize && x.coeffs.iter().all(|&c| c < self.p)
    }

    /// Rank of `x` in the canonical (coefficient-lexicographic) order.
    pub fn index_of(&self, x: &FieldElement) -> u64 {
        x.coeffs.iter().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn element_at(&self, mut index: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        for c in coeffs.iter_mut().rev() {
            *c = index % self.p;
            index /= self.p;
        }
        FieldElement { coeffs }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.element_at(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    /// `c * a` for an integer `c`.
    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let c = c % self.p;
        let coeffs = a.coeffs.iter().map(|x| x * c % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement { coeffs: vec![a.coeffs[0] * b.coeffs[0] % self.p] };
        }
        let prod = poly::mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p);
        self.pad(prod)
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Multiplicative order, `None` for zero.
    pub fn mult_order(&self, a: &FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut order = self.order - 1;
        for (r, _) in factorize(self.order - 1) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == self.one() {
                order /= r;
            }
        }
        Some(order)
    }

    /// The canonically least element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        let one = self.one();
        let primes: Vec<u64> = factorize(self.order - 1).into_iter().map(|(r, _)| r).collect();
        (1..self.order)
            .map(|i| self.element_at(i))
            .find(|x| primes.iter().all(|r| self.pow(x, (self.order - 1) / r) != one))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Relative trace to the subfield GF(p^sub_degree).
    pub fn trace(&self, x: &FieldElement, sub_degree: u32) -> Result<FieldElement> {
        if sub_degree == 0 || !self.n.is_multiple_of(sub_degree) {
            return Err(Error::SubDegree { sub: sub_degree, degree: self.n });
        }
        let q = checked_pow(self.p, sub_degree)?;
        let mut term = x.clone();
        let mut acc = self.zero();
        for _ in 0..self.n / sub_degree {
            acc = self.add(&acc, &term);
            term = self.pow(&term, q);
        }
        Ok(acc)
    }

    /// Whether `x` lies in the subfield GF(p^sub_degree), i.e. `x^(p^sub) = x`.
    pub fn in_subfield(&self, x: &FieldElement, sub_degree: u32) -> Result<bool> {
        if sub_degree == 0 || !self.n.is_multiple_of(sub_degree) {
            return Err(Error::SubDegree { sub: sub_degree, degree: self.n });
        }
        Ok(self.pow(x, checked_pow(self.p, sub_degree)?) == *x)
    }

    fn pad(&self, mut coeffs: Vec<u64>) -> FieldElement {
        coeffs.resize(self.n as usize, 0);
        FieldElement { coeffs }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order)
    }
}
