//! Automorphism groups acting on finite abelian groups: unit
//! multiplication on `R_v`, or groups generated by explicit automorphisms
//! given as images of the canonical generators.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::group::{GroupDescriptor, GroupElement, ORDER_CAP};
use super::ring::{RingDescriptor, RingElement};
use crate::error::{Error, Result};

/// A finite group of automorphisms, with its members enumerated.
/// Member 0 is always the identity.
pub trait GroupAction {
    fn group(&self) -> &GroupDescriptor;

    /// Number of members, `|A|`.
    fn size(&self) -> usize;

    fn apply(&self, member: usize, x: &GroupElement) -> GroupElement;
}

/// The cyclic subgroup `<generator>` of `U(R_v)` acting by multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitAction {
    ring: RingDescriptor,
    group: GroupDescriptor,
    generator: RingElement,
    powers: Vec<RingElement>,
}

impl UnitAction {
    /// Checks that `generator` is a unit of multiplicative order exactly `order`.
    pub fn new(ring: RingDescriptor, generator: RingElement, order: u64) -> Result<Self> {
        if !generator.is_unit() {
            return Err(Error::NotAutomorphism(format!("{generator} is not a unit")));
        }
        if order == 0 {
            return Err(Error::Precondition("action order must be positive".into()));
        }
        let one = ring.one();
        let mut powers = vec![one.clone()];
        for _ in 1..order {
            let next = ring.mul(powers.last().unwrap(), &generator);
            if next == one {
                return Err(Error::NotAutomorphism(format!(
                    "{generator} has order below {order}"
                )));
            }
            powers.push(next);
        }
        if ring.mul(powers.last().unwrap(), &generator) != one {
            return Err(Error::NotAutomorphism(format!("{generator}^{order} != 1")));
        }
        let group = ring.additive_group();
        Ok(UnitAction { ring, group, generator, powers })
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn generator(&self) -> &RingElement {
        &self.generator
    }

    pub fn order(&self) -> u64 {
        self.powers.len() as u64
    }

    /// `1, g, g^2, ..., g^(k-1)`.
    pub fn members(&self) -> &[RingElement] {
        &self.powers
    }
}

impl GroupAction for UnitAction {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn size(&self) -> usize {
        self.powers.len()
    }

    fn apply(&self, member: usize, x: &GroupElement) -> GroupElement {
        let r = self.ring.from_group_element(x).expect("element of the ring");
        self.ring.to_group_element(&self.ring.mul(&self.powers[member], &r))
    }
}

/// The order-`k` subgroup of `U(R_v)` generated by `(w_1^((q_1-1)/k), ..., w_t^((q_t-1)/k))`,
/// with `w_i` the canonical primitive element of each factor.
pub fn unit_subgroup_of_order(ring: &RingDescriptor, k: u64) -> Result<UnitAction> {
    if k == 0 {
        return Err(Error::Precondition("subgroup order must be positive".into()));
    }
    let mut coords = Vec::with_capacity(ring.factors().len());
    for f in ring.factors() {
        let q1 = f.order() - 1;
        if q1 % k != 0 {
            return Err(Error::Divisibility { k, q_minus_one: q1 });
        }
        coords.push(f.pow(&f.primitive_element(), q1 / k));
    }
    let generator = ring.element(coords)?;
    UnitAction::new(ring.clone(), generator, k)
}

/// A homomorphism between finite abelian groups, determined by the images
/// of the source's canonical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: GroupDescriptor,
    target: GroupDescriptor,
    images: Vec<GroupElement>,
    image_digits: Vec<Vec<u64>>,
}

impl GroupHom {
    /// Checks that the images define a homomorphism: each image is killed by
    /// the order of its generator, and the map is additive on all generator pairs.
    pub fn new(source: GroupDescriptor, target: GroupDescriptor, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.radices().len() {
            return Err(Error::NotAutomorphism(format!(
                "expected {} generator images, got {}",
                source.radices().len(),
                images.len()
            )));
        }
        for img in &images {
            target.check(img)?;
        }
        for (img, &r) in images.iter().zip(source.radices()) {
            if target.scale(img, r) != target.zero() {
                return Err(Error::NotAutomorphism(format!(
                    "image {img} of a generator of order {r} is not killed by {r}"
                )));
            }
        }
        let image_digits = images.iter().map(|x| target.digits(x)).collect();
        let hom = GroupHom { source, target, images, image_digits };
        let gens = hom.source.generators();
        for a in &gens {
            for b in &gens {
                let lhs = hom.apply(&hom.source.add(a, b));
                let rhs = hom.target.add(&hom.apply(a), &hom.apply(b));
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(format!("not additive on {a}, {b}")));
                }
            }
        }
        Ok(hom)
    }

    pub fn source(&self) -> &GroupDescriptor {
        &self.source
    }

    pub fn target(&self) -> &GroupDescriptor {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let digits = self.source.digits(x);
        let radices = self.target.radices();
        let mut out = vec![0u64; radices.len()];
        for (d, img) in digits.iter().zip(&self.image_digits) {
            if *d == 0 {
                continue;
            }
            for ((o, m), r) in out.iter_mut().zip(img).zip(radices) {
                *o = ((*o as u128 + *d as u128 * *m as u128) % *r as u128) as u64;
            }
        }
        self.target.from_digits(&out)
    }

    /// Bijectivity by counting distinct images over the whole source.
    pub fn is_bijective(&self) -> Result<bool> {
        if self.source.order() != self.target.order() {
            return Ok(false);
        }
        self.source.ensure_within_cap()?;
        let mut seen = vec![false; self.target.order() as usize];
        for x in self.source.elements() {
            let idx = self.target.index_of(&self.apply(&x)) as usize;
            if seen[idx] {
                return Ok(false);
            }
            seen[idx] = true;
        }
        Ok(true)
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch);
        }
        let images = inner.images.iter().map(|x| self.apply(x)).collect();
        GroupHom::new(inner.source.clone(), self.target.clone(), images)
    }
}

/// An automorphism of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism(GroupHom);

impl Automorphism {
    pub fn new(group: GroupDescriptor, images: Vec<GroupElement>) -> Result<Self> {
        let hom = GroupHom::new(group.clone(), group, images)?;
        Self::from_hom(hom)
    }

    pub fn from_hom(hom: GroupHom) -> Result<Self> {
        if hom.source != hom.target {
            return Err(Error::GroupMismatch);
        }
        if !hom.is_bijective()? {
            return Err(Error::NotAutomorphism("map is not bijective".into()));
        }
        Ok(Automorphism(hom))
    }

    /// `x -> u * x`.
    pub fn multiplier(group: &GroupDescriptor, u: u64) -> Result<Self> {
        let images = group.generators().iter().map(|g| group.scale(g, u)).collect();
        Self::new(group.clone(), images)
    }

    pub fn identity(group: &GroupDescriptor) -> Self {
        Automorphism(GroupHom::new(group.clone(), group.clone(), group.generators()).expect("identity"))
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.0.source
    }

    pub fn hom(&self) -> &GroupHom {
        &self.0
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.0.apply(x)
    }
}

/// The automorphism group generated by a list of automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    group: GroupDescriptor,
    members: Vec<Automorphism>,
}

impl AutomorphismGroup {
    pub fn generated_by(group: &GroupDescriptor, generators: Vec<Automorphism>) -> Result<Self> {
        if generators.iter().any(|a| a.group() != group) {
            return Err(Error::GroupMismatch);
        }
        let identity = Automorphism::identity(group);
        let mut seen: HashSet<Vec<GroupElement>> = HashSet::new();
        seen.insert(identity.0.images.clone());
        let mut members = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next = Automorphism(g.0.compose(&members[i].0)?);
                if seen.insert(next.0.images.clone()) {
                    if members.len() as u64 >= ORDER_CAP {
                        return Err(Error::GroupTooLarge { order: ORDER_CAP + 1, cap: ORDER_CAP });
                    }
                    members.push(next);
                    queue.push_back(members.len() - 1);
                }
            }
        }
        Ok(AutomorphismGroup { group: group.clone(), members })
    }

    /// `<x -> u * x>`.
    pub fn multipliers(group: &GroupDescriptor, u: u64) -> Result<Self> {
        Self::generated_by(group, vec![Automorphism::multiplier(group, u)?])
    }

    pub fn members(&self) -> &[Automorphism] {
        &self.members
    }
}

impl GroupAction for AutomorphismGroup {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn size(&self) -> usize {
        self.members.len()
    }

    fn apply(&self, member: usize, x: &GroupElement) -> GroupElement {
        self.members[member].apply(x)
    }
}

/// A non-identity member fixing a nonzero element, if any.
pub fn fixed_point_witness<A: GroupAction>(
    g: &GroupDescriptor,
    action: &A,
) -> Result<Option<(usize, GroupElement)>> {
    if action.group() != g {
        return Err(Error::GroupMismatch);
    }
    g.ensure_within_cap()?;
    for x in g.elements().skip(1) {
        for member in 1..action.size() {
            if action.apply(member, &x) == x {
                return Ok(Some((member, x)));
            }
        }
    }
    Ok(None)
}

/// Whether no non-identity member fixes a nonzero element.
pub fn is_semiregular<A: GroupAction>(g: &GroupDescriptor, action: &A) -> Result<bool> {
    Ok(fixed_point_witness(g, action)?.is_none())
}

/// Orbits of the action on `G \ {0}`. Each orbit is sorted, and the list is
/// sorted by least element.
pub fn orbits<A: GroupAction>(g: &GroupDescriptor, action: &A) -> Result<Vec<Vec<GroupElement>>> {
    if action.group() != g {
        return Err(Error::GroupMismatch);
    }
    g.ensure_within_cap()?;
    let mut visited = vec![false; g.order() as usize];
    let mut out = Vec::new();
    for idx in 1..g.order() {
        if visited[idx as usize] {
            continue;
        }
        let x = g.element_at(idx);
        let orbit: BTreeSet<GroupElement> = (0..action.size()).map(|m| action.apply(m, &x)).collect();
        for y in &orbit {
            visited[g.index_of(y) as usize] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_ring;

    fn residues(orbit: &[GroupElement]) -> Vec<String> {
        orbit.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn unit_subgroup_of_r1729() {
        let r = build_ring(&[7, 13, 19]).unwrap();
        let a = unit_subgroup_of_order(&r, 3).unwrap();
        assert_eq!(a.generator(), &r.from_constants(&[2, 3, 7]).unwrap());
        let expected: Vec<_> = [[1, 1, 1], [2, 3, 7], [4, 9, 11]]
            .iter()
            .map(|c| r.from_constants(c).unwrap())
            .collect();
        assert_eq!(a.members(), expected.as_slice());
    }

    #[test]
    fn unit_subgroup_small_cases() {
        let f7 = build_ring(&[7]).unwrap();
        let a = unit_subgroup_of_order(&f7, 3).unwrap();
        let got: Vec<_> = a.members().iter().map(|m| m.coords()[0].coeffs()[0]).collect();
        assert_eq!(got, vec![1, 2, 4]);
        let r91 = build_ring(&[7, 13]).unwrap();
        assert_eq!(
            unit_subgroup_of_order(&r91, 4).unwrap_err(),
            Error::Divisibility { k: 4, q_minus_one: 6 }
        );
    }

    #[test]
    fn semiregularity() {
        let z7 = GroupDescriptor::cyclic(7).unwrap();
        assert!(is_semiregular(&z7, &AutomorphismGroup::multipliers(&z7, 2).unwrap()).unwrap());
        let z8 = GroupDescriptor::cyclic(8).unwrap();
        let a = AutomorphismGroup::multipliers(&z8, 3).unwrap();
        let (_, witness) = fixed_point_witness(&z8, &a).unwrap().unwrap();
        assert_eq!(witness, z8.elem(&[4]).unwrap());
        let z5 = GroupDescriptor::cyclic(5).unwrap();
        let id = AutomorphismGroup::generated_by(&z5, vec![]).unwrap();
        assert!(is_semiregular(&z5, &id).unwrap());
        assert!(is_semiregular(&z7, &id).is_err());
    }

    #[test]
    fn orbit_lists() {
        let z7 = GroupDescriptor::cyclic(7).unwrap();
        let o = orbits(&z7, &AutomorphismGroup::multipliers(&z7, 2).unwrap()).unwrap();
        assert_eq!(o.iter().map(|b| residues(b)).collect::<Vec<_>>(), vec![vec!["1", "2", "4"], vec!["3", "5", "6"]]);

        let z13 = GroupDescriptor::cyclic(13).unwrap();
        let o = orbits(&z13, &AutomorphismGroup::multipliers(&z13, 3).unwrap()).unwrap();
        let got: Vec<_> = o.iter().map(|b| residues(b).join(" ")).collect();
        assert_eq!(got, vec!["1 3 9", "2 5 6", "4 10 12", "7 8 11"]);

        let z5 = GroupDescriptor::cyclic(5).unwrap();
        let id = AutomorphismGroup::generated_by(&z5, vec![]).unwrap();
        assert_eq!(orbits(&z5, &id).unwrap().len(), 4);
    }

    #[test]
    fn non_bijective_multiplier_rejected() {
        let z8 = GroupDescriptor::cyclic(8).unwrap();
        assert!(matches!(Automorphism::multiplier(&z8, 2), Err(Error::NotAutomorphism(_))));
        // 3 does not kill the image of a generator of order 2 in Z_2 -> Z_2.
        let z2 = GroupDescriptor::cyclic(2).unwrap();
        let z4 = GroupDescriptor::cyclic(4).unwrap();
        assert!(GroupHom::new(z2, z4.clone(), vec![z4.elem(&[1]).unwrap()]).is_err());
    }
}
