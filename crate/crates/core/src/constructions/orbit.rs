//! Difference families from semiregular automorphism groups.
//!
//! If `A` of order `k` acts semiregularly on `G \ {0}`, its orbits form a
//! `(v, k, k-1)`-DDF. When `vk` is odd, `-1` lies outside `A`, orbits pair
//! up as `{B, -B}`, and one orbit from each pair gives a `(v, k, (k-1)/2)`-DDF.

use std::collections::BTreeSet;

use super::ensure_df;
use crate::algebra::{
    fixed_point_witness, orbits, unit_subgroup_of_order, AutomorphismGroup, GroupAction, GroupDescriptor,
    GroupElement, RingDescriptor,
};
use crate::arith::{crt, factorize, mod_pow};
use crate::designs::Family;
use crate::error::{Error, Result};

/// The family of `A`-orbits on `G \ {0}`.
pub fn orbit_ddf<A: GroupAction>(g: &GroupDescriptor, action: &A) -> Result<Family> {
    if let Some((member, witness)) = fixed_point_witness(g, action)? {
        return Err(Error::NotSemiregular { member, witness });
    }
    let k = action.size() as u64;
    let family = Family::new(g.clone(), orbits(g, action)?)?;
    if family.blocks().iter().any(|b| b.len() as u64 != k) {
        return Err(Error::Verification("orbit of unexpected size".into()));
    }
    ensure_df(&family, k - 1, true)?;
    Ok(family)
}

/// Splits the orbit family into two `(v, k, (k-1)/2)`-DDFs; the second is
/// the blockwise negation of the first.
pub fn orbit_ddf_split<A: GroupAction>(g: &GroupDescriptor, action: &A) -> Result<(Family, Family)> {
    let k = action.size() as u64;
    if (g.order() * k).is_multiple_of(2) {
        return Err(Error::EvenOrderTimesK { v: g.order(), k });
    }
    let full = orbit_ddf(g, action)?;
    let mut taken: BTreeSet<&[GroupElement]> = BTreeSet::new();
    let negatives = full.negated();
    let mut first = Vec::new();
    for (b, nb) in full.blocks().iter().zip(negatives.blocks()) {
        if taken.contains(b.as_slice()) {
            continue;
        }
        if b == nb {
            return Err(Error::SplitFailed(format!("orbit of {} is closed under negation", b[0])));
        }
        taken.insert(b);
        taken.insert(nb);
        first.push(b.clone());
    }
    let first = Family::new(g.clone(), first)?;
    let second = first.negated();

    let mut halves: Vec<&Vec<GroupElement>> = first.blocks().iter().chain(second.blocks()).collect();
    let mut whole: Vec<&Vec<GroupElement>> = full.blocks().iter().collect();
    halves.sort();
    whole.sort();
    if halves != whole {
        return Err(Error::SplitFailed("halves do not recombine to the orbit family".into()));
    }
    for half in [&first, &second] {
        ensure_df(half, (k - 1) / 2, true).map_err(|e| Error::SplitFailed(e.to_string()))?;
    }
    Ok((first, second))
}

/// Where a Furino family lives: the cyclic group `Z_v`, or the ring `R_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FurinoTarget {
    Cyclic(u64),
    Ring(RingDescriptor),
}

/// A unit `u` of order `k` modulo `v` with every `u^j - 1` (0 < j < k) a
/// unit, so that `x -> ux` generates a semiregular group on `Z_v`.
/// Requires every prime divisor of `v` to be `1 mod k`.
pub fn semiregular_multiplier(v: u64, k: u64) -> Result<u64> {
    if k == 0 || v == 0 {
        return Err(Error::Precondition("v and k must be positive".into()));
    }
    let mut parts = Vec::new();
    for (p, a) in factorize(v) {
        if (p - 1) % k != 0 {
            return Err(Error::Congruence { factor: p, modulus: k });
        }
        let pa = p.pow(a);
        let u = (1..pa)
            .find(|&u| {
                u % p != 0
                    && mod_pow(u, k, pa) == 1
                    && (1..k).all(|j| mod_pow(u, j, p) != 1)
            })
            .ok_or_else(|| Error::Verification(format!("no element of order {k} mod {pa}")))?;
        parts.push((u, pa));
    }
    Ok(if parts.is_empty() { 0 } else { crt(&parts) })
}

/// `(v, k, k-1)`-DDF, or with `half` a `(v, k, (k-1)/2)`-DDF, from the
/// order-`k` multiplier group of `Z_v` or unit subgroup of `R_v`.
pub fn furino_ddf(target: &FurinoTarget, k: u64, half: bool) -> Result<Family> {
    match target {
        FurinoTarget::Cyclic(v) => {
            let u = semiregular_multiplier(*v, k)?;
            let g = GroupDescriptor::cyclic(*v)?;
            let action = AutomorphismGroup::multipliers(&g, u)?;
            if action.size() as u64 != k && *v > 1 {
                return Err(Error::Verification(format!("multiplier {u} has order {}", action.size())));
            }
            orbit_family(&g, &action, half)
        }
        FurinoTarget::Ring(r) => {
            for q in r.factor_orders() {
                if (q - 1) % k != 0 {
                    return Err(Error::Congruence { factor: q, modulus: k });
                }
            }
            let action = unit_subgroup_of_order(r, k)?;
            let g = r.additive_group();
            orbit_family(&g, &action, half)
        }
    }
}

fn orbit_family<A: GroupAction>(g: &GroupDescriptor, action: &A, half: bool) -> Result<Family> {
    if half {
        orbit_ddf_split(g, action).map(|(first, _)| first)
    } else {
        orbit_ddf(g, action)
    }
}
