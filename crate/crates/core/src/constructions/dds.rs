//! Divisible difference sets from difference sets, and their transport into
//! `Z_{(q^d-1)/e} x Z_h`.

use super::singer::singer_ds;
use super::DifferenceSet;
use crate::algebra::{abelian_iso, invariant_factors, GroupDescriptor, GroupElement};
use crate::arith::prime_power;
use crate::designs::{verify_dds, DdsParams};
use crate::error::{Error, Result};
use num_integer::Integer;

/// A set `D` in `group` that is divisible relative to `subgroup`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibleDesign {
    pub group: GroupDescriptor,
    pub set: Vec<GroupElement>,
    pub subgroup: Vec<GroupElement>,
    pub params: DdsParams,
}

impl DivisibleDesign {
    /// Builds the design after checking it exhaustively.
    pub fn verified(
        group: GroupDescriptor,
        mut set: Vec<GroupElement>,
        mut subgroup: Vec<GroupElement>,
        params: DdsParams,
    ) -> Result<Self> {
        set.sort();
        subgroup.sort();
        let report = verify_dds(&set, &group, &subgroup, params)?;
        if !report.passed {
            return Err(Error::Verification(report.to_string()));
        }
        Ok(DivisibleDesign { group, set, subgroup, params })
    }
}

/// `D x Z_h` in `G x Z_h`, divisible relative to `{0} x Z_h` with
/// parameters `(m, h, kh, kh, lambda h)`.
pub fn dds_from_ds(d: &DifferenceSet, h: u64) -> Result<DivisibleDesign> {
    if h == 0 {
        return Err(Error::Precondition("h must be at least 1".into()));
    }
    d.reverify()?;
    let zh = GroupDescriptor::cyclic(h)?;
    let group = d.group.product(&zh)?;
    group.ensure_within_cap()?;
    let zh_elems: Vec<_> = zh.elements().collect();
    let set = d.set.iter().flat_map(|s| zh_elems.iter().map(move |y| s.pair(y))).collect();
    let subgroup = zh_elems.iter().map(|y| d.group.zero().pair(y)).collect();
    let p = d.params;
    let params = DdsParams::new(p.v, h, p.k * h, p.k * h, p.lambda * h);
    DivisibleDesign::verified(group, set, subgroup, params)
}

/// The Singer set of `PG(d-1, q)` lifted by `Z_n`, `n = h(q-1)/e`, and carried
/// into `Z_{(q^d-1)/e} x Z_h` by an explicit isomorphism.
pub fn result3star_dds(q: u64, d: u32, e: u64, h: u64) -> Result<DivisibleDesign> {
    prime_power(q)?;
    if d < 3 {
        return Err(Error::Precondition(format!("d = {d} must be at least 3")));
    }
    if e == 0 || !(q - 1).is_multiple_of(e) {
        return Err(Error::Divisibility { k: e, q_minus_one: q - 1 });
    }
    if u64::from(d).gcd(&e) != 1 {
        return Err(Error::Precondition(format!("gcd(d, e) = gcd({d}, {e}) must be 1")));
    }
    if h == 0 || h > e {
        return Err(Error::Precondition(format!("h = {h} must lie in [1, {e}]")));
    }
    let n = h * (q - 1) / e;
    let singer = singer_ds(q, d)?;
    let lifted = dds_from_ds(&singer, n)?;
    let qd_minus_one = singer.params.v * (q - 1);
    let target = GroupDescriptor::cyclic_product(&[qd_minus_one / e, h])?;
    let phi = abelian_iso(&lifted.group, &target)?.ok_or_else(|| Error::NotIsomorphic {
        source_factors: invariant_factors(&lifted.group),
        target_factors: invariant_factors(&target),
    })?;
    let set = lifted.set.iter().map(|x| phi.apply(x)).collect();
    let subgroup = lifted.subgroup.iter().map(|x| phi.apply(x)).collect();
    DivisibleDesign::verified(target, set, subgroup, lifted.params)
}
