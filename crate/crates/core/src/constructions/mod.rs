//! Constructions of difference families, matrices and (divisible) difference
//! sets. Every output is checked exhaustively before it is returned.

mod cyclotomic;
mod dds;
mod orbit;
mod product;
mod singer;

pub use cyclotomic::{cyclotomic_half_ddf, sigma_sets, SigmaChoice};
pub use dds::{dds_from_ds, result3star_dds, DivisibleDesign};
pub use orbit::{furino_ddf, orbit_ddf, orbit_ddf_split, semiregular_multiplier, FurinoTarget};
pub use product::{product_ddf, result1_ddf, trivial_ds, units_hdm};
pub use singer::{singer_ds, singer_params};

use crate::algebra::{GroupDescriptor, GroupElement};
use crate::designs::{classify_family, verify_df, verify_ds, DsParams, Family, FamilyKind};
use crate::error::{Error, Result};

/// A verified `(v, k, lambda)` difference set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    pub group: GroupDescriptor,
    pub set: Vec<GroupElement>,
    pub params: DsParams,
}

impl DifferenceSet {
    /// Builds the set after checking it exhaustively.
    pub fn verified(group: GroupDescriptor, mut set: Vec<GroupElement>, params: DsParams) -> Result<Self> {
        set.sort();
        let d = DifferenceSet { group, set, params };
        d.reverify()?;
        Ok(d)
    }

    pub(crate) fn reverify(&self) -> Result<()> {
        let report = verify_ds(&self.set, &self.group, self.params)?;
        if report.passed {
            Ok(())
        } else {
            Err(Error::Verification(report.to_string()))
        }
    }
}

pub(crate) fn ensure_df(f: &Family, lambda: u64, disjoint: bool) -> Result<()> {
    let report = verify_df(f, lambda)?;
    if !report.passed {
        return Err(Error::Verification(report.to_string()));
    }
    if disjoint && classify_family(f)? == FamilyKind::Plain {
        let (i, j) = f.first_overlap()?.unwrap_or((0, 0));
        return Err(Error::NotDisjoint(i, j));
    }
    Ok(())
}
