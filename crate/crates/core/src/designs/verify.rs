//! Exhaustive verifiers. Every report carries the full deviation map so a
//! failed check names each offending element and its actual count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::delta::delta_multiset;
use super::family::Family;
use super::params::{DdsParams, DsParams};
use crate::algebra::{GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfReport {
    pub passed: bool,
    pub v: u64,
    pub block_sizes: BTreeMap<usize, usize>,
    pub lambda: u64,
    /// The common difference count, when all nonzero elements share one.
    pub observed_lambda: Option<u64>,
    /// Elements whose count differs from `lambda`, with their counts.
    pub deviations: BTreeMap<GroupElement, u64>,
}

/// Checks that every nonzero element occurs exactly `lambda` times in the
/// difference multiset.
pub fn verify_df(f: &Family, lambda: u64) -> Result<DfReport> {
    let delta = delta_multiset(f)?;
    let deviations: BTreeMap<_, _> = delta.iter().filter(|&(_, c)| c != lambda).collect();
    Ok(DfReport {
        passed: deviations.is_empty(),
        v: f.group().order(),
        block_sizes: f.block_sizes(),
        lambda,
        observed_lambda: delta.uniform_count(),
        deviations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsReport {
    pub passed: bool,
    pub params: DsParams,
    pub group_order: u64,
    pub size: u64,
    pub observed_lambda: Option<u64>,
    pub deviations: BTreeMap<GroupElement, u64>,
}

pub fn verify_ds(d: &[GroupElement], g: &GroupDescriptor, p: DsParams) -> Result<DsReport> {
    let f = Family::single(g.clone(), d.to_vec())?;
    let delta = delta_multiset(&f)?;
    let deviations: BTreeMap<_, _> = delta.iter().filter(|&(_, c)| c != p.lambda).collect();
    let size = d.len() as u64;
    Ok(DsReport {
        passed: deviations.is_empty() && size == p.k && g.order() == p.v,
        params: p,
        group_order: g.order(),
        size,
        observed_lambda: delta.uniform_count(),
        deviations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdsReport {
    pub passed: bool,
    pub params: DdsParams,
    pub group_order: u64,
    pub subgroup_order: u64,
    pub size: u64,
    /// Nonzero elements of the subgroup whose count differs from `lambda1`.
    pub inside_deviations: BTreeMap<GroupElement, u64>,
    /// Elements outside the subgroup whose count differs from `lambda2`.
    pub outside_deviations: BTreeMap<GroupElement, u64>,
}

/// Verifies a divisible difference set relative to `subgroup`. With `n = 1`
/// this is the difference-set check with `lambda = lambda2`.
pub fn verify_dds(
    d: &[GroupElement],
    g: &GroupDescriptor,
    subgroup: &[GroupElement],
    p: DdsParams,
) -> Result<DdsReport> {
    let n_set = check_subgroup(g, subgroup)?;
    let f = Family::single(g.clone(), d.to_vec())?;
    let delta = delta_multiset(&f)?;
    let mut inside = BTreeMap::new();
    let mut outside = BTreeMap::new();
    for (x, c) in delta.iter() {
        if n_set.contains(&x) {
            if c != p.lambda1 {
                inside.insert(x, c);
            }
        } else if c != p.lambda2 {
            outside.insert(x, c);
        }
    }
    let size = d.len() as u64;
    let shape_ok = size == p.k
        && n_set.len() as u64 == p.n
        && p.m.checked_mul(p.n) == Some(g.order());
    Ok(DdsReport {
        passed: shape_ok && inside.is_empty() && outside.is_empty(),
        params: p,
        group_order: g.order(),
        subgroup_order: n_set.len() as u64,
        size,
        inside_deviations: inside,
        outside_deviations: outside,
    })
}

/// Checks that `subgroup` contains 0 and is closed under subtraction.
fn check_subgroup(g: &GroupDescriptor, subgroup: &[GroupElement]) -> Result<BTreeSet<GroupElement>> {
    for x in subgroup {
        g.check(x)?;
    }
    let set: BTreeSet<GroupElement> = subgroup.iter().cloned().collect();
    if set.len() != subgroup.len() {
        return Err(Error::Precondition("subgroup lists an element twice".into()));
    }
    if !set.contains(&g.zero()) {
        return Err(Error::Precondition("subgroup does not contain 0".into()));
    }
    for a in &set {
        for b in &set {
            if !set.contains(&g.sub(a, b)) {
                return Err(Error::Precondition(format!("subgroup is not closed: {a} - {b}")));
            }
        }
    }
    Ok(set)
}

fn write_deviations(f: &mut fmt::Formatter<'_>, devs: &BTreeMap<GroupElement, u64>, expected: u64) -> fmt::Result {
    for (x, c) in devs {
        writeln!(f, "  count({x}) = {c} (expected {expected})")?;
    }
    Ok(())
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for DfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.block_sizes.iter().map(|(k, n)| format!("{k}^{n}")).collect();
        writeln!(
            f,
            "{}: difference family, v = {}, K = {{{}}}, lambda = {}",
            verdict(self.passed),
            self.v,
            sizes.join(", "),
            self.lambda
        )?;
        if !self.passed {
            writeln!(f, "  {} element(s) deviate:", self.deviations.len())?;
            write_deviations(f, &self.deviations, self.lambda)?;
        }
        Ok(())
    }
}

impl fmt::Display for DsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}-difference set", verdict(self.passed), self.params)?;
        if self.group_order != self.params.v {
            writeln!(f, "  group order is {}, declared v = {}", self.group_order, self.params.v)?;
        }
        if self.size != self.params.k {
            writeln!(f, "  set has {} elements, declared k = {}", self.size, self.params.k)?;
        }
        if !self.deviations.is_empty() {
            writeln!(f, "  {} element(s) deviate:", self.deviations.len())?;
            write_deviations(f, &self.deviations, self.params.lambda)?;
        }
        Ok(())
    }
}

impl fmt::Display for DdsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}-divisible difference set", verdict(self.passed), self.params)?;
        if Some(self.group_order) != self.params.m.checked_mul(self.params.n) {
            writeln!(f, "  group order is {}, declared m*n = {}*{}", self.group_order, self.params.m, self.params.n)?;
        }
        if self.subgroup_order != self.params.n {
            writeln!(f, "  subgroup has order {}, declared n = {}", self.subgroup_order, self.params.n)?;
        }
        if self.size != self.params.k {
            writeln!(f, "  set has {} elements, declared k = {}", self.size, self.params.k)?;
        }
        if !self.inside_deviations.is_empty() {
            writeln!(f, "  inside the subgroup:")?;
            write_deviations(f, &self.inside_deviations, self.params.lambda1)?;
        }
        if !self.outside_deviations.is_empty() {
            writeln!(f, "  outside the subgroup:")?;
            write_deviations(f, &self.outside_deviations, self.params.lambda2)?;
        }
        Ok(())
    }
}
