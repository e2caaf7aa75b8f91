//! Difference matrices. A `(v, k, 1)`-DM over a group of order `v` is a
//! `k x v` matrix whose pairwise row differences are permutations of the
//! group; it is homogeneous when every row is a permutation as well.

use std::fmt;

use crate::algebra::{GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffMatrix {
    group: GroupDescriptor,
    rows: Vec<Vec<GroupElement>>,
}

impl DiffMatrix {
    pub fn new(group: GroupDescriptor, rows: Vec<Vec<GroupElement>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if let Some(i) = rows.iter().position(|r| r.len() != first.len()) {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, row 0 has {}",
                    rows[i].len(),
                    first.len()
                )));
            }
        }
        for x in rows.iter().flatten() {
            group.check(x)?;
        }
        Ok(DiffMatrix { group, rows })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn rows(&self) -> &[Vec<GroupElement>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn zero_row_position(&self) -> Option<usize> {
        let zero = self.group.zero();
        self.rows.iter().position(|r| r.iter().all(|x| *x == zero))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmReport {
    pub passed: bool,
    pub homogeneous_check: bool,
    pub v: u64,
    pub k: usize,
    /// Number of columns differs from the group order.
    pub wrong_width: bool,
    /// Row pairs `(i, j)`, `i < j`, whose difference is not a permutation.
    pub bad_row_pairs: Vec<(usize, usize)>,
    /// Rows that are not permutations (homogeneous check only).
    pub bad_rows: Vec<usize>,
}

fn is_permutation(group: &GroupDescriptor, seen: &mut [bool], row: impl Iterator<Item = u64>) -> bool {
    seen.iter_mut().for_each(|s| *s = false);
    let mut n = 0;
    for x in row {
        let s = &mut seen[x as usize];
        if *s {
            return false;
        }
        *s = true;
        n += 1;
    }
    n == group.order()
}

fn check(m: &DiffMatrix, homogeneous: bool) -> Result<DmReport> {
    let g = &m.group;
    g.ensure_within_cap()?;
    let idx: Vec<Vec<u64>> = m.rows.iter().map(|r| r.iter().map(|x| g.index_of(x)).collect()).collect();
    let wrong_width = m.num_cols() as u64 != g.order();
    let mut seen = vec![false; g.order() as usize];
    let mut bad_row_pairs = Vec::new();
    let mut bad_rows = Vec::new();
    if !wrong_width {
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                let diff = idx[i].iter().zip(&idx[j]).map(|(&a, &b)| g.sub_index(a, b));
                if !is_permutation(g, &mut seen, diff) {
                    bad_row_pairs.push((i, j));
                }
            }
            if homogeneous && !is_permutation(g, &mut seen, idx[i].iter().copied()) {
                bad_rows.push(i);
            }
        }
    }
    Ok(DmReport {
        passed: !wrong_width && bad_row_pairs.is_empty() && bad_rows.is_empty(),
        homogeneous_check: homogeneous,
        v: g.order(),
        k: m.num_rows(),
        wrong_width,
        bad_row_pairs,
        bad_rows,
    })
}

pub fn verify_dm(m: &DiffMatrix) -> Result<DmReport> {
    check(m, false)
}

pub fn verify_hdm(m: &DiffMatrix) -> Result<DmReport> {
    check(m, true)
}

/// Subtracts each column's first-row entry from that column, making the
/// first row zero.
pub fn normalize_dm(m: &DiffMatrix) -> Result<DiffMatrix> {
    if !verify_dm(m)?.passed {
        return Err(Error::InvalidMatrix("not a difference matrix".into()));
    }
    let g = &m.group;
    let Some(first) = m.rows.first() else {
        return Ok(m.clone());
    };
    let rows = m
        .rows
        .iter()
        .map(|r| r.iter().zip(first).map(|(x, f)| g.sub(x, f)).collect())
        .collect();
    DiffMatrix::new(g.clone(), rows)
}

/// Prepends a zero row: a `(v, k, 1)`-HDM becomes a `(v, k+1, 1)`-DM.
pub fn hdm_to_dm(m: &DiffMatrix) -> Result<DiffMatrix> {
    if !verify_hdm(m)?.passed {
        return Err(Error::InvalidMatrix("not a homogeneous difference matrix".into()));
    }
    let mut rows = vec![vec![m.group.zero(); m.group.order() as usize]];
    rows.extend(m.rows.iter().cloned());
    let out = DiffMatrix::new(m.group.clone(), rows)?;
    debug_assert!(verify_dm(&out)?.passed);
    Ok(out)
}

/// Deletes the zero row of a normalized `(v, k+1, 1)`-DM.
pub fn dm_to_hdm(m: &DiffMatrix) -> Result<DiffMatrix> {
    if !verify_dm(m)?.passed {
        return Err(Error::InvalidMatrix("not a difference matrix".into()));
    }
    let Some(pos) = m.zero_row_position() else {
        return Err(Error::InvalidMatrix("no zero row; normalize first".into()));
    };
    let mut rows = m.rows.clone();
    rows.remove(pos);
    let out = DiffMatrix::new(m.group.clone(), rows)?;
    if !verify_hdm(&out)?.passed {
        return Err(Error::Verification("deleting the zero row did not leave an HDM".into()));
    }
    Ok(out)
}

impl fmt::Display for DmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.homogeneous_check { "homogeneous difference matrix" } else { "difference matrix" };
        writeln!(
            f,
            "{}: ({},{},1)-{kind}",
            if self.passed { "PASS" } else { "FAIL" },
            self.v,
            self.k
        )?;
        if self.wrong_width {
            writeln!(f, "  column count differs from the group order {}", self.v)?;
        }
        for (i, j) in &self.bad_row_pairs {
            writeln!(f, "  rows {i} and {j}: difference is not a permutation")?;
        }
        for i in &self.bad_rows {
            writeln!(f, "  row {i} is not a permutation")?;
        }
        Ok(())
    }
}
