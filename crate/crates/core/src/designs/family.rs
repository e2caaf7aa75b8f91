use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

/// A list of blocks in a finite abelian group. Blocks are sets: stored
/// sorted, without repetition, and never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    group: GroupDescriptor,
    blocks: Vec<Vec<GroupElement>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Plain,
    Disjoint,
    Partitioned,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Plain => "plain",
            FamilyKind::Disjoint => "disjoint",
            FamilyKind::Partitioned => "partitioned",
        })
    }
}

impl Family {
    pub fn new(group: GroupDescriptor, blocks: Vec<Vec<GroupElement>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidFamily(format!("block {i} is empty")));
            }
            for x in &block {
                group.check(x)?;
            }
            block.sort();
            if let Some(w) = block.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidFamily(format!("block {i} repeats {}", w[0])));
            }
            sorted.push(block);
        }
        Ok(Family { group, blocks: sorted })
    }

    /// A one-block family.
    pub fn single(group: GroupDescriptor, block: Vec<GroupElement>) -> Result<Self> {
        Self::new(group, vec![block])
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn blocks(&self) -> &[Vec<GroupElement>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The block-size multiset `K` as `size -> multiplicity`.
    pub fn block_sizes(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry(b.len()).or_insert(0) += 1;
        }
        out
    }

    pub fn uniform_block_size(&self) -> Option<usize> {
        let sizes = self.block_sizes();
        match sizes.len() {
            1 => sizes.keys().next().copied(),
            _ => None,
        }
    }

    /// Blockwise negation `{-B : B in F}`.
    pub fn negated(&self) -> Family {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<_> = b.iter().map(|x| self.group.neg(x)).collect();
                nb.sort();
                nb
            })
            .collect();
        Family { group: self.group.clone(), blocks }
    }

    /// Blocks as canonical indices.
    pub(crate) fn index_blocks(&self) -> Vec<Vec<u64>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|x| self.group.index_of(x)).collect())
            .collect()
    }

    /// How many blocks contain each element, by canonical index.
    fn coverage(&self) -> Result<Vec<u32>> {
        self.group.ensure_within_cap()?;
        let mut cover = vec![0u32; self.group.order() as usize];
        for b in self.index_blocks() {
            for x in b {
                cover[x as usize] += 1;
            }
        }
        Ok(cover)
    }

    /// Elements lying in no block, in canonical order.
    pub fn uncovered(&self) -> Result<Vec<GroupElement>> {
        Ok(self
            .coverage()?
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| self.group.element_at(i as u64))
            .collect())
    }

    /// First pair of intersecting blocks, if any.
    pub fn first_overlap(&self) -> Result<Option<(usize, usize)>> {
        self.group.ensure_within_cap()?;
        let mut owner = vec![usize::MAX; self.group.order() as usize];
        for (i, b) in self.index_blocks().iter().enumerate() {
            for &x in b {
                let o = &mut owner[x as usize];
                if *o != usize::MAX {
                    return Ok(Some((*o, i)));
                }
                *o = i;
            }
        }
        Ok(None)
    }
}

/// Plain, disjoint (pairwise disjoint blocks) or partitioned (disjoint and
/// covering the group).
pub fn classify_family(f: &Family) -> Result<FamilyKind> {
    if f.first_overlap()?.is_some() {
        return Ok(FamilyKind::Plain);
    }
    if f.uncovered()?.is_empty() {
        Ok(FamilyKind::Partitioned)
    } else {
        Ok(FamilyKind::Disjoint)
    }
}

/// Adds a singleton `{g}` for every element not covered by a block.
pub fn extend_to_pdf(f: &Family) -> Result<Family> {
    if let Some((i, j)) = f.first_overlap()? {
        return Err(Error::NotDisjoint(i, j));
    }
    let mut blocks = f.blocks.clone();
    blocks.extend(f.uncovered()?.into_iter().map(|g| vec![g]));
    Ok(Family { group: f.group.clone(), blocks })
}
