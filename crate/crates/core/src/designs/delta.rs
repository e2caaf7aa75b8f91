//! The difference multiset of a family, counted exhaustively.
//!
//! Counts live in a dense vector indexed by canonical element index. Large
//! families are split into (block, row range) tasks counted in parallel;
//! the partial count vectors are summed in task order.

use std::ops::Range;

use rayon::prelude::*;

use super::family::Family;
use crate::algebra::{GroupDescriptor, GroupElement};
use crate::error::Result;

/// Ordered pairs below which counting stays on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 18;

/// `counts(g)` = number of ordered pairs `(x, y)`, `x != y`, in a common
/// block with `x - y = g`. The count at zero is always 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffMultiset {
    group: GroupDescriptor,
    counts: Vec<u64>,
}

impl DiffMultiset {
    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn count(&self, g: &GroupElement) -> u64 {
        self.counts[self.group.index_of(g) as usize]
    }

    /// Counts by canonical index.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(element, count)` over the nonzero elements, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (GroupElement, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (self.group.element_at(i as u64), c))
    }

    /// Common count of every nonzero element, if there is one.
    pub fn uniform_count(&self) -> Option<u64> {
        let mut it = self.counts.iter().skip(1);
        let first = *it.next()?;
        it.all(|&c| c == first).then_some(first)
    }
}

pub fn delta_multiset(f: &Family) -> Result<DiffMultiset> {
    let group = f.group();
    group.ensure_within_cap()?;
    let counts = count_differences(group, &f.index_blocks());
    Ok(DiffMultiset { group: group.clone(), counts })
}

/// A block as flattened digit vectors, `width` digits per element.
struct Digits {
    width: usize,
    data: Vec<u64>,
}

impl Digits {
    fn new(group: &GroupDescriptor, block: &[u64]) -> Self {
        let width = group.radices().len();
        let data = block.iter().flat_map(|&x| group.digits(&group.element_at(x))).collect();
        Digits { width, data }
    }

    fn len(&self) -> usize {
        self.data.len() / self.width
    }

    fn get(&self, i: usize) -> &[u64] {
        &self.data[i * self.width..(i + 1) * self.width]
    }
}

/// Adds the differences `x - y` for rows `x` in `rows` and every `y != x`.
fn count_rows(group: &GroupDescriptor, block: &Digits, rows: Range<usize>, counts: &mut [u64]) {
    let radices = group.radices();
    if let [r] = radices {
        let (r, xs) = (*r, &block.data);
        for i in rows {
            let x = xs[i];
            for (j, &y) in xs.iter().enumerate() {
                if i != j {
                    counts[(if x >= y { x - y } else { x + r - y }) as usize] += 1;
                }
            }
        }
        return;
    }
    for i in rows {
        let x = block.get(i);
        for j in 0..block.len() {
            if i == j {
                continue;
            }
            let mut idx = 0;
            for ((&a, &b), &r) in x.iter().zip(block.get(j)).zip(radices) {
                idx = idx * r + if a >= b { a - b } else { a + r - b };
            }
            counts[idx as usize] += 1;
        }
    }
}

pub(crate) fn count_differences(group: &GroupDescriptor, blocks: &[Vec<u64>]) -> Vec<u64> {
    let v = group.order() as usize;
    let digits: Vec<Digits> = blocks.iter().map(|b| Digits::new(group, b)).collect();
    let pairs: u64 = blocks.iter().map(|b| (b.len() * b.len()) as u64).sum();
    if pairs < PARALLEL_THRESHOLD {
        let mut counts = vec![0u64; v];
        for d in &digits {
            count_rows(group, d, 0..d.len(), &mut counts);
        }
        return counts;
    }
    // split into (block, row range) tasks of roughly equal pair counts
    let target = (pairs / (8 * rayon::current_num_threads() as u64)).max(1 << 14);
    let mut tasks = Vec::new();
    for (b, d) in digits.iter().enumerate() {
        let n = d.len();
        let rows_per_task = ((target / n.max(1) as u64) as usize).max(1);
        let mut start = 0;
        while start < n {
            let end = (start + rows_per_task).min(n);
            tasks.push((b, start..end));
            start = end;
        }
    }
    let partials: Vec<Vec<u64>> = tasks
        .par_chunks(tasks.len().div_ceil(rayon::current_num_threads()).max(1))
        .map(|chunk| {
            let mut counts = vec![0u64; v];
            for (b, rows) in chunk {
                count_rows(group, &digits[*b], rows.clone(), &mut counts);
            }
            counts
        })
        .collect();
    let mut counts = vec![0u64; v];
    for part in partials {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    counts
}
