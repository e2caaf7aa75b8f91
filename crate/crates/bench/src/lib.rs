//! Fixtures shared by the benchmarks.

use diffam::constructions::singer_ds;
use diffam::{Family, GroupDescriptor};

/// The Singer set of PG(3, 4) doubled into `Z_170`, a 42-element block.
pub fn doubled_singer() -> Family {
    let s = singer_ds(4, 4).expect("Singer set");
    let g = GroupDescriptor::cyclic(170).expect("Z_170");
    let block = s
        .set
        .iter()
        .flat_map(|x| {
            let r = s.group.index_of(x);
            [r, r + 85]
        })
        .map(|r| g.elem(&[r]).expect("residue"))
        .collect();
    Family::new(g, vec![block]).expect("family")
}

/// A single block of `size` quadratic residues in `Z_n`, large enough to
/// exercise the parallel counting path.
pub fn wide_block(n: u64, size: u64) -> Family {
    let g = GroupDescriptor::cyclic(n).expect("cyclic group");
    let mut xs: Vec<u64> = (1..=size).map(|i| i * i % n).collect();
    xs.sort_unstable();
    xs.dedup();
    let block = xs.into_iter().map(|x| g.elem(&[x]).expect("residue")).collect();
    Family::new(g, vec![block]).expect("family")
}
