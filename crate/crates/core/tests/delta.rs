use std::collections::BTreeMap;

use diffam::algebra::{orbits, unit_subgroup_of_order};
use diffam::designs::{delta_multiset, extend_to_pdf, verify_df};
use diffam::{build_field, build_ring, Family, GroupDescriptor, GroupElement, GroupFactor};
use proptest::prelude::*;

/// Differences `x - y` over ordered pairs of distinct elements, counted naively.
fn naive_delta(g: &GroupDescriptor, blocks: &[Vec<GroupElement>]) -> BTreeMap<GroupElement, u64> {
    let mut out = BTreeMap::new();
    for b in blocks {
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i != j {
                    *out.entry(g.sub(x, y)).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

fn group_strategy() -> impl Strategy<Value = GroupDescriptor> {
    prop_oneof![
        (2u64..=60).prop_map(|n| GroupDescriptor::cyclic(n).unwrap()),
        (2u64..=12, 2u64..=12).prop_map(|(a, b)| GroupDescriptor::cyclic_product(&[a, b]).unwrap()),
        prop_oneof![Just((2u64, 3u32)), Just((3, 2)), Just((5, 2)), Just((2, 4))].prop_map(|(p, n)| {
            GroupDescriptor::new(vec![GroupFactor::Field(build_field(p, n).unwrap())]).unwrap()
        }),
    ]
}

fn family_strategy() -> impl Strategy<Value = Family> {
    group_strategy().prop_flat_map(|g| {
        let v = g.order();
        let block = proptest::collection::btree_set(0..v, 1..=(v as usize).min(6));
        proptest::collection::vec(block, 1..5).prop_map(move |bs| {
            let blocks = bs
                .into_iter()
                .map(|b| b.into_iter().map(|i| g.element_at(i)).collect())
                .collect();
            Family::new(g.clone(), blocks).unwrap()
        })
    })
}

fn disjoint_family_strategy() -> impl Strategy<Value = Family> {
    group_strategy().prop_flat_map(|g| {
        let v = g.order();
        (Just(g), proptest::collection::vec(0u64..4, v as usize)).prop_map(|(g, labels)| {
            let mut blocks: Vec<Vec<GroupElement>> = vec![Vec::new(); 3];
            for (i, l) in labels.into_iter().enumerate() {
                if l < 3 {
                    blocks[l as usize].push(g.element_at(i as u64));
                }
            }
            blocks.retain(|b| !b.is_empty());
            if blocks.is_empty() {
                blocks.push(vec![g.zero()]);
            }
            Family::new(g, blocks).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn matches_naive_count(f in family_strategy()) {
        let d = delta_multiset(&f).unwrap();
        let naive = naive_delta(f.group(), f.blocks());
        let fast: BTreeMap<_, _> = d.iter().filter(|&(_, c)| c > 0).collect();
        prop_assert_eq!(fast, naive);
    }

    #[test]
    fn conservation(f in family_strategy()) {
        let d = delta_multiset(&f).unwrap();
        let expected: u64 = f.blocks().iter().map(|b| (b.len() * (b.len() - 1)) as u64).sum();
        prop_assert_eq!(d.total(), expected);
        prop_assert_eq!(d.count(&f.group().zero()), 0);
    }

    #[test]
    fn translation_invariance(f in family_strategy(), shift in 0u64..1000) {
        let g = f.group().clone();
        let t = g.element_at(shift % g.order());
        let moved: Vec<Vec<_>> = f.blocks().iter().map(|b| b.iter().map(|x| g.add(x, &t)).collect()).collect();
        let moved = Family::new(g.clone(), moved).unwrap();
        prop_assert_eq!(delta_multiset(&f).unwrap(), delta_multiset(&moved).unwrap());
    }

    #[test]
    fn pdf_extension_keeps_differences(f in disjoint_family_strategy()) {
        let pdf = extend_to_pdf(&f).unwrap();
        prop_assert_eq!(delta_multiset(&f).unwrap(), delta_multiset(&pdf).unwrap());
        let covered: usize = pdf.blocks().iter().map(Vec::len).sum();
        prop_assert_eq!(covered as u64, f.group().order());
    }
}

#[test]
fn translation_invariance_exhaustive() {
    for v in 2..=200u64 {
        let g = GroupDescriptor::cyclic(v).unwrap();
        let block: Vec<_> = [0, 1, 3].iter().filter(|&&x| x < v).map(|&x| g.elem(&[x]).unwrap()).collect();
        let base = delta_multiset(&Family::single(g.clone(), block.clone()).unwrap()).unwrap();
        for s in 0..v {
            let t = g.elem(&[s]).unwrap();
            let moved = block.iter().map(|x| g.add(x, &t)).collect();
            let d = delta_multiset(&Family::single(g.clone(), moved).unwrap()).unwrap();
            assert_eq!(d, base, "v = {v}, shift = {s}");
        }
    }
}

#[test]
fn unit_orbits_partition_nonzero_elements() {
    for factors in [vec![7u64], vec![13], vec![7, 13], vec![19], vec![4, 7], vec![16]] {
        let r = build_ring(&factors).unwrap();
        let g = r.additive_group();
        let action = unit_subgroup_of_order(&r, 3).unwrap();
        let orbs = orbits(&g, &action).unwrap();
        let mut seen: Vec<_> = orbs.iter().flatten().cloned().collect();
        seen.sort();
        let expected: Vec<_> = g.elements().filter(|x| *x != g.zero()).collect();
        assert_eq!(seen, expected, "{factors:?}");
    }
}

#[test]
fn large_family_through_parallel_path() {
    // a single block of 1000 elements has 999000 ordered pairs
    let g = GroupDescriptor::cyclic(5000).unwrap();
    let block: Vec<_> = (0..1000).map(|i| g.elem(&[(i * i + 3 * i) % 5000]).unwrap()).collect();
    let mut block = block;
    block.sort();
    block.dedup();
    let f = Family::single(g.clone(), block.clone()).unwrap();
    let fast: BTreeMap<_, _> = delta_multiset(&f).unwrap().iter().filter(|&(_, c)| c > 0).collect();
    assert_eq!(fast, naive_delta(&g, &[block]));
    assert!(!verify_df(&f, 1).unwrap().passed);
}
