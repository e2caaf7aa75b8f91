//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use diffam::admissibility::{dds_counting_identity, ds_admissible, proportional_pair_admissible};
use diffam::algebra::{unit_subgroup_of_order, AutomorphismGroup, GroupAction};
use diffam::arith::{factorize, mod_pow};
use diffam::constructions::{
    dds_from_ds, furino_ddf, orbit_ddf, orbit_ddf_split, result1_ddf, result3star_dds, singer_ds, FurinoTarget,
};
use diffam::designs::{delta_multiset, verify_dds, verify_df, verify_ds};
use diffam::{build_field, build_ring, DdsParams, DsParams, Error, Family, GroupDescriptor, GroupElement};
use diffam_cli::DesignFile;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn diffam(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_diffam")).args(args).output().expect("spawn diffam");
    let mut text = String::from_utf8_lossy(&out.stdout).into_owned();
    text.push_str(&String::from_utf8_lossy(&out.stderr));
    (out.status.code().unwrap_or(-1), text)
}

/// Difference counts computed on raw digit vectors, componentwise modulo the radices.
fn raw_counts(g: &GroupDescriptor, blocks: &[Vec<GroupElement>]) -> BTreeMap<Vec<u64>, u64> {
    let radices = g.radices();
    let mut out = BTreeMap::new();
    for b in blocks {
        let digits: Vec<Vec<u64>> = b.iter().map(|x| g.digits(x)).collect();
        for (i, x) in digits.iter().enumerate() {
            for (j, y) in digits.iter().enumerate() {
                if i != j {
                    let d: Vec<u64> = x.iter().zip(y).zip(radices).map(|((a, b), r)| (a + r - b) % r).collect();
                    *out.entry(d).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

fn raw_is_df(g: &GroupDescriptor, blocks: &[Vec<GroupElement>], lambda: u64) -> bool {
    let counts = raw_counts(g, blocks);
    if counts.keys().any(|d| d.iter().all(|&x| x == 0)) {
        return false;
    }
    counts.len() as u64 == g.order() - 1 && counts.values().all(|&c| c == lambda)
}

fn load(path: &Path) -> (DesignFile, GroupDescriptor, Vec<Vec<GroupElement>>) {
    let file = DesignFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let g = diffam_cli::format::group_from_spec(&file.group).unwrap();
    let blocks = file
        .blocks
        .as_ref()
        .unwrap()
        .iter()
        .map(|b| diffam_cli::format::elements_from_spec(&g, b).unwrap())
        .collect();
    (file, g, blocks)
}

fn within(start: Instant, limit_secs: u64) -> Check {
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(limit_secs), "took {t:?}, limit {limit_secs} s");
    Ok(())
}

fn criterion1() -> Check {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r1729.json");
    let (code, text) =
        diffam(&["construct", "cyclotomic-half", "--factors", "7,13,19", "--k", "3", "--out", out.to_str().unwrap()]);
    ensure!(code == 0, "construct failed: {text}");
    let (file, g, blocks) = load(&out);
    ensure!(file.params == [1729, 3, 1], "declared {:?}", file.params);
    ensure!(blocks.len() == 288, "{} blocks", blocks.len());
    ensure!(blocks.iter().all(|b| b.len() == 3), "block of size other than 3");
    let counts = raw_counts(&g, &blocks);
    ensure!(counts.len() == 1728, "{} distinct differences", counts.len());
    ensure!(counts.values().all(|&c| c == 1), "some difference repeats");
    let (code, text) = diffam(&["verify", out.to_str().unwrap()]);
    ensure!(code == 0, "verify: {text}");

    let omegas: Vec<String> = [7, 13, 19]
        .iter()
        .map(|&p| build_field(p, 1).unwrap().primitive_element().to_string())
        .collect();
    ensure!(omegas == ["3", "2", "2"], "primitive elements {omegas:?}");
    let r = build_ring(&[7, 13, 19]).unwrap();
    let a = unit_subgroup_of_order(&r, 3).unwrap();
    let members: Vec<String> = a.members().iter().map(|x| x.to_string()).collect();
    ensure!(members == ["(1,1,1)", "(2,3,7)", "(4,9,11)"], "A = {members:?}");
    within(start, 5)
}

/// Field orders `q` (prime powers) with `q = 1 mod k`, as ring factorizations of v <= limit.
fn ring_orders(limit: u64, k: u64) -> Vec<Vec<u64>> {
    (2..=limit)
        .filter_map(|v| {
            let qs: Vec<u64> = factorize(v).iter().map(|&(p, e)| p.pow(e)).collect();
            qs.iter().all(|q| q % k == 1).then_some(qs)
        })
        .collect()
}

fn criterion2() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for k in [3u64, 5] {
        for qs in ring_orders(2000, k) {
            let r = build_ring(&qs).unwrap();
            let v = r.order();
            let f = furino_ddf(&FurinoTarget::Ring(r.clone()), k, false).map_err(|e| format!("v={v} k={k}: {e}"))?;
            ensure!(f.len() as u64 == (v - 1) / k, "v={v} k={k}: {} blocks", f.len());
            ensure!(verify_df(&f, k - 1).unwrap().passed, "v={v} k={k} fails verify_df");
            ensure!(raw_is_df(f.group(), f.blocks(), k - 1), "v={v} k={k} fails the raw count");
            checked += 1;
            if (v * k) % 2 == 1 {
                let h = furino_ddf(&FurinoTarget::Ring(r), k, true).map_err(|e| format!("half v={v} k={k}: {e}"))?;
                ensure!(verify_df(&h, (k - 1) / 2).unwrap().passed, "half v={v} k={k} fails");
                ensure!(raw_is_df(h.group(), h.blocks(), (k - 1) / 2), "half v={v} k={k} fails the raw count");
                checked += 1;
            }
        }
    }
    ensure!(checked > 100, "only {checked} designs");
    within(start, 30)
}

/// Distinct cyclic multiplier groups of order 2..=10 on `Z_n`, by generator.
fn multiplier_groups(n: u64) -> Vec<(u64, u64)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for u in 2..n {
        if num_gcd(u, n) != 1 {
            continue;
        }
        let Some(ord) = (1..=10).find(|&j| mod_pow(u, j, n) == 1) else { continue };
        if ord < 2 {
            continue;
        }
        let members: BTreeSet<u64> = (0..ord).map(|j| mod_pow(u, j, n)).collect();
        if seen.insert(members) {
            out.push((u, ord));
        }
    }
    out
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn criterion3() -> Check {
    let mut semiregular = 0;
    let mut rejected = 0;
    for n in 3..=500u64 {
        let g = GroupDescriptor::cyclic(n).unwrap();
        for (u, ord) in multiplier_groups(n) {
            let action = AutomorphismGroup::multipliers(&g, u).unwrap();
            ensure!(action.size() as u64 == ord, "n={n} u={u}: size {}", action.size());
            // x -> u^j x fixes some x != 0 iff u^j - 1 is a zero divisor mod n
            let oracle = (1..ord).all(|j| num_gcd((mod_pow(u, j, n) + n - 1) % n, n) == 1);
            match orbit_ddf(&g, &action) {
                Ok(f) => {
                    ensure!(oracle, "n={n} u={u} accepted but not semiregular");
                    ensure!(f.len() as u64 == (n - 1) / ord, "n={n} u={u}: {} blocks", f.len());
                    ensure!(raw_is_df(&g, f.blocks(), ord - 1), "n={n} u={u}: not a DF");
                    if (n * ord) % 2 == 1 {
                        let (x, y) = orbit_ddf_split(&g, &action).map_err(|e| format!("split n={n} u={u}: {e}"))?;
                        ensure!(raw_is_df(&g, x.blocks(), (ord - 1) / 2), "n={n} u={u}: first half");
                        ensure!(raw_is_df(&g, y.blocks(), (ord - 1) / 2), "n={n} u={u}: second half");
                    }
                    semiregular += 1;
                }
                Err(Error::NotSemiregular { member, witness }) => {
                    ensure!(!oracle, "n={n} u={u} rejected but semiregular");
                    ensure!(witness != g.zero(), "zero witness");
                    ensure!(action.apply(member, &witness) == witness, "n={n} u={u}: witness {witness} not fixed");
                    rejected += 1;
                }
                Err(e) => return Err(format!("n={n} u={u}: {e}")),
            }
        }
    }
    ensure!(semiregular > 0 && rejected > 0, "{semiregular} semiregular, {rejected} rejected");
    Ok(())
}

fn criterion4() -> Check {
    let start = Instant::now();
    for (k, factors) in [(3u64, vec![7u64]), (3, vec![13]), (3, vec![7, 13]), (4, vec![13]), (4, vec![25])] {
        let r = build_ring(&factors).unwrap();
        let v = r.order();
        let f = result1_ddf(k, &r).map_err(|e| format!("k={k} v={v}: {e}"))?;
        ensure!(f.group().order() == v * (k + 1), "k={k} v={v}: group order {}", f.group().order());
        ensure!(f.blocks().iter().all(|b| b.len() as u64 == k), "k={k} v={v}: block sizes");
        ensure!(raw_is_df(f.group(), f.blocks(), k - 1), "k={k} v={v}: not a ({},{k},{})-DF", v * (k + 1), k - 1);
        let covered: BTreeSet<&GroupElement> = f.blocks().iter().flatten().collect();
        let total: usize = f.blocks().iter().map(Vec::len).sum();
        ensure!(covered.len() == total, "k={k} v={v}: blocks overlap");
        ensure!(f.group().order() - total as u64 == 1, "k={k} v={v}: {} uncovered", f.group().order() - total as u64);
    }
    let z4z7 = result1_ddf(3, &build_ring(&[7]).unwrap()).unwrap();
    ensure!(z4z7.group().to_string() == "Z_4 x GF(7)", "group {}", z4z7.group());
    within(start, 10)
}

fn criterion5() -> Check {
    let start = Instant::now();
    let s = singer_ds(4, 4).map_err(|e| e.to_string())?;
    ensure!(s.params == DsParams::new(85, 21, 5), "singer params {}", s.params);
    ensure!(verify_ds(&s.set, &s.group, s.params).unwrap().passed, "singer fails verify_ds");
    ensure!(raw_is_df(&s.group, std::slice::from_ref(&s.set), 5), "singer fails the raw count");

    let d = dds_from_ds(&s, 2).map_err(|e| e.to_string())?;
    ensure!(d.params == DdsParams::new(85, 2, 42, 42, 10), "lift params {}", d.params);
    ensure!(d.group.to_string() == "Z_85 x Z_2", "lift group {}", d.group);
    ensure!(verify_dds(&d.set, &d.group, &d.subgroup, d.params).unwrap().passed, "lift fails verify_dds");
    for (x, c) in raw_counts(&d.group, std::slice::from_ref(&d.set)) {
        let expected = if x[0] == 0 { 42 } else { 10 };
        ensure!(c == expected, "count({x:?}) = {c}");
    }

    let t = result3star_dds(3, 3, 2, 2).map_err(|e| e.to_string())?;
    ensure!(t.params == DdsParams::new(13, 2, 8, 8, 2), "transported params {}", t.params);
    ensure!(t.group.to_string() == "Z_13 x Z_2", "transported group {}", t.group);
    ensure!(verify_dds(&t.set, &t.group, &t.subgroup, t.params).unwrap().passed, "transported fails verify_dds");
    within(start, 5)
}

fn doubled_singer() -> (GroupDescriptor, Vec<GroupElement>) {
    let s = singer_ds(4, 4).unwrap();
    let g = GroupDescriptor::cyclic(170).unwrap();
    let set = s
        .set
        .iter()
        .flat_map(|x| {
            let r = s.group.index_of(x);
            [r, r + 85]
        })
        .map(|r| g.elem(&[r]).unwrap())
        .collect();
    (g, set)
}

fn criterion6() -> Check {
    let (code, text) = diffam(&["check", "ds", "170", "42", "10"]);
    ensure!(code == 1, "check ds exit {code}: {text}");
    ensure!(text.contains("1690 ≠ 1722"), "check ds output: {text}");

    let mut sweeps = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let mut m = 3u32;
        while q.pow(m) <= 4096 {
            for e in (1..q).filter(|e| (q - 1) % e == 0) {
                if num_gcd(m as u64, e) != 1 {
                    continue;
                }
                for h in 1..=e {
                    let args = [q.to_string(), m.to_string(), e.to_string(), h.to_string()];
                    let mut full = vec!["check", "result3"];
                    full.extend(args.iter().map(String::as_str));
                    let (code, text) = diffam(&full);
                    let diagonal = e == q - 1 && h == 1;
                    let expect = if diagonal { 0 } else { 1 };
                    ensure!(code == expect, "result3 {args:?}: exit {code}\n{text}");
                    let word = if diagonal { "valid (Singer)" } else { "refuted" };
                    ensure!(text.starts_with(word), "result3 {args:?}: {text}");
                    sweeps += 1;
                }
            }
            m += 1;
        }
    }
    ensure!(sweeps > 50, "only {sweeps} sweep points");

    let (g, set) = doubled_singer();
    let report = verify_ds(&set, &g, DsParams::new(170, 42, 10)).unwrap();
    ensure!(!report.passed, "doubled set passes as a DS");
    let involution = g.elem(&[85]).unwrap();
    ensure!(
        report.deviations == BTreeMap::from([(involution.clone(), 42)]),
        "deviations {:?}",
        report.deviations
    );
    let delta = delta_multiset(&Family::single(g.clone(), set).unwrap()).unwrap();
    for (x, c) in delta.iter() {
        ensure!(c == if x == involution { 42 } else { 10 }, "count({x}) = {c}");
    }
    Ok(())
}

/// A verified design together with the predicate that re-verifies it.
enum Design {
    Ds(GroupDescriptor, Vec<GroupElement>, DsParams),
    Dds(GroupDescriptor, Vec<GroupElement>, Vec<GroupElement>, DdsParams),
    Ddf(Family, u64),
}

impl Design {
    fn passes(&self) -> bool {
        match self {
            Design::Ds(g, s, p) => verify_ds(s, g, *p).unwrap().passed,
            Design::Dds(g, s, n, p) => verify_dds(s, g, n, *p).unwrap().passed,
            Design::Ddf(f, lambda) => verify_df(f, *lambda).unwrap().passed,
        }
    }

    fn group(&self) -> &GroupDescriptor {
        match self {
            Design::Ds(g, ..) | Design::Dds(g, ..) => g,
            Design::Ddf(f, _) => f.group(),
        }
    }

    fn blocks(&self) -> Vec<Vec<GroupElement>> {
        match self {
            Design::Ds(_, s, _) | Design::Dds(_, s, ..) => vec![s.clone()],
            Design::Ddf(f, _) => f.blocks().to_vec(),
        }
    }

    fn with_blocks(&self, blocks: Vec<Vec<GroupElement>>) -> Design {
        match self {
            Design::Ds(g, _, p) => Design::Ds(g.clone(), blocks[0].clone(), *p),
            Design::Dds(g, _, n, p) => Design::Dds(g.clone(), blocks[0].clone(), n.clone(), *p),
            Design::Ddf(f, l) => Design::Ddf(Family::new(f.group().clone(), blocks).unwrap(), *l),
        }
    }
}

fn criterion7() -> Check {
    let mut designs = Vec::new();
    for (q, m) in [(2u64, 3u32), (3, 3), (4, 4)] {
        let s = singer_ds(q, m).unwrap();
        designs.push(Design::Ds(s.group.clone(), s.set.clone(), s.params));
        let d = dds_from_ds(&s, 2).unwrap();
        designs.push(Design::Dds(d.group, d.set, d.subgroup, d.params));
    }
    for (q, d, e, h) in [(4u64, 4u32, 3u64, 2u64), (3, 3, 2, 2), (2, 3, 1, 1)] {
        let t = result3star_dds(q, d, e, h).unwrap();
        designs.push(Design::Dds(t.group, t.set, t.subgroup, t.params));
    }
    let cyc = diffam::constructions::cyclotomic_half_ddf(
        &build_ring(&[7, 13, 19]).unwrap(),
        3,
        &Default::default(),
    )
    .unwrap();
    designs.push(Design::Ddf(cyc, 1));
    designs.push(Design::Ddf(result1_ddf(3, &build_ring(&[7]).unwrap()).unwrap(), 2));
    designs.push(Design::Ddf(furino_ddf(&FurinoTarget::Ring(build_ring(&[7, 13]).unwrap()), 3, false).unwrap(), 2));

    for d in &designs {
        ensure!(d.passes(), "a base design fails verification");
        match d {
            Design::Ds(_, _, p) => ensure!(ds_admissible(*p).passed, "{p} passes verify_ds but not ds_admissible"),
            Design::Dds(_, _, _, p) => {
                ensure!(dds_counting_identity(*p).passed, "{p} passes verify_dds but not the counting identity")
            }
            Design::Ddf(..) => {}
        }
    }

    let mut killed = 0;
    const MUTANTS: usize = 50;
    for j in 0..MUTANTS {
        let design = &designs[j % designs.len()];
        let g = design.group();
        let mut blocks = design.blocks();
        let b = (j * 7919) % blocks.len();
        let e = (j * 31) % blocks[b].len();
        let old = g.index_of(&blocks[b][e]);
        let step = 1 + (j as u64 * 104_729) % (g.order() - 1);
        let mut new = (old + step) % g.order();
        while blocks[b].contains(&g.element_at(new)) {
            new = (new + 1) % g.order();
        }
        blocks[b][e] = g.element_at(new);
        if !design.with_blocks(blocks).passes() {
            killed += 1;
        }
    }
    ensure!(killed == MUTANTS, "{killed}/{MUTANTS} mutants killed");
    Ok(())
}

fn criterion8() -> Check {
    let mut triples = 0;
    for v in 2..=200u64 {
        for k in 1..v {
            if (k * (k - 1)) % (v - 1) != 0 {
                continue;
            }
            let p = DsParams::new(v, k, k * (k - 1) / (v - 1));
            ensure!(ds_admissible(p).passed, "{p} should be admissible");
            triples += 1;
            for mu in 2..=5 {
                let scaled = DsParams::new(v * mu, k * mu, p.lambda * mu);
                ensure!(!ds_admissible(scaled).passed, "{scaled} is admissible");
                let verdict = proportional_pair_admissible(p, mu).map_err(|e| e.to_string())?;
                ensure!(!verdict.passed && verdict.residual == ((v - k) * (mu - 1)) as i128, "{p} x {mu}");
            }
        }
    }
    ensure!(triples > 200, "only {triples} triples");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1729 cyclotomic DDF", criterion1),
        ("Furino suite", criterion2),
        ("orbit suite on cyclic groups", criterion3),
        ("product construction", criterion4),
        ("Singer and divisible difference sets", criterion5),
        ("refutation of the scaled triple", criterion6),
        ("counting necessity and mutation kill", criterion7),
        ("proportionality sweep", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({t:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({t:.2} s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
