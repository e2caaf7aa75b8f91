//! The three subcommands. Each returns its report text and an exit code;
//! errors are left to the caller, which maps them to exit code 2.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, ValueEnum};
use diffam::admissibility::{
    dds_counting_identity, ds_admissible, proportional_pair_admissible, refute_result3, Result3Outcome,
};
use diffam::algebra::{unit_subgroup_of_order, AutomorphismGroup, GroupAction};
use diffam::constructions::{
    cyclotomic_half_ddf, dds_from_ds, furino_ddf, orbit_ddf, orbit_ddf_split, product_ddf, result1_ddf,
    result3star_dds, semiregular_multiplier, singer_ds, trivial_ds, units_hdm, DifferenceSet, DivisibleDesign,
    FurinoTarget, SigmaChoice,
};
use diffam::designs::{classify_family, verify_dds, verify_df, verify_dm, verify_hdm, FamilyKind};
use diffam::{build_ring, DdsParams, DiffMatrix, DsParams, Family, GroupDescriptor, GroupFactor, RingDescriptor};

use crate::format::{elements_from_spec, elements_to_spec, group_from_spec, DesignFile, Kind};

/// Text for standard output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub text: String,
}

impl Outcome {
    fn verdict(passed: bool, text: String) -> Self {
        Outcome { code: if passed { 0 } else { 1 }, text }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Orbit,
    OrbitSplit,
    Furino,
    CyclotomicHalf,
    UnitsHdm,
    Product,
    Result1,
    TrivialDs,
    Singer,
    DdsProduct,
    Result3star,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConstructArgs {
    /// Field orders q_1,...,q_t of the ring GF(q_1) x ... x GF(q_t).
    #[arg(long, value_delimiter = ',')]
    pub factors: Option<Vec<u64>>,
    /// Work in Z_v instead of a ring (orbit, orbit-split, furino).
    #[arg(long)]
    pub cyclic: Option<u64>,
    /// Unit generating the multiplier group on Z_v (orbit, orbit-split).
    #[arg(long)]
    pub multiplier: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub e: Option<u64>,
    #[arg(long)]
    pub h: Option<u64>,
    /// Build the (v,k,(k-1)/2) half family (furino).
    #[arg(long)]
    pub half: bool,
    /// Which half to emit (orbit-split).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub part: u8,
    /// Per-class override of the replaced factor, as class:factor pairs, 1-based.
    #[arg(long)]
    pub sigma_choice: Option<String>,
    /// DDF file in G (product).
    #[arg(long)]
    pub ddf_g: Option<PathBuf>,
    /// DDF file in H (product).
    #[arg(long)]
    pub ddf_h: Option<PathBuf>,
    /// HDM file over H (product).
    #[arg(long)]
    pub hdm: Option<PathBuf>,
    /// Difference-set file to lift (dds-product); defaults to Singer(q, m).
    #[arg(long)]
    pub ds: Option<PathBuf>,
    /// Output path; the design is printed when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T> {
    value.with_context(|| format!("--{flag} is required"))
}

fn ring(a: &ConstructArgs) -> Result<RingDescriptor> {
    let factors = a.factors.as_ref().context("--factors is required")?;
    Ok(build_ring(factors)?)
}

/// Parses `class:factor,...` (1-based) into a 0-based choice.
pub fn parse_sigma_choice(s: &str) -> Result<SigmaChoice> {
    let mut choice = SigmaChoice::default();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (c, f) = item.split_once(':').with_context(|| format!("expected class:factor, got {item:?}"))?;
        let c: usize = c.trim().parse().with_context(|| format!("bad class index {c:?}"))?;
        let f: usize = f.trim().parse().with_context(|| format!("bad factor index {f:?}"))?;
        ensure!(c >= 1 && f >= 1, "indices are 1-based: {item:?}");
        choice.0.insert(c - 1, f - 1);
    }
    Ok(choice)
}

fn family_file(kind: Kind, f: &Family, k: u64, lambda: u64) -> DesignFile {
    DesignFile::from_blocks(kind, f.group(), vec![f.group().order(), k, lambda], f.blocks())
}

fn ds_file(d: &DifferenceSet) -> DesignFile {
    let p = d.params;
    DesignFile::from_blocks(Kind::Ds, &d.group, vec![p.v, p.k, p.lambda], std::slice::from_ref(&d.set))
}

fn dds_file(d: &DivisibleDesign) -> DesignFile {
    let p = d.params;
    let mut file = DesignFile::from_blocks(
        Kind::Dds,
        &d.group,
        vec![p.m, p.n, p.k, p.lambda1, p.lambda2],
        std::slice::from_ref(&d.set),
    );
    file.subgroup = Some(elements_to_spec(&d.subgroup));
    file
}

fn orbit_family<A: GroupAction>(g: &GroupDescriptor, action: &A, split: bool, part: u8) -> Result<DesignFile> {
    let k = action.size() as u64;
    let f = if split {
        let (first, second) = orbit_ddf_split(g, action)?;
        if part == 1 {
            first
        } else {
            second
        }
    } else {
        orbit_ddf(g, action)?
    };
    let lambda = if split { (k - 1) / 2 } else { k - 1 };
    Ok(family_file(Kind::Ddf, &f, k, lambda))
}

fn read_design(path: &Path) -> Result<DesignFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    DesignFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_family(path: &Path) -> Result<Family> {
    let file = read_design(path)?;
    let g = group_from_spec(&file.group)?;
    let blocks = file.blocks.as_ref().with_context(|| format!("{} has no blocks", path.display()))?;
    let blocks = blocks.iter().map(|b| elements_from_spec(&g, b)).collect::<Result<Vec<_>>>()?;
    Ok(Family::new(g, blocks)?)
}

fn load_matrix(path: &Path) -> Result<DiffMatrix> {
    let file = read_design(path)?;
    let g = group_from_spec(&file.group)?;
    let rows = file.rows.as_ref().with_context(|| format!("{} has no rows", path.display()))?;
    let rows = rows.iter().map(|r| elements_from_spec(&g, r)).collect::<Result<Vec<_>>>()?;
    Ok(DiffMatrix::new(g, rows)?)
}

fn load_ds(path: &Path) -> Result<DifferenceSet> {
    let file = read_design(path)?;
    ensure!(file.kind == Kind::Ds, "{} holds a {}, not a DS", path.display(), file.kind);
    let [v, k, lambda] = file.params[..] else {
        bail!("DS parameters must be (v,k,lambda)");
    };
    let g = group_from_spec(&file.group)?;
    let set = single_block(&file, &g)?;
    Ok(DifferenceSet::verified(g, set, DsParams::new(v, k, lambda))?)
}

fn single_block(file: &DesignFile, g: &GroupDescriptor) -> Result<Vec<diffam::GroupElement>> {
    match file.blocks.as_deref() {
        Some([b]) => elements_from_spec(g, b),
        _ => bail!("a {} file needs exactly one block", file.kind),
    }
}

pub fn construct(which: Construction, a: &ConstructArgs) -> Result<DesignFile> {
    Ok(match which {
        Construction::Orbit | Construction::OrbitSplit => {
            let split = which == Construction::OrbitSplit;
            if let Some(v) = a.cyclic {
                let g = GroupDescriptor::cyclic(v)?;
                let u = match (a.multiplier, a.k) {
                    (Some(u), _) => u,
                    (None, Some(k)) => semiregular_multiplier(v, k)?,
                    (None, None) => bail!("--multiplier or --k is required with --cyclic"),
                };
                let action = AutomorphismGroup::multipliers(&g, u)?;
                orbit_family(&g, &action, split, a.part)?
            } else {
                let r = ring(a)?;
                let action = unit_subgroup_of_order(&r, need(a.k, "k")?)?;
                orbit_family(&r.additive_group(), &action, split, a.part)?
            }
        }
        Construction::Furino => {
            let k = need(a.k, "k")?;
            let target = match a.cyclic {
                Some(v) => FurinoTarget::Cyclic(v),
                None => FurinoTarget::Ring(ring(a)?),
            };
            let f = furino_ddf(&target, k, a.half)?;
            family_file(Kind::Ddf, &f, k, if a.half { (k - 1) / 2 } else { k - 1 })
        }
        Construction::CyclotomicHalf => {
            let k = need(a.k, "k")?;
            let choice = match &a.sigma_choice {
                Some(s) => parse_sigma_choice(s)?,
                None => SigmaChoice::default(),
            };
            let f = cyclotomic_half_ddf(&ring(a)?, k, &choice)?;
            family_file(Kind::Ddf, &f, k, (k - 1) / 2)
        }
        Construction::UnitsHdm => {
            let k = need(a.k, "k")?;
            let m = units_hdm(&ring(a)?, k)?;
            DesignFile::from_matrix(Kind::Hdm, &m, vec![m.group().order(), k, 1])
        }
        Construction::Product => {
            let g = load_family(a.ddf_g.as_deref().context("--ddf-g is required")?)?;
            let h = load_family(a.ddf_h.as_deref().context("--ddf-h is required")?)?;
            let m = load_matrix(a.hdm.as_deref().context("--hdm is required")?)?;
            let f = product_ddf(&g, &h, &m)?;
            let k = f.uniform_block_size().context("product has mixed block sizes")? as u64;
            family_file(Kind::Ddf, &f, k, k - 1)
        }
        Construction::Result1 => {
            let k = need(a.k, "k")?;
            let f = result1_ddf(k, &ring(a)?)?;
            family_file(Kind::Ddf, &f, k, k - 1)
        }
        Construction::TrivialDs => ds_file(&trivial_ds(need(a.k, "k")?)?),
        Construction::Singer => ds_file(&singer_ds(need(a.q, "q")?, need(a.m, "m")?)?),
        Construction::DdsProduct => {
            let ds = match &a.ds {
                Some(path) => load_ds(path)?,
                None => singer_ds(need(a.q, "q")?, need(a.m, "m")?)?,
            };
            dds_file(&dds_from_ds(&ds, need(a.h, "h")?)?)
        }
        Construction::Result3star => dds_file(&result3star_dds(
            need(a.q, "q")?,
            need(a.d, "d")?,
            need(a.e, "e")?,
            need(a.h, "h")?,
        )?),
    })
}

/// One-line description of a design file's declaration.
pub fn describe(file: &DesignFile) -> String {
    let params: Vec<String> = file.params.iter().map(u64::to_string).collect();
    let count = match (&file.blocks, &file.rows) {
        (Some(b), _) if !file.kind.is_family() => format!("{} elements", b.first().map_or(0, Vec::len)),
        (Some(b), _) => format!("{} blocks", b.len()),
        (_, Some(r)) => format!("{} rows", r.len()),
        _ => String::new(),
    };
    format!("({})-{}, {count}", params.join(","), file.kind)
}

pub fn run_construct(which: Construction, a: &ConstructArgs) -> Result<Outcome> {
    let file = construct(which, a)?;
    let text = file.render()?;
    Ok(match &a.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Outcome { code: 0, text: format!("wrote {} to {}\n", describe(&file), path.display()) }
        }
        None => Outcome { code: 0, text },
    })
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Design file to check.
    pub path: PathBuf,
    /// Check as this kind instead of the declared one.
    #[arg(long, value_enum)]
    pub expect_kind: Option<Kind>,
    /// Check against these parameters instead of the declared ones.
    #[arg(long, value_delimiter = ',')]
    pub expect_params: Option<Vec<u64>>,
}

/// The subgroup of order `n` of a cyclic group.
fn cyclic_subgroup(g: &GroupDescriptor, n: u64) -> Result<Vec<diffam::GroupElement>> {
    let [GroupFactor::Cyclic(order)] = g.factors() else {
        bail!("the file has no subgroup and the group is not cyclic");
    };
    ensure!(n >= 1 && order % n == 0, "Z_{order} has no subgroup of order {n}");
    let step = order / n;
    (0..n).map(|i| Ok(g.elem(&[i * step])?)).collect()
}

pub fn verify_file(file: &DesignFile, expect_kind: Option<Kind>, expect_params: Option<&[u64]>) -> Result<Outcome> {
    let kind = expect_kind.unwrap_or(file.kind);
    let params = expect_params.unwrap_or(&file.params);
    ensure!(
        params.len() == kind.arity(),
        "a {kind} takes {} parameters, got {}",
        kind.arity(),
        params.len()
    );
    let g = group_from_spec(&file.group)?;
    g.ensure_within_cap()?;
    let mut text = String::new();
    let passed = if kind.is_family() {
        let (v, k, lambda) = (params[0], params[1], params[2]);
        let blocks = file.blocks.as_ref().context("the file has no blocks")?;
        let blocks = blocks.iter().map(|b| elements_from_spec(&g, b)).collect::<Result<Vec<_>>>()?;
        let f = Family::new(g.clone(), blocks)?;
        let report = verify_df(&f, lambda)?;
        text.push_str(&report.to_string());
        let mut ok = report.passed;
        if v != g.order() {
            text.push_str(&format!("  group order is {}, declared v = {v}\n", g.order()));
            ok = false;
        }
        let allowed = |s: usize| s as u64 == k || (kind == Kind::Pdf && s == 1);
        let bad_sizes: Vec<usize> = report.block_sizes.keys().copied().filter(|&s| !allowed(s)).collect();
        if !bad_sizes.is_empty() {
            text.push_str(&format!("  block sizes {bad_sizes:?} differ from declared k = {k}\n"));
            ok = false;
        }
        let class = classify_family(&f)?;
        let shape_ok = match kind {
            Kind::Ddf => class != FamilyKind::Plain,
            Kind::Pdf => class == FamilyKind::Partitioned,
            _ => true,
        };
        if !shape_ok {
            match f.first_overlap()? {
                Some((i, j)) => text.push_str(&format!("  blocks {i} and {j} intersect\n")),
                None => text.push_str(&format!("  {} element(s) lie in no block\n", f.uncovered()?.len())),
            }
            ok = false;
        }
        text.push_str(&format!("  structure: {}\n", format!("{class:?}").to_lowercase()));
        ok
    } else if kind == Kind::Ds {
        let set = single_block(file, &g)?;
        let report = diffam::designs::verify_ds(&set, &g, DsParams::new(params[0], params[1], params[2]))?;
        text.push_str(&report.to_string());
        report.passed
    } else if kind == Kind::Dds {
        let p = DdsParams::new(params[0], params[1], params[2], params[3], params[4]);
        let set = single_block(file, &g)?;
        let subgroup = match &file.subgroup {
            Some(s) => elements_from_spec(&g, s)?,
            None => cyclic_subgroup(&g, p.n)?,
        };
        let report = verify_dds(&set, &g, &subgroup, p)?;
        text.push_str(&report.to_string());
        report.passed
    } else {
        let (v, k, lambda) = (params[0], params[1], params[2]);
        ensure!(lambda == 1, "only lambda = 1 difference matrices are supported");
        let rows = file.rows.as_ref().context("the file has no rows")?;
        let rows = rows.iter().map(|r| elements_from_spec(&g, r)).collect::<Result<Vec<_>>>()?;
        let m = DiffMatrix::new(g.clone(), rows)?;
        let report = if kind == Kind::Hdm { verify_hdm(&m)? } else { verify_dm(&m)? };
        text.push_str(&report.to_string());
        let mut ok = report.passed;
        if v != g.order() || k != m.num_rows() as u64 {
            text.push_str(&format!("  declared ({v},{k},1) but the matrix is {} x {}\n", m.num_rows(), m.num_cols()));
            ok = false;
        }
        ok
    };
    Ok(Outcome::verdict(passed, text))
}

pub fn run_verify(a: &VerifyArgs) -> Result<Outcome> {
    let file = read_design(&a.path)?;
    verify_file(&file, a.expect_kind, a.expect_params.as_deref())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// v k lambda
    Ds,
    /// m n k lambda1 lambda2
    Dds,
    /// v k lambda mu
    Proportional,
    /// q m e h
    Result3,
}

pub fn run_check(kind: CheckKind, nums: &[u64]) -> Result<Outcome> {
    let arity = match kind {
        CheckKind::Ds => 3,
        CheckKind::Dds => 5,
        CheckKind::Proportional | CheckKind::Result3 => 4,
    };
    ensure!(nums.len() == arity, "expected {arity} numbers, got {}", nums.len());
    Ok(match kind {
        CheckKind::Ds => {
            let v = ds_admissible(DsParams::new(nums[0], nums[1], nums[2]));
            Outcome::verdict(v.passed, v.to_string())
        }
        CheckKind::Dds => {
            let v = dds_counting_identity(DdsParams::new(nums[0], nums[1], nums[2], nums[3], nums[4]));
            Outcome::verdict(v.passed, v.to_string())
        }
        CheckKind::Proportional => {
            let v = proportional_pair_admissible(DsParams::new(nums[0], nums[1], nums[2]), nums[3])?;
            Outcome::verdict(v.passed, v.to_string())
        }
        CheckKind::Result3 => {
            let m = u32::try_from(nums[1]).context("m is too large")?;
            let v = refute_result3(nums[0], m, nums[2], nums[3])?;
            Outcome::verdict(v.outcome == Result3Outcome::ValidSinger, v.to_string())
        }
    })
}
