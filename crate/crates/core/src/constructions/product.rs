//! The product construction: from a `(u,k,k-1)`-DDF in `G`, a `(v,k,k-1)`-DDF
//! in `H` and a `(v,k,1)`-HDM over `H`, a `(uv,k,k-1)`-DDF in `G x H`.

use super::orbit::{furino_ddf, FurinoTarget};
use super::{ensure_df, DifferenceSet};
use crate::algebra::{unit_subgroup_of_order, GroupDescriptor, RingDescriptor};
use crate::designs::{classify_family, verify_hdm, DiffMatrix, DsParams, Family, FamilyKind};
use crate::error::{Error, Result};

/// `{1, ..., k}` in `Z_{k+1}`, a `(k+1, k, k-1)` difference set.
pub fn trivial_ds(k: u64) -> Result<DifferenceSet> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let g = GroupDescriptor::cyclic(k + 1)?;
    let set = (1..=k).map(|x| g.elem(&[x])).collect::<Result<Vec<_>>>()?;
    DifferenceSet::verified(g, set, DsParams::new(k + 1, k, k - 1))
}

/// Multiplication table of the order-`k` unit subgroup against all of `R_v`:
/// row `a` is `x -> a x` over the ring elements in canonical order.
pub fn units_hdm(r: &RingDescriptor, k: u64) -> Result<DiffMatrix> {
    let g = r.additive_group();
    g.ensure_within_cap()?;
    let action = unit_subgroup_of_order(r, k)?;
    let elems: Vec<_> = g.elements().map(|x| r.from_group_element(&x)).collect::<Result<_>>()?;
    let rows = action
        .members()
        .iter()
        .map(|a| elems.iter().map(|x| r.to_group_element(&r.mul(a, x))).collect())
        .collect();
    let m = DiffMatrix::new(g, rows)?;
    let report = verify_hdm(&m)?;
    if !report.passed {
        return Err(Error::Verification(report.to_string()));
    }
    Ok(m)
}

fn check_ingredient(f: &Family, k: usize, name: &str) -> Result<()> {
    if f.blocks().iter().any(|b| b.len() != k) {
        return Err(Error::Ingredient(format!("{name} has blocks of size other than {k}")));
    }
    ensure_df(f, k as u64 - 1, true).map_err(|e| Error::Ingredient(format!("{name}: {e}")))?;
    let uncovered = f.uncovered()?.len() as u64;
    if uncovered != 1 {
        return Err(Error::UncoveredCount(uncovered));
    }
    Ok(())
}

/// Blocks `A_j = {(a_1, m_1j), ..., (a_k, m_kj)}` for every `A` in `ddf_g`
/// and column `j`, plus `{g} x B` for every `B` in `ddf_h`, where `g` is the
/// element of `G` left uncovered by `ddf_g`.
pub fn product_ddf(ddf_g: &Family, ddf_h: &Family, hdm_h: &DiffMatrix) -> Result<Family> {
    let k = ddf_g
        .uniform_block_size()
        .ok_or_else(|| Error::Ingredient("the G-family must be nonempty with uniform block size".into()))?;
    check_ingredient(ddf_g, k, "G-family")?;
    check_ingredient(ddf_h, k, "H-family")?;
    if hdm_h.group() != ddf_h.group() {
        return Err(Error::Ingredient("matrix and H-family live in different groups".into()));
    }
    if hdm_h.num_rows() != k {
        return Err(Error::Ingredient(format!("matrix has {} rows, blocks have size {k}", hdm_h.num_rows())));
    }
    let report = verify_hdm(hdm_h)?;
    if !report.passed {
        return Err(Error::Ingredient(format!("matrix is not an HDM: {report}")));
    }

    let g_missing = ddf_g.uncovered()?.remove(0);
    let product = ddf_g.group().product(ddf_h.group())?;
    product.ensure_within_cap()?;
    let rows = hdm_h.rows();
    let mut blocks = Vec::with_capacity(ddf_g.len() * hdm_h.num_cols() + ddf_h.len());
    for a in ddf_g.blocks() {
        for j in 0..hdm_h.num_cols() {
            blocks.push(a.iter().zip(rows).map(|(ai, row)| ai.pair(&row[j])).collect());
        }
    }
    for b in ddf_h.blocks() {
        blocks.push(b.iter().map(|h| g_missing.pair(h)).collect());
    }
    let family = Family::new(product, blocks)?;
    ensure_df(&family, k as u64 - 1, true)?;
    let uncovered = family.uncovered()?.len() as u64;
    if uncovered != 1 {
        return Err(Error::UncoveredCount(uncovered));
    }
    Ok(family)
}

/// A `(|R_v|(k+1), k, k-1)`-DDF in `Z_{k+1} x R_v` from the trivial
/// difference set, the orbit family of `R_v` and the unit HDM.
pub fn result1_ddf(k: u64, r: &RingDescriptor) -> Result<Family> {
    for q in r.factor_orders() {
        if k == 0 || (q - 1) % k != 0 {
            return Err(Error::Congruence { factor: q, modulus: k });
        }
    }
    let trivial = trivial_ds(k)?;
    let ddf_g = Family::single(trivial.group.clone(), trivial.set.clone())?;
    let ddf_h = furino_ddf(&FurinoTarget::Ring(r.clone()), k, false)?;
    let hdm = units_hdm(r, k)?;
    let out = product_ddf(&ddf_g, &ddf_h, &hdm)?;
    debug_assert_eq!(classify_family(&out)?, FamilyKind::Disjoint);
    Ok(out)
}
