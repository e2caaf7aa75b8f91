//! Direct `(v, k, (k-1)/2)`-DDFs in `R_v` when every `q_i = 2k n_i + 1`.
//!
//! With `w_i` primitive in `GF(q_i)`, `A` the order-`k` unit subgroup and
//! `S_i = {w_i^j : 1 <= j <= n_i}`, pick for each nonzero associate class
//! `C` a nonzero factor `C_i` and replace it by `S_i` to get `sigma(C)`.
//! The family is `{xA : x in X}` with `X` the union of all `sigma(C)`.

use std::collections::BTreeMap;

use super::ensure_df;
use crate::algebra::{unit_subgroup_of_order, FieldElement, RingDescriptor, RingElement};
use crate::designs::Family;
use crate::error::{Error, Result};

/// Per-class override of the factor replaced by `S_i`, keyed by the class
/// index in [`RingDescriptor::nonzero_associate_classes`] order. Both indices
/// are 0-based. Classes without an entry use their lowest nonzero factor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SigmaChoice(pub BTreeMap<usize, usize>);

fn check_params(r: &RingDescriptor, k: u64) -> Result<Vec<u64>> {
    if k.is_multiple_of(2) {
        return Err(Error::Precondition(format!("k = {k} must be odd")));
    }
    r.factor_orders()
        .into_iter()
        .map(|q| {
            if (q - 1) % (2 * k) != 0 {
                Err(Error::Congruence { factor: q, modulus: 2 * k })
            } else {
                Ok((q - 1) / (2 * k))
            }
        })
        .collect()
}

/// The sets `sigma(C)`, one per nonzero associate class, each in canonical order.
pub fn sigma_sets(r: &RingDescriptor, k: u64, choice: &SigmaChoice) -> Result<Vec<Vec<RingElement>>> {
    let ns = check_params(r, k)?;
    let classes = r.nonzero_associate_classes();
    if let Some((&c, _)) = choice.0.iter().find(|(&c, _)| c >= classes.len()) {
        return Err(Error::Precondition(format!("no associate class with index {c}")));
    }
    // Per factor: the nonzero elements and the set S_i, both sorted.
    let units: Vec<Vec<FieldElement>> =
        r.factors().iter().map(|f| f.elements().skip(1).collect()).collect();
    let s_sets: Vec<Vec<FieldElement>> = r
        .factors()
        .iter()
        .zip(&ns)
        .map(|(f, &n)| {
            let w = f.primitive_element();
            let mut s: Vec<_> = (1..=n).map(|j| f.pow(&w, j)).collect();
            s.sort();
            s
        })
        .collect();

    let mut out = Vec::with_capacity(classes.len());
    for (ci, support) in classes.iter().enumerate() {
        let chosen = match choice.0.get(&ci) {
            Some(&i) if support.contains(&i) => i,
            Some(&i) => {
                return Err(Error::Precondition(format!(
                    "factor {i} is zero in associate class {ci}"
                )))
            }
            None => support[0],
        };
        let ranges: Vec<Vec<FieldElement>> = (0..r.factors().len())
            .map(|i| {
                if i == chosen {
                    s_sets[i].clone()
                } else if support.contains(&i) {
                    units[i].clone()
                } else {
                    vec![r.factors()[i].zero()]
                }
            })
            .collect();
        let mut sigma = vec![Vec::new()];
        for range in &ranges {
            sigma = sigma
                .into_iter()
                .flat_map(|prefix: Vec<FieldElement>| {
                    range.iter().map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x.clone());
                        p
                    })
                })
                .collect();
        }
        out.push(sigma.into_iter().map(|c| r.element(c)).collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

/// The `(v, k, (k-1)/2)`-DDF `{xA : x in X}` in `R_v`.
pub fn cyclotomic_half_ddf(r: &RingDescriptor, k: u64, choice: &SigmaChoice) -> Result<Family> {
    let sigmas = sigma_sets(r, k, choice)?;
    r.additive_group().ensure_within_cap()?;
    let action = unit_subgroup_of_order(r, k)?;
    let reps: Vec<&RingElement> = sigmas.iter().flatten().collect();
    if reps.len() as u64 != (r.order() - 1) / (2 * k) {
        return Err(Error::Verification(format!("|X| = {} differs from (v-1)/2k", reps.len())));
    }
    let blocks = reps
        .iter()
        .map(|x| {
            action
                .members()
                .iter()
                .map(|a| r.to_group_element(&r.mul(a, x)))
                .collect()
        })
        .collect();
    let family = Family::new(r.additive_group(), blocks)?;
    ensure_df(&family, (k - 1) / 2, true)?;
    Ok(family)
}
