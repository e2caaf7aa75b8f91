//! Invariant factors via Smith normal form, and explicit isomorphisms
//! between finite abelian groups.

use super::action::GroupHom;
use super::group::{GroupDescriptor, GroupElement};
use crate::arith::{factorize, mod_inv};
use crate::error::{Error, Result};

/// Diagonal of the Smith normal form of an integer matrix: nonnegative
/// entries `d_1 | d_2 | ...`, one per pivot position.
pub fn smith_normal_form(matrix: &[Vec<i128>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                diag.extend(std::iter::repeat_n(0, rows.min(cols) - t));
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= q * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => {
                    let other = a[i].clone();
                    for (x, y) in a[t][t..].iter_mut().zip(&other[t..]) {
                        *x += y;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

/// The diagonal relation matrix of a group: one row per digit generator.
pub fn relation_matrix(g: &GroupDescriptor) -> Vec<Vec<i128>> {
    let r = g.radices();
    (0..r.len())
        .map(|i| (0..r.len()).map(|j| if i == j { r[i] as i128 } else { 0 }).collect())
        .collect()
}

/// Invariant factors `d_1 | d_2 | ... ` with the trivial 1s removed.
pub fn invariant_factors(g: &GroupDescriptor) -> Vec<u64> {
    let mut d: Vec<u64> = smith_normal_form(&relation_matrix(g))
        .into_iter()
        .filter(|&x| x != 1)
        .map(|x| x as u64)
        .collect();
    d.sort_unstable();
    d
}

struct PrimaryPart {
    prime: u64,
    exponent: u32,
    digit: usize,
    generator: GroupElement,
    /// Weight of this part when rewriting the digit generator by CRT.
    crt_coeff: u64,
}

fn primary_parts(g: &GroupDescriptor) -> Vec<PrimaryPart> {
    let gens = g.generators();
    let mut parts = Vec::new();
    for (digit, (&r, e)) in g.radices().iter().zip(&gens).enumerate() {
        for (prime, exponent) in factorize(r) {
            let pa = prime.pow(exponent);
            let cofactor = r / pa;
            parts.push(PrimaryPart {
                prime,
                exponent,
                digit,
                generator: g.scale(e, cofactor),
                crt_coeff: mod_inv(cofactor % pa, pa).expect("coprime cofactor"),
            });
        }
    }
    parts.sort_by_key(|p| (p.prime, p.exponent));
    parts
}

/// An explicit isomorphism `source -> target`, or `None` when the invariant
/// factors differ.
pub fn abelian_iso(source: &GroupDescriptor, target: &GroupDescriptor) -> Result<Option<GroupHom>> {
    if invariant_factors(source) != invariant_factors(target) {
        return Ok(None);
    }
    let sp = primary_parts(source);
    let tp = primary_parts(target);
    let same_type = sp.len() == tp.len()
        && sp.iter().zip(&tp).all(|(a, b)| (a.prime, a.exponent) == (b.prime, b.exponent));
    if !same_type {
        return Err(Error::Verification("invariant factors agree but primary parts differ".into()));
    }
    let mut images = vec![target.zero(); source.radices().len()];
    for (s, t) in sp.iter().zip(&tp) {
        let term = target.scale(&t.generator, s.crt_coeff);
        images[s.digit] = target.add(&images[s.digit], &term);
    }
    let hom = GroupHom::new(source.clone(), target.clone(), images)?;
    if source.order() <= super::group::ORDER_CAP && !hom.is_bijective()? {
        return Err(Error::Verification("constructed isomorphism is not bijective".into()));
    }
    Ok(Some(hom))
}
