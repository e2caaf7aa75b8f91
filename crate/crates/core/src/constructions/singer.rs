//! Singer difference sets: `{i in Z_v : Tr(alpha^i) = 0}` for a primitive
//! `alpha` of `GF(q^m)`, `v = (q^m - 1)/(q - 1)`, trace down to `GF(q)`.

use super::DifferenceSet;
use crate::algebra::{build_field, GroupDescriptor};
use crate::arith::{checked_pow, prime_power};
use crate::designs::DsParams;
use crate::error::{Error, Result};

/// `((q^m-1)/(q-1), (q^(m-1)-1)/(q-1), (q^(m-2)-1)/(q-1))`.
pub fn singer_params(q: u64, m: u32) -> Result<DsParams> {
    let f = |j: u32| -> Result<u64> { Ok((checked_pow(q, j)? - 1) / (q - 1)) };
    Ok(DsParams::new(f(m)?, f(m - 1)?, f(m - 2)?))
}

pub fn singer_ds(q: u64, m: u32) -> Result<DifferenceSet> {
    let (p, a) = prime_power(q)?;
    if m < 3 {
        return Err(Error::Precondition(format!("m = {m} must be at least 3")));
    }
    let params = singer_params(q, m)?;
    let group = GroupDescriptor::cyclic(params.v)?;
    group.ensure_within_cap()?;
    let field = build_field(p, a * m)?;
    let alpha = field.primitive_element();
    let mut x = field.one();
    let mut set = Vec::new();
    for i in 0..params.v {
        if field.trace(&x, a)?.is_zero() {
            set.push(group.elem(&[i])?);
        }
        x = field.mul(&x, &alpha);
    }
    DifferenceSet::verified(group, set, params)
}
