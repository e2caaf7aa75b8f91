//! Parameter-level necessary conditions from counting differences two ways.
//!
//! A `(v, k, lambda)` difference set forces `lambda (v - 1) = k (k - 1)`. If a
//! triple and its multiple by `mu` are both admissible, then
//! `(v - k)(mu - 1) = 0`, so a nontrivial triple never scales. This is what
//! rules out scaled copies of Singer parameters, the triples claimed for
//! `Z_{(q^m-1)/e} x Z_h` whenever `(e, h) != (q-1, 1)`.

use std::fmt;

use num_integer::Integer;

use crate::arith::{checked_pow, prime_power};
use crate::designs::{DdsParams, DsParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DsVerdict {
    pub params: DsParams,
    /// `lambda * (v - 1)`
    pub lhs: u128,
    /// `k * (k - 1)`
    pub rhs: u128,
    /// `lambda <= k <= v`
    pub in_range: bool,
    pub passed: bool,
}

pub fn ds_admissible(p: DsParams) -> DsVerdict {
    let lhs = p.lambda as u128 * (p.v as u128).saturating_sub(1);
    let rhs = p.k as u128 * (p.k as u128).saturating_sub(1);
    let in_range = p.lambda <= p.k && p.k <= p.v;
    DsVerdict { params: p, lhs, rhs, in_range, passed: in_range && lhs == rhs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProportionalVerdict {
    pub params: DsParams,
    pub mu: u64,
    /// `(v - 1)(k mu - 1) - (v mu - 1)(k - 1)`
    pub expanded: i128,
    /// `(v - k)(mu - 1)`, equal to `expanded`.
    pub residual: i128,
    pub passed: bool,
}

/// Whether `(v mu, k mu, lambda mu)` can be admissible alongside `(v, k, lambda)`.
pub fn proportional_pair_admissible(p: DsParams, mu: u64) -> Result<ProportionalVerdict> {
    if !ds_admissible(p).passed {
        return Err(Error::Precondition(format!("{p} is not an admissible triple")));
    }
    if mu == 0 {
        return Err(Error::Precondition("mu must be at least 1".into()));
    }
    let (v, k, mu_i) = (p.v as i128, p.k as i128, mu as i128);
    let expanded = (v - 1) * (k * mu_i - 1) - (v * mu_i - 1) * (k - 1);
    let residual = (v - k) * (mu_i - 1);
    debug_assert_eq!(expanded, residual);
    Ok(ProportionalVerdict { params: p, mu, expanded, residual, passed: residual == 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DdsVerdict {
    pub params: DdsParams,
    /// `k (k - 1)`
    pub lhs: u128,
    /// `lambda1 (n - 1) + lambda2 n (m - 1)`
    pub rhs: u128,
    pub passed: bool,
}

pub fn dds_counting_identity(p: DdsParams) -> DdsVerdict {
    let lhs = p.k as u128 * (p.k as u128).saturating_sub(1);
    let rhs = p.lambda1 as u128 * (p.n as u128).saturating_sub(1)
        + p.lambda2 as u128 * p.n as u128 * (p.m as u128).saturating_sub(1);
    DdsVerdict { params: p, lhs, rhs, passed: lhs == rhs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Result3Outcome {
    /// The claimed triple is admissible; this happens only for Singer parameters.
    ValidSinger,
    Inadmissible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Result3Verdict {
    pub q: u64,
    pub m: u32,
    pub e: u64,
    pub h: u64,
    /// `((q^m-1)h/e, (q^(m-1)-1)h/e, (q^(m-2)-1)h/e)`
    pub claimed: DsParams,
    /// The Singer triple the claim is a multiple of.
    pub singer: DsParams,
    /// `h (q - 1) / e`
    pub mu: u64,
    pub admissibility: DsVerdict,
    pub proportionality: ProportionalVerdict,
    pub outcome: Result3Outcome,
}

fn exact_div(num: u128, den: u128) -> Result<u64> {
    let (quot, rem) = num.div_rem(&den);
    if rem != 0 {
        return Err(Error::Precondition(format!("{num} is not divisible by {den}")));
    }
    u64::try_from(quot).map_err(|_| Error::Overflow("parameter triple"))
}

/// Evaluates the claimed `(v, k, lambda)` difference-set triple in
/// `Z_{(q^m-1)/e} x Z_h` against the counting identity.
pub fn refute_result3(q: u64, m: u32, e: u64, h: u64) -> Result<Result3Verdict> {
    prime_power(q)?;
    if m < 3 {
        return Err(Error::Precondition(format!("m = {m} must be at least 3")));
    }
    if e == 0 || !(q - 1).is_multiple_of(e) {
        return Err(Error::Precondition(format!("e = {e} must divide q - 1 = {}", q - 1)));
    }
    if (m as u64).gcd(&e) != 1 {
        return Err(Error::Precondition(format!("gcd(m, e) = gcd({m}, {e}) != 1")));
    }
    if h == 0 || h > e {
        return Err(Error::Precondition(format!("h = {h} must lie in [1, {e}]")));
    }
    let pow = |j: u32| -> Result<u128> { Ok(checked_pow(q, j)? as u128 - 1) };
    let (a, b, c) = (pow(m)?, pow(m - 1)?, pow(m - 2)?);
    let scale = |x: u128| exact_div(x * h as u128, e as u128);
    let claimed = DsParams::new(scale(a)?, scale(b)?, scale(c)?);
    let qm1 = (q - 1) as u128;
    let singer = DsParams::new(exact_div(a, qm1)?, exact_div(b, qm1)?, exact_div(c, qm1)?);
    let mu = exact_div(h as u128 * qm1, e as u128)?;
    let admissibility = ds_admissible(claimed);
    let proportionality = proportional_pair_admissible(singer, mu)?;
    let outcome = if admissibility.passed { Result3Outcome::ValidSinger } else { Result3Outcome::Inadmissible };
    Ok(Result3Verdict { q, m, e, h, claimed, singer, mu, admissibility, proportionality, outcome })
}

fn relation(pass: bool) -> &'static str {
    if pass {
        "="
    } else {
        "≠"
    }
}

impl fmt::Display for DsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params;
        writeln!(f, "{}: {p} as a difference-set triple", if self.passed { "admissible" } else { "inadmissible" })?;
        writeln!(
            f,
            "  lambda(v-1) = {}*{} = {} {} {} = {}*{} = k(k-1)",
            p.lambda,
            p.v.saturating_sub(1),
            self.lhs,
            relation(self.lhs == self.rhs),
            self.rhs,
            p.k,
            p.k.saturating_sub(1)
        )?;
        if !self.in_range {
            writeln!(f, "  range condition lambda <= k <= v fails")?;
        }
        Ok(())
    }
}

impl fmt::Display for ProportionalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params;
        let scaled = DsParams::new(p.v * self.mu, p.k * self.mu, p.lambda * self.mu);
        writeln!(
            f,
            "{}: {p} and {scaled} (mu = {})",
            if self.passed { "compatible" } else { "incompatible" },
            self.mu
        )?;
        writeln!(
            f,
            "  (v-1)(k mu-1) - (v mu-1)(k-1) = (v-k)(mu-1) = {}*{} = {}",
            p.v as i128 - p.k as i128,
            self.mu as i128 - 1,
            self.residual
        )
    }
}

impl fmt::Display for DdsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params;
        writeln!(f, "{}: {p} as a divisible-difference-set tuple", if self.passed { "admissible" } else { "inadmissible" })?;
        writeln!(
            f,
            "  k(k-1) = {} {} {} = lambda1(n-1) + lambda2 n(m-1)",
            self.lhs,
            relation(self.passed),
            self.rhs
        )
    }
}

impl fmt::Display for Result3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.outcome {
            Result3Outcome::ValidSinger => "valid (Singer)",
            Result3Outcome::Inadmissible => "refuted",
        };
        writeln!(f, "{status}: q={} m={} e={} h={} claims a {}-difference set", self.q, self.m, self.e, self.h, self.claimed)?;
        write!(f, "{}", self.admissibility)?;
        writeln!(f, "  claimed triple = {} x Singer triple {}", self.mu, self.singer)?;
        write!(f, "{}", self.proportionality)
    }
}
