use std::fmt;

/// Parameters `(v, k, lambda)` of a difference set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DsParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DsParams {
    pub fn new(v: u64, k: u64, lambda: u64) -> Self {
        DsParams { v, k, lambda }
    }
}

impl fmt::Display for DsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Parameters `(m, n, k, lambda1, lambda2)` of a divisible difference set in
/// a group of order `m*n` relative to a subgroup of order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DdsParams {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
}

impl DdsParams {
    pub fn new(m: u64, n: u64, k: u64, lambda1: u64, lambda2: u64) -> Self {
        DdsParams { m, n, k, lambda1, lambda2 }
    }
}

impl fmt::Display for DdsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.m, self.n, self.k, self.lambda1, self.lambda2)
    }
}
