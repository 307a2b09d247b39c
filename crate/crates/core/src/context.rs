//! Global truncation parameters.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Truncation parameters shared by a computation.
///
/// `prec` is the p-adic precision in digits, `depth` the deepest level of
/// the cyclotomic tower that may be touched, `len` the largest Witt length
/// and `guard` the number of extra digits carried through ghost inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionCtx {
    pub p: u64,
    pub prec: u32,
    pub depth: u32,
    pub len: usize,
    pub guard: u32,
}

impl PrecisionCtx {
    pub fn new(p: u64, prec: u32, depth: u32, len: usize, guard: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be an odd prime"
            )));
        }
        if prec == 0 || depth == 0 || len == 0 {
            return Err(Error::InvalidParameter(
                "prec, depth and len must be positive".into(),
            ));
        }
        if (guard as usize) < len {
            return Err(Error::InvalidParameter(format!(
                "guard {guard} < len {len}"
            )));
        }
        let ctx = PrecisionCtx {
            p,
            prec,
            depth,
            len,
            guard,
        };
        if crate::arith::checked_pow(p, prec + guard).is_none_or(|m| m >= 1 << 62) {
            return Err(Error::InvalidParameter(format!(
                "p^(prec+guard) = {p}^{} does not fit the machine modulus",
                prec + guard
            )));
        }
        Ok(ctx)
    }

    /// `p = 3, N = 4, D = 5, L = 4`.
    pub fn small() -> Self {
        PrecisionCtx {
            p: 3,
            prec: 4,
            depth: 5,
            len: 4,
            guard: 4,
        }
    }

    pub fn with_p(self, p: u64) -> Result<Self> {
        Self::new(p, self.prec, self.depth, self.len, self.guard)
    }
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        PrecisionCtx {
            p: 3,
            prec: 6,
            depth: 6,
            len: 4,
            guard: 4,
        }
    }
}
