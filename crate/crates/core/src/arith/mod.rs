//! Coefficient rings: the residue rings `O_{K_v}/p`, the truncated
//! cyclotomic rings `O_{K_v}/p^N`, `Z/p^N`, and the integers.
//!
//! Every ring element carries its own parameters (prime, tower depth,
//! precision), so the [`Ring`] trait needs no separate context object.

mod cyc;
mod int;
mod residue;
mod trunc;
mod zn;

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

pub use cyc::CycElt;
pub use int::Int;
pub use residue::ResidueElt;
pub use trunc::TruncPoly;
pub use zn::Zn;

use crate::error::Result;

/// A commutative ring whose elements know their own parameters.
///
/// Binary operations on elements with different primes panic; elements at
/// different tower depths or precisions are combined at the common depth
/// and the smaller precision.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn prime(&self) -> u64;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, k: &BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn i64_like(&self, k: i64) -> Self {
        self.int_like(&BigInt::from(k))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring that is p-torsion free up to a tracked number of p-adic digits,
/// so that ghost components can be divided by powers of `p`.
pub trait PAdicRing: Ring {
    /// Exact division by `p^k`; `None` if the element is not divisible
    /// within the available digits.
    fn div_p_pow(&self, k: u32) -> Option<Self>;
    /// Number of correct p-adic digits, `None` for exact rings.
    fn digits(&self) -> Option<u32>;
    /// The same element carried at `digits` digits. Raising the digit
    /// count pads with zeros, which selects the canonical lift.
    fn at_digits(&self, digits: u32) -> Self;
}

/// Rings with a (partial) exact division.
pub trait DivExact: Ring {
    /// The unique `q` with `q * by = self` at the available precision.
    fn div_exact(&self, by: &Self) -> Result<Self>;
}

/// A normalized valuation with `v(p) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(Ratio<i64>),
    /// The element vanishes at the working truncation; only this bound is known.
    AtLeast(Ratio<i64>),
    Infinite,
}

impl Valuation {
    pub fn exact(num: i64, den: i64) -> Self {
        Valuation::Exact(Ratio::new(num, den))
    }

    pub fn value(&self) -> Option<Ratio<i64>> {
        match self {
            Valuation::Exact(r) => Some(*r),
            _ => None,
        }
    }

    /// Lower bound valid in every case.
    pub fn lower_bound(&self) -> Option<Ratio<i64>> {
        match self {
            Valuation::Exact(r) | Valuation::AtLeast(r) => Some(*r),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(r) => write!(f, "{r}"),
            Valuation::AtLeast(r) => write!(f, ">={r}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// `e_v = p^{v-1}(p-1)`, the ramification index of `Q_p(zeta_{p^v})`.
pub fn ram_index(p: u64, depth: u32) -> usize {
    assert!(depth >= 1, "tower depth is 1-based");
    (p.pow(depth - 1) * (p - 1)) as usize
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// Inverse of a unit modulo `m` (extended Euclid).
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Reduce a big integer into `[0, m)`.
pub(crate) fn reduce_big(k: &BigInt, m: u64) -> u64 {
    let r = k % BigInt::from(m);
    let r = if r < BigInt::zero() {
        r + BigInt::from(m)
    } else {
        r
    };
    u64::try_from(r).expect("reduced residue fits in u64")
}

/// p-adic valuation of a nonzero residue `x` modulo `p^digits`.
pub(crate) fn vp_u64(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    k
}
