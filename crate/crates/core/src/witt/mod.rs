//! Truncated p-typical Witt vectors `W_n(A)`.
//!
//! Arithmetic runs through one of two backends: ghost-lift (lift the
//! coordinates to a p-torsion-free ring, work on ghost components, invert)
//! or the cached universal sum/product/Frobenius polynomials.

mod lift;
pub mod universal;

use num_bigint::BigInt;
use num_traits::Zero;

pub use lift::{GhostOp, WittCoeff};

use crate::arith::{DivExact, Int, PAdicRing, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct WittVec<R> {
    coords: Vec<R>,
}

/// Which arithmetic backend to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    GhostLift,
    Universal,
}

fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

impl<R: Ring> WittVec<R> {
    pub fn new(coords: Vec<R>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::Length("Witt vectors have length at least 1".into()));
        };
        let p = first.prime();
        if coords.iter().any(|c| c.prime() != p) {
            return Err(Error::RingMismatch(
                "coordinates over different primes".into(),
            ));
        }
        Ok(WittVec { coords })
    }

    pub(crate) fn from_coords(coords: Vec<R>) -> Self {
        debug_assert!(!coords.is_empty());
        WittVec { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn prime(&self) -> u64 {
        self.coords[0].prime()
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &R {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<R> {
        self.coords
    }

    /// `[x]_n = (x, 0, ..., 0)`.
    pub fn teichmuller(x: &R, n: usize) -> Self {
        assert!(n >= 1);
        let mut coords = vec![x.zero_like(); n];
        coords[0] = x.clone();
        WittVec { coords }
    }

    pub fn zero(like: &R, n: usize) -> Self {
        WittVec::teichmuller(&like.zero_like(), n)
    }

    pub fn one(like: &R, n: usize) -> Self {
        WittVec::teichmuller(&like.one_like(), n)
    }

    /// Image of the integer `k` under `W_n(Z) -> W_n(A)`.
    pub fn from_int(like: &R, n: usize, k: &BigInt) -> Self {
        let w = vec![Int::new(like.prime(), k.clone()); n];
        let z = ghost_inverse(&w).expect("constant ghost vectors are in the image");
        WittVec {
            coords: z.coords.iter().map(|c| like.int_like(c.value())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }

    /// Ghost components `w_i = sum_{j<=i} p^j a_j^{p^{i-j}}`, computed in `A`.
    pub fn ghost(&self) -> Vec<R> {
        let p = self.prime();
        let like = &self.coords[0];
        let mut powers = self.coords.clone();
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let mut w = like.zero_like();
            for (j, pw) in powers.iter().enumerate().take(i + 1) {
                let scaled = pw.mul(&like.int_like(&big_pow(p, j as u32)));
                w = w.add(&scaled);
            }
            out.push(w);
            for pw in powers.iter_mut().take(i + 1) {
                *pw = pw.pow(p);
            }
        }
        out
    }

    /// Negation is coordinatewise because `p` is odd.
    pub fn neg(&self) -> Self {
        WittVec {
            coords: self.coords.iter().map(Ring::neg).collect(),
        }
    }

    /// Restriction `R: W_n -> W_{n-1}`.
    pub fn restrict(&self) -> Result<Self> {
        self.truncate(self.len().saturating_sub(1))
    }

    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::Length(format!(
                "cannot truncate length {} to {n}",
                self.len()
            )));
        }
        Ok(WittVec {
            coords: self.coords[..n].to_vec(),
        })
    }

    /// Verschiebung `V: W_n -> W_{n+1}`.
    pub fn verschiebung(&self) -> Self {
        let mut coords = Vec::with_capacity(self.len() + 1);
        coords.push(self.coords[0].zero_like());
        coords.extend(self.coords.iter().cloned());
        WittVec { coords }
    }

    /// Coordinatewise map, for ring homomorphisms of the coefficients.
    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> WittVec<S> {
        WittVec {
            coords: self.coords.iter().map(f).collect(),
        }
    }

    pub fn try_map<S>(&self, f: impl Fn(&R) -> Result<S>) -> Result<WittVec<S>> {
        Ok(WittVec {
            coords: self.coords.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Length(format!(
                "lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        if self.prime() != other.prime() {
            return Err(Error::RingMismatch("different primes".into()));
        }
        Ok(())
    }

    pub fn add_universal(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        universal::apply(universal::Kind::Sum, self, Some(other))
    }

    pub fn mul_universal(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        universal::apply(universal::Kind::Product, self, Some(other))
    }

    pub fn frobenius_universal(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::Length("Frobenius needs length at least 2".into()));
        }
        universal::apply(universal::Kind::Frobenius, self, None)
    }
}

impl<R: WittCoeff> WittVec<R> {
    fn ghost_op(&self, op: GhostOp, other: Option<&Self>) -> Result<Self> {
        if let Some(o) = other {
            self.check_len(o)?;
        }
        let empty: &[R] = &[];
        let b = other.map_or(empty, |o| &o.coords);
        Ok(WittVec {
            coords: R::ghost_op(op, &self.coords, b)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ghost_op(GhostOp::Add, Some(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ghost_op(GhostOp::Sub, Some(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ghost_op(GhostOp::Mul, Some(other))
    }

    pub fn add_with(&self, other: &Self, backend: Backend) -> Result<Self> {
        match backend {
            Backend::GhostLift => self.add(other),
            Backend::Universal => self.add_universal(other),
        }
    }

    pub fn mul_with(&self, other: &Self, backend: Backend) -> Result<Self> {
        match backend {
            Backend::GhostLift => self.mul(other),
            Backend::Universal => self.mul_universal(other),
        }
    }

    /// Frobenius `F: W_n -> W_{n-1}`, `w_i(Fa) = w_{i+1}(a)`.
    pub fn frobenius(&self) -> Result<Self> {
        self.frobenius_pow(1)
    }

    /// `F^k: W_n -> W_{n-k}` as a single ghost shift.
    pub fn frobenius_pow(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.len() <= k {
            return Err(Error::Length(format!("F^{k} needs length above {k}")));
        }
        self.ghost_op(GhostOp::Frobenius(k), None)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = WittVec::one(&self.coords[0], self.len());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplication by the integer `k`.
    pub fn scale(&self, k: i64) -> Result<Self> {
        self.mul(&WittVec::from_int(
            &self.coords[0],
            self.len(),
            &BigInt::from(k),
        ))
    }

    /// `sum_j [x_j]_n`.
    pub fn teichmuller_sum(xs: &[R], n: usize) -> Result<Self> {
        let mut it = xs.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty sum".into()))?;
        let mut acc = WittVec::teichmuller(first, n);
        for x in it {
            acc = acc.add(&WittVec::teichmuller(x, n))?;
        }
        Ok(acc)
    }

    /// Worst-case precision over the coordinates, `None` if exact.
    pub fn effective_precision(&self) -> Option<u32> {
        self.coords.iter().filter_map(WittCoeff::precision).min()
    }
}

impl<R: WittCoeff + DivExact> WittVec<R> {
    /// The `c` with `c * b = d`, solved one coordinate at a time from
    /// `m_i(c; b) = c_i w_i(b) + m_i(c_0, .., c_{i-1}, 0; b)`.
    pub fn divide_exact(&self, b: &Self) -> Result<Self> {
        self.check_len(b)?;
        let ghosts = b.ghost();
        let zero = self.coords[0].zero_like();
        let mut c: Vec<R> = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let rest = if i == 0 {
                zero.clone()
            } else {
                let mut prefix = c.clone();
                prefix.push(zero.clone());
                let bp = WittVec {
                    coords: b.coords[..=i].to_vec(),
                };
                WittVec { coords: prefix }
                    .mul(&bp)?
                    .coords
                    .pop()
                    .expect("nonempty")
            };
            let num = self.coords[i].sub(&rest);
            let ci = num.div_exact(&ghosts[i]).map_err(|e| match e {
                Error::NotDivisible { .. } => Error::NotDivisible { coordinate: i },
                other => other,
            })?;
            c.push(ci);
        }
        Ok(WittVec { coords: c })
    }

    /// `a / p` in `W_n(A)`, i.e. membership test for `p W_n(A)`.
    pub fn divide_by_p(&self) -> Result<Self> {
        let p = WittVec::from_int(&self.coords[0], self.len(), &BigInt::from(self.prime()));
        self.divide_exact(&p)
    }
}

/// The Witt vector with ghost components `w`, over a p-torsion-free ring.
///
/// Coordinate `i` loses `i` digits of precision.
pub fn ghost_inverse<R: PAdicRing>(w: &[R]) -> Result<WittVec<R>> {
    let first = w
        .first()
        .ok_or_else(|| Error::Length("empty ghost vector".into()))?;
    let p = first.prime();
    let mut a: Vec<R> = Vec::with_capacity(w.len());
    for (i, wi) in w.iter().enumerate() {
        let digits = wi.digits();
        let mut s = wi.clone();
        for (j, aj) in a.iter().enumerate() {
            let aj = digits.map_or(aj.clone(), |d| aj.at_digits(d));
            let term = aj
                .pow(p.pow((i - j) as u32))
                .mul(&wi.int_like(&big_pow(p, j as u32)));
            s = s.sub(&term);
        }
        let ai = s
            .div_p_pow(i as u32)
            .ok_or(Error::NotGhostVector { index: i })?;
        a.push(ai);
    }
    Ok(WittVec { coords: a })
}

/// Over `Z[1/p]`: the least `k` such that `p^k w` is a ghost vector of
/// `W_n(Z)`, together with its preimage. Such `k <= n - 1` always exists.
pub fn ghost_inverse_scaled(p: u64, w: &[BigInt]) -> Result<(u32, WittVec<Int>)> {
    for k in 0..w.len().max(1) as u32 {
        let pk = big_pow(p, k);
        let scaled: Vec<Int> = w.iter().map(|x| Int::new(p, x * &pk)).collect();
        match ghost_inverse(&scaled) {
            Ok(a) => return Ok((k, a)),
            Err(Error::NotGhostVector { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotGhostVector { index: w.len() })
}

/// The image criterion for `ghost: W_n(Z) -> Z^n`: `w_i = w_{i-1} mod p^i`.
pub fn is_integral_ghost(p: u64, w: &[BigInt]) -> bool {
    w.windows(2).enumerate().all(|(i, pair)| {
        let m = big_pow(p, i as u32 + 1);
        ((&pair[1] - &pair[0]) % &m).is_zero()
    })
}

impl WittVec<Int> {
    pub fn integers(p: u64, xs: &[i64]) -> Self {
        assert!(!xs.is_empty());
        WittVec {
            coords: xs.iter().map(|&x| Int::new(p, x)).collect(),
        }
    }
}

#[cfg(test)]
mod tests;
