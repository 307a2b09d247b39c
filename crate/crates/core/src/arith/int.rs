use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{DivExact, PAdicRing, Ring};
use crate::error::{Error, Result};

/// A rational integer, tagged with the prime of the surrounding Witt ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int {
    p: u64,
    value: BigInt,
}

impl Int {
    pub fn new(p: u64, value: impl Into<BigInt>) -> Self {
        Int {
            p,
            value: value.into(),
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    fn with(&self, value: BigInt) -> Self {
        Int { p: self.p, value }
    }
}

impl Ring for Int {
    fn prime(&self) -> u64 {
        self.p
    }
    fn zero_like(&self) -> Self {
        self.with(BigInt::zero())
    }
    fn one_like(&self) -> Self {
        self.with(BigInt::from(1))
    }
    fn int_like(&self, k: &BigInt) -> Self {
        self.with(k.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self.with(&self.value + &o.value)
    }
    fn sub(&self, o: &Self) -> Self {
        self.with(&self.value - &o.value)
    }
    fn mul(&self, o: &Self) -> Self {
        self.with(&self.value * &o.value)
    }
    fn neg(&self) -> Self {
        self.with(-&self.value)
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn pow(&self, e: u64) -> Self {
        self.with(num_traits::pow(self.value.clone(), e as usize))
    }
}

impl PAdicRing for Int {
    fn div_p_pow(&self, k: u32) -> Option<Self> {
        let pk = num_traits::pow(BigInt::from(self.p), k as usize);
        let (q, r) = self.value.div_rem(&pk);
        r.is_zero().then(|| self.with(q))
    }
    fn digits(&self) -> Option<u32> {
        None
    }
    fn at_digits(&self, _digits: u32) -> Self {
        self.clone()
    }
}

impl DivExact for Int {
    fn div_exact(&self, by: &Self) -> Result<Self> {
        if by.value.is_zero() {
            return Err(Error::NotDivisible { coordinate: 0 });
        }
        let (q, r) = self.value.div_rem(&by.value);
        if !r.is_zero() {
            return Err(Error::NotDivisible { coordinate: 0 });
        }
        Ok(self.with(q))
    }
}
