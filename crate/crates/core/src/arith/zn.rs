use num_bigint::BigInt;

use super::{add_mod, inv_mod, mul_mod, reduce_big, sub_mod, vp_u64, DivExact, PAdicRing, Ring};
use crate::error::{Error, Result};

/// An element of `Z/p^N`.
#[derive(Debug, Clone, Copy)]
pub struct Zn {
    p: u64,
    digits: u32,
    modulus: u64,
    value: u64,
}

impl Zn {
    pub fn new(p: u64, digits: u32, value: i64) -> Self {
        let modulus = p.checked_pow(digits).expect("modulus overflow");
        let value = (value as i128).rem_euclid(modulus as i128) as u64;
        Zn {
            p,
            digits,
            modulus,
            value,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn common(&self, other: &Self) -> (Zn, Zn) {
        assert_eq!(self.p, other.p, "prime mismatch");
        let d = self.digits.min(other.digits);
        (self.at_digits(d), other.at_digits(d))
    }

    fn with_value(&self, value: u64) -> Self {
        Zn { value, ..*self }
    }
}

impl PartialEq for Zn {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.value == b.value
    }
}

impl Ring for Zn {
    fn prime(&self) -> u64 {
        self.p
    }
    fn zero_like(&self) -> Self {
        self.with_value(0)
    }
    fn one_like(&self) -> Self {
        self.with_value(1 % self.modulus)
    }
    fn int_like(&self, k: &BigInt) -> Self {
        self.with_value(reduce_big(k, self.modulus))
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        a.with_value(add_mod(a.value, b.value, a.modulus))
    }
    fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        a.with_value(sub_mod(a.value, b.value, a.modulus))
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        a.with_value(mul_mod(a.value, b.value, a.modulus))
    }
    fn neg(&self) -> Self {
        self.with_value(sub_mod(0, self.value, self.modulus))
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl PAdicRing for Zn {
    fn div_p_pow(&self, k: u32) -> Option<Self> {
        if k > self.digits {
            return None;
        }
        let pk = self.p.pow(k);
        if !self.value.is_multiple_of(pk) {
            return None;
        }
        let digits = self.digits - k;
        let modulus = self.p.pow(digits);
        Some(Zn {
            p: self.p,
            digits,
            modulus,
            value: (self.value / pk) % modulus,
        })
    }
    fn digits(&self) -> Option<u32> {
        Some(self.digits)
    }
    fn at_digits(&self, digits: u32) -> Self {
        let modulus = self.p.checked_pow(digits).expect("modulus overflow");
        Zn {
            p: self.p,
            digits,
            modulus,
            value: self.value % modulus,
        }
    }
}

impl DivExact for Zn {
    fn div_exact(&self, by: &Self) -> Result<Self> {
        let (a, b) = self.common(by);
        if b.value == 0 {
            return Err(Error::NotDivisible { coordinate: 0 });
        }
        let k = vp_u64(b.value, a.p);
        let q = a
            .div_p_pow(k)
            .ok_or(Error::NotDivisible { coordinate: 0 })?;
        let unit = b
            .div_p_pow(k)
            .expect("valuation divides")
            .at_digits(q.digits);
        let inv = inv_mod(unit.value, unit.modulus).expect("unit");
        Ok(q.with_value(mul_mod(q.value, inv, q.modulus)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_p_power_loses_digits() {
        let a = Zn::new(3, 4, 18);
        let q = a.div_exact(&Zn::new(3, 4, 3)).unwrap();
        assert_eq!(q.digits(), Some(3));
        assert_eq!(q.value(), 6);
        assert!(Zn::new(3, 4, 2).div_exact(&Zn::new(3, 4, 3)).is_err());
    }

    #[test]
    fn mixed_precision_uses_the_smaller() {
        let a = Zn::new(5, 3, 126);
        let b = Zn::new(5, 1, 1);
        assert_eq!(a.add(&b).digits(), Some(1));
        assert_eq!(a, Zn::new(5, 1, 1));
    }
}
