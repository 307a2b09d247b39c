use num_bigint::BigInt;

use super::{add_mod, reduce_big, sub_mod, PAdicRing, Ring};

/// `(Z/p^M)[t]/(t^e)`: the p-torsion-free lift of a residue ring
/// `F_p[t]/(t^e)` used to run ghost-coordinate arithmetic in
/// characteristic `p`.
#[derive(Debug, Clone)]
pub struct TruncPoly {
    p: u64,
    digits: u32,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl TruncPoly {
    pub fn new(p: u64, digits: u32, coeffs: Vec<u64>) -> Self {
        let modulus = p.checked_pow(digits).expect("modulus overflow");
        let coeffs = coeffs.into_iter().map(|c| c % modulus).collect();
        TruncPoly {
            p,
            digits,
            modulus,
            coeffs,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn aligned(&self, other: &Self) -> (TruncPoly, TruncPoly) {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "truncation order mismatch"
        );
        let d = self.digits.min(other.digits);
        (self.at_digits(d), other.at_digits(d))
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        TruncPoly {
            coeffs,
            ..self.clone_meta()
        }
    }

    fn clone_meta(&self) -> TruncPoly {
        TruncPoly {
            p: self.p,
            digits: self.digits,
            modulus: self.modulus,
            coeffs: Vec::new(),
        }
    }
}

impl PartialEq for TruncPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Ring for TruncPoly {
    fn prime(&self) -> u64 {
        self.p
    }
    fn zero_like(&self) -> Self {
        self.with(vec![0; self.coeffs.len()])
    }
    fn one_like(&self) -> Self {
        let mut c = vec![0; self.coeffs.len()];
        c[0] = 1 % self.modulus;
        self.with(c)
    }
    fn int_like(&self, k: &BigInt) -> Self {
        let mut c = vec![0; self.coeffs.len()];
        c[0] = reduce_big(k, self.modulus);
        self.with(c)
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let m = a.modulus;
        a.with(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| add_mod(x, y, m))
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let m = a.modulus;
        a.with(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x, y, m))
                .collect(),
        )
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let m = a.modulus;
        let e = a.coeffs.len();
        let mut acc = vec![0u128; e];
        let bnz: Vec<(usize, u64)> = b
            .coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(j, y) in &bnz {
                if i + j >= e {
                    break;
                }
                let slot = &mut acc[i + j];
                *slot += x as u128 * y as u128;
                if *slot >= 1 << 120 {
                    *slot %= m as u128;
                }
            }
        }
        a.with(acc.into_iter().map(|s| (s % m as u128) as u64).collect())
    }
    fn neg(&self) -> Self {
        let m = self.modulus;
        self.with(self.coeffs.iter().map(|&x| sub_mod(0, x, m)).collect())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl PAdicRing for TruncPoly {
    fn div_p_pow(&self, k: u32) -> Option<Self> {
        if k > self.digits {
            return None;
        }
        let pk = self.p.pow(k);
        if self.coeffs.iter().any(|c| c % pk != 0) {
            return None;
        }
        let digits = self.digits - k;
        Some(TruncPoly::new(
            self.p,
            digits,
            self.coeffs.iter().map(|c| c / pk).collect(),
        ))
    }
    fn digits(&self) -> Option<u32> {
        Some(self.digits)
    }
    fn at_digits(&self, digits: u32) -> Self {
        TruncPoly::new(self.p, digits, self.coeffs.clone())
    }
}
