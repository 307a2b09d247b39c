//! `O_{K_v}/p^N = (Z/p^N)[x]/Phi_{p^v}(x)`, with `x = zeta_{p^v}`.

use num_bigint::BigInt;
use num_rational::Ratio;

use super::{
    add_mod, mul_mod, ram_index, reduce_big, sub_mod, vp_u64, DivExact, PAdicRing, ResidueElt,
    Ring, Valuation,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CycElt {
    p: u64,
    depth: u32,
    digits: u32,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl CycElt {
    /// Builds `sum coeffs[i] x^i`, reducing modulo `Phi_{p^v}` when more
    /// than `phi(p^v)` coefficients are given.
    pub fn new(p: u64, depth: u32, digits: u32, coeffs: &[i64]) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidParameter("tower depth is 1-based".into()));
        }
        if digits == 0 {
            return Err(Error::InvalidParameter("precision must be positive".into()));
        }
        let modulus = p
            .checked_pow(digits)
            .filter(|&m| m < 1 << 62)
            .ok_or_else(|| Error::InvalidParameter(format!("p^{digits} too large")))?;
        let raw: Vec<u64> = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(modulus as i128) as u64)
            .collect();
        let mut z = Self::zero(p, depth, digits);
        let reduced = z.reduce(raw);
        z.coeffs = reduced;
        Ok(z)
    }

    pub fn zero(p: u64, depth: u32, digits: u32) -> Self {
        let modulus = p.pow(digits);
        CycElt {
            p,
            depth,
            digits,
            modulus,
            coeffs: vec![0; ram_index(p, depth)],
        }
    }

    pub fn constant(p: u64, depth: u32, digits: u32, c: i64) -> Self {
        let mut z = Self::zero(p, depth, digits);
        z.coeffs[0] = (c as i128).rem_euclid(z.modulus as i128) as u64;
        z
    }

    /// `zeta_{p^v}^k`.
    pub fn zeta_power(p: u64, depth: u32, digits: u32, k: i64) -> Self {
        let order = p.pow(depth) as i64;
        let k = k.rem_euclid(order) as usize;
        let mut raw = vec![0u64; k + 1];
        raw[k] = 1;
        let mut z = Self::zero(p, depth, digits);
        z.coeffs = z.reduce(raw);
        z
    }

    /// `pi = zeta_{p^v} - 1`.
    pub fn uniformizer(p: u64, depth: u32, digits: u32) -> Self {
        Self::zeta_power(p, depth, digits, 1).sub(&Self::constant(p, depth, digits, 1))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn ram_index(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients as balanced or plain residues, for display.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Reduce a coefficient vector (already mod p^N) modulo
    /// `Phi_{p^v}(x) = sum_{i<p} x^{i p^{v-1}}`.
    fn reduce(&self, mut raw: Vec<u64>) -> Vec<u64> {
        let m = self.modulus;
        let order = self.p.pow(self.depth) as usize;
        if raw.len() > order {
            for k in order..raw.len() {
                let c = raw[k];
                if c != 0 {
                    raw[k % order] = add_mod(raw[k % order], c, m);
                }
            }
            raw.truncate(order);
        }
        let phi = self.coeffs.len();
        let q = self.p.pow(self.depth - 1) as usize;
        for k in (phi..raw.len()).rev() {
            let c = raw[k];
            if c == 0 {
                continue;
            }
            raw[k] = 0;
            for i in 0..(self.p as usize - 1) {
                let idx = k - phi + i * q;
                raw[idx] = sub_mod(raw[idx], c, m);
            }
        }
        raw.resize(phi, 0);
        raw
    }

    /// Image at the deeper level `target` under `x -> x^{p^{target-v}}`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target < self.depth {
            return Err(Error::DepthMismatch(self.depth, target));
        }
        Ok(self.embed_unchecked(target))
    }

    fn embed_unchecked(&self, target: u32) -> Self {
        if target == self.depth {
            return self.clone();
        }
        let stride = self.p.pow(target - self.depth) as usize;
        let mut out = Self::zero(self.p, target, self.digits);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out.coeffs[i * stride] = c;
            }
        }
        out
    }

    /// Same element at the smallest tower depth that contains it.
    pub fn canonical(&self) -> Self {
        let mut cur = self.clone();
        let p = self.p as usize;
        while cur.depth > 1
            && cur
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || i % p == 0)
        {
            let phi = ram_index(self.p, cur.depth - 1);
            let coeffs = (0..phi).map(|i| cur.coeffs[i * p]).collect();
            cur = CycElt {
                depth: cur.depth - 1,
                coeffs,
                ..cur
            };
        }
        cur
    }

    /// Coefficients in the basis `1, t, t^2, ...` with `t = x - 1`.
    pub fn t_basis(&self) -> Vec<u64> {
        let m = self.modulus;
        let n = self.coeffs.len();
        let mut out = vec![0u64; n];
        // x^i = sum_j C(i, j) t^j
        let mut row = vec![0u64; n];
        row[0] = 1 % m;
        for i in 0..n {
            if i > 0 {
                for j in (1..=i).rev() {
                    row[j] = add_mod(row[j], row[j - 1], m);
                }
            }
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            for j in 0..=i {
                out[j] = add_mod(out[j], mul_mod(c, row[j], m), m);
            }
        }
        out
    }

    /// Inverse of [`CycElt::t_basis`]: `t^i = sum_j C(i, j)(-1)^{i-j} x^j`.
    pub fn from_t_basis(p: u64, depth: u32, digits: u32, t_coeffs: &[u64]) -> Self {
        let mut z = Self::zero(p, depth, digits);
        let m = z.modulus;
        let n = z.coeffs.len();
        assert!(t_coeffs.len() <= n);
        let mut row = vec![0u64; n];
        row[0] = 1 % m;
        for i in 0..t_coeffs.len() {
            if i > 0 {
                for j in (1..=i).rev() {
                    row[j] = add_mod(row[j], row[j - 1], m);
                }
            }
            let c = t_coeffs[i] % m;
            if c == 0 {
                continue;
            }
            for j in 0..=i {
                let term = mul_mod(c, row[j], m);
                z.coeffs[j] = if (i - j) % 2 == 0 {
                    add_mod(z.coeffs[j], term, m)
                } else {
                    sub_mod(z.coeffs[j], term, m)
                };
            }
        }
        z
    }

    /// Canonical lift of a residue element: coefficients in `{0..p-1}`, `t -> x - 1`.
    pub fn lift_residue(r: &ResidueElt, digits: u32) -> Self {
        Self::from_t_basis(r.p(), r.depth(), digits, r.coeffs())
    }

    /// Reduction modulo `p`, `x - 1 -> t`.
    pub fn reduce_mod_p(&self) -> ResidueElt {
        let p = self.p;
        ResidueElt::from_raw(
            p,
            self.depth,
            self.t_basis().into_iter().map(|c| c % p).collect(),
        )
    }

    /// `v_p`, normalized with `v(p) = 1`.
    ///
    /// `Phi_{p^v}(1 + t)` is Eisenstein, so `1, t, ..., t^{e-1}` have
    /// valuations `0, 1/e, ...` that are distinct modulo `Z` and
    /// `v(sum b_i t^i) = min(v_p(b_i) + i/e)`. This is the same number
    /// as the count of exact divisions by `pi = x - 1`.
    pub fn valuation(&self) -> Valuation {
        let e = self.coeffs.len() as i64;
        let best = self
            .t_basis()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| vp_u64(b, self.p) as i64 * e + i as i64)
            .min();
        match best {
            Some(k) => Valuation::Exact(Ratio::new(k, e)),
            None => Valuation::AtLeast(Ratio::from_integer(self.digits as i64)),
        }
    }

    /// Apply `x -> x^u` (the Galois automorphism with cyclotomic character `u`).
    pub fn galois(&self, u: i64) -> Result<Self> {
        if u.rem_euclid(self.p as i64) == 0 {
            return Err(Error::InvalidParameter(format!(
                "u = {u} is not a unit mod p"
            )));
        }
        let order = self.p.pow(self.depth) as i64;
        let mut raw = vec![0u64; order as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let j = (i as i64 * u).rem_euclid(order) as usize;
                raw[j] = add_mod(raw[j], c, self.modulus);
            }
        }
        let coeffs = self.reduce(raw);
        Ok(CycElt {
            coeffs,
            ..self.clone()
        })
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(self.add(o))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(self.sub(o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(self.mul(o))
    }

    fn same_ring(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::RingMismatch(format!("p = {} vs {}", self.p, o.p)));
        }
        if self.depth != o.depth {
            return Err(Error::DepthMismatch(self.depth, o.depth));
        }
        if self.digits != o.digits {
            return Err(Error::RingMismatch(format!(
                "precision {} vs {}",
                self.digits, o.digits
            )));
        }
        Ok(())
    }

    fn aligned(&self, o: &Self) -> (CycElt, CycElt) {
        assert_eq!(self.p, o.p, "prime mismatch");
        let d = self.depth.max(o.depth);
        let n = self.digits.min(o.digits);
        (
            self.embed_unchecked(d).at_digits(n),
            o.embed_unchecked(d).at_digits(n),
        )
    }

    fn map2(&self, o: &Self, f: impl Fn(u64, u64, u64) -> u64) -> Self {
        let (a, b) = self.aligned(o);
        let m = a.modulus;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| f(x, y, m))
            .collect();
        CycElt { coeffs, ..a }
    }

    /// Inverse of a unit: invert modulo `p` in the residue ring, then
    /// Newton-lift `y <- y(2 - u y)`.
    pub fn unit_inverse(&self) -> Result<Self> {
        let r = self.reduce_mod_p();
        let y0 = r
            .inverse()
            .map_err(|_| Error::NotDivisible { coordinate: 0 })?;
        let mut y = Self::lift_residue(&y0, self.digits);
        let two = self.i64_like(2);
        let mut correct = 1;
        while correct < self.digits {
            y = y.mul(&two.sub(&self.mul(&y)));
            correct *= 2;
        }
        Ok(y)
    }
}

impl PartialEq for CycElt {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Ring for CycElt {
    fn prime(&self) -> u64 {
        self.p
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.depth, self.digits)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.p, self.depth, self.digits, 1)
    }
    fn int_like(&self, k: &BigInt) -> Self {
        let mut z = self.zero_like();
        z.coeffs[0] = reduce_big(k, self.modulus);
        z
    }
    fn add(&self, o: &Self) -> Self {
        self.map2(o, add_mod)
    }
    fn sub(&self, o: &Self) -> Self {
        self.map2(o, sub_mod)
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let m = a.modulus as u128;
        let n = a.coeffs.len();
        let mut acc = vec![0u128; 2 * n - 1];
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
                let slot = &mut acc[i + j];
                *slot += x as u128 * y as u128;
                if *slot >= 1 << 120 {
                    *slot %= m;
                }
            }
        }
        let raw = acc.into_iter().map(|s| (s % m) as u64).collect();
        let coeffs = a.reduce(raw);
        CycElt { coeffs, ..a }
    }
    fn neg(&self) -> Self {
        let m = self.modulus;
        CycElt {
            coeffs: self.coeffs.iter().map(|&x| sub_mod(0, x, m)).collect(),
            ..self.clone()
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl PAdicRing for CycElt {
    fn div_p_pow(&self, k: u32) -> Option<Self> {
        if k > self.digits {
            return None;
        }
        let pk = self.p.pow(k);
        if self.coeffs.iter().any(|c| c % pk != 0) {
            return None;
        }
        let digits = self.digits - k;
        let modulus = self.p.pow(digits);
        let coeffs = self.coeffs.iter().map(|c| (c / pk) % modulus).collect();
        Some(CycElt {
            digits,
            modulus,
            coeffs,
            ..self.clone()
        })
    }
    fn digits(&self) -> Option<u32> {
        Some(self.digits)
    }
    fn at_digits(&self, digits: u32) -> Self {
        if digits == self.digits {
            return self.clone();
        }
        let modulus = self.p.checked_pow(digits).expect("modulus overflow");
        let coeffs = self.coeffs.iter().map(|c| c % modulus).collect();
        CycElt {
            digits,
            modulus,
            coeffs,
            ..self.clone()
        }
    }
}

impl DivExact for CycElt {
    /// Supports divisors of the form `p^k * unit`, which covers division
    /// by integers and by cyclotomic units.
    fn div_exact(&self, by: &Self) -> Result<Self> {
        let (a, b) = self.aligned(by);
        let k = match b
            .coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| vp_u64(c, a.p))
            .min()
        {
            Some(k) => k,
            None => return Err(Error::NotDivisible { coordinate: 0 }),
        };
        let unit = b.div_p_pow(k).expect("min valuation divides");
        if unit.reduce_mod_p().coeffs()[0] == 0 {
            return Err(Error::Unsupported(
                "division by a non-unit that is not p^k times a unit".into(),
            ));
        }
        let q = a
            .div_p_pow(k)
            .ok_or(Error::NotDivisible { coordinate: 0 })?;
        Ok(q.mul(&unit.at_digits(q.digits).unit_inverse()?))
    }
}
