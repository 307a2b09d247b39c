//! `O_{K_v}/p = F_p[t_v]/(t_v^{e_v})` with `t_v = zeta_{p^v} - 1`.
//!
//! Since `Phi_{p^v}(x) = (x - 1)^{e_v} mod p`, the residue ring of the
//! `v`-th cyclotomic level is a truncated polynomial ring. The inclusion
//! of level `v` into level `w` sends `t_v` to `t_w^{p^{w-v}}`, so
//! embedding only spreads coefficient indices.

use num_bigint::BigInt;
use num_rational::Ratio;

use super::{ram_index, reduce_big, DivExact, Ring, TruncPoly, Valuation};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ResidueElt {
    p: u64,
    depth: u32,
    coeffs: Vec<u64>,
}

impl ResidueElt {
    /// Builds an element from coefficients of `t^0, t^1, ...`; missing
    /// trailing coefficients are zero.
    pub fn new(p: u64, depth: u32, coeffs: &[i64]) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidParameter("tower depth is 1-based".into()));
        }
        let e = ram_index(p, depth);
        if coeffs.len() > e {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients exceed e_{depth} = {e}",
                coeffs.len()
            )));
        }
        let mut c = vec![0u64; e];
        for (slot, &x) in c.iter_mut().zip(coeffs) {
            *slot = x.rem_euclid(p as i64) as u64;
        }
        Ok(ResidueElt {
            p,
            depth,
            coeffs: c,
        })
    }

    pub(crate) fn from_raw(p: u64, depth: u32, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), ram_index(p, depth));
        ResidueElt { p, depth, coeffs }
    }

    pub fn zero(p: u64, depth: u32) -> Self {
        ResidueElt {
            p,
            depth,
            coeffs: vec![0; ram_index(p, depth)],
        }
    }

    pub fn constant(p: u64, depth: u32, c: i64) -> Self {
        let mut z = Self::zero(p, depth);
        z.coeffs[0] = c.rem_euclid(p as i64) as u64;
        z
    }

    /// `t_v = zeta_{p^v} - 1`.
    pub fn uniformizer(p: u64, depth: u32) -> Self {
        let mut z = Self::zero(p, depth);
        if z.coeffs.len() > 1 {
            z.coeffs[1] = 1;
        }
        z
    }

    /// `zeta_{p^v}^k = (1 + t_v)^k`, computed by the binomial theorem mod p.
    pub fn zeta_power(p: u64, depth: u32, k: u64) -> Self {
        let one_plus_t = Self::uniformizer(p, depth).add(&Self::constant(p, depth, 1));
        one_plus_t.pow(k)
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

    /// Image in the residue ring at the deeper level `target`.
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
        let mut out = Self::zero(self.p, target);
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
        while cur.depth > 1
            && cur
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || i % self.p as usize == 0)
        {
            let e = ram_index(self.p, cur.depth - 1);
            let coeffs = (0..e).map(|i| cur.coeffs[i * self.p as usize]).collect();
            cur = ResidueElt {
                p: self.p,
                depth: cur.depth - 1,
                coeffs,
            };
        }
        cur
    }

    /// `a^p`. Since `(sum c_i t_w^i)^p = sum c_i t_w^{ip}` and
    /// `t_w^p = t_{w-1}`, the result lives one level lower.
    pub fn frobenius(&self) -> Self {
        if self.depth == 1 {
            return Self::constant(self.p, 1, self.coeffs[0] as i64);
        }
        let e = ram_index(self.p, self.depth - 1);
        ResidueElt {
            p: self.p,
            depth: self.depth - 1,
            coeffs: self.coeffs[..e].to_vec(),
        }
    }

    /// Index of the first nonzero coefficient.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// `ord_t(a) / e_v`, normalized so that `v(p) = 1`.
    pub fn valuation(&self) -> Valuation {
        match self.t_order() {
            Some(i) => Valuation::Exact(Ratio::new(i as i64, self.coeffs.len() as i64)),
            None => Valuation::Infinite,
        }
    }

    /// Canonical lift to `(Z/p^digits)[t]/(t^e)`.
    pub fn lift(&self, digits: u32) -> TruncPoly {
        TruncPoly::new(self.p, digits, self.coeffs.clone())
    }

    pub fn from_lift(p: u64, depth: u32, lifted: &TruncPoly) -> Self {
        ResidueElt::from_raw(p, depth, lifted.coeffs().iter().map(|c| c % p).collect())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_depth(o)?;
        Ok(self.add(o))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.same_depth(o)?;
        Ok(self.sub(o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_depth(o)?;
        Ok(self.mul(o))
    }

    fn same_depth(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::RingMismatch(format!("p = {} vs {}", self.p, o.p)));
        }
        if self.depth != o.depth {
            return Err(Error::DepthMismatch(self.depth, o.depth));
        }
        Ok(())
    }

    fn aligned(&self, o: &Self) -> (ResidueElt, ResidueElt) {
        assert_eq!(self.p, o.p, "prime mismatch");
        let d = self.depth.max(o.depth);
        (self.embed_unchecked(d), o.embed_unchecked(d))
    }

    fn map2(&self, o: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let (a, b) = self.aligned(o);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| f(x, y))
            .collect();
        ResidueElt { coeffs, ..a }
    }

    /// Multiplicative inverse of a unit, by power-series inversion.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0] == 0 {
            return Err(Error::NotDivisible { coordinate: 0 });
        }
        let p = self.p;
        let e = self.coeffs.len();
        let inv0 = super::inv_mod(self.coeffs[0], p).expect("unit");
        let mut out = vec![0u64; e];
        out[0] = inv0;
        for k in 1..e {
            let mut s = 0u64;
            for j in 1..=k {
                s = (s + self.coeffs[j] * out[k - j]) % p;
            }
            out[k] = (p - s) % p * inv0 % p;
        }
        Ok(ResidueElt {
            coeffs: out,
            ..self.clone()
        })
    }

    /// The automorphism `zeta_{p^v} -> zeta_{p^v}^u`, i.e. `t -> (1+t)^u - 1`.
    pub fn galois(&self, u: i64) -> Result<Self> {
        let p = self.p as i64;
        if u.rem_euclid(p) == 0 {
            return Err(Error::InvalidParameter(format!(
                "u = {u} is not a unit mod p"
            )));
        }
        // (1+t)^{p^v} = 1 in F_p[t]/t^{e_v}, so u matters modulo p^v
        let u = u.rem_euclid(p.pow(self.depth)) as u64;
        let one = Self::constant(self.p, self.depth, 1);
        let s = Self::zeta_power(self.p, self.depth, u).sub(&one);
        let mut acc = self.zero_like();
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .mul(&s)
                .add(&Self::constant(self.p, self.depth, c as i64));
        }
        Ok(acc)
    }
}

impl PartialEq for ResidueElt {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Ring for ResidueElt {
    fn prime(&self) -> u64 {
        self.p
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.depth)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.p, self.depth, 1)
    }
    fn int_like(&self, k: &BigInt) -> Self {
        Self::constant(self.p, self.depth, reduce_big(k, self.p) as i64)
    }
    fn add(&self, o: &Self) -> Self {
        let p = self.p;
        self.map2(o, |x, y| (x + y) % p)
    }
    fn sub(&self, o: &Self) -> Self {
        let p = self.p;
        self.map2(o, |x, y| (x + p - y) % p)
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let p = a.p;
        let e = a.coeffs.len();
        let mut acc = vec![0u64; e];
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
                acc[i + j] += x * y;
            }
            if i % 64 == 63 {
                acc.iter_mut().for_each(|s| *s %= p);
            }
        }
        ResidueElt {
            coeffs: acc.into_iter().map(|s| s % p).collect(),
            ..a
        }
    }
    fn neg(&self) -> Self {
        let p = self.p;
        ResidueElt {
            coeffs: self.coeffs.iter().map(|&x| (p - x) % p).collect(),
            ..self.clone()
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
    fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            return self.one_like();
        }
        let mut base = self.clone();
        while e.is_multiple_of(self.p) {
            base = base.frobenius();
            e /= self.p;
        }
        let mut acc = base.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.embed(self.depth).expect("frobenius only lowers depth")
    }
}

impl DivExact for ResidueElt {
    /// Division by `b = t^k u`. The quotient is only determined modulo
    /// `t^{e-k}`; the representative returned has zero coefficients from
    /// `t^{e-k}` on.
    fn div_exact(&self, by: &Self) -> Result<Self> {
        let (a, b) = self.aligned(by);
        let k = b.t_order().ok_or(Error::NotDivisible { coordinate: 0 })?;
        if a.t_order().is_some_and(|i| i < k) {
            return Err(Error::NotDivisible { coordinate: 0 });
        }
        let e = a.coeffs.len();
        let shift = |x: &ResidueElt| {
            let mut c = vec![0u64; e];
            c[..e - k].copy_from_slice(&x.coeffs[k..]);
            ResidueElt {
                coeffs: c,
                ..x.clone()
            }
        };
        let unit = shift(&b);
        let q = shift(&a).mul(&unit.inverse()?);
        let mut c = q.coeffs;
        c[e - k..].iter_mut().for_each(|x| *x = 0);
        Ok(ResidueElt { coeffs: c, ..a })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial_oracle(p: u64, n: u64) -> Vec<u64> {
        // Pascal's triangle over the integers, reduced at the end.
        let mut row: Vec<u128> = vec![1];
        for _ in 0..n {
            let mut next = vec![1u128; row.len() + 1];
            for j in 1..row.len() {
                next[j] = (row[j - 1] + row[j]) % (p as u128).pow(8);
            }
            row = next;
        }
        row.into_iter().map(|c| (c % p as u128) as u64).collect()
    }

    #[test]
    fn t_squared_vanishes_at_depth_one() {
        let t = ResidueElt::uniformizer(3, 1);
        assert!(t.mul(&t).is_zero());
    }

    #[test]
    fn freshmans_dream() {
        let x = ResidueElt::new(3, 2, &[1, 1]).unwrap();
        assert_eq!(x.pow(3), ResidueElt::new(3, 2, &[1, 0, 0, 1]).unwrap());
    }

    #[test]
    fn one_plus_t_to_the_ramification_index() {
        for (p, v) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2)] {
            let e = ram_index(p, v) as u64;
            let got = ResidueElt::new(p, v, &[1, 1]).unwrap().pow(e);
            let mut want = binomial_oracle(p, e);
            want.truncate(e as usize);
            assert_eq!(got.coeffs(), &want[..], "p={p} v={v}");
        }
    }

    #[test]
    fn valuation_normalization() {
        assert_eq!(
            ResidueElt::uniformizer(3, 2).valuation(),
            Valuation::exact(1, 6)
        );
        let zeta_minus_one = ResidueElt::zeta_power(3, 1, 1).sub(&ResidueElt::constant(3, 1, 1));
        assert_eq!(zeta_minus_one.valuation(), Valuation::exact(1, 2));
        assert_eq!(ResidueElt::zero(3, 1).valuation(), Valuation::Infinite);
    }

    #[test]
    fn embedding_uses_the_freshmans_dream() {
        let t1 = ResidueElt::uniformizer(3, 1).embed(2).unwrap();
        let t2 = ResidueElt::uniformizer(3, 2);
        assert_eq!(t1, t2.pow(3));
        assert_eq!(t1.coeffs()[3], 1);
    }

    #[test]
    fn depth_mismatch_is_reported() {
        let a = ResidueElt::uniformizer(3, 1);
        let b = ResidueElt::uniformizer(3, 2);
        assert_eq!(a.checked_add(&b), Err(Error::DepthMismatch(1, 2)));
    }

    #[test]
    fn frobenius_lands_one_level_down() {
        let a = ResidueElt::new(5, 2, &[2, 3, 0, 1, 4, 4]).unwrap();
        let f = a.frobenius();
        assert_eq!(f.depth(), 1);
        assert_eq!(f, a.mul(&a).mul(&a).mul(&a).mul(&a));
    }

    #[test]
    fn galois_composes() {
        let a = ResidueElt::new(3, 2, &[1, 2, 0, 1, 2, 1]).unwrap();
        let lhs = a.galois(2).unwrap().galois(4).unwrap();
        assert_eq!(lhs, a.galois(8).unwrap());
        assert_eq!(a.galois(1).unwrap(), a);
        let z = ResidueElt::zeta_power(3, 2, 1);
        assert_eq!(z.galois(5).unwrap(), ResidueElt::zeta_power(3, 2, 5));
        assert!(a.galois(3).is_err());
    }

    #[test]
    fn division_by_uniformizer_power() {
        let t = ResidueElt::uniformizer(3, 2);
        let u = ResidueElt::new(3, 2, &[2, 1, 1]).unwrap();
        let d = t.pow(2).mul(&u);
        let q = d.div_exact(&t.pow(2)).unwrap();
        assert_eq!(q.mul(&t.pow(2)), d);
        assert!(t.div_exact(&t.pow(2)).is_err());
    }
}
