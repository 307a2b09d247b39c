//! The tilt `R = lim_phi V/p` at finite depth.
//!
//! A [`TiltElt`] with window `m` stores the levels `x^{(1)}, .., x^{(m)}`,
//! each a residue element at some tower depth, with `(x^{(v+1)})^p = x^{(v)}`.
//! It pins down `x` modulo elements of valuation at least `p^{m-1}`.

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::arith::{CycElt, DivExact, ResidueElt, Ring, Valuation};
use crate::error::{Error, Result};
use crate::witt::{GhostOp, WittCoeff};

#[derive(Debug, Clone)]
pub struct TiltElt {
    p: u64,
    coords: Vec<ResidueElt>,
}

impl TiltElt {
    /// Checks the Frobenius compatibility of the given levels.
    pub fn new(coords: Vec<ResidueElt>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::Precision("empty tilt window".into()))?;
        let a = TiltElt {
            p: first.p(),
            coords,
        };
        if !a.is_compatible() {
            return Err(Error::InvalidParameter(
                "levels are not Frobenius-compatible".into(),
            ));
        }
        Ok(a)
    }

    /// The element whose top level is `top`, lower levels by Frobenius.
    pub fn from_top(top: &ResidueElt, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::Precision("empty tilt window".into()));
        }
        let mut coords = vec![top.clone()];
        for _ in 1..window {
            let next = coords.last().expect("nonempty").frobenius();
            coords.push(next);
        }
        coords.reverse();
        Ok(TiltElt { p: top.p(), coords })
    }

    /// `eps_k`: level `v` is `zeta_{p^{v+k-1}}`. Needs `m + k - 1 <= max_depth`.
    pub fn epsilon(p: u64, shift: u32, window: usize, max_depth: u32) -> Result<Self> {
        if window == 0 {
            return Err(Error::Precision("empty tilt window".into()));
        }
        let top = window as u32 + shift - 1;
        if top > max_depth {
            return Err(Error::Precision(format!(
                "eps_{shift} on window {window} needs tower depth {top} > {max_depth}"
            )));
        }
        let coords = (1..=window as u32)
            .map(|v| match v + shift - 1 {
                0 => ResidueElt::constant(p, 1, 1),
                w => ResidueElt::zeta_power(p, w, 1),
            })
            .collect();
        Ok(TiltElt { p, coords })
    }

    /// The element with `x^{(1)} = c` whose higher levels take p-th roots
    /// coefficientwise, `sum c_i t_w^i -> sum c_i t_{w+1}^i`.
    pub fn tower_constant(c: &ResidueElt, window: usize, max_depth: u32) -> Result<Self> {
        if window == 0 {
            return Err(Error::Precision("empty tilt window".into()));
        }
        let top = c.depth() + window as u32 - 1;
        if top > max_depth {
            return Err(Error::Precision(format!(
                "tower depth {top} exceeds {max_depth}"
            )));
        }
        let coords = (0..window as u32)
            .map(|k| {
                let w = c.depth() + k;
                let mut cs: Vec<i64> = c.coeffs().iter().map(|&x| x as i64).collect();
                cs.truncate(crate::arith::ram_index(c.p(), w));
                ResidueElt::new(c.p(), w, &cs).expect("valid depth")
            })
            .collect();
        Ok(TiltElt { p: c.p(), coords })
    }

    /// The prime-field constant `k`.
    pub fn constant(p: u64, k: i64, window: usize) -> Self {
        TiltElt {
            p,
            coords: vec![ResidueElt::constant(p, 1, k); window.max(1)],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn window(&self) -> usize {
        self.coords.len()
    }

    /// Level `v` (1-based).
    pub fn level(&self, v: usize) -> Result<&ResidueElt> {
        if v == 0 || v > self.window() {
            return Err(Error::Precision(format!(
                "level {v} outside window [1, {}]",
                self.window()
            )));
        }
        Ok(&self.coords[v - 1])
    }

    pub fn levels(&self) -> &[ResidueElt] {
        &self.coords
    }

    /// Deepest tower depth among the levels.
    pub fn tower_depth(&self) -> u32 {
        self.coords
            .iter()
            .map(ResidueElt::depth)
            .max()
            .expect("nonempty")
    }

    pub fn restrict_window(&self, window: usize) -> Result<Self> {
        if window == 0 || window > self.window() {
            return Err(Error::Precision(format!(
                "cannot restrict window {} to {window}",
                self.window()
            )));
        }
        Ok(TiltElt {
            p: self.p,
            coords: self.coords[..window].to_vec(),
        })
    }

    pub fn is_compatible(&self) -> bool {
        self.coords.windows(2).all(|w| w[1].frobenius() == w[0])
    }

    /// `v_R(x) = p^{m-1} v(x^{(m)})` at the top level `m`; if that level
    /// vanishes only the bound `p^{m-1}` is known.
    pub fn valuation(&self) -> Valuation {
        let m = self.window() as u32;
        let scale = self.p.pow(m - 1) as i64;
        match self.coords[m as usize - 1].valuation() {
            Valuation::Exact(r) => Valuation::Exact(r * scale),
            _ => Valuation::AtLeast(Ratio::from_integer(scale)),
        }
    }

    /// `phi(x) = x^p`: a shift that gains one level.
    pub fn frobenius(&self) -> Self {
        let mut coords = Vec::with_capacity(self.window() + 1);
        coords.push(self.coords[0].frobenius());
        coords.extend(self.coords.iter().cloned());
        TiltElt { p: self.p, coords }
    }

    /// `phi^{-1}(x)`: a shift that loses one level.
    pub fn pth_root(&self) -> Result<Self> {
        if self.window() < 2 {
            return Err(Error::Precision("p-th root needs window at least 2".into()));
        }
        Ok(TiltElt {
            p: self.p,
            coords: self.coords[1..].to_vec(),
        })
    }

    /// `phi^k` for any integer `k`.
    pub fn frobenius_pow(&self, k: i64) -> Result<Self> {
        let mut a = self.clone();
        if k >= 0 {
            for _ in 0..k {
                a = a.frobenius();
            }
        } else {
            for _ in 0..(-k) {
                a = a.pth_root()?;
            }
        }
        Ok(a)
    }

    /// Galois action with cyclotomic character `u`.
    pub fn galois(&self, u: i64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.galois(u))
            .collect::<Result<_>>()?;
        Ok(TiltElt { p: self.p, coords })
    }

    /// `x^#` at level `v` to `digits` p-adic digits: the canonical lift of
    /// `x^{(v+N-1)}` raised to `p^{N-1}`, independent of the lift mod `p^N`.
    pub fn sharp(&self, v: usize, digits: u32) -> Result<CycElt> {
        self.sharp_perturbed(v, digits, &[])
    }

    /// [`TiltElt::sharp`] starting from the canonical lift plus `p * delta`
    /// (coefficients of `delta` in the `x`-basis).
    pub fn sharp_perturbed(&self, v: usize, digits: u32, delta: &[i64]) -> Result<CycElt> {
        if digits == 0 {
            return Err(Error::InvalidParameter("precision must be positive".into()));
        }
        let level = v + digits as usize - 1;
        let x = self.level(level).map_err(|_| {
            Error::Precision(format!(
                "sharp at level {v} to {digits} digits needs window {level}, have {}",
                self.window()
            ))
        })?;
        let p = self.p;
        let lift = CycElt::lift_residue(x, digits);
        let scaled: Vec<i64> = delta.iter().map(|d| d * p as i64).collect();
        let lift = lift.add(&CycElt::new(p, x.depth(), digits, &scaled)?);
        Ok(lift.pow(p.pow(digits - 1)))
    }

    fn map2(&self, o: &Self, f: impl Fn(&ResidueElt, &ResidueElt) -> ResidueElt) -> Self {
        assert_eq!(self.p, o.p, "prime mismatch");
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(x, y)| f(x, y))
            .collect();
        TiltElt { p: self.p, coords }
    }
}

impl PartialEq for TiltElt {
    /// Equality on the common window.
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.coords.iter().zip(&other.coords).all(|(x, y)| x == y)
    }
}

impl Ring for TiltElt {
    fn prime(&self) -> u64 {
        self.p
    }
    fn zero_like(&self) -> Self {
        TiltElt::constant(self.p, 0, self.window())
    }
    fn one_like(&self) -> Self {
        TiltElt::constant(self.p, 1, self.window())
    }
    fn int_like(&self, k: &BigInt) -> Self {
        let r = k % BigInt::from(self.p);
        let r = i64::try_from(r).expect("small residue");
        TiltElt::constant(self.p, r, self.window())
    }
    fn add(&self, o: &Self) -> Self {
        self.map2(o, Ring::add)
    }
    fn sub(&self, o: &Self) -> Self {
        self.map2(o, Ring::sub)
    }
    fn mul(&self, o: &Self) -> Self {
        self.map2(o, Ring::mul)
    }
    fn neg(&self) -> Self {
        TiltElt {
            p: self.p,
            coords: self.coords.iter().map(Ring::neg).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }
    /// Factors of `p` in the exponent are applied as `phi`, keeping the window.
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        while e > 0 && e.is_multiple_of(self.p) {
            base = base.frobenius();
            e /= self.p;
        }
        base.coords.truncate(self.window());
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

impl DivExact for TiltElt {
    /// Division at the top level `m`: with `k = ord_t(b^{(m)})`, the
    /// quotient is known modulo `t^{e-k}`, which determines the levels `v`
    /// with `p^{v-1} <= p^{m-1} - v_R(b)`.
    fn div_exact(&self, by: &Self) -> Result<Self> {
        let m = self.window().min(by.window());
        let p = self.p;
        let vb = match by.restrict_window(m)?.valuation() {
            Valuation::Exact(r) => r,
            _ => return Err(Error::NotDivisible { coordinate: 0 }),
        };
        let depth = self.coords[m - 1].depth().max(by.coords[m - 1].depth());
        let d = self.coords[m - 1].embed(depth)?;
        let b = by.coords[m - 1].embed(depth)?;
        let q = d.div_exact(&b)?;
        let room = Ratio::from_integer(p.pow(m as u32 - 1) as i64) - vb;
        let mut window = 0;
        while window < m && Ratio::from_integer(p.pow(window as u32) as i64) <= room {
            window += 1;
        }
        if window == 0 {
            return Err(Error::Precision(format!(
                "quotient by an element of valuation {vb} is undetermined on window {m}"
            )));
        }
        let mut top = q;
        for _ in window..m {
            top = top.frobenius();
        }
        TiltElt::from_top(&top, window)
    }
}

impl WittCoeff for TiltElt {
    /// Projection to a single level is a ring map `R -> V/p`, so each level
    /// of each output coordinate is computed over residues. Output
    /// coordinate `i` keeps the least window among the inputs it depends on
    /// and its lower levels follow from the top one by Frobenius.
    fn ghost_op(op: GhostOp, a: &[Self], b: &[Self]) -> Result<Vec<Self>> {
        let n = a.len();
        let windows: Vec<usize> = (0..n)
            .map(|i| {
                b.get(i)
                    .map_or(a[i].window(), |y| a[i].window().min(y.window()))
            })
            .collect();
        let out_len = op.out_len(n);
        let out_window: Vec<usize> = (0..out_len)
            .map(|i| windows[..op.support(i)].iter().copied().min().unwrap())
            .collect();
        let mut out: Vec<Option<TiltElt>> = vec![None; out_len];
        let mut distinct: Vec<usize> = out_window.clone();
        distinct.dedup();
        for &m in &distinct {
            let count = out_window.iter().filter(|&&w| w >= m).count();
            let inputs = op.support(count - 1);
            let level = |xs: &[TiltElt]| -> Vec<ResidueElt> {
                xs.iter()
                    .take(inputs)
                    .map(|x| x.coords[m - 1].clone())
                    .collect()
            };
            let top = ResidueElt::ghost_op(op, &level(a), &level(b))?;
            for (i, t) in top.iter().enumerate() {
                if out_window[i] == m {
                    out[i] = Some(TiltElt::from_top(t, m)?);
                }
            }
        }
        Ok(out
            .into_iter()
            .map(|x| x.expect("every window handled"))
            .collect())
    }

    fn precision(&self) -> Option<u32> {
        Some(self.window() as u32)
    }
}

#[cfg(test)]
mod tests;
