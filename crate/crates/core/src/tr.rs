//! A model of `TR^n_*(V|K; p)` as the graded algebra `W_n(V^)[alpha_n]`,
//! with the operators `R`, `F`, the Galois action, and the kernel half of
//! the `TC` exact sequence.

use num_bigint::BigInt;

use crate::arith::{inv_mod, CycElt, Ring};
use crate::error::{Error, Result};
use crate::theta::{teichmuller_minus_one, theta_n};
use crate::tilt::TiltElt;
use crate::witt::WittVec;

/// `coeff * alpha_{eps,level}^{degree/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TRClass {
    level: usize,
    degree: u32,
    coeff: WittVec<CycElt>,
}

impl TRClass {
    /// Odd degrees only hold the zero class.
    pub fn new(level: usize, degree: u32, coeff: WittVec<CycElt>) -> Result<Self> {
        if coeff.len() != level {
            return Err(Error::Length(format!(
                "level {level} class with a Witt vector of length {}",
                coeff.len()
            )));
        }
        if degree % 2 == 1 && !coeff.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "degree {degree} groups vanish"
            )));
        }
        Ok(TRClass {
            level,
            degree,
            coeff,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self) -> &WittVec<CycElt> {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn power(&self) -> u32 {
        self.degree / 2
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::Length(format!(
                "levels {} and {}",
                self.level, other.level
            )));
        }
        TRClass::new(
            self.level,
            self.degree + other.degree,
            self.coeff.mul(&other.coeff)?,
        )
    }
}

fn witt_pow(x: &WittVec<CycElt>, e: u32) -> Result<WittVec<CycElt>> {
    x.pow(e as u64)
}

/// The operators, at a fixed prime, coefficient precision and tower depth.
#[derive(Debug, Clone, Copy)]
pub struct TrModel {
    p: u64,
    digits: u32,
    max_depth: u32,
}

impl TrModel {
    pub fn new(p: u64, digits: u32, max_depth: u32) -> Result<Self> {
        if digits == 0 || max_depth == 0 {
            return Err(Error::InvalidParameter(
                "precision and depth must be positive".into(),
            ));
        }
        Ok(TrModel {
            p,
            digits,
            max_depth,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Digits available at level `n`: `theta_n` of `eps_n` reads window
    /// `N`, which needs tower depth `N + n - 1`.
    pub fn digits_at(&self, n: usize) -> Result<u32> {
        let room = (self.max_depth + 1).saturating_sub(n as u32);
        let d = self.digits.min(room);
        if d == 0 {
            return Err(Error::Precision(format!(
                "level {n} needs tower depth above {}",
                self.max_depth
            )));
        }
        Ok(d)
    }

    fn like(&self, n: usize) -> Result<CycElt> {
        Ok(CycElt::constant(self.p, 1, self.digits_at(n)?, 0))
    }

    fn eps(&self, shift: u32, window: usize) -> Result<TiltElt> {
        TiltElt::epsilon(self.p, shift, window, self.max_depth)
    }

    /// `theta_n([x])` for a single tilt element, by the limit algorithm.
    fn theta_teichmuller(&self, x: &TiltElt, n: usize, digits: u32) -> Result<WittVec<CycElt>> {
        let len = n + digits as usize - 1;
        Ok(theta_n(&WittVec::teichmuller(x, len), n, digits)?.value)
    }

    /// `alpha_{eps,n}`.
    pub fn alpha(&self, n: usize) -> Result<TRClass> {
        TRClass::new(n, 2, WittVec::one(&self.like(n)?, n))
    }

    /// The class `c * alpha^m` in degree `2m`.
    pub fn class(&self, n: usize, m: u32, coeff: WittVec<CycElt>) -> Result<TRClass> {
        TRClass::new(n, 2 * m, coeff)
    }

    /// `beta_{eps,n} = theta_n([eps_n] - 1) alpha_{eps,n}`.
    pub fn beta(&self, n: usize) -> Result<TRClass> {
        if n == 0 {
            return Err(Error::InvalidParameter("levels start at 1".into()));
        }
        let digits = self.digits_at(n)?;
        let t = self.theta_teichmuller(&self.eps(n as u32, digits as usize)?, n, digits)?;
        let coeff = t.sub(&WittVec::one(t.coord(0), n))?;
        TRClass::new(n, 2, coeff)
    }

    /// `lambda_n = theta_{n-1}(([eps_{n-1}] - 1)/([eps_n] - 1))`, from the
    /// exact quotient `sum_{j<p} [eps_n^j]` in `W(R)`.
    pub fn lambda(&self, n: usize) -> Result<WittVec<CycElt>> {
        if n < 2 {
            return Err(Error::Length("restriction needs level at least 2".into()));
        }
        // eps_n needs one more level of tower depth than eps_{n-1}
        let digits = self.digits_at(n)?;
        let eps_n = self.eps(n as u32, digits as usize)?;
        let mut acc: Option<WittVec<CycElt>> = None;
        for j in 0..self.p {
            let t = self.theta_teichmuller(&eps_n.pow(j), n - 1, digits)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t)?,
            });
        }
        Ok(acc.expect("p > 0 terms"))
    }

    /// `lambda_n` by exact division in `W(R)` followed by the limit
    /// algorithm, to `digits` digits. Division costs one tilt level per
    /// Witt coordinate, so only small precisions are reachable.
    pub fn lambda_by_division(&self, n: usize, digits: u32) -> Result<WittVec<CycElt>> {
        if n < 2 {
            return Err(Error::Length("restriction needs level at least 2".into()));
        }
        let len = n - 1 + digits as usize - 1;
        let window = (self.max_depth + 1 - n as u32) as usize;
        let d = teichmuller_minus_one(&self.eps(n as u32 - 1, window)?, len)?;
        let b = teichmuller_minus_one(&self.eps(n as u32, window)?, len)?;
        Ok(theta_n(&d.divide_exact(&b)?, n - 1, digits)?.value)
    }

    /// `mu_n(u) = theta_n(([eps_n] - 1)/([eps_n^u] - 1))`, from the exact
    /// quotient `sum_{j<u'} [eps_n^{uj}]` with `u u' = 1 mod p^n`; the
    /// value in `W_n(V^)` does not depend on the choice of `u'`.
    pub fn mu(&self, u: i64, n: usize) -> Result<WittVec<CycElt>> {
        let pn = self.p.pow(n as u32);
        let ur = self.unit(u, pn)?;
        let ui = inv_mod(ur, pn).expect("unit");
        let digits = self.digits_at(n)?;
        let eps_n = self.eps(n as u32, digits as usize)?;
        let step = eps_n.pow(ur);
        let mut term = TiltElt::constant(self.p, 1, digits as usize);
        let mut acc: Option<WittVec<CycElt>> = None;
        for _ in 0..ui {
            let t = self.theta_teichmuller(&term, n, digits)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t)?,
            });
            term = term.mul(&step);
        }
        Ok(acc.expect("u' >= 1"))
    }

    /// `mu_n(u)` by exact division in `W(R)`, to `digits` digits.
    pub fn mu_by_division(&self, u: i64, n: usize, digits: u32) -> Result<WittVec<CycElt>> {
        let pn = self.p.pow(n as u32);
        let ur = self.unit(u, pn)?;
        let len = n + digits as usize - 1;
        let window = (self.max_depth + 1 - n as u32) as usize;
        let eps_n = self.eps(n as u32, window)?;
        let d = teichmuller_minus_one(&eps_n, len)?;
        let b = teichmuller_minus_one(&eps_n.pow(ur), len)?;
        Ok(theta_n(&d.divide_exact(&b)?, n, digits)?.value)
    }

    fn unit(&self, u: i64, modulus: u64) -> Result<u64> {
        if u.rem_euclid(self.p as i64) == 0 {
            return Err(Error::InvalidParameter(format!(
                "u = {u} is not a unit mod p"
            )));
        }
        Ok(u.rem_euclid(modulus as i64) as u64)
    }

    /// `R(c alpha_n^m) = R(c) lambda_n^m alpha_{n-1}^m`.
    pub fn restriction(&self, a: &TRClass) -> Result<TRClass> {
        if a.level < 2 {
            return Err(Error::Length("restriction needs level at least 2".into()));
        }
        let mut c = a.coeff.restrict()?;
        if a.power() > 0 {
            c = c.mul(&witt_pow(&self.lambda(a.level)?, a.power())?)?;
        }
        TRClass::new(a.level - 1, a.degree, c)
    }

    /// `F(c alpha_n^m) = F(c) alpha_{n-1}^m`.
    pub fn frobenius(&self, a: &TRClass) -> Result<TRClass> {
        if a.level < 2 {
            return Err(Error::Length("Frobenius needs level at least 2".into()));
        }
        TRClass::new(a.level - 1, a.degree, a.coeff.frobenius()?)
    }

    /// `sigma(c alpha^m) = sigma(c) u^m mu(u)^m alpha^m` for `chi(sigma) = u`.
    pub fn galois(&self, a: &TRClass, u: i64) -> Result<TRClass> {
        self.unit(u, self.p)?;
        let mut c = a.coeff.try_map(|x| x.galois(u))?;
        if a.power() > 0 {
            let scale = WittVec::from_int(c.coord(0), a.level, &BigInt::from(u));
            let factor = scale.mul(&self.mu(u, a.level)?)?;
            c = c.mul(&witt_pow(&factor, a.power())?)?;
        }
        TRClass::new(a.level, a.degree, c)
    }

    /// Checks `(1 - xi^q W(phi^{-1}))(c ([eps_1] - 1)^q) = 0` in `W_m(R)`,
    /// with `xi = ([eps_1] - 1)/([eps_2] - 1)`. The identity holds for `c`
    /// in `W(F_p)`; other `c` give `false`.
    pub fn tc_kernel_check(&self, q: u32, c: &WittVec<TiltElt>) -> Result<bool> {
        let m = c.len();
        let window = c
            .coords()
            .iter()
            .map(TiltElt::window)
            .min()
            .expect("nonempty");
        let window = window.min(self.max_depth as usize - 1);
        let c = c.try_map(|x| x.restrict_window(window))?;
        let e1 = teichmuller_minus_one(&self.eps(1, window)?, m)?;
        let e2 = teichmuller_minus_one(&self.eps(2, window)?, m)?;
        let xi = e1.divide_exact(&e2)?;
        let x = c.mul(&e1.pow(q as u64)?)?;
        let twisted = x.try_map(TiltElt::pth_root)?;
        let y = xi.pow(q as u64)?.mul(&twisted)?;
        Ok(x.sub(&y)?.is_zero())
    }

    /// The image of `c in W_m(F_p)` in `W_m(R)` on the given window.
    pub fn prime_field_witt(&self, c: &[i64], window: usize) -> Result<WittVec<TiltElt>> {
        WittVec::new(
            c.iter()
                .map(|&x| TiltElt::constant(self.p, x, window))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests;
