//! The maps `theta'_n: V/p -> W_n(V)/p` and `theta_n: W(R) -> W_n(V^)`,
//! the kernel generator `xi_n`, and roots of unity in `W_n(V^)`.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::Serialize;

use crate::arith::{CycElt, PAdicRing, Ring};
use crate::error::{Error, Result};
use crate::tilt::TiltElt;
use crate::witt::WittVec;

/// `theta_n(a)` together with the precision it is known to.
#[derive(Debug, Clone)]
pub struct ThetaResult {
    pub value: WittVec<CycElt>,
    /// p-adic digits to which every coordinate is correct.
    pub effective_precision: u32,
    /// Deepest tilt level read.
    pub consumed_window: usize,
}

/// Summary of a [`ThetaResult`] for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaSummary {
    pub effective_precision: u32,
    pub consumed_window: usize,
}

impl ThetaResult {
    pub fn summary(&self) -> ThetaSummary {
        ThetaSummary {
            effective_precision: self.effective_precision,
            consumed_window: self.consumed_window,
        }
    }
}

/// `theta'_n(x) = [x]_n^p = [x^p]_n`, meaningful modulo `p W_n`.
pub fn theta_prime(x: &CycElt, n: usize) -> WittVec<CycElt> {
    WittVec::teichmuller(&x.pow(x.p()), n)
}

/// The valuation `(1 - p^{-n})/(p - 1)` cutting out the kernel of `theta'_n`.
pub fn theta_prime_kernel_bound(p: u64, n: u32) -> Ratio<i64> {
    let pn = p.pow(n) as i64;
    Ratio::new(pn - 1, pn * (p as i64 - 1))
}

/// Whether `a - b` lies in `p W_n(A)`.
pub fn congruent_mod_p(a: &WittVec<CycElt>, b: &WittVec<CycElt>) -> Result<bool> {
    match a.sub(b)?.divide_by_p() {
        Ok(_) => Ok(true),
        Err(Error::NotDivisible { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The mod-p section of `F`: `theta'_n(x)`, checked against
/// `F(theta'_n(x)) = theta'_{n-1}(x^p)` and `R(theta'_n(x)) = theta'_{n-1}(x)`.
pub fn frobenius_mod_p_section(x: &CycElt, n: usize) -> Result<WittVec<CycElt>> {
    if n < 2 {
        return Err(Error::Length("the Frobenius section needs n >= 2".into()));
    }
    let t = theta_prime(x, n);
    let f = t.frobenius()?;
    let want_f = theta_prime(&x.pow(x.p()), n - 1);
    let r = t.restrict()?;
    let want_r = theta_prime(x, n - 1);
    if !congruent_mod_p(&f, &want_f)? || !congruent_mod_p(&r, &want_r)? {
        return Err(Error::Unsupported(
            "Frobenius section identity failed".into(),
        ));
    }
    Ok(t)
}

/// `theta_n(a)` to `digits` p-adic digits by the limit algorithm: lift
/// the level-`N` coordinates of `a` (that is, the level-`(n+N-1)`
/// coordinates of `F^{n-1} a`) to `W_{n+N-1}(V^)` and apply `F^{N-1}`.
///
/// Needs Witt length `n + N - 1` and windows of at least `N`.
pub fn theta_n(a: &WittVec<TiltElt>, n: usize, digits: u32) -> Result<ThetaResult> {
    if n == 0 || digits == 0 {
        return Err(Error::InvalidParameter(
            "n and the precision must be positive".into(),
        ));
    }
    let level = digits as usize;
    let len = n + level - 1;
    if a.len() < len {
        return Err(Error::Precision(format!(
            "theta_{n} to {digits} digits needs Witt length {len}, have {}",
            a.len()
        )));
    }
    let lifts = a.coords()[..len]
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let r = x.level(level).map_err(|_| {
                Error::Precision(format!(
                    "theta_{n} to {digits} digits needs window {level} at coordinate {i}, have {}",
                    x.window()
                ))
            })?;
            Ok(CycElt::lift_residue(r, digits))
        })
        .collect::<Result<Vec<_>>>()?;
    let value = WittVec::new(lifts)?.frobenius_pow(level - 1)?;
    let value = value.map(|c| c.at_digits(digits));
    Ok(ThetaResult {
        value,
        effective_precision: digits,
        consumed_window: level,
    })
}

/// Independent evaluation `theta_n(a) = sum_i p^i [ (a_i^{p^{-i}})^# ]_n`.
///
/// Term `i` is needed to `max(1, N - i)` digits, for `i < n + N - 1`;
/// this reads window `i + max(1, N - i)` at coordinate `i`.
pub fn theta_n_oracle(a: &WittVec<TiltElt>, n: usize, digits: u32) -> Result<ThetaResult> {
    if n == 0 || digits == 0 {
        return Err(Error::InvalidParameter(
            "n and the precision must be positive".into(),
        ));
    }
    let p = a.prime();
    let terms = (n + digits as usize - 1).min(a.len());
    let mut acc: Option<WittVec<CycElt>> = None;
    let mut consumed = 0;
    for i in 0..terms {
        let d = (digits as usize).saturating_sub(i).max(1) as u32;
        let s = a.coord(i).sharp(i + 1, d)?.at_digits(digits);
        consumed = consumed.max(i + d as usize);
        let pi = num_traits::pow(BigInt::from(p), i);
        let term = WittVec::teichmuller(&s, n).mul(&WittVec::from_int(&s, n, &pi))?;
        acc = Some(match acc {
            None => term,
            Some(x) => x.add(&term)?,
        });
    }
    if a.len() < n + digits as usize - 1 {
        return Err(Error::Precision(format!(
            "oracle for theta_{n} to {digits} digits needs Witt length {}",
            n + digits as usize - 1
        )));
    }
    Ok(ThetaResult {
        value: acc.expect("at least one term"),
        effective_precision: digits,
        consumed_window: consumed,
    })
}

/// `[x]_len - 1`.
pub fn teichmuller_minus_one(x: &TiltElt, len: usize) -> Result<WittVec<TiltElt>> {
    WittVec::teichmuller(x, len).sub(&WittVec::one(x, len))
}

/// `xi_n = ([eps] - 1)/([eps_n] - 1)` in `W_len(R)` by exact division.
/// Needs `window + n - 1 <= max_depth`.
pub fn xi_generator(
    p: u64,
    n: u32,
    len: usize,
    window: usize,
    max_depth: u32,
) -> Result<WittVec<TiltElt>> {
    let eps = TiltElt::epsilon(p, 0, window, max_depth)?;
    let eps_n = TiltElt::epsilon(p, n, window, max_depth)?;
    let d = teichmuller_minus_one(&eps, len)?;
    let b = teichmuller_minus_one(&eps_n, len)?;
    d.divide_exact(&b)
}

/// `xi_n = sum_{j < p^n} [eps_n^j]`, from `X^{p^n} - 1 = (X - 1) sum X^j`
/// and multiplicativity of Teichmuller representatives.
pub fn xi_closed_form(
    p: u64,
    n: u32,
    len: usize,
    window: usize,
    max_depth: u32,
) -> Result<WittVec<TiltElt>> {
    let eps_n = TiltElt::epsilon(p, n, window, max_depth)?;
    let powers: Vec<TiltElt> = (0..p.pow(n)).map(|j| eps_n.pow(j)).collect();
    WittVec::teichmuller_sum(&powers, len)
}

/// The `p^m`-th roots of unity available at the tower depth of `like`.
fn roots_of_unity(like: &CycElt, m: u32) -> Vec<CycElt> {
    let p = like.p();
    let k = m.min(like.depth());
    let digits = like.digits().expect("cyclotomic elements carry digits");
    (0..p.pow(k) as i64)
        .map(|j| CycElt::zeta_power(p, like.depth(), digits, j * p.pow(like.depth() - k) as i64))
        .collect()
}

/// If `a` is a `p^m`-th root of unity of `W_n(V^)`, the `zeta` with `a = [zeta]_n`.
///
/// Fails with the first ghost coordinate outside `mu_{p^m}` when
/// `a^{p^m} != 1`, and with the first nonzero higher coordinate if
/// `a^{p^m} = 1` without `a` being a Teichmuller representative.
pub fn classify_root_of_unity(a: &WittVec<CycElt>, m: u32) -> Result<CycElt> {
    let p = a.prime();
    let depth = a
        .coords()
        .iter()
        .map(CycElt::depth)
        .max()
        .expect("nonempty");
    let a = a.try_map(|c| c.embed(depth))?;
    let like = a.coord(0).clone();
    let power = a.pow(p.pow(m))?;
    let one = WittVec::one(&like, a.len());
    let roots = roots_of_unity(&like, m);
    let in_mu = |x: &CycElt| roots.iter().any(|z| z == x);
    if power != one {
        let ghost = a.ghost();
        let coordinate = ghost
            .iter()
            .position(|w| !in_mu(w))
            .or_else(|| {
                power
                    .coords()
                    .iter()
                    .zip(one.coords())
                    .position(|(x, y)| x != y)
            })
            .unwrap_or(0);
        return Err(Error::NotRootOfUnity { coordinate });
    }
    if let Some(i) = a.coords().iter().skip(1).position(|c| !c.is_zero()) {
        return Err(Error::NoTeichmullerForm { coordinate: i + 1 });
    }
    if !in_mu(a.coord(0)) {
        return Err(Error::NotRootOfUnity { coordinate: 0 });
    }
    Ok(a.coord(0).clone())
}
