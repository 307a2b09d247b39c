//! Universal Witt polynomials over `Z`, obtained by ghost inversion in
//! `Z[a_0, .., a_{n-1}, b_0, .., b_{n-1}]` and cached once per
//! `(kind, p, n)`.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::WittVec;
use crate::arith::Ring;
use crate::error::{Error, Result};

/// Largest length and prime served by this backend.
pub const MAX_LEN: usize = 4;
pub const MAX_PRIME: u64 = 5;

const B_OFFSET: usize = MAX_LEN;
const VARS: usize = 2 * MAX_LEN;

type Monomial = [u16; VARS];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Sum,
    Product,
    Frobenius,
}

/// A sparse polynomial with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly {
    terms: HashMap<Monomial, BigInt>,
}

impl Poly {
    fn var(i: usize) -> Self {
        let mut m = [0; VARS];
        m[i] = 1;
        Poly {
            terms: HashMap::from([(m, BigInt::from(1))]),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_scaled(&mut self, other: &Poly, k: &BigInt) {
        for (m, c) in &other.terms {
            let e = self.terms.entry(*m).or_insert_with(BigInt::zero);
            *e += c * k;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut terms: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = *ma;
                for (x, y) in m.iter_mut().zip(mb) {
                    *x += y;
                }
                *terms.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { terms }
    }

    fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly {
            terms: HashMap::from([([0; VARS], BigInt::from(1))]),
        };
        let mut base = self.clone();
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

    fn div_exact(&mut self, k: &BigInt) {
        for c in self.terms.values_mut() {
            let (q, r) = c.div_rem(k);
            assert!(r.is_zero(), "universal polynomial not integral");
            *c = q;
        }
    }

    /// Evaluate at `a` (and `b`), caching powers of each variable.
    pub fn eval<R: Ring>(&self, a: &[R], b: &[R]) -> R {
        let like = &a[0];
        let mut cache: HashMap<(usize, u16), R> = HashMap::new();
        let mut acc = like.zero_like();
        for (m, c) in &self.terms {
            let mut term = like.int_like(c);
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = if v < B_OFFSET {
                    &a[v]
                } else {
                    &b[v - B_OFFSET]
                };
                let pw = cache.entry((v, e)).or_insert_with(|| x.pow(e as u64));
                term = term.mul(pw);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// `W_i(x) = sum_{j<=i} p^j x_j^{p^{i-j}}` in the variables starting at `offset`.
fn witt_poly(p: u64, i: usize, offset: usize) -> Poly {
    let mut w = Poly::default();
    for j in 0..=i {
        let pj = num_traits::pow(BigInt::from(p), j);
        w.add_scaled(&Poly::var(offset + j).pow(p.pow((i - j) as u32)), &pj);
    }
    w
}

fn compute(kind: Kind, p: u64, n: usize) -> Vec<Poly> {
    let count = if kind == Kind::Frobenius { n - 1 } else { n };
    let mut out: Vec<Poly> = Vec::with_capacity(count);
    // powers[j] = out[j]^{p^{i-j}} for the current i
    let mut powers: Vec<Poly> = Vec::new();
    for i in 0..count {
        let mut x = match kind {
            Kind::Sum => {
                let mut s = witt_poly(p, i, 0);
                s.add_scaled(&witt_poly(p, i, B_OFFSET), &BigInt::from(1));
                s
            }
            Kind::Product => witt_poly(p, i, 0).mul(&witt_poly(p, i, B_OFFSET)),
            Kind::Frobenius => witt_poly(p, i + 1, 0),
        };
        for pw in powers.iter_mut() {
            *pw = pw.pow(p);
        }
        for (j, pw) in powers.iter().enumerate() {
            let pj = num_traits::pow(BigInt::from(p), j);
            x.add_scaled(pw, &-pj);
        }
        x.div_exact(&num_traits::pow(BigInt::from(p), i));
        powers.push(x.clone());
        out.push(x);
    }
    out
}

type Slot = Arc<OnceLock<Arc<Vec<Poly>>>>;
type Cache = Mutex<HashMap<(Kind, u64, usize), Slot>>;

static CACHE: LazyLock<Cache> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// The cached polynomials for `(kind, p, n)`, computed at most once.
pub fn polynomials(kind: Kind, p: u64, n: usize) -> Result<Arc<Vec<Poly>>> {
    if n == 0 || n > MAX_LEN || p > MAX_PRIME {
        return Err(Error::Unsupported(format!(
            "universal polynomials are cached only for n <= {MAX_LEN}, p <= {MAX_PRIME}"
        )));
    }
    let slot = {
        let mut map = CACHE.lock().expect("cache lock poisoned");
        map.entry((kind, p, n)).or_default().clone()
    };
    Ok(slot.get_or_init(|| Arc::new(compute(kind, p, n))).clone())
}

pub(crate) fn apply<R: Ring>(
    kind: Kind,
    a: &WittVec<R>,
    b: Option<&WittVec<R>>,
) -> Result<WittVec<R>> {
    let polys = polynomials(kind, a.prime(), a.len())?;
    let empty: &[R] = &[];
    let b = b.map_or(empty, |w| w.coords());
    let coords = polys.iter().map(|f| f.eval(a.coords(), b)).collect();
    Ok(WittVec::from_coords(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sum_polynomial() {
        // s_1 = a_1 + b_1 - (a_0^2 b_0 + a_0 b_0^2) for p = 3
        let s = polynomials(Kind::Sum, 3, 2).unwrap();
        let mut want = Poly::var(1);
        want.add_scaled(&Poly::var(B_OFFSET + 1), &BigInt::from(1));
        let a0 = Poly::var(0);
        let b0 = Poly::var(B_OFFSET);
        want.add_scaled(&a0.pow(2).mul(&b0), &BigInt::from(-1));
        want.add_scaled(&a0.mul(&b0.pow(2)), &BigInt::from(-1));
        assert_eq!(s[1], want);
    }

    #[test]
    fn product_polynomials_are_bihomogeneous() {
        let weights = [1u64, 5, 25, 125];
        for (i, m) in polynomials(Kind::Product, 5, 3).unwrap().iter().enumerate() {
            for mono in m.terms.keys() {
                let wa: u64 = (0..3).map(|j| weights[j] * mono[j] as u64).sum();
                let wb: u64 = (0..3).map(|j| weights[j] * mono[B_OFFSET + j] as u64).sum();
                assert_eq!((wa, wb), (weights[i], weights[i]));
            }
        }
    }

    #[test]
    fn out_of_range_is_unsupported() {
        assert!(polynomials(Kind::Sum, 7, 2).is_err());
        assert!(polynomials(Kind::Sum, 3, 5).is_err());
    }
}
