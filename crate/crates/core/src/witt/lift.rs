//! Ghost-lift backend: lift coordinates to a p-torsion-free ring with
//! enough guard digits, operate on ghost components, invert, reduce.

use super::{ghost_inverse, WittVec};
use crate::arith::{CycElt, Int, PAdicRing, ResidueElt, Ring, Zn};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostOp {
    Add,
    Sub,
    Mul,
    /// `F^k`, shortening the vector by `k`.
    Frobenius(usize),
}

impl GhostOp {
    pub(crate) fn out_len(self, n: usize) -> usize {
        match self {
            GhostOp::Frobenius(k) => n - k,
            _ => n,
        }
    }

    /// Number of input coordinates that output coordinate `i` depends on.
    pub(crate) fn support(self, i: usize) -> usize {
        match self {
            GhostOp::Frobenius(k) => i + k + 1,
            _ => i + 1,
        }
    }
}

/// Coefficient rings with a ghost-lift realization of Witt arithmetic.
pub trait WittCoeff: Ring {
    /// Coordinates of `op(a, b)`; `b` is empty for unary operations.
    fn ghost_op(op: GhostOp, a: &[Self], b: &[Self]) -> Result<Vec<Self>>;

    /// Precision carried by the element (p-adic digits or tilt window).
    fn precision(&self) -> Option<u32> {
        None
    }
}

/// The operation on ghost components over a p-torsion-free ring.
pub(crate) fn ghost_op_in<L: PAdicRing>(op: GhostOp, a: &[L], b: &[L]) -> Result<Vec<L>> {
    let wa = WittVec::from_coords(a.to_vec()).ghost();
    let w: Vec<L> = match op {
        GhostOp::Add | GhostOp::Sub | GhostOp::Mul => {
            let wb = WittVec::from_coords(b.to_vec()).ghost();
            wa.iter()
                .zip(&wb)
                .map(|(x, y)| match op {
                    GhostOp::Add => x.add(y),
                    GhostOp::Sub => x.sub(y),
                    _ => x.mul(y),
                })
                .collect()
        }
        GhostOp::Frobenius(k) => wa[k..].to_vec(),
    };
    Ok(ghost_inverse(&w)?.into_coords())
}

/// Ghost-lift over a ring with tracked p-adic digits: lift to
/// `N + n - 1` digits, operate, and reduce coordinate `i` to the least
/// precision among the inputs it depends on. Coordinatewise reduction
/// `W_n(Z/p^M) -> W_n(Z/p^N)` is a ring map, so no further loss occurs.
fn padic_op<R: PAdicRing>(op: GhostOp, a: &[R], b: &[R]) -> Result<Vec<R>> {
    let n = a.len();
    let p = a[0].prime();
    let digits: Vec<u32> = (0..n)
        .map(|i| {
            let d = a[i].digits().unwrap_or(0);
            b.get(i).and_then(|x| x.digits()).map_or(d, |e| d.min(e))
        })
        .collect();
    let prefix: Vec<u32> = digits
        .iter()
        .scan(u32::MAX, |m, &d| {
            *m = (*m).min(d);
            Some(*m)
        })
        .collect();
    let top = *digits.iter().max().expect("nonempty");
    let lifted = top + n as u32 - 1;
    if p.checked_pow(lifted).is_none_or(|m| m >= 1 << 62) {
        return Err(Error::Precision(format!(
            "ghost lift needs p^{lifted}, which exceeds machine words"
        )));
    }
    let la: Vec<R> = a.iter().map(|x| x.at_digits(lifted)).collect();
    let lb: Vec<R> = b.iter().map(|x| x.at_digits(lifted)).collect();
    let out = ghost_op_in(op, &la, &lb)?;
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.at_digits(prefix[op.support(i) - 1]))
        .collect())
}

impl WittCoeff for Int {
    fn ghost_op(op: GhostOp, a: &[Self], b: &[Self]) -> Result<Vec<Self>> {
        ghost_op_in(op, a, b)
    }
}

impl WittCoeff for Zn {
    fn ghost_op(op: GhostOp, a: &[Self], b: &[Self]) -> Result<Vec<Self>> {
        padic_op(op, a, b)
    }

    fn precision(&self) -> Option<u32> {
        self.digits()
    }
}

impl WittCoeff for CycElt {
    fn ghost_op(op: GhostOp, a: &[Self], b: &[Self]) -> Result<Vec<Self>> {
        let depth = a
            .iter()
            .chain(b)
            .map(CycElt::depth)
            .max()
            .expect("nonempty");
        let a: Vec<CycElt> = a.iter().map(|x| x.embed(depth)).collect::<Result<_>>()?;
        let b: Vec<CycElt> = b.iter().map(|x| x.embed(depth)).collect::<Result<_>>()?;
        padic_op(op, &a, &b)
    }

    fn precision(&self) -> Option<u32> {
        self.digits()
    }
}

/// Characteristic `p`: lift `F_p[t]/t^e` to `(Z/p^m)[t]/t^e` with `m`
/// the output length. Coordinate `i` of a ghost inverse is then known
/// modulo `p^{m-i}`, enough for its reduction mod `p`.
impl WittCoeff for ResidueElt {
    fn ghost_op(op: GhostOp, a: &[Self], b: &[Self]) -> Result<Vec<Self>> {
        let p = a[0].p();
        let depth = a
            .iter()
            .chain(b)
            .map(ResidueElt::depth)
            .max()
            .expect("nonempty");
        let m = op.out_len(a.len()) as u32;
        if p.checked_pow(m).is_none_or(|q| q >= 1 << 62) {
            return Err(Error::Precision(format!(
                "length {m} too large for the residue lift"
            )));
        }
        let lift = |xs: &[ResidueElt]| -> Result<Vec<_>> {
            xs.iter().map(|x| Ok(x.embed(depth)?.lift(m))).collect()
        };
        let out = ghost_op_in(op, &lift(a)?, &lift(b)?)?;
        Ok(out
            .iter()
            .map(|c| ResidueElt::from_lift(p, depth, c))
            .collect())
    }
}
