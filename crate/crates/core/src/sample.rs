//! Random elements for property checks and the self-test.

use crate::arith::{ram_index, CycElt, ResidueElt, Ring};
use crate::tilt::TiltElt;
use crate::witt::WittVec;

/// A random element of `O_{K_v}/p^N` with coefficients in `[0, p^N)`.
pub fn cyc(rng: &mut impl rand::Rng, p: u64, depth: u32, digits: u32) -> CycElt {
    let m = p.pow(digits) as i64;
    let cs: Vec<i64> = (0..ram_index(p, depth))
        .map(|_| rng.gen_range(0..m))
        .collect();
    CycElt::new(p, depth, digits, &cs).expect("valid parameters")
}

/// A random element of `O_{K_v}/p`.
pub fn residue(rng: &mut impl rand::Rng, p: u64, depth: u32) -> ResidueElt {
    let cs: Vec<i64> = (0..ram_index(p, depth))
        .map(|_| rng.gen_range(0..p as i64))
        .collect();
    ResidueElt::new(p, depth, &cs).expect("valid parameters")
}

/// A random ring combination of epsilon shifts and tower constants,
/// on window `m` with tower depth at most `max_depth`.
pub fn tilt(rng: &mut impl rand::Rng, p: u64, m: usize, max_depth: u32) -> TiltElt {
    let one = TiltElt::constant(p, 1, m);
    let mut acc = TiltElt::constant(p, rng.gen_range(0..p as i64), m);
    let max_shift = (max_depth as usize + 1).saturating_sub(m) as u32;
    for _ in 0..rng.gen_range(1..4) {
        let k = rng.gen_range(0..=max_shift);
        let eps = TiltElt::epsilon(p, k, m, max_depth).expect("shift within depth");
        let mut term = eps.sub(&one).pow(rng.gen_range(0..4));
        if rng.gen_bool(0.5) && m as u32 <= max_depth {
            let c = residue(rng, p, 1);
            term = term.mul(&TiltElt::tower_constant(&c, m, max_depth).expect("fits"));
        }
        acc = if rng.gen_bool(0.3) {
            acc.mul(&term)
        } else {
            acc.add(&term)
        };
    }
    acc
}

/// A random Witt vector of length `len` over the tilt.
pub fn tilt_witt(
    rng: &mut impl rand::Rng,
    p: u64,
    len: usize,
    m: usize,
    max_depth: u32,
) -> WittVec<TiltElt> {
    WittVec::new((0..len).map(|_| tilt(rng, p, m, max_depth)).collect()).expect("nonempty")
}
