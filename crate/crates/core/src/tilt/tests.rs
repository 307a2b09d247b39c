use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};

use super::*;
use crate::witt::WittVec;

const D: u32 = 6;

fn eps(p: u64, k: u32, m: usize) -> TiltElt {
    TiltElt::epsilon(p, k, m, D).unwrap()
}

fn one(p: u64, m: usize) -> TiltElt {
    TiltElt::constant(p, 1, m)
}

fn random_tilt(rng: &mut StdRng, p: u64, m: usize) -> TiltElt {
    crate::sample::tilt(rng, p, m, D)
}

#[test]
fn epsilon_levels() {
    let e = eps(3, 0, 3);
    assert!(e.level(1).unwrap().is_one());
    assert_eq!(*e.level(2).unwrap(), ResidueElt::zeta_power(3, 1, 1));
    let e1 = eps(3, 1, 3);
    assert_eq!(
        *e1.level(1).unwrap(),
        ResidueElt::new(3, 1, &[1, 1]).unwrap()
    );
    assert_eq!(e1.pow(3), e);
    assert!(e.is_compatible() && e1.is_compatible());
    assert!(TiltElt::epsilon(3, 2, 6, D).is_err());
    assert!(TiltElt::epsilon(3, 1, 6, D).is_ok());
}

#[test]
fn ring_operation_examples() {
    let e = eps(3, 0, 4);
    assert!(e.sub(&e).is_zero());
    let e1 = eps(3, 1, 4);
    assert_eq!(e1.sub(&one(3, 4)).add(&one(3, 4)), e1);
}

#[test]
fn valuation_table() {
    for p in [3u64, 5] {
        let m = if p == 3 { 4 } else { 3 };
        let v = eps(p, 0, m).sub(&one(p, m)).valuation();
        assert_eq!(v, Valuation::Exact(Ratio::new(p as i64, p as i64 - 1)));
        for n in 1..=(D as usize + 1 - m).min(4) as u32 {
            let v = eps(p, n, m).sub(&one(p, m)).valuation();
            let want = Ratio::new(1, (p.pow(n - 1) * (p - 1)) as i64);
            assert_eq!(v, Valuation::Exact(want), "p={p} n={n}");
        }
    }
    assert_eq!(
        one(3, 3).sub(&one(3, 3)).valuation(),
        Valuation::AtLeast(Ratio::from_integer(9))
    );
}

#[test]
fn xi_quotient_valuation() {
    for (p, n) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let m = 3;
        let num = eps(p, 0, m).sub(&one(p, m));
        let den = eps(p, n, m).sub(&one(p, m));
        let xi = num.div_exact(&den).unwrap();
        let pn = Ratio::new(1, p.pow(n) as i64);
        let want =
            (Ratio::from_integer(1) - pn) / (Ratio::from_integer(1) - Ratio::new(1, p as i64));
        assert_eq!(xi.valuation().value().unwrap(), want, "p={p} n={n}");
        assert_eq!(xi.mul(&den), num.restrict_window(xi.window()).unwrap());
    }
}

#[test]
fn frobenius_shifts() {
    let e2 = eps(3, 2, 3);
    assert_eq!(e2.frobenius(), eps(3, 1, 4));
    assert_eq!(eps(3, 0, 4).pth_root().unwrap(), eps(3, 1, 3));
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let a = random_tilt(&mut rng, 3, 3);
        assert_eq!(a.frobenius().pth_root().unwrap(), a);
        assert_eq!(a.frobenius(), a.pow(3));
        if let Valuation::Exact(v) = a.valuation() {
            let r = a.pth_root().unwrap().valuation();
            if let Valuation::Exact(w) = r {
                assert_eq!(w, v / 3);
            }
        }
    }
    assert!(one(3, 1).pth_root().is_err());
}

#[test]
fn random_ring_operations_stay_compatible() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let p = if rng.gen_bool(0.5) { 3 } else { 5 };
        let m = rng.gen_range(1..=3);
        let a = random_tilt(&mut rng, p, m);
        let b = random_tilt(&mut rng, p, m);
        assert!(a.mul(&b).is_compatible());
        assert!(a.add(&b).is_compatible());
        assert!(a.sub(&b).neg().is_compatible());
    }
}

#[test]
fn valuation_is_multiplicative_and_domain_like() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..100 {
        let a = random_tilt(&mut rng, 3, 4);
        let b = random_tilt(&mut rng, 3, 4);
        let (Valuation::Exact(va), Valuation::Exact(vb)) = (a.valuation(), b.valuation()) else {
            continue;
        };
        if va + vb < Ratio::from_integer(27) {
            let ab = a.mul(&b);
            assert!(!ab.is_zero());
            assert_eq!(ab.valuation(), Valuation::Exact(va + vb));
            checked += 1;
        }
        let s = a.add(&b).valuation().lower_bound().unwrap();
        assert!(s >= va.min(vb));
    }
    assert!(checked > 50);
}

#[test]
fn sharp_examples() {
    let s = eps(3, 0, 4).sharp(1, 4).unwrap();
    assert!(s.is_one());
    let s = eps(3, 1, 4).sharp(1, 4).unwrap();
    assert_eq!(s, CycElt::zeta_power(3, 1, 4, 1));
    assert!(eps(3, 1, 3).sharp(1, 4).is_err());
}

#[test]
fn sharp_is_lift_independent_and_multiplicative() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let a = random_tilt(&mut rng, 3, 4);
        let depth = a.level(4).unwrap().depth();
        let phi = crate::arith::ram_index(3, depth);
        let delta: Vec<i64> = (0..phi).map(|_| rng.gen_range(-5..5)).collect();
        let base = a.sharp(1, 4).unwrap();
        assert_eq!(a.sharp_perturbed(1, 4, &delta).unwrap(), base);
        let b = random_tilt(&mut rng, 3, 4);
        assert_eq!(
            a.mul(&b).sharp(1, 4).unwrap(),
            base.mul(&b.sharp(1, 4).unwrap())
        );
        let sum = a.add(&b).sharp(1, 4).unwrap();
        let diff = sum.sub(&base.add(&b.sharp(1, 4).unwrap()));
        assert!(diff.reduce_mod_p().is_zero());
        // v_R agrees with the valuation of the lift below the truncation
        if let (Valuation::Exact(v), Valuation::Exact(w)) = (a.valuation(), base.valuation()) {
            if v < Ratio::from_integer(4) {
                assert_eq!(v, w);
            }
        }
    }
}

#[test]
fn galois_action() {
    let e = eps(3, 0, 4);
    assert_eq!(e.galois(1).unwrap(), e);
    assert_eq!(e.galois(2).unwrap(), e.pow(2));
    assert_eq!(e.galois(4).unwrap(), e.pow(4));
    assert!(e.galois(3).is_err());
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..30 {
        let a = random_tilt(&mut rng, 3, 3);
        let (u, w) = (rng.gen_range(1..100) * 3 + 1, rng.gen_range(1..100) * 3 + 2);
        assert_eq!(
            a.galois(u).unwrap().galois(w).unwrap(),
            a.galois(u * w).unwrap()
        );
        assert!(a.galois(u).unwrap().is_compatible());
    }
}

#[test]
fn witt_vectors_over_the_tilt() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..5 {
        let a = WittVec::new((0..3).map(|_| random_tilt(&mut rng, 3, 3)).collect()).unwrap();
        let b = WittVec::new((0..3).map(|_| random_tilt(&mut rng, 3, 3)).collect()).unwrap();
        assert_eq!(a.mul(&b).unwrap(), a.mul_universal(&b).unwrap());
        assert_eq!(a.add(&b).unwrap(), a.add_universal(&b).unwrap());
    }
}

#[test]
fn witt_division_by_teichmuller_minus_one() {
    // ([eps] - 1) / ([eps_n] - 1) has 0-th coordinate sum_{j<p^n} eps_n^j
    let (p, n, m) = (3u64, 1u32, 3usize);
    let len = 2;
    let e = eps(p, 0, m);
    let en = eps(p, n, m);
    let wone = WittVec::one(&e, len);
    let d = WittVec::teichmuller(&e, len).sub(&wone).unwrap();
    let b = WittVec::teichmuller(&en, len).sub(&wone).unwrap();
    let c = d.divide_exact(&b).unwrap();
    let mut sum = TiltElt::constant(p, 0, m);
    for j in 0..p.pow(n) {
        sum = sum.add(&en.pow(j));
    }
    assert_eq!(*c.coord(0), sum);
    let back = c.mul(&b).unwrap();
    assert_eq!(back, d);
}
