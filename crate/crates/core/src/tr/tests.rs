use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};

use super::*;
use crate::sample;

fn model() -> TrModel {
    TrModel::new(3, 3, 6).unwrap()
}

fn random_class(rng: &mut StdRng, m: &TrModel, n: usize, deg: u32) -> TRClass {
    let d = m.digits_at(n).unwrap();
    let coeff = WittVec::new((0..n).map(|_| sample::cyc(rng, m.p(), 2, d)).collect()).unwrap();
    TRClass::new(n, deg, coeff).unwrap()
}

#[test]
fn beta_coefficients() {
    let m = model();
    for n in 1..=3 {
        let b = m.beta(n).unwrap();
        let d = m.digits_at(n).unwrap();
        let zeta = CycElt::zeta_power(3, n as u32, d, 1);
        let want = WittVec::teichmuller(&zeta, n)
            .sub(&WittVec::one(&zeta, n))
            .unwrap();
        assert_eq!(*b.coeff(), want);
        assert!(!b.is_zero());
        assert_eq!(b.degree(), 2);
    }
    let b1 = m.beta(1).unwrap();
    assert_eq!(*b1.coeff().coord(0), CycElt::uniformizer(3, 1, 3));
}

#[test]
fn multiplication() {
    let m = model();
    let a = m.alpha(2).unwrap();
    let aa = a.mul(&a).unwrap();
    assert_eq!(aa.degree(), 4);
    assert_eq!(*aa.coeff(), *a.coeff());
    let zero = TRClass::new(2, 0, WittVec::zero(a.coeff().coord(0), 2)).unwrap();
    assert!(a.mul(&zero).unwrap().is_zero());
    let b = m.beta(2).unwrap();
    assert_eq!(
        *b.mul(&b).unwrap().coeff(),
        b.coeff().mul(b.coeff()).unwrap()
    );
    assert!(a.mul(&m.alpha(3).unwrap()).is_err());
    assert!(TRClass::new(2, 3, a.coeff().clone()).is_err());
}

#[test]
fn restriction_and_frobenius_fix_beta() {
    let m = model();
    for n in 2..=3 {
        let b = m.beta(n).unwrap();
        let lower = m.beta(n - 1).unwrap();
        assert_eq!(m.restriction(&b).unwrap(), lower, "R, n={n}");
        assert_eq!(m.frobenius(&b).unwrap(), lower, "F, n={n}");
        assert_eq!(
            m.frobenius(&m.alpha(n).unwrap()).unwrap(),
            m.alpha(n - 1).unwrap()
        );
        // theta_{n-1}([eps_n] - 1) lambda = theta_{n-1}([eps_{n-1}] - 1)
        let d = m.digits_at(n).unwrap();
        let z = CycElt::zeta_power(3, n as u32, d, 1);
        let one = WittVec::one(&z, n - 1);
        let lhs = WittVec::teichmuller(&z, n - 1)
            .sub(&one)
            .unwrap()
            .mul(&m.lambda(n).unwrap())
            .unwrap();
        let rhs = WittVec::teichmuller(&z.pow(3), n - 1).sub(&one).unwrap();
        assert_eq!(lhs, rhs);
    }
    assert!(m.restriction(&m.beta(1).unwrap()).is_err());
}

#[test]
fn restriction_in_degree_zero_is_witt_restriction() {
    let m = model();
    let mut rng = StdRng::seed_from_u64(1);
    let c = random_class(&mut rng, &m, 3, 0);
    assert_eq!(
        *m.restriction(&c).unwrap().coeff(),
        c.coeff().restrict().unwrap()
    );
    assert_eq!(
        *m.frobenius(&c).unwrap().coeff(),
        c.coeff().frobenius().unwrap()
    );
}

#[test]
fn frobenius_and_restriction_commute() {
    let m = model();
    let mut rng = StdRng::seed_from_u64(2);
    for deg in [0, 2, 4] {
        let c = random_class(&mut rng, &m, 3, deg);
        let fr = m.frobenius(&m.restriction(&c).unwrap()).unwrap();
        let rf = m.restriction(&m.frobenius(&c).unwrap()).unwrap();
        assert_eq!(fr, rf, "deg={deg}");
    }
}

#[test]
fn lambda_and_mu_agree_with_division() {
    let m = model();
    assert_eq!(
        m.lambda(2).unwrap().truncate(1).unwrap(),
        m.lambda_by_division(2, 1).unwrap()
    );
    for u in [2, 4, 8] {
        let mu = m.mu(u, 1).unwrap();
        let div = m.mu_by_division(u, 1, 2).unwrap();
        assert_eq!(mu, div, "u={u}");
    }
    let mu = m.mu(2, 2).unwrap();
    assert_eq!(mu, m.mu_by_division(2, 2, 1).unwrap());
}

#[test]
fn galois_scales_beta_by_the_character() {
    let m = model();
    for n in 1..=3 {
        let b = m.beta(n).unwrap();
        for u in [2i64, 4, 2] {
            let s = m.galois(&b, u).unwrap();
            let scaled = b.coeff().scale(u).unwrap();
            assert_eq!(*s.coeff(), scaled, "n={n} u={u}");
        }
        assert_eq!(m.galois(&b, 1).unwrap(), b);
    }
    assert!(m.galois(&m.beta(1).unwrap(), 3).is_err());
}

#[test]
fn galois_composes_and_mu_is_a_cocycle() {
    let m = model();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..4 {
        let n = rng.gen_range(1..=2);
        let deg = 2 * rng.gen_range(0..=2);
        let c = random_class(&mut rng, &m, n, deg);
        let (u, w) = (3 * rng.gen_range(0..5) + 1, 3 * rng.gen_range(0..5) + 2);
        let lhs = m.galois(&m.galois(&c, u).unwrap(), w).unwrap();
        assert_eq!(lhs, m.galois(&c, u * w).unwrap());
        let cocycle = m
            .mu(u, n)
            .unwrap()
            .mul(&m.mu(w, n).unwrap().try_map(|x| x.galois(u)).unwrap())
            .unwrap();
        assert_eq!(cocycle, m.mu(u * w, n).unwrap());
    }
}

#[test]
fn tc_kernel() {
    let m = model();
    for q in 0..=3 {
        for len in 1..=2 {
            for basis in 0..len {
                let mut c = vec![0i64; len];
                c[basis] = 1;
                let c = m.prime_field_witt(&c, 5).unwrap();
                assert!(
                    m.tc_kernel_check(q, &c).unwrap(),
                    "q={q} len={len} basis={basis}"
                );
            }
        }
    }
    let e1 = TiltElt::epsilon(3, 1, 5, 6).unwrap();
    assert!(!m.tc_kernel_check(1, &WittVec::teichmuller(&e1, 2)).unwrap());
}
