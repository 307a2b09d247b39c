use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::arith::{CycElt, ResidueElt, Zn};

fn ints(p: u64, xs: &[i64]) -> WittVec<Int> {
    WittVec::integers(p, xs)
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// Independent ghost map over `Z` in `i128`.
fn ghost_oracle(p: i128, a: &[i128]) -> Vec<i128> {
    (0..a.len())
        .map(|i| {
            (0..=i)
                .map(|j| p.pow(j as u32) * a[j].pow(p.pow((i - j) as u32) as u32))
                .sum()
        })
        .collect()
}

/// Independent ghost inversion over `Z` in `i128`.
fn ghost_inverse_oracle(p: i128, w: &[i128]) -> Option<Vec<i128>> {
    let mut a: Vec<i128> = Vec::new();
    for i in 0..w.len() {
        let known: i128 = (0..i)
            .map(|j| p.pow(j as u32) * a[j].pow(p.pow((i - j) as u32) as u32))
            .sum();
        let r = w[i] - known;
        let pi = p.pow(i as u32);
        if r % pi != 0 {
            return None;
        }
        a.push(r / pi);
    }
    Some(a)
}

fn values(w: &WittVec<Int>) -> Vec<i128> {
    w.coords()
        .iter()
        .map(|c| i128::try_from(c.value()).unwrap())
        .collect()
}

#[test]
fn ghost_examples() {
    assert_eq!(ints(3, &[1, 1]).ghost(), ints(3, &[1, 4]).into_coords());
    assert_eq!(
        ints(3, &[1]).verschiebung().ghost(),
        ints(3, &[0, 3]).into_coords()
    );
    let x = Int::new(3, 2);
    assert_eq!(
        WittVec::teichmuller(&x, 3).ghost(),
        ints(3, &[2, 8, 512]).into_coords()
    );
}

#[test]
fn ghost_inverse_examples() {
    let w = ints(3, &[2, 2]).into_coords();
    assert_eq!(ghost_inverse(&w).unwrap(), ints(3, &[2, -2]));
    let w = ints(3, &[1, 16]).into_coords();
    assert_eq!(ghost_inverse(&w).unwrap(), ints(3, &[1, 5]));
    let w = ints(3, &[1, 2]).into_coords();
    assert!(matches!(
        ghost_inverse(&w),
        Err(Error::NotGhostVector { index: 1 })
    ));
}

#[test]
fn arithmetic_examples() {
    let one = ints(3, &[1, 0]);
    assert_eq!(one.add(&one).unwrap(), ints(3, &[2, -2]));
    let a = ints(3, &[1, 1]);
    assert_eq!(a.mul(&a).unwrap(), ints(3, &[1, 5]));
    assert_eq!(a.frobenius().unwrap(), ints(3, &[4]));
    assert_eq!(a.add_universal(&a).unwrap(), a.add(&a).unwrap());
    assert_eq!(a.mul_universal(&a).unwrap(), ints(3, &[1, 5]));
}

#[test]
fn division_by_p_witness() {
    let v1 = ints(3, &[1]).verschiebung();
    let d = v1.sub(&ints(3, &[-3, 0])).unwrap();
    assert_eq!(d.divide_by_p().unwrap(), ints(3, &[1, 3]));
    assert_eq!(d.divide_exact(&d).unwrap(), ints(3, &[1, 0]));
    let not = ints(3, &[1, 0]);
    assert!(matches!(
        not.divide_by_p(),
        Err(Error::NotDivisible { coordinate: 0 })
    ));
}

#[test]
fn v1_is_minus_p_teichmuller_mod_p() {
    for p in [3u64, 5] {
        for n in 2..=4 {
            let like = CycElt::constant(p, 1, 6, 0);
            let v1 = WittVec::one(&like, n - 1).verschiebung();
            let t = WittVec::teichmuller(&like.i64_like(-(p as i64)), n);
            assert!(v1.sub(&t).unwrap().divide_by_p().is_ok(), "p={p} n={n}");
        }
    }
}

#[test]
fn ghost_image_criterion_brute_force() {
    for n in [2usize, 3] {
        let range = -12i64..=12;
        let mut count = 0;
        let mut cur = vec![-12i64; n];
        loop {
            let w = big(&cur);
            let ok = ghost_inverse(&ints(3, &cur).into_coords()).is_ok();
            assert_eq!(ok, is_integral_ghost(3, &w), "{cur:?}");
            count += 1;
            let mut k = 0;
            while k < n {
                cur[k] += 1;
                if cur[k] <= *range.end() {
                    break;
                }
                cur[k] = *range.start();
                k += 1;
            }
            if k == n {
                break;
            }
        }
        assert_eq!(count, 25usize.pow(n as u32));
    }
}

#[test]
fn scaled_ghost_inverse() {
    let (k, a) = ghost_inverse_scaled(3, &big(&[1, 2])).unwrap();
    assert_eq!(k, 1);
    assert_eq!(a.ghost(), ints(3, &[3, 6]).into_coords());
    let (k, _) = ghost_inverse_scaled(3, &big(&[1, 1, 1])).unwrap();
    assert_eq!(k, 0);
}

#[test]
fn universal_agrees_with_ghost_lift_over_cyclotomic_rings() {
    let a = WittVec::new(vec![
        CycElt::new(3, 2, 4, &[1, 2, 0, 1, 1, 0]).unwrap(),
        CycElt::new(3, 2, 4, &[0, 1]).unwrap(),
        CycElt::new(3, 2, 4, &[5]).unwrap(),
    ])
    .unwrap();
    let b = WittVec::new(vec![
        CycElt::zeta_power(3, 2, 4, 4),
        CycElt::new(3, 2, 4, &[7, 0, 2]).unwrap(),
        CycElt::new(3, 2, 4, &[0, 0, 0, 0, 0, 1]).unwrap(),
    ])
    .unwrap();
    assert_eq!(a.mul(&b).unwrap(), a.mul_universal(&b).unwrap());
    assert_eq!(a.add(&b).unwrap(), a.add_universal(&b).unwrap());
    assert_eq!(a.frobenius().unwrap(), a.frobenius_universal().unwrap());
}

#[test]
fn residue_witt_vectors_of_length_six() {
    // length beyond the universal-polynomial cap: check p = 0 in char p
    let x = ResidueElt::new(3, 2, &[1, 1, 2]).unwrap();
    let one = WittVec::one(&x, 6);
    let mut acc = WittVec::zero(&x, 6);
    for _ in 0..3 {
        acc = acc.add(&one).unwrap();
    }
    // 3 = V(1) in W(F_3)... up to Teichmuller factors: p = V F 1 = V 1
    assert_eq!(acc, one.truncate(5).unwrap().verschiebung());
    let t = WittVec::teichmuller(&x, 6);
    let sq = t.mul(&t).unwrap();
    assert_eq!(sq, WittVec::teichmuller(&x.mul(&x), 6));
}

fn zn_vec(p: u64, digits: u32) -> impl Strategy<Value = WittVec<Zn>> {
    let m = p.pow(digits) as i64;
    (1usize..=4)
        .prop_flat_map(move |n| proptest::collection::vec(0..m, n))
        .prop_map(move |xs| {
            WittVec::new(xs.into_iter().map(|x| Zn::new(p, digits, x)).collect()).unwrap()
        })
}

fn zn_pair() -> impl Strategy<Value = (WittVec<Zn>, WittVec<Zn>)> {
    prop_oneof![Just(3u64), Just(5u64)].prop_flat_map(|p| {
        let m = p.pow(4) as i64;
        (1usize..=4).prop_flat_map(move |n| {
            let v = move || {
                proptest::collection::vec(0..m, n).prop_map(move |xs| {
                    WittVec::new(xs.into_iter().map(|x| Zn::new(p, 4, x)).collect()).unwrap()
                })
            };
            (v(), v())
        })
    })
}

fn residue_pair() -> impl Strategy<Value = (WittVec<ResidueElt>, WittVec<ResidueElt>)> {
    (1usize..=4).prop_flat_map(|n| {
        let v = move || {
            proptest::collection::vec(proptest::collection::vec(0i64..3, 6), n).prop_map(|cs| {
                WittVec::new(
                    cs.iter()
                        .map(|c| ResidueElt::new(3, 2, c).unwrap())
                        .collect(),
                )
                .unwrap()
            })
        };
        (v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_inverse_round_trip_over_z(xs in proptest::collection::vec(-50i64..50, 1..=3)) {
        let a = ints(3, &xs);
        let w = a.ghost();
        prop_assert_eq!(ghost_inverse(&w).unwrap(), a.clone());
        let oracle = ghost_oracle(3, &values(&a));
        prop_assert_eq!(w.iter().map(|c| i128::try_from(c.value()).unwrap()).collect::<Vec<_>>(), oracle);
    }

    #[test]
    fn products_match_ghost_oracle(xs in proptest::collection::vec(-9i64..9, 3), ys in proptest::collection::vec(-9i64..9, 3)) {
        let (a, b) = (ints(3, &xs), ints(3, &ys));
        let ga = ghost_oracle(3, &values(&a));
        let gb = ghost_oracle(3, &values(&b));
        let w: Vec<i128> = ga.iter().zip(&gb).map(|(x, y)| x * y).collect();
        prop_assert_eq!(values(&a.mul(&b).unwrap()), ghost_inverse_oracle(3, &w).unwrap());
        let w: Vec<i128> = ga.iter().zip(&gb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(values(&a.add(&b).unwrap()), ghost_inverse_oracle(3, &w).unwrap());
    }

    #[test]
    fn backends_agree_over_zn((a, b) in zn_pair()) {
        prop_assert_eq!(a.add(&b).unwrap(), a.add_universal(&b).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), a.mul_universal(&b).unwrap());
    }

    #[test]
    fn backends_agree_over_residues((a, b) in residue_pair()) {
        prop_assert_eq!(a.add(&b).unwrap(), a.add_universal(&b).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), a.mul_universal(&b).unwrap());
    }

    #[test]
    fn ring_axioms_over_zn((a, b) in zn_pair(), c in zn_vec(3, 4)) {
        let like = *a.coord(0);
        let n = a.len();
        prop_assert_eq!(a.add(&WittVec::zero(&like, n)).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&WittVec::one(&like, n)).unwrap(), a.clone());
        prop_assert_eq!(a.add(&a.neg()).unwrap(), WittVec::zero(&like, n));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let ab = a.mul(&b).unwrap();
        let ghost: Vec<Zn> = a.ghost().iter().zip(b.ghost()).map(|(x, y)| x.mul(&y)).collect();
        prop_assert_eq!(ab.ghost(), ghost);
        if c.len() == n && c.prime() == a.prime() {
            let lhs = a.add(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn frobenius_verschiebung_identities((a, b) in zn_pair()) {
        let p = a.prime() as i64;
        let n = a.len();
        // FV = p
        prop_assert_eq!(a.verschiebung().frobenius().unwrap(), a.scale(p).unwrap());
        if n >= 2 {
            // F and R are ring maps
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.frobenius().unwrap(), a.frobenius().unwrap().mul(&b.frobenius().unwrap()).unwrap());
            prop_assert_eq!(ab.restrict().unwrap(), a.restrict().unwrap().mul(&b.restrict().unwrap()).unwrap());
            // V(x) y = V(x F(y))
            let x = a.restrict().unwrap();
            let lhs = x.verschiebung().mul(&b).unwrap();
            let rhs = x.mul(&b.frobenius().unwrap()).unwrap().verschiebung();
            prop_assert_eq!(lhs, rhs);
            // V is additive, R commutes with F
            let sum = a.add(&b).unwrap();
            prop_assert_eq!(sum.verschiebung(), a.verschiebung().add(&b.verschiebung()).unwrap());
            prop_assert_eq!(a.frobenius().unwrap().restrict().ok(), a.restrict().unwrap().frobenius().ok());
        }
    }

    #[test]
    fn teichmuller_is_multiplicative(x in 0i64..625, y in 0i64..625, n in 1usize..=4) {
        let (x, y) = (Zn::new(5, 4, x), Zn::new(5, 4, y));
        let lhs = WittVec::teichmuller(&x, n).mul(&WittVec::teichmuller(&y, n)).unwrap();
        prop_assert_eq!(lhs, WittVec::teichmuller(&x.mul(&y), n));
        if n >= 2 {
            prop_assert_eq!(WittVec::teichmuller(&x, n).frobenius().unwrap(), WittVec::teichmuller(&x.pow(5), n - 1));
        }
    }

    #[test]
    fn teichmuller_p_th_powers_are_additive_mod_p(xs in proptest::collection::vec(-40i64..40, 9), ys in proptest::collection::vec(-40i64..40, 9), n in 2usize..=3) {
        let x = CycElt::new(3, 2, 6, &xs[..6]).unwrap();
        let y = CycElt::new(3, 2, 6, &ys[..6]).unwrap();
        let tp = |z: &CycElt| WittVec::teichmuller(z, n).pow(3).unwrap();
        let diff = tp(&x).add(&tp(&y)).unwrap().sub(&tp(&x.add(&y))).unwrap();
        prop_assert!(diff.divide_by_p().is_ok());
    }
}
