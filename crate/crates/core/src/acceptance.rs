//! The acceptance suite: ten named checks run at a chosen precision profile.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ram_index, CycElt, DivExact, Int, PAdicRing, ResidueElt, Ring, Valuation, Zn};
use crate::error::Result;
use crate::sample;
use crate::theta::{self, theta_n, theta_prime, theta_prime_kernel_bound};
use crate::tilt::TiltElt;
use crate::tr::TrModel;
use crate::witt::{ghost_inverse, ghost_inverse_scaled, Backend, WittVec};

/// Precision parameters for a suite run.
#[derive(Debug, Clone, Serialize)]
pub struct Profile {
    pub name: String,
    /// Primes exercised where a criterion does not fix its own.
    pub primes: Vec<u64>,
    pub prec: u32,
    pub depth: u32,
    pub len: usize,
}

impl Profile {
    pub fn small() -> Self {
        Profile {
            name: "small".into(),
            primes: vec![3],
            prec: 4,
            depth: 5,
            len: 4,
        }
    }

    pub fn full() -> Self {
        Profile {
            name: "full".into(),
            primes: vec![3, 5],
            prec: 6,
            depth: 6,
            len: 4,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "small" => Some(Self::small()),
            "full" => Some(Self::full()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    /// Least p-adic digits (or tilt levels) at which equalities were tested.
    pub effective_precision: Option<u32>,
    pub detail: String,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub profile: Profile,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

/// Accumulates check outcomes for one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    precision: Option<u32>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, a: &T, b: &T, what: impl FnOnce() -> String) {
        self.check(a == b, what)
    }

    fn precision(&mut self, digits: u32) {
        self.precision = Some(self.precision.map_or(digits, |d| d.min(digits)));
    }
}

type Criterion = fn(&Profile, &mut Tally) -> Result<()>;

const CRITERIA: [(u8, &str, Criterion); 10] = [
    (1, "witt_backend_equivalence", witt_backends),
    (2, "ghost_homomorphism_round_trip", ghost_round_trip),
    (3, "theta_prime_identities", theta_prime_identities),
    (4, "tilt_valuation_table", valuation_table),
    (5, "theta_n_correctness", theta_n_correctness),
    (6, "roots_of_unity_classification", roots_of_unity),
    (7, "tr_operator_consistency", tr_consistency),
    (8, "tc_kernel", tc_kernel),
    (9, "tilt_integrity", tilt_integrity),
    (10, "ghost_after_inverting_p", ghost_rational),
];

pub fn criterion_names() -> Vec<(u8, &'static str)> {
    CRITERIA.iter().map(|&(id, name, _)| (id, name)).collect()
}

/// Runs every criterion, concurrently, each with its own fixed seed.
pub fn run_suite(profile: &Profile) -> SuiteReport {
    let criteria: Vec<CriterionReport> = CRITERIA
        .par_iter()
        .map(|&(id, name, f)| run_one(profile, id, name, f))
        .collect();
    SuiteReport {
        profile: profile.clone(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

pub fn run_criterion(profile: &Profile, id: u8) -> Option<CriterionReport> {
    CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|&(id, name, f)| run_one(profile, id, name, f))
}

fn run_one(profile: &Profile, id: u8, name: &'static str, f: Criterion) -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::default();
    let outcome = f(profile, &mut tally);
    let failed = tally.failures.len();
    let mut notes: Vec<String> = tally
        .failures
        .iter()
        .filter(|s| !s.is_empty())
        .cloned()
        .collect();
    if let Err(e) = &outcome {
        notes.insert(0, format!("aborted: {e}"));
    }
    let passed = outcome.is_ok() && failed == 0 && tally.checks > 0;
    let detail = if passed {
        format!("{} checks", tally.checks)
    } else {
        format!(
            "{failed} of {} checks failed; {}",
            tally.checks,
            notes.join("; ")
        )
    };
    CriterionReport {
        id,
        name,
        passed,
        checks: tally.checks,
        effective_precision: tally.precision,
        detail,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn rng(id: u64) -> StdRng {
    StdRng::seed_from_u64(0x5eed_0000 + id)
}

/// Ghost components over `Z`, computed directly in big integers.
fn ghost_oracle(p: u64, a: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|i| {
            (0..=i)
                .map(|j| BigInt::from(p).pow(j as u32) * a[j].pow(p.pow((i - j) as u32) as u32))
                .sum()
        })
        .collect()
}

fn int_values(w: &WittVec<Int>) -> Vec<BigInt> {
    w.coords().iter().map(|c| c.value().clone()).collect()
}

fn random_zn(rng: &mut StdRng, p: u64, digits: u32, n: usize) -> WittVec<Zn> {
    let m = p.pow(digits) as i64;
    WittVec::new(
        (0..n)
            .map(|_| Zn::new(p, digits, rng.gen_range(0..m)))
            .collect(),
    )
    .expect("n > 0")
}

fn random_cyc_witt(rng: &mut StdRng, p: u64, depth: u32, digits: u32, n: usize) -> WittVec<CycElt> {
    WittVec::new((0..n).map(|_| sample::cyc(rng, p, depth, digits)).collect()).expect("n > 0")
}

fn witt_backends(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(1);
    let digits = profile.prec;
    for p in [3u64, 5] {
        for k in 0..100 {
            let n = 1 + k % 4;
            let (a, b) = (
                random_zn(&mut rng, p, digits, n),
                random_zn(&mut rng, p, digits, n),
            );
            t.eq(
                &a.add_with(&b, Backend::GhostLift)?,
                &a.add_with(&b, Backend::Universal)?,
                || format!("Z/p^N add, p={p} n={n}"),
            );
            t.eq(
                &a.mul_with(&b, Backend::GhostLift)?,
                &a.mul_with(&b, Backend::Universal)?,
                || format!("Z/p^N mul, p={p} n={n}"),
            );
            let depth = if p == 3 { 2 } else { 1 };
            let r = |rng: &mut StdRng| {
                WittVec::new(
                    (0..n)
                        .map(|_| sample::residue(rng, p, depth))
                        .collect::<Vec<ResidueElt>>(),
                )
            };
            let (a, b) = (r(&mut rng)?, r(&mut rng)?);
            t.eq(&a.add(&b)?, &a.add_universal(&b)?, || {
                format!("residue add, p={p} n={n}")
            });
            t.eq(&a.mul(&b)?, &a.mul_universal(&b)?, || {
                format!("residue mul, p={p} n={n}")
            });
            if k % 10 == 0 {
                let a = random_cyc_witt(&mut rng, p, 1, digits, n);
                let b = random_cyc_witt(&mut rng, p, 1, digits, n);
                t.eq(&a.add(&b)?, &a.add_universal(&b)?, || {
                    format!("cyclotomic add, p={p} n={n}")
                });
                t.eq(&a.mul(&b)?, &a.mul_universal(&b)?, || {
                    format!("cyclotomic mul, p={p} n={n}")
                });
            }
        }
    }
    t.precision(digits);
    Ok(())
}

fn ghost_round_trip(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(2);
    for k in 0..200 {
        let p = profile.primes[k % profile.primes.len()];
        let n = 1 + k % profile.len;
        let v = |rng: &mut StdRng| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-30..30)).collect() };
        let (xs, ys) = (v(&mut rng), v(&mut rng));
        let (a, b) = (WittVec::integers(p, &xs), WittVec::integers(p, &ys));
        let (ga, gb) = (
            ghost_oracle(p, &int_values(&a)),
            ghost_oracle(p, &int_values(&b)),
        );
        let ghost = |w: &WittVec<Int>| -> Vec<BigInt> {
            w.ghost().iter().map(|c| c.value().clone()).collect()
        };
        t.eq(&ghost(&a), &ga, || format!("ghost map, p={p} a={xs:?}"));
        let sum: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x + y).collect();
        let prod: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x * y).collect();
        t.eq(&ghost(&a.add(&b)?), &sum, || {
            format!("ghost(a+b), p={p} a={xs:?} b={ys:?}")
        });
        t.eq(&ghost(&a.mul(&b)?), &prod, || {
            format!("ghost(ab), p={p} a={xs:?} b={ys:?}")
        });
        t.eq(&ghost_inverse(&a.ghost())?, &a, || {
            format!("ghost inverse, p={p} a={xs:?}")
        });
    }
    Ok(())
}

fn theta_prime_identities(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(3);
    let zero_mod_p = |w: &WittVec<CycElt>| w.divide_by_p().is_ok();
    for p in [3u64, 5] {
        for n in 1..=4usize {
            let digits = profile.prec.max(n as u32 + 2);
            t.precision(digits - n as u32 + 1);
            // V(1) = [-p] mod p W_n
            let like = CycElt::constant(p, 1, digits, 0);
            if n >= 2 {
                let v1 = WittVec::one(&like, n - 1).verschiebung();
                let minus_p = WittVec::teichmuller(&like.i64_like(-(p as i64)), n);
                t.check(zero_mod_p(&v1.sub(&minus_p)?), || {
                    format!("V(1) = [-p], p={p} n={n}")
                });
            }
            for _ in 0..30 / 4 + 1 {
                let depth = 2;
                let x = sample::cyc(&mut rng, p, depth, digits);
                let y = sample::cyc(&mut rng, p, depth, digits);
                let lhs = theta_prime(&x, n).add(&theta_prime(&y, n))?;
                t.check(zero_mod_p(&lhs.sub(&theta_prime(&x.add(&y), n))?), || {
                    format!("[x]^p + [y]^p = [x+y]^p mod p, p={p} n={n}")
                });
                if n >= 2 {
                    let f = theta_prime(&x, n).frobenius()?;
                    t.check(zero_mod_p(&f.sub(&theta_prime(&x.pow(p), n - 1))?), || {
                        format!("F theta'_n(x) = theta'_(n-1)(x^p), p={p} n={n}")
                    });
                    t.eq(
                        &theta_prime(&x, n).restrict()?,
                        &theta_prime(&x, n - 1),
                        || format!("R theta'_n = theta'_(n-1), p={p} n={n}"),
                    );
                    // V theta'_{n-1}(x) = theta'_n(z) when x = -z^p/p, v(z) >= 1/p
                    let pi = CycElt::uniformizer(p, depth, digits + 1);
                    let z = sample::cyc(&mut rng, p, depth, digits + 1).mul(&pi.pow(p - 1));
                    let x = z.pow(p).neg().div_exact(&z.i64_like(p as i64))?;
                    let v = theta_prime(&x, n - 1).verschiebung();
                    let w = theta_prime(&z.at_digits(digits), n);
                    t.check(zero_mod_p(&v.sub(&w)?), || {
                        format!("V theta'_(n-1) = theta'_n, p={p} n={n}")
                    });
                }
            }
            // kernel of theta'_n is {v >= (1 - p^-n)/(p - 1)}: a ladder of
            // powers of the uniformizer around the bound
            let bound = theta_prime_kernel_bound(p, n as u32);
            let depth = (n as u32 + 1)
                .min(if p == 3 { 5 } else { 3 })
                .min(profile.depth);
            let e = ram_index(p, depth) as i64;
            let pi = CycElt::uniformizer(p, depth, n as u32 + 2);
            let centre = (bound * Ratio::from_integer(e)).to_integer();
            let mut ladder: Vec<i64> = (centre - 3..=centre + 3)
                .filter(|&k| (0..=e).contains(&k))
                .collect();
            ladder.extend([0, e / 2, e]);
            for k in ladder {
                let v = Ratio::new(k, e);
                let zero = zero_mod_p(&theta_prime(&pi.pow(k as u64), n));
                t.check(zero == (v >= bound), || {
                    format!("kernel ladder misclassified v={v}, p={p} n={n}, bound {bound}")
                });
            }
        }
    }
    Ok(())
}

fn valuation_table(profile: &Profile, t: &mut Tally) -> Result<()> {
    let ratio = |a: i64, b: i64| Valuation::Exact(Ratio::new(a, b));
    for &p in &profile.primes {
        let one = |m| TiltElt::constant(p, 1, m);
        let m = 2;
        let e = TiltElt::epsilon(p, 0, m, profile.depth)?;
        t.eq(
            &e.sub(&one(m)).valuation(),
            &ratio(p as i64, p as i64 - 1),
            || format!("v(eps - 1), p={p}"),
        );
        for n in 1..=4u32 {
            let en = TiltElt::epsilon(p, n, m, profile.depth)?;
            let want = ratio(1, (p.pow(n - 1) * (p - 1)) as i64);
            t.eq(&en.sub(&one(m)).valuation(), &want, || {
                format!("v(eps_n - 1), p={p} n={n}")
            });
        }
        // xi_{n,1} = (eps - 1)/(eps_n - 1) on a window one level wider
        let m = 3;
        for n in 1..=(profile.depth + 1 - m as u32).min(4) {
            let num = TiltElt::epsilon(p, 0, m, profile.depth)?.sub(&one(m));
            let den = TiltElt::epsilon(p, n, m, profile.depth)?.sub(&one(m));
            let xi = num.div_exact(&den)?;
            let pn = Ratio::new(1, p.pow(n) as i64);
            let want = (Ratio::one() - pn) / (Ratio::one() - Ratio::new(1, p as i64));
            t.eq(&xi.valuation(), &Valuation::Exact(want), || {
                format!("v(xi_n), p={p} n={n}")
            });
        }
    }
    Ok(())
}

fn theta_n_correctness(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(5);
    let (p, d) = (profile.primes[0], profile.depth);
    let (n, digits) = (2usize, 3u32);
    let len = n + digits as usize - 1;
    let window = (d as usize).min(4);
    t.precision(digits);
    for k in 0..100 {
        let a = sample::tilt_witt(&mut rng, p, len, window, d);
        let b = sample::tilt_witt(&mut rng, p, len, window, d);
        let ta = theta_n(&a, n, digits)?;
        let tb = theta_n(&b, n, digits)?;
        t.eq(
            &theta_n(&a.add(&b)?, n, digits)?.value,
            &ta.value.add(&tb.value)?,
            || format!("theta(a+b), sample {k}"),
        );
        t.eq(
            &theta_n(&a.mul(&b)?, n, digits)?.value,
            &ta.value.mul(&tb.value)?,
            || format!("theta(ab), sample {k}"),
        );
        if k % 5 == 0 {
            t.eq(
                &ta.value.restrict()?,
                &theta_n(&a, n - 1, digits)?.value,
                || format!("R theta_n, sample {k}"),
            );
            let fa = a.map(TiltElt::frobenius);
            t.eq(
                &ta.value.frobenius()?,
                &theta_n(&fa, n - 1, digits)?.value,
                || format!("F theta_n, sample {k}"),
            );
            let x = sample::tilt(&mut rng, p, window, d);
            let tx = WittVec::teichmuller(&x, len);
            t.eq(
                &theta_n(&tx, n, digits)?.value,
                &theta::theta_n_oracle(&tx, n, digits)?.value,
                || format!("theta([x]) against sharp lifts, sample {k}"),
            );
        }
    }
    for n in 1..=3u32 {
        let len = 3;
        let window = (d + 1 - n) as usize;
        let xi = theta::xi_closed_form(p, n, len, window, d)?;
        let den = theta::teichmuller_minus_one(&TiltElt::epsilon(p, n, window, d)?, len)?;
        let num = theta::teichmuller_minus_one(&TiltElt::epsilon(p, 0, window, d)?, len)?;
        t.eq(&xi.mul(&den)?, &num, || {
            format!("xi_n ([eps_n] - 1) = [eps] - 1, n={n}")
        });
        let digits = len as u32 + 1 - n;
        let th = theta_n(&xi, n as usize, digits)?;
        t.check(th.value.is_zero(), || format!("theta_n(xi_n) = 0, n={n}"));
    }
    Ok(())
}

fn roots_of_unity(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(6);
    let (p, digits) = (3u64, profile.prec);
    t.precision(digits);
    for n in 1..=3usize {
        for m in 1..=2u32 {
            for j in 0..p.pow(m) as i64 {
                let zeta = CycElt::zeta_power(p, m, digits, j);
                let got = theta::classify_root_of_unity(&WittVec::teichmuller(&zeta, n), m);
                t.check(got.as_ref().is_ok_and(|z| *z == zeta), || {
                    format!("[zeta^{j}]_{n} not recognised in mu_(p^{m}): {got:?}")
                });
            }
        }
    }
    // bumping coordinate i by a unit moves ghost component i off mu_{p^infty},
    // since distinct p-power roots of unity differ by elements of valuation < 1
    for k in 0..50 {
        let n = 1 + k % 3;
        let m = 1 + (k / 3) as u32 % 2;
        let zeta = CycElt::zeta_power(p, m, digits, rng.gen_range(0..p.pow(m) as i64));
        let i = rng.gen_range(0..n);
        let unit = loop {
            let u = rng.gen_range(1..p.pow(digits) as i64);
            if u % p as i64 != 0 {
                break u;
            }
        };
        let mut coords = WittVec::teichmuller(&zeta, n).into_coords();
        coords[i] = coords[i].add(&zeta.i64_like(unit));
        let a = WittVec::new(coords)?;
        let got = theta::classify_root_of_unity(&a, m);
        let ok = matches!(
            got,
            Err(crate::error::Error::NotRootOfUnity { coordinate })
                | Err(crate::error::Error::NoTeichmullerForm { coordinate }) if coordinate == i
        );
        t.check(ok, || {
            format!("perturbation at coordinate {i} (n={n}, m={m}) gave {got:?}")
        });
    }
    Ok(())
}

fn tr_consistency(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(7);
    let p = profile.primes[0];
    let model = TrModel::new(p, profile.prec, profile.depth)?;
    for n in 1..=3usize {
        t.precision(model.digits_at(n)?);
        let beta = model.beta(n)?;
        if n >= 2 {
            let lower = model.beta(n - 1)?;
            t.eq(&model.restriction(&beta)?, &lower, || {
                format!("R(beta_{n}) = beta_{}", n - 1)
            });
            t.eq(&model.frobenius(&beta)?, &lower, || {
                format!("F(beta_{n}) = beta_{}", n - 1)
            });
            // theta_{n-1}([eps_n] - 1) lambda = theta_{n-1}([eps_{n-1}] - 1)
            let z = CycElt::zeta_power(p, n as u32, model.digits_at(n)?, 1);
            let one = WittVec::one(&z, n - 1);
            let lhs = WittVec::teichmuller(&z, n - 1)
                .sub(&one)?
                .mul(&model.lambda(n)?)?;
            let rhs = WittVec::teichmuller(&z.pow(p), n - 1).sub(&one)?;
            t.eq(&lhs, &rhs, || format!("lambda consistency identity, n={n}"));
        }
        for u in [2, 1 + p as i64, p as i64 - 1] {
            let s = model.galois(&beta, u)?;
            t.eq(s.coeff(), &beta.coeff().scale(u)?, || {
                format!("sigma_{u}(beta_{n}) = {u} beta_{n}")
            });
        }
    }
    let units: Vec<i64> = (1..p as i64 * p as i64)
        .filter(|u| u % p as i64 != 0)
        .collect();
    for k in 0..20 {
        let n = 1 + k % 2;
        let deg = 2 * (k as u32 % 3);
        let d = model.digits_at(n)?;
        let coeff = WittVec::new((0..n).map(|_| sample::cyc(&mut rng, p, 2, d)).collect())?;
        let c = model.class(n, deg / 2, coeff)?;
        let (u, w) = (
            units[rng.gen_range(0..units.len())],
            units[rng.gen_range(0..units.len())],
        );
        let lhs = model.galois(&model.galois(&c, u)?, w)?;
        t.eq(&lhs, &model.galois(&c, u * w)?, || {
            format!("sigma_{w} sigma_{u} = sigma_{}", u * w)
        });
        let twisted = model.mu(w, n)?.try_map(|x| x.galois(u))?;
        let cocycle = model.mu(u, n)?.mul(&twisted)?;
        t.eq(&cocycle, &model.mu(u * w, n)?, || {
            format!("mu cocycle, u={u} w={w} n={n}")
        });
    }
    Ok(())
}

fn tc_kernel(profile: &Profile, t: &mut Tally) -> Result<()> {
    let p = 3;
    let model = TrModel::new(p, profile.prec, profile.depth)?;
    let window = profile.depth as usize - 1;
    t.precision(window as u32);
    for q in 0..=3u32 {
        for m in 1..=2usize {
            for basis in 0..m {
                let mut c = vec![0i64; m];
                c[basis] = 1;
                let w = model.prime_field_witt(&c, window)?;
                t.check(model.tc_kernel_check(q, &w)?, || {
                    format!("basis vector {c:?} rejected at q={q}")
                });
            }
        }
    }
    let eps = |k| TiltElt::epsilon(p, k, window, profile.depth);
    let one = TiltElt::constant(p, 1, window);
    let zero = TiltElt::constant(p, 0, window);
    let non_kernel: Vec<(u32, WittVec<TiltElt>)> = vec![
        (0, WittVec::teichmuller(&eps(0)?, 2)),
        (0, WittVec::teichmuller(&eps(1)?, 1)),
        (1, WittVec::teichmuller(&eps(1)?, 2)),
        (2, WittVec::teichmuller(&eps(1)?, 2)),
        (3, WittVec::teichmuller(&eps(1)?, 1)),
        (1, WittVec::teichmuller(&eps(0)?, 1)),
        (0, WittVec::teichmuller(&eps(1)?.sub(&one), 2)),
        (2, WittVec::teichmuller(&eps(0)?.add(&one), 1)),
        (0, WittVec::new(vec![one.clone(), eps(1)?])?),
        (1, WittVec::new(vec![zero, eps(0)?])?),
    ];
    for (k, (q, c)) in non_kernel.iter().enumerate() {
        t.check(!model.tc_kernel_check(*q, c)?, || {
            format!("non-kernel input {k} accepted at q={q}")
        });
    }
    Ok(())
}

fn tilt_integrity(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(9);
    let d = profile.depth;
    for k in 0..500 {
        let p = profile.primes[k % profile.primes.len()];
        let m = 1 + k % 3;
        let a = sample::tilt(&mut rng, p, m, d);
        let b = sample::tilt(&mut rng, p, m, d);
        let c = match k % 4 {
            0 => a.add(&b),
            1 => a.sub(&b),
            2 => a.mul(&b),
            _ => a.frobenius().restrict_window(m)?.mul(&b.neg()),
        };
        t.check(c.is_compatible(), || {
            format!("incompatible result of operation {k}")
        });
        t.eq(&c.frobenius().pth_root()?, &c, || {
            format!("pth_root after frobenius, operation {k}")
        });
    }
    let (p, digits) = (profile.primes[0], profile.prec.min(4));
    let m = digits as usize;
    t.precision(digits);
    for k in 0..30 {
        let a = sample::tilt(&mut rng, p, m, d);
        let phi = ram_index(p, a.level(m)?.depth());
        let delta: Vec<i64> = (0..phi).map(|_| rng.gen_range(-5..5)).collect();
        let base = a.sharp(1, digits)?;
        t.eq(&a.sharp_perturbed(1, digits, &delta)?, &base, || {
            format!("sharp lift dependence, run {k}")
        });
        if let (Valuation::Exact(v), Valuation::Exact(w)) = (a.valuation(), base.valuation()) {
            if v < Ratio::from_integer(digits as i64) {
                t.eq(&v, &w, || format!("v_R = v(sharp), run {k}"));
            }
        }
    }
    Ok(())
}

fn ghost_rational(profile: &Profile, t: &mut Tally) -> Result<()> {
    let mut rng = rng(10);
    for k in 0..50 {
        let p = profile.primes[k % profile.primes.len()];
        let n = 1 + k % profile.len;
        let w: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-500i64..500)))
            .collect();
        let (e, a) = ghost_inverse_scaled(p, &w)?;
        let scaled: Vec<BigInt> = w.iter().map(|x| x * BigInt::from(p).pow(e)).collect();
        t.check((e as usize) < n, || {
            format!("denominator p^{e} exceeds p^(n-1), n={n}")
        });
        t.eq(&ghost_oracle(p, &int_values(&a)), &scaled, || {
            format!("ghost of the preimage, p={p} w={w:?}")
        });
    }
    let digits = profile.prec;
    t.precision(digits);
    for n in 1..=3usize {
        let p = profile.primes[0];
        let zeta = CycElt::zeta_power(p, n as u32, digits, 1);
        let a = WittVec::teichmuller(&zeta, n).sub(&WittVec::one(&zeta, n))?;
        for (i, g) in a.ghost().iter().enumerate() {
            t.check(!g.is_zero(), || {
                format!("ghost component {i} of [zeta_(p^{n})] - 1 vanishes")
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_and_names() {
        assert_eq!(criterion_names().len(), 10);
        assert!(Profile::by_name("small").is_some());
        assert!(Profile::by_name("huge").is_none());
        let r = run_criterion(&Profile::small(), 2).unwrap();
        assert!(r.passed, "{}", r.detail);
    }
}
