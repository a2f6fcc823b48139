//! Checks shared by the property tests and the acceptance run.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use trinomial::basesolve::SolveOptions;
use trinomial::dispatch::solve;
use trinomial::eqparse::{canonicalize, parse_equation, Poly, Trinomial};
use trinomial::intcore::{positive_divisors, valuation, valuation_split, SplitTag};
use trinomial::lindioph::{minimal_divisibility_set, solve_system_nonneg, solve_two_term};
use trinomial::multivar::{check_prop4, direct_formula, solve_two_monomial, Prop4Certificate};
use trinomial::oracle::{brute_force, compare};
use trinomial::solset::{evaluate, invert, InvertResult, ParamDomain, SolutionFamily};
use trinomial::twovar::{orient_or_runge, strict_case_data, Orientation, TwoVarTrinomial};

pub type Check = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let cfg = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check {
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// In a zero-sum triple the two smallest p-adic valuations agree.
pub fn valuation_triples(cases: u32) -> Check {
    let primes = [2i64, 3, 5, 7, 11, 13];
    let side = (0u32..6, -1000i64..1000);
    run(cases, (side.clone(), side, 0usize..primes.len()), |((ea, ra), (eb, rb), pi)| {
        let p = big(primes[pi]);
        let a = big(ra) * p.pow(ea);
        let b = big(rb) * p.pow(eb);
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let c = -(&a + &b);
        let mut vs = [valuation(&a, &p), valuation(&b, &p), valuation(&c, &p)];
        let (tag, v) = valuation_split(&a, &b, &c, &p);
        vs.sort();
        prop_assert_eq!(vs[0], vs[1]);
        prop_assert_eq!(v, vs[0]);
        if tag != SplitTag::AllEqual {
            prop_assert!(vs[1] < vs[2]);
        }
        Ok(())
    })
}

/// n·x = m·y + b against exhaustive search for n, m ≤ 20 and |b| ≤ 60.
pub fn two_term_exhaustive() -> Check {
    for n in 0..=20u64 {
        for m in 0..=20u64 {
            if n == 0 && m == 0 {
                continue;
            }
            for b in -60..=60i64 {
                let s = solve_two_term(n, m, b);
                let mut sols: Vec<(u64, u64)> = Vec::new();
                for x in 0..=200u64 {
                    let r = (n * x) as i64 - b;
                    if m > 0 && r >= 0 && r % m as i64 == 0 {
                        sols.push((x, r as u64 / m));
                    } else if m == 0 && r == 0 {
                        sols.extend((0..3).map(|y| (x, y)));
                    }
                }
                let tag = format!("n={n} m={m} b={b}");
                if s.solvable != !sols.is_empty() {
                    return Err(format!("{tag}: solvable {} but search found {}", s.solvable, sols.len()));
                }
                if !s.solvable {
                    continue;
                }
                let min = sols.iter().min().unwrap();
                if (s.x0, s.y0) != *min {
                    return Err(format!("{tag}: minimal {:?}, search {:?}", (s.x0, s.y0), min));
                }
                for &(x, y) in &sols {
                    let generated = if s.step_x == 0 {
                        x == s.x0 && y >= s.y0 && (y - s.y0) % s.step_y.max(1) == 0
                    } else {
                        x >= s.x0 && (x - s.x0) % s.step_x == 0 && y == s.y0 + (x - s.x0) / s.step_x * s.step_y
                    };
                    if !generated {
                        return Err(format!("{tag}: ({x}, {y}) not generated"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn minimal_in_box(rows: &[(Vec<i64>, i64)], k: u64, homogeneous: bool) -> BTreeSet<Vec<u64>> {
    let n = rows[0].0.len();
    let mut sols = Vec::new();
    let mut z = vec![0u64; n];
    loop {
        let ok = rows.iter().all(|(c, b)| c.iter().zip(&z).map(|(a, v)| a * *v as i64).sum::<i64>() == *b);
        if ok && !(homogeneous && z.iter().all(|v| *v == 0)) {
            sols.push(z.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                let below = |t: &Vec<u64>, s: &Vec<u64>| t != s && t.iter().zip(s).all(|(a, b)| a <= b);
                return sols.iter().filter(|s| !sols.iter().any(|t| below(t, s))).cloned().collect();
            }
            z[i] += 1;
            if z[i] <= k {
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

/// Minimal solutions of small systems equal those found by exhaustive search:
/// one equation in up to four unknowns, or two in up to three. The box covers
/// every minimal solution of one equation; for two it is widened to the
/// largest entry returned.
pub fn hilbert_completeness(cases: u32) -> Check {
    let row = |n: usize| (prop::collection::vec(-3i64..=3, n), -3i64..=3);
    let one = (2usize..=4).prop_flat_map(move |n| prop::collection::vec(row(n), 1));
    let two = (2usize..=3).prop_flat_map(move |n| prop::collection::vec(row(n), 2));
    run(cases, prop_oneof![one, two], |rows| {
        prop_assume!(rows.iter().all(|(c, _)| c.iter().any(|a| *a != 0)));
        let basis = solve_system_nonneg(&rows, 1_000_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let largest = basis.homogeneous_minimals.iter().chain(&basis.particular_minimals).flatten().max().copied();
        let k = if rows.len() == 1 { 12 } else { largest.unwrap_or(0).max(20) };
        let hom: Vec<(Vec<i64>, i64)> = rows.iter().map(|(c, _)| (c.clone(), 0)).collect();
        let want_h = minimal_in_box(&hom, k, true);
        let got_h: BTreeSet<Vec<u64>> = basis.homogeneous_minimals.iter().cloned().collect();
        prop_assert_eq!(&got_h, &want_h, "homogeneous part of {:?}", rows);
        let want_p = if rows.iter().any(|(_, b)| *b != 0) { minimal_in_box(&rows, k, false) } else { BTreeSet::new() };
        let got_p: BTreeSet<Vec<u64>> = basis.particular_minimals.iter().cloned().collect();
        prop_assert_eq!(&got_p, &want_p, "particular part of {:?}", rows);
        Ok(())
    })
}

fn divides_all(t: &[BigInt], u: &[u64]) -> bool {
    t.iter().zip(u).all(|(d, v)| (big(*v as i64) % d).is_zero())
}

fn product(u: &[BigInt], e: &[u32]) -> BigInt {
    u.iter().zip(e).map(|(x, k)| x.pow(*k)).product()
}

/// q | ∏U^e exactly when some minimal tuple divides U, over all U ≤ 50.
pub fn minimal_sets_exhaustive() -> Check {
    let mut es: Vec<Vec<u32>> = (1..=4).map(|a| vec![a]).collect();
    for a in 0..=3 {
        for b in 0..=3 {
            if a + b > 0 {
                es.push(vec![a, b]);
            }
        }
    }
    for e in &es {
        for q in 1..=50i64 {
            let qb = big(q);
            let set = minimal_divisibility_set(e, &qb).map_err(|x| x.to_string())?;
            let e_max = *e.iter().max().unwrap();
            for t in &set.tuples {
                let prod = product(t, e);
                if !(&prod % &qb).is_zero() {
                    return Err(format!("e={e:?} q={q}: {t:?} does not reach q"));
                }
                if prod > qb.pow(1 + e_max) {
                    return Err(format!("e={e:?} q={q}: {t:?} exceeds the size bound"));
                }
                if t.iter().zip(e).any(|(x, k)| *k == 0 && !x.is_one()) {
                    return Err(format!("e={e:?} q={q}: {t:?} is not 1 where e = 0"));
                }
            }
            let n = e.len();
            let total = 50u64.pow(n as u32);
            for code in 0..total {
                let u: Vec<u64> = (0..n).map(|i| code / 50u64.pow(i as u32) % 50 + 1).collect();
                let ub: Vec<BigInt> = u.iter().map(|v| big(*v as i64)).collect();
                let divisible = (product(&ub, e) % &qb).is_zero();
                let covered = set.tuples.iter().any(|t| divides_all(t, &u));
                if divisible != covered {
                    return Err(format!("e={e:?} q={q} U={u:?}: divisible {divisible}, covered {covered}"));
                }
            }
        }
    }
    Ok(())
}

fn two_monomial_poly() -> impl Strategy<Value = Poly> {
    let coeff = prop_oneof![-6i64..=-1, 1i64..=6];
    (2usize..=3).prop_flat_map(move |n| {
        (coeff.clone(), coeff.clone(), prop::collection::vec(0u32..=3, n), prop::collection::vec(0u32..=3, n))
            .prop_map(move |(a, b, e1, e2)| {
                let names: Vec<&str> = ["x", "y", "z"][..n].to_vec();
                Poly::from_terms(&names, vec![(big(a), e1), (big(b), e2)])
            })
    })
}

/// The two-monomial solver agrees with the oracle on [-30, 30]^n.
pub fn two_monomial_vs_oracle(cases: u32) -> Check {
    run(cases, two_monomial_poly(), |p| {
        let set = solve_two_monomial(&p);
        let rep = compare(&set, &brute_force(&p, 30).unwrap());
        prop_assert!(rep.sound && rep.complete_in_box, "{}: {:?}", p, rep);
        Ok(())
    })
}

/// n·l' − k·l' − l·n' = 0 and m·k' − k·m' − l·k' = 0 on strict instances.
pub fn strict_case_identity(cases: u32) -> Check {
    let coeff = prop_oneof![-12i64..=-1, 1i64..=12];
    let exps = (2u32..=14, 2u32..=14).prop_flat_map(|(n, m)| (Just(n), 1..n, 1..m, Just(m)));
    run(cases, (exps, coeff.clone(), coeff.clone(), coeff), |((n, k, l, m), a, b, c)| {
        let eq = TwoVarTrinomial { vars: vec!["x".into(), "y".into()], a: big(a), b: big(b), c: big(c), n, k, l, m };
        let Orientation::Oriented(e) = orient_or_runge(&eq) else { return Ok(()) };
        prop_assume!(e.n * e.l + e.m * e.k != e.m * e.n && e.k < e.n && e.l < e.m);
        let d = strict_case_data(&e);
        prop_assert_eq!(e.n * d.l1, e.k * d.l1 + e.l * d.n1);
        prop_assert_eq!(e.m * d.k1, e.k * d.m1 + e.l * d.k1);
        Ok(())
    })
}

/// Admissible parameter values, drawn in order.
pub fn sample_params(f: &SolutionFamily, rng: &mut ChaCha8Rng, range: i64) -> Vec<BigInt> {
    let mut vals: Vec<BigInt> = Vec::new();
    for (_, dom) in &f.params {
        let nonzero = |rng: &mut ChaCha8Rng| loop {
            let v = rng.gen_range(-range..=range);
            if v != 0 {
                return big(v);
            }
        };
        let v = match dom {
            ParamDomain::AllIntegers => big(rng.gen_range(-range..=range)),
            ParamDomain::FiniteSet(s) => s.choose(rng).expect("nonempty finite set").clone(),
            ParamDomain::DivisorSet { k, .. } => {
                let m = dom.divisor_target(&vals).expect("earlier parameters are admissible");
                if m.is_zero() {
                    nonzero(rng)
                } else {
                    let ds: Vec<BigInt> =
                        positive_divisors(&m.abs()).into_iter().filter(|d| (&m % d.pow(*k)).is_zero()).collect();
                    let d = ds.choose(rng).expect("1 divides").clone();
                    if rng.gen_bool(0.5) {
                        -d
                    } else {
                        d
                    }
                }
            }
        };
        vals.push(v);
    }
    vals
}

pub struct Eligible {
    pub poly: Poly,
    pub trinomial: Trinomial,
    pub cert: Prop4Certificate,
}

pub fn eligible(text: &str) -> Option<Eligible> {
    let poly = parse_equation(text).ok()?.normalized();
    let trinomial = canonicalize(&poly).ok()?;
    let cert = check_prop4(&trinomial, 1_000_000).ok()??;
    cert.t.as_ref()?;
    Some(Eligible { poly, trinomial, cert })
}

/// Random three-variable equations that admit the direct formula.
pub fn random_eligible(count: usize, seed: u64) -> Vec<Eligible> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Eligible> = Vec::new();
    let mut seen = BTreeSet::new();
    while out.len() < count {
        let mut terms = Vec::new();
        for _ in 0..3 {
            let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { -1 } else { 1 };
            let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
            terms.push((big(c), e));
        }
        let poly = Poly::from_terms(&["x", "y", "z"], terms).normalized();
        if poly.terms.len() != 3 || poly.used_vars().len() != 3 {
            continue;
        }
        let Ok(t) = canonicalize(&poly) else { continue };
        if t.cancelled.iter().any(|c| *c > 0) || !seen.insert(poly.to_string()) {
            continue;
        }
        if let Ok(Some(cert)) = check_prop4(&t, 1_000_000) {
            if cert.t.is_some() {
                out.push(Eligible { poly, trinomial: t, cert });
            }
        }
    }
    out
}

/// Random admissible draws solve the equation, and every box solution with
/// no zero coordinate is regenerated through the witness.
pub fn direct_formula_check(e: &Eligible, draws: usize, b: u64, seed: u64) -> Check {
    let fam = direct_formula(&e.poly, &e.trinomial, &e.cert);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..draws {
        let params = sample_params(&fam, &mut rng, 4);
        let x = evaluate(&fam, &params).map_err(|err| format!("{}: {params:?} gives {err:?}", e.poly))?;
        if !e.poly.is_solution(&x) {
            return Err(format!("{}: {params:?} gives non-solution {x:?}", e.poly));
        }
    }
    let run = brute_force(&e.poly, b).map_err(|err| err.to_string())?;
    for x in run.solutions.iter().filter(|x| x.iter().all(|v| !v.is_zero())) {
        match invert(&fam, x) {
            InvertResult::Found(_) => {}
            other => return Err(format!("{}: {x:?} not regenerated ({other:?})", e.poly)),
        }
    }
    Ok(())
}

/// The dispatcher agrees with the oracle on the box.
pub fn box_equivalent(text: &str, b: u64) -> Check {
    let p = parse_equation(text).map_err(|e| e.to_string())?;
    let out = solve(&p, &SolveOptions::offline(10_000));
    let rep = compare(&out.set, &brute_force(&p, b).map_err(|e| e.to_string())?);
    if rep.sound && rep.complete_in_box {
        Ok(())
    } else {
        Err(format!("{text}: missing {:?}, spurious {:?}", rep.missing, rep.spurious))
    }
}
