//! Exhaustive reference solver over a box.

use crate::eqparse::Poly;
use crate::solset::{enumerate_box, SolutionSet, VerifyReport};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRun {
    pub bound: u64,
    /// Sorted lexicographically.
    pub solutions: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("box of {n} variables with bound {bound} is too large")]
    TooLarge { n: usize, bound: u64 },
}

const MAX_PREFIXES: f64 = 2e8;

pub fn box_is_feasible(n: usize, b: u64) -> bool {
    n == 0 || ((2 * b + 1) as f64).powi(n as i32 - 1) <= MAX_PREFIXES
}

pub fn brute_force(poly: &Poly, b: u64) -> Result<OracleRun, OracleError> {
    let n = poly.nvars();
    if !box_is_feasible(n, b) {
        return Err(OracleError::TooLarge { n, bound: b });
    }
    if n == 0 {
        return Ok(OracleRun { bound: b, solutions: vec![] });
    }
    let bi = b as i64;
    let solver = Residual::new(poly);
    let mut sols: Vec<Vec<BigInt>> = if n == 1 {
        solver.roots(&[], b).into_iter().map(|r| vec![r]).collect()
    } else {
        (-bi..=bi)
            .into_par_iter()
            .flat_map_iter(|x0| {
                let mut out = Vec::new();
                let mut prefix = vec![x0; n - 1];
                let width = (2 * b + 1) as u64;
                let inner = width.pow(n as u32 - 2);
                for code in 0..inner {
                    let mut c = code;
                    for slot in prefix.iter_mut().skip(1).rev() {
                        *slot = (c % width) as i64 - bi;
                        c /= width;
                    }
                    for r in solver.roots(&prefix, b) {
                        let mut x: Vec<BigInt> = prefix.iter().map(|&v| BigInt::from(v)).collect();
                        x.push(r);
                        out.push(x);
                    }
                }
                out
            })
            .collect()
    };
    sols.sort();
    sols.dedup();
    Ok(OracleRun { bound: b, solutions: sols })
}

struct Residual {
    /// (coefficient, exponents of the prefix variables, exponent of the last variable)
    terms: Vec<(BigInt, Option<i128>, Vec<u32>, u32)>,
    deg: u32,
}

impl Residual {
    fn new(p: &Poly) -> Self {
        let n = p.nvars();
        let terms: Vec<_> = p
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.coeff.to_i128(), t.exps[..n - 1].to_vec(), t.exps[n - 1]))
            .collect();
        let deg = terms.iter().map(|t| t.3).max().unwrap_or(0);
        Residual { terms, deg }
    }

    fn coeffs_i128(&self, prefix: &[i64]) -> Option<Vec<i128>> {
        let mut c = vec![0i128; self.deg as usize + 1];
        for (_, ci, exps, e) in &self.terms {
            let mut v = (*ci)?;
            for (x, k) in prefix.iter().zip(exps) {
                for _ in 0..*k {
                    v = v.checked_mul(*x as i128)?;
                }
            }
            c[*e as usize] = c[*e as usize].checked_add(v)?;
        }
        Some(c)
    }

    fn coeffs_big(&self, prefix: &[i64]) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); self.deg as usize + 1];
        for (coef, _, exps, e) in &self.terms {
            let mut v = coef.clone();
            for (x, k) in prefix.iter().zip(exps) {
                v *= num_traits::pow(BigInt::from(*x), *k as usize);
            }
            c[*e as usize] += v;
        }
        c
    }

    fn roots(&self, prefix: &[i64], b: u64) -> Vec<BigInt> {
        match self.coeffs_i128(prefix) {
            Some(c) => roots_small(&c, b).into_iter().map(BigInt::from).collect(),
            None => roots_big(&self.coeffs_big(prefix), b),
        }
    }
}

fn roots_small(c: &[i128], b: u64) -> Vec<i64> {
    let bi = b as i64;
    let Some(v) = c.iter().position(|x| *x != 0) else {
        return (-bi..=bi).collect();
    };
    let mut out = Vec::new();
    if v > 0 {
        out.push(0);
    }
    let c = &c[v..];
    let d = c.iter().rposition(|x| *x != 0).unwrap();
    if d == 0 {
        return out;
    }
    let c = &c[..=d];
    let low = c[0].unsigned_abs();
    let lead = c[d].unsigned_abs();
    let mx = c[..d].iter().map(|x| x.unsigned_abs()).max().unwrap();
    let cb = 1 + mx / lead;
    let lim = (b as u128).min(low).min(cb);
    for r in 1..=lim {
        if low % r != 0 {
            continue;
        }
        for s in [r as i64, -(r as i64)] {
            if eval_small(c, s) {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

fn eval_small(c: &[i128], r: i64) -> bool {
    let mut acc: i128 = 0;
    for x in c.iter().rev() {
        match acc.checked_mul(r as i128).and_then(|v| v.checked_add(*x)) {
            Some(v) => acc = v,
            None => {
                let big: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
                return horner_big(&big, &BigInt::from(r)).is_zero();
            }
        }
    }
    acc == 0
}

fn horner_big(c: &[BigInt], r: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for x in c.iter().rev() {
        acc = acc * r + x;
    }
    acc
}

fn roots_big(c: &[BigInt], b: u64) -> Vec<BigInt> {
    let Some(v) = c.iter().position(|x| !x.is_zero()) else {
        let bi = b as i64;
        return (-bi..=bi).map(BigInt::from).collect();
    };
    let mut out = Vec::new();
    if v > 0 {
        out.push(BigInt::zero());
    }
    let c = &c[v..];
    if c.iter().skip(1).all(|x| x.is_zero()) {
        return out;
    }
    let low = c[0].abs();
    for r in 1..=b {
        let rb = BigInt::from(r);
        if !(&low % &rb).is_zero() {
            continue;
        }
        for s in [rb.clone(), -rb] {
            if horner_big(c, &s).is_zero() {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

/// Compare a solution set with an oracle run on the same equation.
pub fn compare(set: &SolutionSet, run: &OracleRun) -> VerifyReport {
    let listing = enumerate_box(set, run.bound);
    let got: BTreeSet<&Vec<BigInt>> = listing.points.iter().collect();
    let want: BTreeSet<&Vec<BigInt>> = run.solutions.iter().collect();
    let missing: Vec<Vec<BigInt>> = want.difference(&got).map(|x| (*x).clone()).collect();
    let spurious: Vec<Vec<BigInt>> = got.difference(&want).map(|x| (*x).clone()).collect();
    VerifyReport {
        sound: spurious.is_empty(),
        complete_in_box: missing.is_empty(),
        missing,
        spurious,
        heuristic: listing.heuristic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::parse_equation;

    fn pts(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|x| x.iter().map(|&a| BigInt::from(a)).collect()).collect()
    }

    #[test]
    fn small_boxes() {
        let r = brute_force(&parse_equation("x^2 - y^3").unwrap(), 10).unwrap();
        assert_eq!(r.solutions, pts(&[&[-8, 4], &[-1, 1], &[0, 0], &[1, 1], &[8, 4]]));
        let r = brute_force(&parse_equation("x^4 + x*y + 2*y^3").unwrap(), 20).unwrap();
        assert_eq!(r.solutions, pts(&[&[-1, -1], &[0, 0]]));
    }

    #[test]
    fn matches_naive_scan() {
        let p = parse_equation("x*y - z*t = 1").unwrap();
        let r = brute_force(&p, 4).unwrap();
        let mut naive = Vec::new();
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                for c in -4..=4i64 {
                    for d in -4..=4i64 {
                        if a * b - c * d == 1 {
                            naive.push(vec![a, b, c, d]);
                        }
                    }
                }
            }
        }
        let naive: Vec<Vec<BigInt>> = naive.into_iter().map(|x| x.into_iter().map(BigInt::from).collect()).collect();
        assert_eq!(r.solutions, naive);
    }

    #[test]
    fn identically_zero_residual() {
        let r = brute_force(&parse_equation("x*y").unwrap(), 2).unwrap();
        assert_eq!(r.solutions.len(), 9);
    }

    #[test]
    fn too_large() {
        assert!(brute_force(&parse_equation("x+y+z+t+w").unwrap(), 1000).is_err());
    }
}
