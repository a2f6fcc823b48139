//! Linear Diophantine machinery over non-negative integers.

use crate::intcore::{factorize, ipow};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTermSolution {
    pub solvable: bool,
    pub x0: u64,
    pub y0: u64,
    pub step_x: u64,
    pub step_y: u64,
}

impl TwoTermSolution {
    fn none() -> Self {
        TwoTermSolution { solvable: false, x0: 0, y0: 0, step_x: 0, step_y: 0 }
    }
}

/// Minimal non-negative solution of n·x = m·y + b.
pub fn solve_two_term(n: u64, m: u64, b: i64) -> TwoTermSolution {
    assert!(n > 0 || m > 0, "solve_two_term: n = m = 0");
    if n == 0 {
        // 0 = m y + b
        if b <= 0 && (-b) % m as i64 == 0 {
            return TwoTermSolution { solvable: true, x0: 0, y0: (-b) as u64 / m, step_x: 1, step_y: 0 };
        }
        return TwoTermSolution::none();
    }
    if m == 0 {
        if b >= 0 && b % n as i64 == 0 {
            return TwoTermSolution { solvable: true, x0: b as u64 / n, y0: 0, step_x: 0, step_y: 1 };
        }
        return TwoTermSolution::none();
    }
    let g = n.gcd(&m);
    if b.rem_euclid(g as i64) != 0 {
        return TwoTermSolution::none();
    }
    let (ni, mi, bi) = (n as i128, m as i128, b as i128);
    let mg = mi / g as i128;
    // x ≡ (b/g)·(n/g)^{-1} (mod m/g)
    let inv = mod_inverse((ni / g as i128).rem_euclid(mg), mg);
    let xs = ((bi / g as i128).rem_euclid(mg) * inv).rem_euclid(mg);
    let lower = if bi <= 0 { 0 } else { (bi + ni - 1) / ni };
    let mut x0 = xs;
    if x0 < lower {
        x0 += ((lower - x0 + mg - 1) / mg) * mg;
    }
    let y0 = (ni * x0 - bi) / mi;
    TwoTermSolution {
        solvable: true,
        x0: x0 as u64,
        y0: y0 as u64,
        step_x: m / g,
        step_y: n / g,
    }
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1, mut s0, mut s1) = (a, m, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalBasis {
    pub homogeneous_minimals: Vec<Vec<u64>>,
    pub particular_minimals: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("completion exceeded the node budget of {0}")]
pub struct BudgetExceeded(pub usize);

pub fn hilbert_basis(system: &[Vec<i64>]) -> MinimalBasis {
    let sys: Vec<(Vec<i64>, i64)> = system.iter().map(|r| (r.clone(), 0)).collect();
    solve_system_nonneg(&sys, DEFAULT_BUDGET).expect("hilbert_basis budget")
}

/// Minimal non-negative solutions of Σ c_i z_i = b_j for every row.
pub fn solve_system_nonneg(system: &[(Vec<i64>, i64)], budget: usize) -> Result<MinimalBasis, BudgetExceeded> {
    let n = system.first().map_or(0, |r| r.0.len());
    // homogenized columns: the last variable carries -b and is capped at 1
    let cols: Vec<Vec<i64>> = (0..=n)
        .map(|j| {
            system
                .iter()
                .map(|(c, b)| if j < n { c[j] } else { -b })
                .collect()
        })
        .collect();
    let inhom = system.iter().any(|(_, b)| *b != 0);
    let nv = if inhom { n + 1 } else { n };
    let dot = |u: &[i64], v: &[i64]| -> i128 { u.iter().zip(v).map(|(a, b)| *a as i128 * *b as i128).sum() };

    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<(Vec<u64>, Vec<i64>)> = Vec::new();
    for j in 0..nv {
        let mut x = vec![0u64; nv];
        x[j] = 1;
        frontier.push((x, cols[j].clone()));
    }
    let mut nodes = 0usize;
    while !frontier.is_empty() {
        let mut next: Vec<(Vec<u64>, Vec<i64>)> = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut found_now: Vec<Vec<u64>> = Vec::new();
        for (x, ax) in frontier {
            nodes += 1;
            if nodes > budget {
                return Err(BudgetExceeded(budget));
            }
            if solutions.iter().any(|s| dominated_by(s, &x)) {
                continue;
            }
            if ax.iter().all(|v| *v == 0) {
                found_now.push(x);
                continue;
            }
            for j in 0..nv {
                if inhom && j == n && x[n] >= 1 {
                    continue;
                }
                if dot(&ax, &cols[j]) < 0 {
                    let mut y = x.clone();
                    y[j] += 1;
                    if seen.insert(y.clone()) {
                        let ay: Vec<i64> = ax.iter().zip(&cols[j]).map(|(a, b)| a + b).collect();
                        next.push((y, ay));
                    }
                }
            }
        }
        solutions.extend(found_now);
        frontier = next
            .into_iter()
            .filter(|(x, _)| !solutions.iter().any(|s| dominated_by(s, x)))
            .collect();
    }
    let mut basis = MinimalBasis::default();
    for s in solutions {
        if inhom && s[n] == 1 {
            basis.particular_minimals.push(s[..n].to_vec());
        } else if !inhom || s[n] == 0 {
            basis.homogeneous_minimals.push(s[..n].to_vec());
        }
    }
    basis.homogeneous_minimals.sort();
    basis.particular_minimals.sort();
    Ok(basis)
}

/// s ≤ x componentwise.
fn dominated_by(s: &[u64], x: &[u64]) -> bool {
    s.iter().zip(x).all(|(a, b)| a <= b)
}

/// Parametrization of xy = zt: (x,y,z,t) = (uv, wr, uw, vr).
pub fn solve_xy_eq_zt(x: &BigInt, y: &BigInt, z: &BigInt, t: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    assert_eq!(x * y, z * t, "solve_xy_eq_zt: xy != zt");
    if x.is_zero() && z.is_zero() {
        return (BigInt::zero(), t.clone(), y.clone(), BigInt::one());
    }
    let u = x.gcd(z);
    let v = x / &u;
    let w = z / &u;
    let r = if w.is_zero() { t / &v } else { y / &w };
    (u, v, w, r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityMinimalSet {
    pub exponents: Vec<u32>,
    pub modulus: BigInt,
    pub tuples: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("all exponents are zero and |q| > 1")]
pub struct NoDivisibility;

pub fn minimal_divisibility_set(e: &[u32], q: &BigInt) -> Result<DivisibilityMinimalSet, NoDivisibility> {
    assert!(!q.is_zero());
    let n = e.len();
    let f = factorize(q);
    if e.iter().all(|x| *x == 0) && !f.factors.is_empty() {
        return Err(NoDivisibility);
    }
    let mut tuples: Vec<Vec<BigInt>> = vec![vec![BigInt::one(); n]];
    for (p, qp) in &f.factors {
        let local = minimal_cover(e, *qp);
        let mut next = Vec::new();
        for t in &tuples {
            for x in &local {
                let mut u = t.clone();
                for k in 0..n {
                    if x[k] > 0 {
                        u[k] *= ipow(p, x[k]);
                    }
                }
                next.push(u);
            }
        }
        tuples = next;
    }
    tuples.sort();
    Ok(DivisibilityMinimalSet { exponents: e.to_vec(), modulus: q.clone(), tuples })
}

/// Minimal x ≥ 0 (x_k = 0 where e_k = 0) with Σ e_k x_k ≥ target.
fn minimal_cover(e: &[u32], target: u32) -> Vec<Vec<u32>> {
    let n = e.len();
    let caps: Vec<u32> = e.iter().map(|&ek| if ek == 0 { 0 } else { (target + ek - 1) / ek }).collect();
    let mut all = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(k: usize, e: &[u32], caps: &[u32], target: u32, cur: &mut Vec<u32>, all: &mut Vec<Vec<u32>>) {
        if k == e.len() {
            let s: u32 = cur.iter().zip(e).map(|(a, b)| a * b).sum();
            if s >= target {
                all.push(cur.clone());
            }
            return;
        }
        for v in 0..=caps[k] {
            cur[k] = v;
            rec(k + 1, e, caps, target, cur, all);
        }
        cur[k] = 0;
    }
    rec(0, e, &caps, target, &mut cur, &mut all);
    let minimal: Vec<Vec<u32>> = all
        .iter()
        .filter(|x| !all.iter().any(|y| y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect();
    minimal
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feasibility {
    Feasible,
    Infeasible,
    Unknown,
}

/// Decides whether Σ z_i c_i = (0, 1) has a solution z ≥ 0 in integers.
pub fn feasible_2d(c: &[(i64, i64)], budget: usize) -> Feasibility {
    if c.iter().any(|&v| v == (0, 1)) {
        return Feasibility::Feasible;
    }
    let pos: Vec<usize> = (0..c.len()).filter(|&i| c[i].0 > 0).collect();
    let neg: Vec<usize> = (0..c.len()).filter(|&i| c[i].0 < 0).collect();
    let zero: Vec<usize> = (0..c.len()).filter(|&i| c[i].0 == 0).collect();
    let mut support = zero.clone();
    let both = !pos.is_empty() && !neg.is_empty();
    if both {
        support.extend(&pos);
        support.extend(&neg);
    }
    if support.is_empty() {
        return Feasibility::Infeasible;
    }
    let mut any_pos = false;
    let mut any_neg = false;
    let mut note = |v: i128| {
        if v > 0 {
            any_pos = true;
        } else if v < 0 {
            any_neg = true;
        }
    };
    for &i in &zero {
        note(c[i].1 as i128);
    }
    if both {
        for &i in &pos {
            for &j in &neg {
                let (ai, bi) = (c[i].0 as i128, c[i].1 as i128);
                let (aj, bj) = (c[j].0 as i128, c[j].1 as i128);
                note(-aj * bi + ai * bj);
            }
        }
    }
    if !any_pos {
        return Feasibility::Infeasible;
    }
    let vecs: Vec<(i64, i64)> = support.iter().map(|&i| c[i]).collect();
    if any_neg {
        return if lattice_contains_e2(&vecs) { Feasibility::Feasible } else { Feasibility::Infeasible };
    }
    if !both {
        // only a = 0 vectors, none equal to (0,1)
        return Feasibility::Infeasible;
    }
    bounded_walk(c, &pos, &neg, &zero, budget)
}

/// Is (0,1) in the integer lattice spanned by the vectors?
fn lattice_contains_e2(vecs: &[(i64, i64)]) -> bool {
    let mut g1 = BigInt::zero();
    let mut h1 = BigInt::zero();
    let mut g2 = BigInt::zero();
    for &(x, y) in vecs {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        if x.is_zero() {
            g2 = g2.gcd(&y);
        } else {
            let eg = g1.extended_gcd(&x);
            let g = eg.gcd.clone();
            let e = (&x / &g) * &h1 - (&g1 / &g) * &y;
            h1 = &eg.x * &h1 + &eg.y * &y;
            g1 = g;
            g2 = g2.gcd(&e);
        }
        if !g2.is_zero() {
            h1 = h1.mod_floor(&g2);
        }
    }
    g2.is_one()
}

/// Shortest closed walk search for the case where b·z ≥ 0 on the cone.
fn bounded_walk(c: &[(i64, i64)], pos: &[usize], neg: &[usize], zero: &[usize], budget: usize) -> Feasibility {
    // lambda between max_P(-b/a) and min_N(b/|a|), as exact fractions
    let frac_max = pos
        .iter()
        .map(|&i| (-(c[i].1 as i128), c[i].0 as i128))
        .reduce(|p, q| if p.0 * q.1 >= q.0 * p.1 { p } else { q })
        .unwrap();
    let frac_min = neg
        .iter()
        .map(|&j| (c[j].1 as i128, -(c[j].0 as i128)))
        .reduce(|p, q| if p.0 * q.1 <= q.0 * p.1 { p } else { q })
        .unwrap();
    // midpoint P/Q
    let q = 2 * frac_max.1 * frac_min.1;
    let p = frac_max.0 * frac_min.1 + frac_min.0 * frac_max.1;
    let g = p.gcd(&q).max(1);
    let (p, q) = (p / g, q / g);
    let items: Vec<(i64, i128)> = pos
        .iter()
        .chain(neg)
        .chain(zero.iter())
        .map(|&i| (c[i].0, q * c[i].1 as i128 + p * c[i].0 as i128))
        .filter(|&(a, w)| !(a == 0 && w == 0))
        .collect();
    debug_assert!(items.iter().all(|&(_, w)| w >= 0));
    let amax = items.iter().map(|&(a, _)| a.unsigned_abs() as i64).max().unwrap();
    // state index: s in (-amax, amax], flag
    let width = (2 * amax) as usize;
    let idx = |s: i64, f: bool| -> usize { ((s + amax - 1) as usize) * 2 + f as usize };
    let mut dist = vec![i128::MAX; width * 2];
    let mut heap = BinaryHeap::new();
    dist[idx(0, false)] = 0;
    heap.push(Reverse((0i128, 0i64, false)));
    let mut pops = 0usize;
    while let Some(Reverse((d, s, f))) = heap.pop() {
        if d > dist[idx(s, f)] {
            continue;
        }
        if s == 0 && f {
            return if d == q { Feasibility::Feasible } else { Feasibility::Infeasible };
        }
        pops += 1;
        if pops > budget {
            return Feasibility::Unknown;
        }
        for &(a, w) in &items {
            let ok = if s <= 0 { a >= 0 } else { a <= 0 };
            if !ok {
                continue;
            }
            let ns = s + a;
            let nd = d + w;
            if nd > q {
                continue;
            }
            let nf = f || w > 0;
            let k = idx(ns, nf);
            if nd < dist[k] {
                dist[k] = nd;
                heap.push(Reverse((nd, ns, nf)));
            }
        }
    }
    Feasibility::Infeasible
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_term_examples() {
        let s = solve_two_term(3, 5, 1);
        assert!(s.solvable);
        assert_eq!((s.x0, s.y0, s.step_x, s.step_y), (2, 1, 5, 3));
        assert!(!solve_two_term(2, 4, 1).solvable);
        let s = solve_two_term(1, 1, 0);
        assert_eq!((s.x0, s.y0, s.step_x, s.step_y), (0, 0, 1, 1));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_basis(&[vec![2, -3]]).homogeneous_minimals, vec![vec![3, 2]]);
        assert_eq!(
            hilbert_basis(&[vec![2, -3, 0], vec![0, 3, -5]]).homogeneous_minimals,
            vec![vec![15, 10, 6]]
        );
        assert_eq!(
            hilbert_basis(&[vec![1, 1, -1]]).homogeneous_minimals,
            vec![vec![0, 1, 1], vec![1, 0, 1]]
        );
    }

    #[test]
    fn inhomogeneous_examples() {
        let b = solve_system_nonneg(&[(vec![2, -3, 0], 0), (vec![0, 3, -5], -1)], DEFAULT_BUDGET).unwrap();
        assert!(b.particular_minimals.contains(&vec![12, 8, 5]));
        let b = solve_system_nonneg(&[(vec![2, -3, 0], 0), (vec![0, 3, -5], 1)], DEFAULT_BUDGET).unwrap();
        assert!(b.particular_minimals.contains(&vec![3, 2, 1]));
        // 2z2 + z3 = z3 and z3 = 3 z1 - 1
        let b = solve_system_nonneg(&[(vec![0, 2, 0], 0), (vec![-3, 0, 1], -1)], DEFAULT_BUDGET).unwrap();
        assert!(b.particular_minimals.contains(&vec![1, 0, 2]));
    }

    #[test]
    fn xy_zt_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(solve_xy_eq_zt(&b(6), &b(1), &b(2), &b(3)), (b(2), b(3), b(1), b(1)));
        assert_eq!(solve_xy_eq_zt(&b(4), &b(6), &b(8), &b(3)), (b(4), b(1), b(2), b(3)));
        let (u, v, w, r) = solve_xy_eq_zt(&b(0), &b(5), &b(0), &b(7));
        assert_eq!((&u * &v, &w * &r, &u * &w, &v * &r), (b(0), b(5), b(0), b(7)));
    }

    #[test]
    fn divisibility_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(minimal_divisibility_set(&[2], &b(8)).unwrap().tuples, vec![vec![b(4)]]);
        assert_eq!(
            minimal_divisibility_set(&[1, 1], &b(4)).unwrap().tuples,
            vec![vec![b(1), b(4)], vec![b(2), b(2)], vec![b(4), b(1)]]
        );
        assert_eq!(minimal_divisibility_set(&[1, 0], &b(6)).unwrap().tuples, vec![vec![b(6), b(1)]]);
        assert!(minimal_divisibility_set(&[0, 0], &b(6)).is_err());
    }

    #[test]
    fn feasibility_small() {
        // x^3 - y^2 z - z with y^2 z + z = x^3: a = alpha - beta, b = gamma - alpha
        let alpha = [0i64, 2, 1];
        let beta = [0i64, 0, 1];
        let gamma = [3i64, 0, 0];
        let c: Vec<(i64, i64)> = (0..3).map(|i| (alpha[i] - beta[i], gamma[i] - alpha[i])).collect();
        assert_eq!(feasible_2d(&c, DEFAULT_BUDGET), Feasibility::Feasible);
        let neg: Vec<(i64, i64)> = c.iter().map(|&(a, b)| (a, -b)).collect();
        assert_eq!(feasible_2d(&neg, DEFAULT_BUDGET), Feasibility::Feasible);
    }
}
