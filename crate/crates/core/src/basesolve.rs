//! Base equations: a·y^m = b·x^n + c, quadratic forms, and Runge-type
//! finite cases.

use crate::backend::{Backend, BackendAnswer};
use crate::eqparse::Poly;
use crate::intcore::{exact_root, integer_roots, ipow, positive_divisors};
use crate::multivar::twomono::{free_family, solve_le2};
use crate::solset::{int, param, transform_into, Expr, ParamDomain, SolutionFamily, SolutionSet, Status};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Search bound for base equations without a completeness argument.
    pub bound: u64,
    pub backend: Option<Arc<Backend>>,
    /// Node budget for linear Diophantine and feasibility searches.
    pub budget: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { bound: 10_000, backend: Backend::auto(), budget: 1_000_000 }
    }
}

impl SolveOptions {
    pub fn offline(bound: u64) -> Self {
        SolveOptions { bound, backend: None, budget: 1_000_000 }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseEquation {
    /// a·y^m = b·x^n + c
    Superelliptic { a: BigInt, b: BigInt, c: BigInt, n: u32, m: u32 },
    /// A·u² + B·v² + C = 0
    Quadratic { a: BigInt, b: BigInt, c: BigInt },
    RungeFinite(Poly),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RungeError {
    #[error("Runge condition (C1) does not hold")]
    ConditionNotVerified,
}

pub fn solve_base(eq: &BaseEquation, opts: &SolveOptions) -> Result<SolutionSet, RungeError> {
    Ok(match eq {
        BaseEquation::Superelliptic { a, b, c, n, m } => solve_superelliptic(a, b, c, *n, *m, opts),
        BaseEquation::Quadratic { a, b, c } => solve_quadratic(a, b, c),
        BaseEquation::RungeFinite(p) => solve_runge_finite(p, opts.bound)?,
    })
}

/// a*y^m - b*x^n - c over (x, y).
pub fn superelliptic_poly(a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32) -> Poly {
    Poly::from_terms(
        &["x", "y"],
        vec![(a.clone(), vec![0, m]), (-b, vec![n, 0]), (-c, vec![0, 0])],
    )
}

pub fn describe_superelliptic(a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32) -> String {
    format!("{a}*y^{m} = {b}*x^{n} + {c}")
}

pub fn solve_superelliptic(a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32, opts: &SolveOptions) -> SolutionSet {
    let poly = superelliptic_poly(a, b, c, n, m);
    if poly.terms.len() <= 2 || m == 0 || n == 0 {
        let mut s = solve_le2_or_const(&poly);
        s.equation = poly;
        return s;
    }
    if m > n {
        // b·x^n = a·y^m - c with the roles of x and y exchanged
        let sub = solve_oriented(b, a, &-c, m, n, opts);
        let mut set = SolutionSet::new(poly);
        let swap = [param(1), param(0)];
        transform_into(&mut set, &sub, &swap, Some(&swap));
        return set;
    }
    solve_oriented(a, b, c, n, m, opts)
}

fn solve_le2_or_const(poly: &Poly) -> SolutionSet {
    if poly.terms.len() <= 2 {
        return solve_le2(poly);
    }
    // three monomials with a zero exponent cannot occur after normalization
    unreachable!("superelliptic shape with three distinct monomials and a zero exponent")
}

/// a·y^m = b·x^n + c with 1 ≤ m ≤ n, abc ≠ 0.
fn solve_oriented(a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32, opts: &SolveOptions) -> SolutionSet {
    let poly = superelliptic_poly(a, b, c, n, m);
    let mut set = SolutionSet::new(poly.clone());
    let desc = describe_superelliptic(a, b, c, n, m);
    if m == 1 {
        residue_families(&mut set, a, b, c, n);
        set.cite("residue classes modulo |a|");
        return set;
    }
    if m == 2 && n == 2 {
        let q = solve_quadratic(&-b, a, &-c);
        transform_into(&mut set, &q, &[param(0), param(1)], Some(&[param(0), param(1)]));
        return set;
    }
    if m % 2 == 0 && n % 2 == 0 && a.sign() != b.sign() {
        definite_even(&mut set, a, b, c, n, m);
        set.cite("definite even powers");
        return set;
    }
    if let Some(q) = local_obstruction(a, b, c, n, m) {
        set.cite(&format!("no solutions modulo {q}"));
        return set;
    }
    if m == n && n >= 3 {
        if let Some(be) = &opts.backend {
            if let BackendAnswer::Complete(sols) = be.solve(a, b, c, n, m) {
                for (x, y) in sols {
                    if poly.is_solution(&[x.clone(), y.clone()]) {
                        set.push_point(vec![x, y]);
                    }
                }
                set.cite("Thue equation solved by external backend (PARI/GP thue)");
                set.trace.push(format!("{desc} -> {} [backend]", fmt_points(&set.finite)));
                return set;
            }
        }
    }
    sweep(&mut set, a, b, c, n, m, opts.bound);
    set.weaken(Status::SearchedToBound(opts.bound));
    set.cite("bounded search over x");
    set
}

pub fn fmt_points(pts: &[Vec<BigInt>]) -> String {
    let items: Vec<String> = pts
        .iter()
        .map(|p| format!("({})", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn residue_families(set: &mut SolutionSet, a: &BigInt, b: &BigInt, c: &BigInt, n: u32) {
    let am = a.abs();
    let Some(mm) = am.to_u64() else {
        unreachable!("modulus too large for residue enumeration")
    };
    let rs: Vec<u64> = (0..mm)
        .into_par_iter()
        .filter(|r| {
            let v = b * BigInt::from(*r).modpow(&BigInt::from(n), &am) + c;
            (v % &am).is_zero()
        })
        .collect();
    for r in rs {
        let x = int(am.clone()).mul(param(0)).add(int(r));
        let y = int(b.clone()).mul(x.clone().pow(n)).add(int(c.clone())).div(int(a.clone()));
        let w = param(0).sub(int(r)).div(int(am.clone()));
        set.push_family(
            SolutionFamily::new(vec![("z".into(), ParamDomain::AllIntegers)], vec![x, y]).with_witness(vec![w]),
        );
    }
}

fn definite_even(set: &mut SolutionSet, a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32) {
    // a·y^m - b·x^n = c with both terms of the sign of a
    let mut x = BigInt::zero();
    loop {
        let bx = b * ipow(&x, n);
        if bx.abs() > c.abs() {
            break;
        }
        let rhs = &bx + c;
        if (&rhs % a).is_zero() {
            if let Some(y) = exact_root(&(&rhs / a), m) {
                for sx in [x.clone(), -x.clone()] {
                    for sy in [y.clone(), -y.clone()] {
                        set.push_point(vec![sx.clone(), sy]);
                    }
                }
            }
        }
        x += 1;
    }
}

const OBSTRUCTION_MODULI: [u64; 40] = [
    3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64, 67, 71, 73,
    79, 81, 83, 89, 97, 101, 103, 107, 109, 113, 121,
];

/// A modulus with no solution of a·y^m ≡ b·x^n + c.
pub fn local_obstruction(a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32) -> Option<u64> {
    for &q in OBSTRUCTION_MODULI.iter() {
        let qb = BigInt::from(q);
        let am = a.mod_floor(&qb).to_u64().unwrap();
        let bm = b.mod_floor(&qb).to_u64().unwrap();
        let cm = c.mod_floor(&qb).to_u64().unwrap();
        let pw = |v: u64, e: u32| -> u64 {
            let mut r = 1u64;
            for _ in 0..e {
                r = r * v % q;
            }
            r
        };
        let mut lhs = vec![false; q as usize];
        for y in 0..q {
            lhs[(am * pw(y, m) % q) as usize] = true;
        }
        if !(0..q).any(|x| lhs[((bm * pw(x, n) + cm) % q) as usize]) {
            return Some(q);
        }
    }
    None
}

fn sweep(set: &mut SolutionSet, a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32, bound: u64) {
    let bi = bound as i64;
    let mut pts: Vec<Vec<BigInt>> = (-bi..=bi)
        .into_par_iter()
        .flat_map_iter(|x| {
            let xb = BigInt::from(x);
            let rhs = b * ipow(&xb, n) + c;
            let mut out = Vec::new();
            if (&rhs % a).is_zero() {
                if let Some(y) = exact_root(&(&rhs / a), m) {
                    if m % 2 == 0 && !y.is_zero() {
                        out.push(vec![xb.clone(), -&y]);
                    }
                    out.push(vec![xb, y]);
                }
            }
            out
        })
        .collect();
    pts.sort();
    for p in pts {
        set.push_point(p);
    }
}

/// Complete solutions of A·u² + B·v² + C = 0 over (u, v).
pub fn solve_quadratic(a: &BigInt, b: &BigInt, c: &BigInt) -> SolutionSet {
    let poly = Poly::from_terms(
        &["u", "v"],
        vec![(a.clone(), vec![2, 0]), (b.clone(), vec![0, 2]), (c.clone(), vec![0, 0])],
    );
    let mut set = SolutionSet::new(poly.clone());
    set.cite("binary quadratic forms");
    if poly.terms.len() <= 2 {
        let s = solve_le2(&poly);
        set.merge(s);
        return set;
    }
    let vars = poly.vars.clone();
    if a.sign() == b.sign() {
        // definite: |A|u² + |B|v² = -C·sgn(A)
        let rhs = if a.is_positive() { -c } else { c.clone() };
        if rhs.is_negative() {
            return set;
        }
        let mut u = BigInt::zero();
        while a.abs() * &u * &u <= rhs {
            let rest = &rhs - a.abs() * &u * &u;
            if (&rest % b.abs()).is_zero() {
                if let Some(v) = exact_root(&(&rest / b.abs()), 2) {
                    for su in [u.clone(), -u.clone()] {
                        for sv in [v.clone(), -v.clone()] {
                            set.push_point(vec![su.clone(), sv]);
                        }
                    }
                }
            }
            u += 1;
        }
        return set;
    }
    let d = -(a * b);
    let n = -(a * c);
    // X = A·u, X² - D·v² = N
    if let Some(s) = exact_root(&d, 2) {
        // (X - s·v)(X + s·v) = N
        for d1 in positive_divisors(&n.abs()) {
            for d1 in [d1.clone(), -d1] {
                let d2 = &n / &d1;
                let xs = &d1 + &d2;
                let vs = &d2 - &d1;
                let two_a = a * BigInt::from(2);
                let two_s = &s * BigInt::from(2);
                if (&xs % &two_a).is_zero() && (&vs % &two_s).is_zero() {
                    set.push_point(vec![&xs / &two_a, &vs / &two_s]);
                }
            }
        }
        let _ = vars;
        return set;
    }
    match pell_families(&d, &n, a) {
        Some(fams) => {
            for f in fams {
                set.push_family(f);
            }
            set.cite("Pell equation: continued fractions and fundamental solutions");
        }
        None => {
            set.weaken(Status::Unknown);
        }
    }
    set
}

/// Fundamental solution of X² - D·Y² = 1 by the continued fraction of √D.
pub fn pell_fundamental(d: &BigInt) -> (BigInt, BigInt) {
    let a0 = d.sqrt();
    assert!(&a0 * &a0 != *d, "D must not be a square");
    let (mut mm, mut dd, mut aa) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p0, mut p1) = (BigInt::one(), a0.clone());
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    loop {
        if &p1 * &p1 - d * &q1 * &q1 == BigInt::one() {
            return (p1, q1);
        }
        mm = &dd * &aa - &mm;
        dd = (d - &mm * &mm) / &dd;
        aa = (&a0 + &mm) / &dd;
        let p2 = &aa * &p1 + &p0;
        let q2 = &aa * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
}

const FUNDAMENTAL_SCAN_CAP: u64 = 5_000_000;

/// Families of X² - D·v² = N with A | X, reported as (u, v) = (X/A, v).
fn pell_families(d: &BigInt, n: &BigInt, a: &BigInt) -> Option<Vec<SolutionFamily>> {
    let (x1, y1) = pell_fundamental(d);
    // Nagell's bounds on the fundamental solutions of each class
    let vmax2 = if n.is_positive() {
        BigRational::new(&y1 * &y1 * n, (&x1 + 1u32) * 2u32)
    } else {
        BigRational::new(&y1 * &y1 * (-n), (&x1 - 1u32) * 2u32)
    };
    let vmax = vmax2.to_integer().sqrt() + 1u32;
    let vmax = vmax.to_u64().filter(|v| *v <= FUNDAMENTAL_SCAN_CAP)?;
    let mut fund: Vec<(BigInt, BigInt)> = Vec::new();
    for v in 0..=vmax {
        let vb = BigInt::from(v);
        let s = n + d * &vb * &vb;
        if s.is_negative() {
            continue;
        }
        if let Some(x) = exact_root(&s, 2) {
            fund.push((x.clone(), vb.clone()));
            if !x.is_zero() {
                fund.push((-x, vb));
            }
        }
    }
    let mat = [x1.clone(), d * &y1, y1.clone(), x1.clone()];
    let am = a.abs();
    let (period, mp) = matrix_period(&mat, &am)?;
    let mut fams = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (x0, v0) in fund {
        for s in [1i32, -1] {
            let mut cur = [&x0 * s, &v0 * s];
            for r in 0..period {
                if (&cur[0] % &am).is_zero() && seen.insert(cur.clone()) {
                    let idx = Box::new(param(0));
                    let pell = |comp: u8| Expr::Pell { mat: mp.clone(), init: cur.clone(), index: idx.clone(), comp };
                    fams.push(SolutionFamily::new(
                        vec![("k".into(), ParamDomain::AllIntegers)],
                        vec![pell(0).div(int(a.clone())), pell(1)],
                    ));
                }
                let _ = r;
                cur = [&mat[0] * &cur[0] + &mat[1] * &cur[1], &mat[2] * &cur[0] + &mat[3] * &cur[1]];
            }
        }
    }
    Some(fams)
}

/// Smallest P with M^P ≡ I (mod q), and M^P itself.
fn matrix_period(m: &[BigInt; 4], q: &BigInt) -> Option<(usize, [BigInt; 4])> {
    let mul = |x: &[BigInt; 4], y: &[BigInt; 4]| -> [BigInt; 4] {
        [
            &x[0] * &y[0] + &x[1] * &y[2],
            &x[0] * &y[1] + &x[1] * &y[3],
            &x[2] * &y[0] + &x[3] * &y[2],
            &x[2] * &y[1] + &x[3] * &y[3],
        ]
    };
    let mut cur = m.clone();
    for p in 1..=200_000usize {
        let red: Vec<BigInt> = cur.iter().map(|v| v.mod_floor(q)).collect();
        let one = BigInt::one().mod_floor(q);
        if red[0] == one && red[3] == one && red[1].is_zero() && red[2].is_zero() {
            return Some((p, cur));
        }
        cur = mul(&cur, m);
    }
    None
}

/// Runge's condition (C1) with n = deg_x, m = deg_y.
pub fn runge_c1(p: &Poly) -> bool {
    let n = p.terms.iter().map(|t| t.exps[0]).max().unwrap_or(0) as u64;
    let m = p.terms.iter().map(|t| t.exps[1]).max().unwrap_or(0) as u64;
    p.terms.iter().any(|t| n * t.exps[1] as u64 + m * t.exps[0] as u64 > m * n)
}

pub fn solve_runge_finite(p: &Poly, bound: u64) -> Result<SolutionSet, RungeError> {
    assert_eq!(p.nvars(), 2);
    if !runge_c1(p) {
        return Err(RungeError::ConditionNotVerified);
    }
    let mut set = SolutionSet::new(p.clone());
    let deg_y = p.terms.iter().map(|t| t.exps[1]).max().unwrap_or(0) as usize;
    let bi = bound as i64;
    let rows: Vec<(i64, Option<Vec<BigInt>>)> = (-bi..=bi)
        .into_par_iter()
        .map(|x| {
            let xb = BigInt::from(x);
            let mut c = vec![BigInt::zero(); deg_y + 1];
            for t in &p.terms {
                c[t.exps[1] as usize] += &t.coeff * ipow(&xb, t.exps[0]);
            }
            if c.iter().all(|v| v.is_zero()) {
                (x, None)
            } else {
                (x, Some(integer_roots(&c)))
            }
        })
        .collect();
    for (x, roots) in rows {
        match roots {
            None => set.push_family(free_family(&p.vars, &[(0, int(x))])),
            Some(rs) => {
                for y in rs {
                    set.push_point(vec![BigInt::from(x), y]);
                }
            }
        }
    }
    set.weaken(Status::SearchedToBound(bound));
    set.cite("Runge condition (C1): finitely many solutions; bounded search");
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::parse_equation;
    use crate::oracle::{brute_force, compare};
    use crate::solset::enumerate_box;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn pts(s: &SolutionSet) -> Vec<(i64, i64)> {
        s.finite.iter().map(|p| (i64::try_from(&p[0]).unwrap(), i64::try_from(&p[1]).unwrap())).collect()
    }

    #[test]
    fn elliptic_sweep() {
        // y² = x³ + 1
        let s = solve_superelliptic(&b(1), &b(1), &b(1), 3, 2, &SolveOptions::offline(100));
        assert_eq!(pts(&s), vec![(-1, 0), (0, -1), (0, 1), (2, -3), (2, 3)]);
        assert_eq!(s.status, Status::SearchedToBound(100));
    }

    #[test]
    fn quadratic_examples() {
        let s = solve_quadratic(&b(1), &b(1), &b(-1));
        assert_eq!(pts(&s), vec![(-1, 0), (0, -1), (0, 1), (1, 0)]);
        assert!(solve_quadratic(&b(1), &b(1), &b(1)).is_empty());
        assert_eq!(pell_fundamental(&b(2)), (b(3), b(2)));
        let s = solve_quadratic(&b(1), &b(-2), &b(-1));
        assert_eq!(s.status, Status::Complete);
        let listing = enumerate_box(&s, 1000);
        let run = brute_force(&s.equation, 1000).unwrap();
        assert_eq!(listing.points, run.solutions);
    }

    #[test]
    fn quadratic_against_oracle() {
        for (a, bb, c) in [(3, -2, -1), (2, -7, 5), (1, -5, 4), (5, -3, -2), (4, -9, 5), (1, -13, -3), (6, -1, 2)] {
            let s = solve_quadratic(&b(a), &b(bb), &b(c));
            let rep = compare(&s, &brute_force(&s.equation, 300).unwrap());
            assert!(rep.sound && rep.complete_in_box, "{a} {bb} {c}: {rep:?}");
        }
    }

    #[test]
    fn linear_residues() {
        // 3y = x^2 + 1 has no solutions; 2y = x^2 + 1 has one class
        let s = solve_superelliptic(&b(3), &b(1), &b(1), 2, 1, &SolveOptions::offline(10));
        assert!(s.families.is_empty());
        let s = solve_superelliptic(&b(2), &b(1), &b(1), 2, 1, &SolveOptions::offline(10));
        assert_eq!(s.families.len(), 1);
        let rep = compare(&s, &brute_force(&s.equation, 50).unwrap());
        assert!(rep.complete_in_box && rep.sound);
    }

    #[test]
    fn runge_condition() {
        let p = parse_equation("x^4 + x*y + y^3").unwrap();
        assert!(matches!(solve_runge_finite(&p, 5), Err(RungeError::ConditionNotVerified)));
        let p = parse_equation("x^2 + x*y^2 + y").unwrap();
        let s = solve_runge_finite(&p, 10).unwrap();
        let run = brute_force(&p, 10).unwrap();
        let inbox: Vec<Vec<BigInt>> = s.finite.iter().filter(|x| x[1].abs() <= b(10)).cloned().collect();
        assert_eq!(inbox, run.solutions);
    }

    #[test]
    fn obstruction() {
        // 8V^5 + u^5 = -1 has solutions, so no modulus can rule it out
        assert_eq!(local_obstruction(&b(1), &b(-8), &b(-1), 5, 5), None);
        assert_eq!(local_obstruction(&b(1), &b(1), &b(4), 3, 3), Some(7));
        assert_eq!(local_obstruction(&b(1), &b(1), &b(3), 5, 5), Some(11));
    }
}
