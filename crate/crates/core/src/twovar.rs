//! Complete pipeline for three-monomial equations in two variables.

use crate::basesolve::{fmt_points, solve_runge_finite, solve_superelliptic, SolveOptions};
use crate::eqparse::{canonicalize, Poly, Trinomial};
use crate::intcore::{exact_root, factorize, integer_roots, positive_divisors, solve_univariate, vp};
use crate::lindioph::{solve_two_term, solve_xy_eq_zt};
use crate::multivar::twomono::{free_family, solve_le2, trivial_solutions, two_mono_nontrivial};
use crate::solset::{int, mul_all, param, transform_into, Expr, SolutionSet, Status};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// a·x^n + b·x^k·y^l + c·y^m = 0 over the variables of the source equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVarTrinomial {
    pub vars: Vec<String>,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub m: u32,
}

impl TwoVarTrinomial {
    pub fn poly(&self) -> Poly {
        let v: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        Poly::from_terms(
            &v,
            vec![
                (self.a.clone(), vec![self.n, 0]),
                (self.b.clone(), vec![self.k, self.l]),
                (self.c.clone(), vec![0, self.m]),
            ],
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictCaseData {
    pub l1: u32,
    pub n1: u32,
    pub m1: u32,
    pub k1: u32,
    /// Candidate pairs (x_i, y_i).
    pub candidates: Vec<(BigInt, BigInt)>,
}

#[derive(Clone, Debug)]
pub struct TwoVarOutcome {
    pub set: SolutionSet,
    pub path: Vec<String>,
}

pub enum Normalized {
    Form(TwoVarTrinomial),
    Finished(SolutionSet),
}

/// Bring a cancelled two-variable trinomial to the a·x^n + b·x^k·y^l + c·y^m form.
pub fn normalize_two_var(t: &Trinomial) -> Normalized {
    let p = t.to_poly();
    let terms: Vec<(BigInt, u32, u32)> =
        p.terms.iter().map(|m| (m.coeff.clone(), m.exps[0], m.exps[1])).collect();
    if let Some(ci) = terms.iter().position(|t| t.1 == 0 && t.2 == 0) {
        let others: Vec<usize> = (0..3).filter(|&i| i != ci).collect();
        for var in 0..2 {
            let e = |i: usize| if var == 0 { terms[i].1 } else { terms[i].2 };
            if e(others[0]) > 0 && e(others[1]) > 0 {
                return Normalized::Finished(divisor_prestep(&p, var, &terms[ci].0));
            }
        }
    }
    let bi = terms.iter().position(|t| t.2 == 0 && t.1 > 0).expect("a pure power of x");
    let ai = terms.iter().position(|t| t.1 == 0 && t.2 > 0).expect("a pure power of y");
    let ci = 3 - ai - bi;
    Normalized::Form(TwoVarTrinomial {
        vars: p.vars.clone(),
        a: terms[bi].0.clone(),
        n: terms[bi].1,
        b: terms[ci].0.clone(),
        k: terms[ci].1,
        l: terms[ci].2,
        c: terms[ai].0.clone(),
        m: terms[ai].2,
    })
}

/// A variable dividing the constant term: enumerate its divisors.
fn divisor_prestep(p: &Poly, var: usize, constant: &BigInt) -> SolutionSet {
    let mut set = SolutionSet::new(p.clone());
    for d in positive_divisors(&constant.abs()) {
        for v in [d.clone(), -d] {
            let sub = p.substitute(var, &v);
            let other = 1 - var;
            let deg = sub.terms.iter().map(|t| t.exps[0]).max().unwrap_or(0) as usize;
            let mut c = vec![BigInt::zero(); deg + 1];
            for t in &sub.terms {
                c[t.exps[0] as usize] += &t.coeff;
            }
            if c.iter().all(|x| x.is_zero()) {
                set.push_family(free_family(&p.vars, &[(var, Expr::Int(v.clone()))]));
                continue;
            }
            for r in integer_roots(&c) {
                let mut x = vec![BigInt::zero(); 2];
                x[var] = v.clone();
                x[other] = r;
                set.push_point(x);
            }
        }
    }
    set.cite("divisors of the constant term");
    set
}

pub enum Orientation {
    Oriented(TwoVarTrinomial),
    Runge { d: u32, eq: TwoVarTrinomial },
}

pub fn orient_or_runge(eq: &TwoVarTrinomial) -> Orientation {
    let mut e = eq.clone();
    if e.l == 0 && e.k > e.n {
        std::mem::swap(&mut e.a, &mut e.b);
        std::mem::swap(&mut e.n, &mut e.k);
    } else if e.k == 0 && e.l > e.m {
        std::mem::swap(&mut e.b, &mut e.c);
        std::mem::swap(&mut e.l, &mut e.m);
    }
    let (n, k, l, m) = (e.n as u64, e.k as u64, e.l as u64, e.m as u64);
    if n * l + m * k > m * n {
        let d = [e.n, e.k, e.l, e.m].iter().fold(0u32, |g, x| g.gcd(x));
        return Orientation::Runge { d, eq: e };
    }
    Orientation::Oriented(e)
}

pub fn solve_two_var(poly: &Poly, opts: &SolveOptions) -> TwoVarOutcome {
    let poly = poly.normalized();
    let mut path = vec!["twovar".to_string()];
    let mut set = SolutionSet::new(poly.clone());
    let t = canonicalize(&poly).expect("three monomials");
    for (i, c) in t.cancelled.iter().enumerate() {
        if *c > 0 {
            set.push_family(free_family(&poly.vars, &[(i, int(0))]));
            path.push("cancel-common-monomial".into());
        }
    }
    let reduced = t.to_poly();
    let sub = match normalize_two_var(&t) {
        Normalized::Finished(s) => {
            path.push("divisor-prestep".into());
            s
        }
        Normalized::Form(f) if f.k == 0 && f.l == 0 => {
            // c·y^m = -a·x^n - b
            path.push("superelliptic".into());
            let base = solve_superelliptic(&f.c, &-&f.a, &-&f.b, f.n, f.m, opts);
            let mut s = SolutionSet::new(f.poly());
            transform_into(&mut s, &base, &[param(0), param(1)], Some(&[param(0), param(1)]));
            s
        }
        Normalized::Form(f) => solve_form(&f, opts, &mut path),
    };
    let id = [param(0), param(1)];
    let mut sub_in = SolutionSet::new(reduced.clone());
    transform_into(&mut sub_in, &sub, &id, Some(&id));
    transform_into(&mut set, &sub_in, &id, Some(&id));
    TwoVarOutcome { set, path }
}

fn solve_form(f: &TwoVarTrinomial, opts: &SolveOptions, path: &mut Vec<String>) -> SolutionSet {
    let poly = f.poly();
    let mut set = SolutionSet::new(poly.clone());
    set.merge(trivial_solutions(&poly));
    match orient_or_runge(f) {
        Orientation::Runge { d, eq } => {
            path.push(format!("runge(d={d})"));
            set.merge(runge_path(&eq, d, opts));
        }
        Orientation::Oriented(e) => {
            let (n, k, l, m) = (e.n as u64, e.k as u64, e.l as u64, e.m as u64);
            if n * l + m * k == m * n {
                path.push("equality".into());
                set.merge(solve_equality_case(&e));
            } else {
                path.push("strict".into());
                set.merge(solve_strict_case(&e, opts));
            }
        }
    }
    set
}

fn runge_path(e: &TwoVarTrinomial, d: u32, opts: &SolveOptions) -> SolutionSet {
    let mut set = SolutionSet::new(e.poly());
    let v: Vec<&str> = e.vars.iter().map(|s| s.as_str()).collect();
    let big = Poly::from_terms(
        &v,
        vec![
            (e.a.clone(), vec![e.n / d, 0]),
            (e.b.clone(), vec![e.k / d, e.l / d]),
            (e.c.clone(), vec![0, e.m / d]),
        ],
    );
    let sub = solve_runge_finite(&big, opts.bound).expect("Runge condition holds on this path");
    let roots = |v: &BigInt| -> Vec<BigInt> {
        match exact_root(v, d) {
            Some(r) if d % 2 == 0 && !r.is_zero() => vec![r.clone(), -r],
            Some(r) => vec![r],
            None => vec![],
        }
    };
    for p in &sub.finite {
        for x in roots(&p[0]) {
            for y in roots(&p[1]) {
                set.push_point(vec![x.clone(), y]);
            }
        }
    }
    for fam in &sub.families {
        // identically vanishing rows have a fixed X and a free Y
        if let Some(x0) = fam.exprs[0].as_int() {
            for x in roots(x0) {
                set.push_family(free_family(&e.vars, &[(0, Expr::Int(x))]));
            }
        }
    }
    set.weaken(sub.status.clone());
    for c in &sub.provenance {
        set.cite(c);
    }
    set.cite("perfect d-th powers among Runge solutions");
    set
}

/// n·l + m·k = m·n: t = x^w / y^v satisfies a·t^u + b·t^r + c = 0.
pub fn solve_equality_case(e: &TwoVarTrinomial) -> SolutionSet {
    let poly = e.poly();
    let mut set = SolutionSet::new(poly.clone());
    let (u, v, w, r) = solve_xy_eq_zt(
        &BigInt::from(e.m),
        &BigInt::from(e.k),
        &BigInt::from(e.n),
        &BigInt::from(e.m - e.l),
    );
    let (u, v, w, r) = (
        u.to_u32().unwrap(),
        v.to_u32().unwrap(),
        w.to_u32().unwrap(),
        r.to_u32().unwrap(),
    );
    let deg = u.max(r) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    coeffs[u as usize] += &e.a;
    coeffs[r as usize] += &e.b;
    coeffs[0] += &e.c;
    let (ints, rats) = solve_univariate(&coeffs);
    let mut roots: Vec<BigRational> = ints.into_iter().map(BigRational::from_integer).collect();
    roots.extend(rats);
    for t in roots {
        if t.is_zero() {
            continue;
        }
        // q·x^w = p·y^v with xy ≠ 0
        let mut part = SolutionSet::new(poly.clone());
        two_mono_nontrivial(&mut part, t.denom(), &[w, 0], t.numer(), &[0, v]);
        set.merge(part);
        set.trace.push(format!("t = {t}: {}*x^{w} = {}*y^{v}", t.denom(), t.numer()));
    }
    set.cite("rational roots of a·t^u + b·t^r + c");
    set
}

/// Per-prime exponent options (x_p, y_p) for p | abc.
fn prime_options(e: &TwoVarTrinomial, p: &BigInt) -> Vec<(u64, u64)> {
    let (n, k, l, m) = (e.n as u64, e.k as u64, e.l as u64, e.m as u64);
    let ap = vp(&e.a, p) as i64;
    let bp = vp(&e.b, p) as i64;
    let cp = vp(&e.c, p) as i64;
    let mut out = BTreeSet::new();
    // b-term strictly above the equal a- and c-terms
    let s = solve_two_term(n, m, cp - ap);
    if s.solvable {
        let g = n.gcd(&m);
        let h = bp + (k * s.x0 + l * s.y0) as i64 - ap - (n * s.x0) as i64;
        let den = (n * m - k * m - l * n) as i64;
        if h > 0 {
            // 0 ≤ u_p < h·g / den
            let mut up = 0u64;
            while (up as i64) * den < h * g as i64 {
                out.insert((s.x0 + m / g * up, s.y0 + n / g * up));
                up += 1;
            }
        }
    }
    let s = solve_two_term(n - k, l, bp - ap);
    if s.solvable {
        out.insert((s.x0, s.y0));
    }
    let s = solve_two_term(k, m - l, cp - bp);
    if s.solvable {
        out.insert((s.x0, s.y0));
    }
    out.into_iter().collect()
}

pub fn strict_case_data(e: &TwoVarTrinomial) -> StrictCaseData {
    let (n, k, l, m) = (e.n, e.k, e.l, e.m);
    let g1 = l.gcd(&(n - k));
    let g2 = k.gcd(&(m - l));
    let (l1, n1) = (l / g1, (n - k) / g1);
    let (m1, k1) = ((m - l) / g2, k / g2);
    assert_eq!(n * l1, k * l1 + l * n1, "n·l' - k·l' - l·n' = 0");
    assert_eq!(m * k1, k * m1 + l * k1, "m·k' - k·m' - l·k' = 0");
    let abc = &e.a * &e.b * &e.c;
    let primes = factorize(&abc).primes();
    let mut cands: Vec<(BigInt, BigInt)> = vec![(BigInt::one(), BigInt::one())];
    for p in &primes {
        let opts = prime_options(e, p);
        let mut next = Vec::new();
        for (x, y) in &cands {
            for (xp, yp) in &opts {
                next.push((x * p.pow(*xp as u32), y * p.pow(*yp as u32)));
            }
        }
        cands = next;
    }
    let mut all = BTreeSet::new();
    for (x, y) in cands {
        for sx in [1, -1] {
            for sy in [1, -1] {
                all.insert((&x * sx, &y * sy));
            }
        }
    }
    StrictCaseData { l1, n1, m1, k1, candidates: all.into_iter().collect() }
}

fn fmt_term(coeff: &BigInt, var: &str, e: u32) -> String {
    let mono = if e == 1 { var.to_string() } else { format!("{var}^{e}") };
    if coeff.is_one() {
        mono
    } else if *coeff == -BigInt::one() {
        format!("-{mono}")
    } else {
        format!("{coeff}*{mono}")
    }
}

/// The base equation A·v^E1 + C·u^E2 = -D as text.
pub fn fmt_base(a: &BigInt, e1: u32, c: &BigInt, e2: u32, d: &BigInt) -> String {
    let first = fmt_term(a, "v", e1);
    let second = fmt_term(&c.abs(), "u", e2);
    let op = if c.is_negative() { "-" } else { "+" };
    format!("{first} {op} {second} = {}", -d)
}

pub fn solve_strict_case(e: &TwoVarTrinomial, opts: &SolveOptions) -> SolutionSet {
    let poly = e.poly();
    let mut set = SolutionSet::new(poly.clone());
    let data = strict_case_data(e);
    let (n, k, l, m) = (e.n, e.k, e.l, e.m);
    let e1 = n * data.m1 - k * data.m1 - l * data.k1;
    let e2 = m * data.n1 - k * data.l1 - l * data.n1;
    assert!(e1 > 0 && e2 > 0);
    let mut cache: BTreeMap<(BigInt, BigInt, BigInt), SolutionSet> = BTreeMap::new();
    for (xi, yi) in &data.candidates {
        let a = &e.a * xi.pow(n);
        let d = &e.b * xi.pow(k) * yi.pow(l);
        let c = &e.c * yi.pow(m);
        let g = a.gcd(&c).gcd(&d);
        let (a, c, d) = (&a / &g, &c / &g, &d / &g);
        let key = (a.clone(), c.clone(), d.clone());
        if !cache.contains_key(&key) {
            // c·u^E2 = -a·v^E1 - d, solved over (v, u)
            let base = solve_superelliptic(&c, &-&a, &-&d, e1, e2, opts);
            set.trace.push(format!("{} -> {}", fmt_base(&a, e1, &c, e2, &d), fmt_points(&base.finite)));
            cache.insert(key.clone(), base);
        }
        let base = &cache[&key];
        let u = param(1);
        let v = param(0);
        let fwd = [
            mul_all(vec![Expr::Int(xi.clone()), u.clone().pow(data.l1), v.clone().pow(data.m1)]),
            mul_all(vec![Expr::Int(yi.clone()), u.pow(data.n1), v.pow(data.k1)]),
        ];
        let mut mapped = SolutionSet::new(poly.clone());
        transform_into(&mut mapped, base, &fwd, None);
        mapped.trace.clear();
        set.merge(mapped);
    }
    set.cite("prime-exponent splitting of the two-variable trinomial");
    set
}

/// x^4 + a·x·y + y^3 = 0 via u·w²·x1^5 + w·u³·v^5 = -a over uw | a.
pub fn solve_masser(a: &BigInt, opts: &SolveOptions) -> SolutionSet {
    let poly = Poly::from_terms(
        &["x", "y"],
        vec![(BigInt::one(), vec![4, 0]), (a.clone(), vec![1, 1]), (BigInt::one(), vec![0, 3])],
    );
    if a.is_zero() {
        return solve_le2(&poly);
    }
    let mut set = SolutionSet::new(poly.clone());
    set.push_point(vec![BigInt::zero(), BigInt::zero()]);
    for u in positive_divisors(&a.abs()) {
        let rest = a.abs() / &u;
        for w in positive_divisors(&rest) {
            // w·u³·v^5 = -u·w²·x1^5 - a over (x1, v)
            let base = solve_superelliptic(&(&w * u.pow(3)), &-(&u * w.pow(2)), &-a, 5, 5, opts);
            set.trace.push(format!(
                "{}*x1^5 + {}*v^5 = {} -> {}",
                &u * w.pow(2),
                &w * u.pow(3),
                -a,
                fmt_points(&base.finite)
            ));
            for p in &base.finite {
                let (x1, v) = (&p[0], &p[1]);
                if x1.is_zero() || v.is_zero() {
                    continue;
                }
                let kk = &u * v * &w;
                let d = &kk * x1;
                let x = &d * x1;
                let y = &d * (&u * v * v);
                set.push_point(vec![x, y]);
            }
            set.weaken(base.status.clone());
            for c in &base.provenance {
                set.cite(c);
            }
        }
    }
    set.cite("gcd decomposition for x^4 + a·x·y + y^3");
    set
}

pub fn status_of(sets: &[&SolutionSet]) -> Status {
    sets.iter().fold(Status::Complete, |s, x| Status::weakest(&s, &x.status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::parse_equation;
    use crate::oracle::{brute_force, compare};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn nontrivial(s: &SolutionSet) -> Vec<(i64, i64)> {
        s.finite
            .iter()
            .filter(|p| !p.iter().all(|v| v.is_zero()))
            .map(|p| (i64::try_from(&p[0]).unwrap(), i64::try_from(&p[1]).unwrap()))
            .collect()
    }

    #[test]
    fn cond1_identity_examples() {
        for (n, k, l, m) in [(4, 1, 1, 3), (5, 2, 1, 3), (4, 1, 2, 3), (5, 1, 1, 2), (3, 0, 1, 4)] {
            let e = TwoVarTrinomial {
                vars: vec!["x".into(), "y".into()],
                a: b(1),
                b: b(1),
                c: b(2),
                n,
                k,
                l,
                m,
            };
            let d = strict_case_data(&e);
            assert_eq!(n * d.l1, k * d.l1 + l * d.n1);
        }
    }

    #[test]
    fn worked_example_offline() {
        let p = parse_equation("x^4 + x*y + 2*y^3 = 0").unwrap();
        let out = solve_two_var(&p, &SolveOptions::offline(2000));
        assert_eq!(nontrivial(&out.set), vec![(-1, -1)]);
        assert!(out.set.trace.iter().any(|t| t.starts_with("v^5 + 2*u^5 = -1 -> {(-1,0), (1,-1)}")));
        assert!(out.set.trace.iter().any(|t| t.starts_with("8*v^5 + u^5 = -1 -> {(0,-1)}")));
    }

    #[test]
    fn table1_rows_offline() {
        let p = parse_equation("x^4 + 2*x*y + y^3 = 0").unwrap();
        let out = solve_two_var(&p, &SolveOptions::offline(500));
        assert_eq!(nontrivial(&out.set), vec![(-1, 1), (2, -2)]);
        let s = solve_masser(&b(6), &SolveOptions::offline(500));
        assert_eq!(nontrivial(&s), vec![(-6, -12), (-2, -4), (-2, 2), (3, -3)]);
    }

    #[test]
    fn equality_examples() {
        for eq in ["x^2 - 3*x*y + 2*y^2", "x^4 + x^2*y + y^2", "x^2 + x*y + y^2", "x^6 - 5*x^3*y^2 + 6*y^4"] {
            let p = parse_equation(eq).unwrap();
            let out = solve_two_var(&p, &SolveOptions::offline(100));
            assert!(out.path.contains(&"equality".to_string()), "{eq}: {:?}", out.path);
            let rep = compare(&out.set, &brute_force(&p, 60).unwrap());
            assert!(rep.sound && rep.complete_in_box, "{eq}: {rep:?}");
        }
    }

    #[test]
    fn mixed_shapes_against_oracle() {
        for eq in [
            "x^4*y + x*y^2 + y",
            "x^2*y^2 + x^3*y + x*y",
            "x^2 + x^3*y^3 + y^2",
            "x^3 + x*y + y^3",
            "x^4 + x*y^2 + y^3",
            "2*x^3 + x^2 + 3*y^2",
            "x^5 - 2*y^2 + 7*y",
            "x^3 - x*y^2 + 6",
        ] {
            let p = parse_equation(eq).unwrap();
            let out = solve_two_var(&p, &SolveOptions::offline(300));
            let rep = compare(&out.set, &brute_force(&p, 40).unwrap());
            assert!(rep.sound && rep.complete_in_box, "{eq}: {rep:?} {:?}", out.path);
        }
    }
}
