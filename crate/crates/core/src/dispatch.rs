//! Master dispatcher: routes an equation to the first solver that applies and
//! packages the result as a report.

use crate::basesolve::SolveOptions;
use crate::eqparse::{canonicalize, parse_equation, ParseError, Poly};
use crate::intcore::solve_univariate;
use crate::multivar::{
    check_prop4, direct_formula, display_reduction, reduce_to_independent, reduce_with_roles, solve_le2,
    solve_structural, trivial_solutions, Reduction,
};
use crate::oracle::{box_is_feasible, brute_force};
use crate::solset::{
    evaluate, int, invert, lift_into, param, Expr, InvertResult, ParamDomain, SolutionFamily, SolutionSet, Status,
};
use crate::twovar::solve_two_var;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

/// Box size for equations no solver covers.
const SEARCH_BOUNDS: [u64; 6] = [100, 50, 30, 20, 10, 5];
const SEARCH_PREFIXES: f64 = 2e6;
const EXPAND_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub set: SolutionSet,
    pub canonical: String,
    pub path: Vec<String>,
    pub reduced: Vec<String>,
}

struct Cx<'a> {
    opts: &'a SolveOptions,
    path: RefCell<Vec<String>>,
    reduced: RefCell<Vec<String>>,
}

impl Cx<'_> {
    fn tag(&self, depth: usize, t: &str) {
        if depth == 0 {
            self.path.borrow_mut().push(t.to_string());
        }
    }
}

/// Solve any parsed equation.
pub fn solve(poly: &Poly, opts: &SolveOptions) -> Outcome {
    let p = poly.normalized();
    let cx = Cx { opts, path: RefCell::new(vec![]), reduced: RefCell::new(vec![]) };
    let mut set = solve_rec(&p, &cx, 0, 0);
    compact(&mut set);
    let canonical = match canonicalize(&p) {
        Ok(t) => t.to_string(),
        Err(_) => p.to_string(),
    };
    Outcome { set, canonical, path: cx.path.into_inner(), reduced: cx.reduced.into_inner() }
}

fn solve_rec(p: &Poly, cx: &Cx, depth: usize, level: usize) -> SolutionSet {
    let p = p.normalized();
    let n = p.nvars();
    let used = p.used_vars();
    if p.terms.is_empty() || n == 0 {
        cx.tag(depth, "two-monomial");
        return solve_le2(&p);
    }
    if used.len() < n {
        cx.tag(depth, "free-variables");
        return strip_unused(&p, &used, cx, depth, level);
    }
    if n == 1 {
        cx.tag(depth, "univariate");
        return solve_one_var(&p);
    }
    if p.terms.len() <= 2 {
        cx.tag(depth, "two-monomial");
        return solve_le2(&p);
    }
    let sub = |q: &Poly| solve_rec(q, cx, depth + 1, level);
    if p.terms.len() > 3 {
        if let Some(s) = solve_structural(&p, &sub) {
            cx.tag(depth, "structural");
            return s;
        }
        cx.tag(depth, "bounded-search");
        return bounded_search(&p);
    }
    if n == 2 {
        let out = solve_two_var(&p, cx.opts);
        for t in &out.path {
            cx.tag(depth, t);
        }
        return out.set;
    }
    let t = canonicalize(&p).expect("three monomials");
    if t.cancelled.iter().any(|c| *c > 0) {
        cx.tag(depth, "cancel-common-monomial");
    }
    let cert = check_prop4(&t, cx.opts.budget);
    if let Ok(Some(c)) = &cert {
        if c.direct_formula_applies() {
            cx.tag(depth, "direct-formula");
            let mut set = trivial_solutions(&p);
            set.push_family(direct_formula(&p, &t, c));
            set.cite("direct parametrization");
            return set;
        }
    }
    if let Some(s) = solve_structural(&p, &sub) {
        cx.tag(depth, "structural");
        return s;
    }
    let red = match &cert {
        Ok(Some(c)) => {
            cx.tag(depth, "prop4");
            reduce_with_roles(&t, &c.roles, cx.opts.budget)
        }
        _ if level > 0 => {
            let mut s = trivial_solutions(&p);
            s.weaken(Status::ReducedOnly);
            return s;
        }
        _ => {
            cx.tag(depth, "reduce");
            reduce_to_independent(&t, cx.opts.budget)
        }
    };
    match red {
        Ok(r) => solve_reduction(&p, &r, cx, depth, level),
        Err(e) => {
            cx.tag(depth, "unknown");
            let mut s = trivial_solutions(&p);
            s.trace.push(format!("reduction failed: {e}"));
            s.weaken(Status::Unknown);
            s
        }
    }
}

fn strip_unused(p: &Poly, used: &[usize], cx: &Cx, depth: usize, level: usize) -> SolutionSet {
    let n = p.nvars();
    let m = used.len();
    let unused: Vec<usize> = (0..n).filter(|i| !used.contains(i)).collect();
    let q = Poly {
        vars: used.iter().map(|&i| p.vars[i].clone()).collect(),
        terms: p
            .terms
            .iter()
            .map(|t| crate::eqparse::Monomial {
                coeff: t.coeff.clone(),
                exps: used.iter().map(|&i| t.exps[i]).collect(),
            })
            .collect(),
    };
    let s = solve_rec(&q, cx, depth, level);
    let extra: Vec<(String, ParamDomain)> =
        unused.iter().map(|&i| (p.vars[i].clone(), ParamDomain::AllIntegers)).collect();
    let fwd: Vec<Expr> = (0..n)
        .map(|i| match used.iter().position(|&u| u == i) {
            Some(k) => param(k),
            None => param(m + unused.iter().position(|&u| u == i).unwrap()),
        })
        .collect();
    let inv: Vec<Expr> = used.iter().chain(&unused).map(|&i| param(i)).collect();
    let mut set = SolutionSet::new(p.clone());
    lift_into(&mut set, &s, &extra, &fwd, Some(&inv));
    set
}

fn solve_one_var(p: &Poly) -> SolutionSet {
    let deg = p.degree() as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for t in &p.terms {
        coeffs[t.exps[0] as usize] += &t.coeff;
    }
    let mut set = SolutionSet::new(p.clone());
    let (ints, _) = solve_univariate(&coeffs);
    for r in ints {
        set.push_point(vec![r]);
    }
    set.cite("rational root test");
    set
}

fn search_bound(n: usize) -> Option<u64> {
    SEARCH_BOUNDS
        .iter()
        .copied()
        .find(|&b| box_is_feasible(n, b) && ((2 * b + 1) as f64).powi(n as i32 - 1) <= SEARCH_PREFIXES)
}

fn bounded_search(p: &Poly) -> SolutionSet {
    let mut set = SolutionSet::new(p.clone());
    match search_bound(p.nvars()).and_then(|b| brute_force(p, b).ok()) {
        Some(run) => {
            for x in run.solutions {
                set.push_point(x);
            }
            set.weaken(Status::SearchedToBound(run.bound));
            set.cite("exhaustive search");
        }
        None => set.weaken(Status::Unknown),
    }
    set
}

fn solve_reduction(p: &Poly, r: &Reduction, cx: &Cx, depth: usize, level: usize) -> SolutionSet {
    let mut set = trivial_solutions(p);
    set.cite("reduction to independent monomials");
    if depth == 0 {
        cx.reduced.borrow_mut().extend(display_reduction(r));
    }
    let mut cache: HashMap<(Vec<String>, String), SolutionSet> = HashMap::new();
    for eq in &r.equations {
        let Some(back) = &eq.back_map else {
            set.weaken(Status::ReducedOnly);
            continue;
        };
        let key = (eq.poly.vars.clone(), eq.poly.to_string());
        let sub = cache.entry(key).or_insert_with(|| {
            let mut s = solve_rec(&eq.poly, cx, depth + 1, level + 1);
            if s.status == Status::ReducedOnly {
                // keep what a small search finds with nonzero block variables; the status stays weak
                let found = bounded_search(&eq.poly);
                for x in found.finite.into_iter().filter(|x| x.iter().all(|v| !v.is_zero())) {
                    s.push_point(x);
                }
            }
            s
        });
        let extra: Vec<(String, ParamDomain)> = eq.extra.iter().map(|e| (e.clone(), ParamDomain::nonzero())).collect();
        let mut nonzero = SolutionSet::new(sub.equation.clone());
        nonzero.finite = sub.finite.iter().filter(|x| x.iter().all(|v| !v.is_zero())).cloned().collect();
        nonzero.families =
            sub.families.iter().filter(|f| f.exprs.iter().all(|e| !simplify(e).is_int(0))).cloned().collect();
        nonzero.status = sub.status.clone();
        nonzero.provenance = sub.provenance.clone();
        lift_into(&mut set, &nonzero, &extra, back, None);
    }
    set
}

/// A coordinate of an axis family: a constant or a lone parameter.
enum Axis {
    Const(BigInt),
    Free { nonzero: bool },
}

/// Division of zero is zero wherever the family is defined.
fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Add(xs) => crate::solset::add_all(xs.iter().map(simplify).collect()),
        Expr::Mul(xs) => {
            let ys: Vec<Expr> = xs.iter().map(simplify).collect();
            if ys.iter().any(|y| y.is_int(0)) {
                int(0)
            } else {
                crate::solset::mul_all(ys)
            }
        }
        Expr::Neg(x) => simplify(x).neg(),
        Expr::Pow(x, k) => simplify(x).pow(*k),
        Expr::Div(a, b) => {
            let a = simplify(a);
            if a.is_int(0) {
                int(0)
            } else {
                a.div(simplify(b))
            }
        }
        e => e.clone(),
    }
}

fn lone_param(e: &Expr) -> Option<usize> {
    match e {
        Expr::Param(j) => Some(*j),
        Expr::Neg(x) => lone_param(x),
        Expr::Mul(xs) if xs.len() == 2 && (xs[0].is_int(-1) || xs[0].is_int(1)) => lone_param(&xs[1]),
        _ => None,
    }
}

fn is_plain_nonzero(d: &ParamDomain) -> bool {
    matches!(d, ParamDomain::DivisorSet { k: 1, of } if of.iter().all(|e| e.is_int(0)))
}

fn axis_form(f: &SolutionFamily) -> Option<Vec<Axis>> {
    let mut seen = vec![false; f.params.len()];
    let mut out = Vec::new();
    for e in &f.exprs {
        let e = simplify(e);
        if let Some(c) = e.as_int() {
            out.push(Axis::Const(c.clone()));
            continue;
        }
        let j = lone_param(&e)?;
        if seen[j] {
            return None;
        }
        seen[j] = true;
        let d = &f.params[j].1;
        if !matches!(d, ParamDomain::AllIntegers) && !is_plain_nonzero(d) {
            return None;
        }
        out.push(Axis::Free { nonzero: !matches!(d, ParamDomain::AllIntegers) });
    }
    let unused_ok = f
        .params
        .iter()
        .enumerate()
        .all(|(j, (_, d))| seen[j] || matches!(d, ParamDomain::AllIntegers) || is_plain_nonzero(d));
    unused_ok.then_some(out)
}

fn never_zero(e: &Expr, f: &SolutionFamily) -> bool {
    match e {
        Expr::Int(c) => !c.is_zero(),
        Expr::Param(j) => matches!(f.params[*j].1, ParamDomain::DivisorSet { .. })
            || matches!(&f.params[*j].1, ParamDomain::FiniteSet(v) if v.iter().all(|x| !x.is_zero())),
        Expr::Neg(x) | Expr::Pow(x, _) => never_zero(x, f),
        Expr::Mul(xs) => xs.iter().all(|x| never_zero(x, f)),
        Expr::Div(a, _) => never_zero(a, f),
        _ => false,
    }
}

fn subsumed(f: &SolutionFamily, g: &[Axis]) -> bool {
    f.exprs.iter().zip(g).all(|(e, a)| {
        let e = simplify(e);
        match a {
            Axis::Const(c) => e.as_int() == Some(c),
            Axis::Free { nonzero: false } => true,
            Axis::Free { nonzero: true } => never_zero(&e, f),
        }
    })
}

/// Points of a family whose parameters all range over finite sets.
fn expand_finite(f: &SolutionFamily) -> Option<Vec<Vec<BigInt>>> {
    fn rec(f: &SolutionFamily, vals: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) -> bool {
        let j = vals.len();
        if j == f.params.len() {
            if let Ok(x) = evaluate(f, vals) {
                out.push(x);
            }
            return out.len() <= EXPAND_CAP;
        }
        let cands = match &f.params[j].1 {
            ParamDomain::FiniteSet(v) => v.clone(),
            ParamDomain::DivisorSet { k, of } => {
                let Ok(m) = of.iter().map(|e| e.eval(vals)).collect::<Result<Vec<_>, _>>() else {
                    return true;
                };
                let g = crate::intcore::gcd_all(m.iter());
                if g.is_zero() {
                    return false;
                }
                crate::intcore::divisors_k(&g, *k).unwrap_or_default()
            }
            ParamDomain::AllIntegers => return false,
        };
        for c in cands {
            vals.push(c);
            let ok = rec(f, vals, out);
            vals.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    rec(f, &mut vec![], &mut out).then_some(out)
}

/// Expand finite families, drop families inside a product-shaped family and
/// points inside any family.
pub fn compact(set: &mut SolutionSet) {
    let fams = std::mem::take(&mut set.families);
    let mut rest = Vec::new();
    for f in fams {
        match expand_finite(&f) {
            Some(pts) => {
                for x in pts {
                    set.push_point(x);
                }
            }
            None => rest.push(f),
        }
    }
    let axes: Vec<Option<Vec<Axis>>> = rest.iter().map(axis_form).collect();
    let mut keep = vec![true; rest.len()];
    for i in 0..rest.len() {
        for j in 0..rest.len() {
            if i == j || !keep[j] {
                continue;
            }
            let Some(g) = &axes[j] else { continue };
            if subsumed(&rest[i], g) {
                // of two equal families keep the earlier
                let mutual = axes[i].is_some() && subsumed(&rest[j], axes[i].as_ref().unwrap());
                if !mutual || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    set.families = rest.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect();
    let fams = &set.families;
    set.finite.retain(|x| !fams.iter().any(|f| matches!(invert(f, x), InvertResult::Found(_))));
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub name: String,
    pub domain: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub params: Vec<ParamReport>,
    pub exprs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub input: String,
    pub canonical: String,
    pub path: Vec<String>,
    pub status: String,
    pub finite: Vec<Vec<String>>,
    pub families: Vec<FamilyReport>,
    pub reduced: Vec<String>,
    pub citations: Vec<String>,
    pub elapsed_ms: u64,
}

impl SolveReport {
    pub fn new(input: &str, out: &Outcome, elapsed_ms: u64) -> Self {
        let vars = out.set.vars();
        let families = out
            .set
            .families
            .iter()
            .map(|f| {
                let names = f.names();
                FamilyReport {
                    params: f
                        .params
                        .iter()
                        .map(|(n, d)| ParamReport { name: n.clone(), domain: d.display(&names) })
                        .collect(),
                    exprs: vars.iter().cloned().zip(f.exprs.iter().map(|e| e.display(&names))).collect(),
                }
            })
            .collect();
        SolveReport {
            input: input.to_string(),
            canonical: out.canonical.clone(),
            path: out.path.clone(),
            status: out.set.status.to_string(),
            finite: out.set.finite.iter().map(|x| x.iter().map(|v| v.to_string()).collect()).collect(),
            families,
            reduced: out.reduced.clone(),
            citations: out.set.provenance.clone(),
            elapsed_ms,
        }
    }

    /// Human-readable summary, one item per line.
    pub fn to_text(&self, out: &Outcome) -> String {
        let vars = out.set.vars();
        let mut s = format!("equation: {}\nstatus: {}\npath: {}\n", self.canonical, self.status, self.path.join(" > "));
        for line in &self.reduced {
            s += &format!("reduced: {line}\n");
        }
        for x in &out.set.finite {
            let v: Vec<String> = x.iter().map(|a| a.to_string()).collect();
            s += &format!("({}) = ({})\n", vars.join(", "), v.join(", "));
        }
        for f in &out.set.families {
            s += &f.display(vars);
            s.push('\n');
        }
        if out.set.is_empty() {
            s += "no integer solutions\n";
        }
        s
    }
}

/// Parse, solve and time an equation.
pub fn solve_text(text: &str, opts: &SolveOptions) -> Result<(SolveReport, Outcome), ParseError> {
    let start = Instant::now();
    let p = parse_equation(text)?;
    let out = solve(&p, opts);
    let report = SolveReport::new(text, &out, start.elapsed().as_millis() as u64);
    Ok((report, out))
}

/// Whether every point in the report satisfies the equation; used by `verify`.
pub fn points_are_solutions(p: &Poly, pts: &[Vec<BigInt>]) -> bool {
    pts.iter().all(|x| x.len() == p.nvars() && p.is_solution(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::compare;

    fn run(eq: &str, b: u64) -> Outcome {
        let p = parse_equation(eq).unwrap();
        let out = solve(&p, &SolveOptions::offline(1000));
        let rep = compare(&out.set, &brute_force(&p, b).unwrap());
        assert!(rep.sound && rep.complete_in_box, "{eq}: {rep:?}\n{:?}", out.path);
        out
    }

    #[test]
    fn worked_example() {
        let out = run("x + x^2*y - y*z^2 = 0", 30);
        let pts: Vec<Vec<i64>> =
            out.set.finite.iter().map(|x| x.iter().map(|v| i64::try_from(v).unwrap()).collect()).collect();
        assert_eq!(pts, vec![vec![-1, 1, 0], vec![1, -1, 0]]);
        assert_eq!(out.set.families.len(), 2, "{:#?}", out.set.families);
        assert_eq!(out.set.status, Status::Complete);
    }

    #[test]
    fn routes() {
        let out = run("x^2 + y^3 = z^5", 30);
        assert!(out.path.contains(&"direct-formula".to_string()));
        assert_eq!(out.set.status, Status::Complete);
        for (eq, b) in [("x^3 - y^2*z - y", 20), ("y*z*t = x^2 + 1", 8), ("x^2*y = z^2 + 1", 20), ("x*y - z*t = 1", 8)] {
            let out = run(eq, b);
            assert_eq!(out.set.status, Status::Complete, "{eq} {:?}", out.path);
        }
        let out = run("3*x^3 + 4*y^3 + 5*z^3 = 0", 15);
        assert_eq!(out.set.status, Status::ReducedOnly);
        assert!(!out.reduced.is_empty());
    }

    #[test]
    fn report_round_trips() {
        let (r, _) = solve_text("x^2 + y^3 = z^5", &SolveOptions::offline(100)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: SolveReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
