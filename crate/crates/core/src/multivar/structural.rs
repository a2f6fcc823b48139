//! Equations where one variable enters linearly and alone, and equations
//! where two variables only occur through the block x_i^k·x_j.

use crate::eqparse::{Monomial, Poly};
use crate::solset::{
    add_all, int, lift_into, mul_all, param, zero_lift_maps, Expr, ParamDomain, SolutionFamily, SolutionSet,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Solver used for the smaller equations these reductions produce.
pub type Subsolver<'a> = &'a dyn Fn(&Poly) -> SolutionSet;

const RESIDUE_CAP: u64 = 200_000;

/// The polynomial as an expression over the given coordinate expressions.
pub fn poly_expr(p: &Poly, vals: &[Expr]) -> Expr {
    add_all(p.terms.iter().map(|t| monomial_expr(&t.coeff, &t.exps, vals)).collect())
}

pub fn monomial_expr(coeff: &BigInt, exps: &[u32], vals: &[Expr]) -> Expr {
    let mut fs = vec![Expr::Int(coeff.clone())];
    for (e, v) in exps.iter().zip(vals) {
        if *e > 0 {
            fs.push(v.clone().pow(*e));
        }
    }
    mul_all(fs)
}

/// Remove a column; the variable must not matter for the caller.
fn drop_var(p: &Poly, i: usize) -> Poly {
    let mut vars = p.vars.clone();
    vars.remove(i);
    let terms = p
        .terms
        .iter()
        .map(|t| {
            let mut exps = t.exps.clone();
            exps.remove(i);
            Monomial { coeff: t.coeff.clone(), exps }
        })
        .collect();
    Poly { vars, terms }.normalized()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Term `term` is c·x_i·M with x_i nowhere else.
    SeparatedLinear { term: usize, var: usize },
    /// Every monomial has exps[i] = k·exps[j].
    Block { i: usize, j: usize, k: u32 },
}

fn linear_candidates(p: &Poly) -> Vec<(u8, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..p.nvars() {
        let hits: Vec<usize> = (0..p.terms.len()).filter(|&t| p.terms[t].exps[i] > 0).collect();
        if hits.len() != 1 || p.terms[hits[0]].exps[i] != 1 {
            continue;
        }
        let t = &p.terms[hits[0]];
        let others: Vec<usize> = (0..p.nvars()).filter(|&v| v != i && t.exps[v] > 0).collect();
        let unit = t.coeff.abs().is_one();
        let rank = match (others.len(), unit) {
            (0, true) => 0,
            (1, true) if only_in(p, others[0], hits[0]) => 2,
            (0, false) => 3,
            (1, false) if only_in(p, others[0], hits[0]) => 4,
            _ => 5,
        };
        out.push((rank, hits[0], i));
    }
    out.sort();
    out
}

fn only_in(p: &Poly, v: usize, term: usize) -> bool {
    p.terms.iter().enumerate().all(|(k, t)| k == term || t.exps[v] == 0)
}

fn block_candidate(p: &Poly) -> Option<(usize, usize, u32)> {
    let n = p.nvars();
    for j in 0..n {
        for i in 0..n {
            if i == j {
                continue;
            }
            let Some(t0) = p.terms.iter().find(|t| t.exps[j] > 0) else { continue };
            if t0.exps[i] == 0 || t0.exps[i] % t0.exps[j] != 0 {
                continue;
            }
            let k = t0.exps[i] / t0.exps[j];
            if p.terms.iter().all(|t| t.exps[i] == k * t.exps[j]) {
                return Some((i, j, k));
            }
        }
    }
    None
}

/// Which structural form applies, preferring the simplest.
pub fn detect_shape(p: &Poly) -> Option<Shape> {
    let lin = linear_candidates(p);
    if let Some(&(0, term, var)) = lin.first() {
        return Some(Shape::SeparatedLinear { term, var });
    }
    if let Some((i, j, k)) = block_candidate(p) {
        return Some(Shape::Block { i, j, k });
    }
    lin.first().map(|&(_, term, var)| Shape::SeparatedLinear { term, var })
}

pub fn solve_structural(p: &Poly, sub: Subsolver) -> Option<SolutionSet> {
    let p = p.normalized();
    match detect_shape(&p)? {
        Shape::SeparatedLinear { term, var } => solve_separated_linear(&p, term, var, sub),
        Shape::Block { i, j, k } => Some(solve_x1k_x2(&p, i, j, k, sub)),
    }
}

fn lift_zero(set: &mut SolutionSet, p: &Poly, v: usize, sub: Subsolver) {
    let s = sub(&p.substitute(v, &BigInt::zero()));
    let (fwd, inv) = zero_lift_maps(p.nvars(), v);
    crate::solset::transform_into(set, &s, &fwd, Some(&inv));
}

/// c·x_i·M + P = 0 with x_i absent from P.
pub fn solve_separated_linear(p: &Poly, term: usize, i: usize, sub: Subsolver) -> Option<SolutionSet> {
    let n = p.nvars();
    let t = &p.terms[term];
    let c = t.coeff.clone();
    let m_vars: Vec<usize> = (0..n).filter(|&v| v != i && t.exps[v] > 0).collect();
    let rest = Poly {
        vars: p.vars.clone(),
        terms: p.terms.iter().enumerate().filter(|(k, _)| *k != term).map(|(_, t)| t.clone()).collect(),
    };
    let mut set = SolutionSet::new(p.clone());
    set.cite("separated linear form");
    let coords: Vec<Expr> = (0..n).map(param).collect();
    if m_vars.is_empty() {
        if c.abs().is_one() {
            // x_i = -c·P since c = ±1
            let mut params = Vec::new();
            let mut vals = vec![int(0); n];
            let mut wit = Vec::new();
            for v in (0..n).filter(|&v| v != i) {
                vals[v] = param(params.len());
                params.push((p.vars[v].clone(), ParamDomain::AllIntegers));
                wit.push(param(v));
            }
            vals[i] = poly_expr(&rest, &vals).mul(Expr::Int(-&c));
            set.push_family(SolutionFamily::new(params, vals).with_witness(wit));
            return Some(set);
        }
        return solve_residues(p, &rest, &c, i).map(|mut s| {
            s.cite("separated linear form");
            s
        });
    }
    let single = m_vars.len() == 1 && only_in(p, m_vars[0], term);
    let mut params = Vec::new();
    let mut vals = vec![int(0); n];
    let mut wit = Vec::new();
    for v in (0..n).filter(|&v| v != i && !(single && v == m_vars[0])) {
        vals[v] = param(params.len());
        let dom = if m_vars.contains(&v) { ParamDomain::nonzero() } else { ParamDomain::AllIntegers };
        params.push((p.vars[v].clone(), dom));
        wit.push(coords[v].clone());
    }
    if single {
        let v = m_vars[0];
        let k = t.exps[v];
        let pe = poly_expr(&rest, &vals);
        vals[v] = param(params.len());
        params.push((p.vars[v].clone(), ParamDomain::DivisorSet { k, of: vec![pe] }));
        wit.push(coords[v].clone());
    }
    let mexpr = monomial_expr(&c, &t.exps.iter().enumerate().map(|(k, e)| if k == i { 0 } else { *e }).collect::<Vec<_>>(), &vals);
    vals[i] = poly_expr(&rest, &vals).neg().div(mexpr);
    set.push_family(SolutionFamily::new(params, vals).with_witness(wit));
    for &v in &m_vars {
        lift_zero(&mut set, p, v, sub);
    }
    Some(set)
}

/// |c| ≥ 2: split the variables of P into residue classes mod |c|.
fn solve_residues(p: &Poly, rest: &Poly, c: &BigInt, i: usize) -> Option<SolutionSet> {
    let n = p.nvars();
    let m = c.abs();
    let mu = m.to_u64()?;
    let j_vars: Vec<usize> = rest.used_vars();
    let count = (mu as f64).powi(j_vars.len() as i32);
    if count > RESIDUE_CAP as f64 {
        return None;
    }
    let mut set = SolutionSet::new(p.clone());
    let mut r = vec![0u64; j_vars.len()];
    loop {
        let mut x = vec![BigInt::zero(); n];
        for (k, &v) in j_vars.iter().enumerate() {
            x[v] = BigInt::from(r[k]);
        }
        if rest.eval(&x).mod_floor(&m).is_zero() {
            let mut params = Vec::new();
            let mut vals = vec![int(0); n];
            let mut wit = Vec::new();
            for v in (0..n).filter(|&v| v != i) {
                let name = if j_vars.len() == 1 && j_vars[0] == v { "w".to_string() } else if j_vars.contains(&v) { format!("w_{}", p.vars[v]) } else { p.vars[v].clone() };
                let y = param(params.len());
                params.push((name, ParamDomain::AllIntegers));
                if let Some(k) = j_vars.iter().position(|&u| u == v) {
                    vals[v] = Expr::Int(m.clone()).mul(y).add(int(r[k]));
                    wit.push(param(v).sub(int(r[k])).div(Expr::Int(m.clone())));
                } else {
                    vals[v] = y;
                    wit.push(param(v));
                }
            }
            vals[i] = poly_expr(rest, &vals).neg().div(Expr::Int(c.clone()));
            set.push_family(SolutionFamily::new(params, vals).with_witness(wit));
        }
        let mut k = 0;
        loop {
            if k == r.len() {
                return Some(set);
            }
            r[k] += 1;
            if r[k] < mu {
                break;
            }
            r[k] = 0;
            k += 1;
        }
    }
}

/// P(x_i^k·x_j, …) = 0: solve P(Y, …) = 0, then split Y.
pub fn solve_x1k_x2(p: &Poly, i: usize, j: usize, k: u32, sub: Subsolver) -> SolutionSet {
    let n = p.nvars();
    let mut set = SolutionSet::new(p.clone());
    set.cite("block substitution");
    let collapsed = drop_var(p, i);
    let s = sub(&collapsed);
    let si = |t: usize| if t < i { t } else { t - 1 };
    let u = param(n - 1);
    let extra = vec![(format!("u_{}", p.vars[i]), ParamDomain::DivisorSet { k, of: vec![param(si(j))] })];
    let fwd: Vec<Expr> = (0..n)
        .map(|t| {
            if t == i {
                u.clone()
            } else if t == j {
                param(si(j)).div(u.clone().pow(k))
            } else {
                param(si(t))
            }
        })
        .collect();
    let mut inv: Vec<Expr> = (0..n)
        .filter(|&t| t != i)
        .map(|t| if t == j { param(i).pow(k).mul(param(j)) } else { param(t) })
        .collect();
    inv.push(param(i));
    lift_into(&mut set, &s, &extra, &fwd, Some(&inv));
    lift_zero(&mut set, p, i, sub);
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::parse_equation;
    use crate::multivar::solve_le2;
    use crate::oracle::{brute_force, compare};

    fn recurse(p: &Poly) -> SolutionSet {
        if p.terms.len() <= 2 {
            return solve_le2(p);
        }
        solve_structural(p, &recurse).expect("structural form")
    }

    fn check(eq: &str, b: u64) -> SolutionSet {
        let p = parse_equation(eq).unwrap();
        let set = recurse(&p);
        let rep = compare(&set, &brute_force(&p, b).unwrap());
        assert!(rep.sound && rep.complete_in_box, "{eq}: {rep:?}");
        set
    }

    #[test]
    fn separated_linear() {
        let s = check("x = y*z - 1", 12);
        assert_eq!(s.families.len(), 1);
        let s = check("2*x = y^2 + 1", 30);
        assert_eq!(s.families.len(), 1);
        assert!(check("3*x = y^2 + 1", 30).is_empty());
        check("v^3*z + 1 = u^3", 20);
        check("6*x + y^2*z + z^3 = 0", 12);
        check("x*y*z + y^2 + 1 = 0", 12);
    }

    #[test]
    fn block_forms() {
        check("x^2*y = z^2 + 1", 20);
        check("y*z*t = x^2 + 1", 10);
        check("x*y - z*t = 1", 10);
    }
}
