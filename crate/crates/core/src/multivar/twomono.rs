//! Equations with at most two monomials, and the trivial (some x_i = 0)
//! solutions of trinomials.

use crate::eqparse::Poly;
use crate::intcore::{gcd_all, positive_power_tuples, rational_root_d, ratio};
use crate::lindioph::solve_system_nonneg;
use crate::solset::{
    int, mul_all, param, transform_into, zero_lift_maps, Expr, ParamDomain, SolutionFamily, SolutionSet,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Family fixing some coordinates; every other coordinate is a free integer
/// named after its variable.
pub fn free_family(vars: &[String], fixed: &[(usize, Expr)]) -> SolutionFamily {
    let mut params = Vec::new();
    let mut exprs = Vec::new();
    let mut witness = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        if let Some((_, e)) = fixed.iter().find(|(k, _)| *k == i) {
            exprs.push(e.clone());
        } else {
            exprs.push(param(params.len()));
            params.push((v.clone(), ParamDomain::AllIntegers));
            witness.push(param(i));
        }
    }
    SolutionFamily::new(params, exprs).with_witness(witness)
}

/// Complete solution set of any equation with at most two monomials.
pub fn solve_le2(poly: &Poly) -> SolutionSet {
    let p = poly.normalized();
    let mut set = SolutionSet::new(p.clone());
    let vars = p.vars.clone();
    let n = vars.len();
    match p.terms.len() {
        0 => {
            set.push_family(free_family(&vars, &[]));
        }
        1 => {
            let t = &p.terms[0];
            for i in 0..n {
                if t.exps[i] > 0 {
                    set.push_family(free_family(&vars, &[(i, int(0))]));
                }
            }
        }
        2 => {
            let (t0, t1) = (&p.terms[0], &p.terms[1]);
            let mu: Vec<u32> = (0..n).map(|i| t0.exps[i].min(t1.exps[i])).collect();
            for i in 0..n {
                if mu[i] > 0 {
                    set.push_family(free_family(&vars, &[(i, int(0))]));
                }
            }
            let al: Vec<u32> = (0..n).map(|i| t0.exps[i] - mu[i]).collect();
            let ga: Vec<u32> = (0..n).map(|i| t1.exps[i] - mu[i]).collect();
            let sa: Vec<usize> = (0..n).filter(|&i| al[i] > 0).collect();
            let sg: Vec<usize> = (0..n).filter(|&i| ga[i] > 0).collect();
            for &i in &sa {
                for &j in &sg {
                    set.push_family(free_family(&vars, &[(i, int(0)), (j, int(0))]));
                }
            }
            two_mono_nontrivial(&mut set, &t0.coeff, &al, &(-&t1.coeff), &ga);
        }
        k => panic!("solve_le2 called with {k} monomials"),
    }
    set.cite("two-monomial solver");
    set
}

pub fn solve_two_monomial(poly: &Poly) -> SolutionSet {
    solve_le2(poly)
}

/// Solutions of A∏x^α = B∏x^γ (disjoint supports) with every variable of
/// either support nonzero; variables outside both supports are free.
pub fn two_mono_nontrivial(set: &mut SolutionSet, a: &BigInt, al: &[u32], b: &BigInt, ga: &[u32]) {
    let vars = set.equation.vars.clone();
    let n = vars.len();
    let sa: Vec<usize> = (0..n).filter(|&i| al[i] > 0).collect();
    let sg: Vec<usize> = (0..n).filter(|&i| ga[i] > 0).collect();
    if sa.is_empty() && sg.is_empty() {
        if a == b {
            set.push_family(free_family(&vars, &[]));
        }
        return;
    }
    if sg.is_empty() || sa.is_empty() {
        let (a, b, al, s) = if sg.is_empty() { (a, b, al, &sa) } else { (b, a, ga, &sg) };
        // a∏x^al = b
        if !(b % a).is_zero() {
            return;
        }
        let r = b / a;
        let exps: Vec<u32> = s.iter().map(|&i| al[i]).collect();
        for tuple in positive_power_tuples(&r.abs(), &exps) {
            for mask in 0u32..(1 << s.len()) {
                let neg_odd = (0..s.len()).filter(|&k| mask >> k & 1 == 1 && exps[k] % 2 == 1).count();
                let sign = if neg_odd % 2 == 1 { -1 } else { 1 };
                if (sign < 0) != r.is_negative() {
                    continue;
                }
                let vals: Vec<(usize, BigInt)> = s
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| (i, if mask >> k & 1 == 1 { -tuple[k].clone() } else { tuple[k].clone() }))
                    .collect();
                if s.len() == n {
                    let mut x = vec![BigInt::zero(); n];
                    for (i, v) in vals {
                        x[i] = v;
                    }
                    set.push_point(x);
                } else {
                    let fixed: Vec<(usize, Expr)> = vals.into_iter().map(|(i, v)| (i, Expr::Int(v))).collect();
                    set.push_family(free_family(&vars, &fixed));
                }
            }
        }
        return;
    }
    let d = gcd_all(
        al.iter().chain(ga.iter()).filter(|e| **e > 0).map(|&e| BigInt::from(e)).collect::<Vec<_>>().iter(),
    );
    let d: u32 = d.try_into().unwrap();
    if d > 1 {
        // (∏x^{α/d} / ∏x^{γ/d})^d = B/A
        let r = ratio(b, a);
        let mut roots = Vec::new();
        if let Some(q) = rational_root_d(&r, d) {
            roots.push(q.clone());
            if d % 2 == 0 {
                roots.push(-q);
            }
        }
        let al2: Vec<u32> = al.iter().map(|e| e / d).collect();
        let ga2: Vec<u32> = ga.iter().map(|e| e / d).collect();
        for q in roots {
            // denom·∏x^{α/d} = numer·∏x^{γ/d}
            two_mono_coprime(set, q.denom(), &al2, q.numer(), &ga2);
        }
        return;
    }
    let g = a.gcd(b);
    two_mono_coprime(set, &(a / &g), al, &(b / &g), ga);
}

fn monomial_expr(coeff: &BigInt, exps: &[u32], vals: &[Expr]) -> Expr {
    let mut fs = vec![Expr::Int(coeff.clone())];
    for (e, v) in exps.iter().zip(vals) {
        if *e > 0 {
            fs.push(v.clone().pow(*e));
        }
    }
    mul_all(fs)
}

/// A∏x^α = B∏x^γ with exponent gcd 1.
fn two_mono_coprime(set: &mut SolutionSet, a: &BigInt, al: &[u32], b: &BigInt, ga: &[u32]) {
    let vars = set.equation.vars.clone();
    let n = vars.len();
    let coords: Vec<Expr> = (0..n).map(param).collect();
    // direct form x_j = (B/A)∏x^γ
    for (lhs_c, lhs, rhs_c, rhs) in [(a, al, b, ga), (b, ga, a, al)] {
        let supp: Vec<usize> = (0..n).filter(|&i| lhs[i] > 0).collect();
        if supp.len() == 1 && lhs[supp[0]] == 1 && lhs_c.abs().is_one() {
            let j = supp[0];
            let mut params = Vec::new();
            let mut exprs = Vec::new();
            let mut wit = Vec::new();
            let mut pvals = vec![int(0); n];
            for i in 0..n {
                if i != j {
                    pvals[i] = param(params.len());
                    params.push((format!("u_{}", vars[i]), if rhs[i] > 0 { ParamDomain::nonzero() } else { ParamDomain::AllIntegers }));
                    wit.push(param(i));
                }
            }
            let xj = monomial_expr(&(rhs_c * lhs_c), rhs, &pvals);
            for i in 0..n {
                exprs.push(if i == j { xj.clone() } else { pvals[i].clone() });
            }
            set.push_family(SolutionFamily::new(params, exprs).with_witness(wit));
            return;
        }
    }
    let diff: Vec<i64> = (0..n).map(|i| ga[i] as i64 - al[i] as i64).collect();
    let neg: Vec<i64> = diff.iter().map(|x| -x).collect();
    let pick = |row: &Vec<i64>| -> Option<Vec<u64>> {
        let sol = solve_system_nonneg(&[(row.clone(), 1)], 1_000_000).ok()?;
        sol.particular_minimals.into_iter().min_by_key(|v| (v.iter().sum::<u64>(), v.clone()))
    };
    let (Some(z), Some(t)) = (pick(&diff), pick(&neg)) else {
        return;
    };
    let mut params = Vec::new();
    let mut u = Vec::new();
    for i in 0..n {
        u.push(param(params.len()));
        let dom = if al[i] > 0 || ga[i] > 0 { ParamDomain::nonzero() } else { ParamDomain::AllIntegers };
        params.push((format!("u_{}", vars[i]), dom));
    }
    let pe = monomial_expr(a, al, &u);
    let qe = monomial_expr(b, ga, &u);
    let w = param(params.len());
    params.push(("w".to_string(), ParamDomain::DivisorSet { k: 1, of: vec![pe.clone(), qe.clone()] }));
    let exprs: Vec<Expr> = (0..n)
        .map(|i| {
            let (zi, ti) = (z[i] as u32, t[i] as u32);
            mul_all(vec![pe.clone().pow(zi), qe.clone().pow(ti), u[i].clone()]).div(w.clone().pow(zi + ti))
        })
        .collect();
    let mut wit = coords.clone();
    wit.push(monomial_expr(a, al, &coords));
    set.push_family(SolutionFamily::new(params, exprs).with_witness(wit));
}

/// All solutions with some variable zero, for a trinomial.
pub fn trivial_solutions(poly: &Poly) -> SolutionSet {
    let p = poly.normalized();
    let n = p.nvars();
    let mut set = SolutionSet::new(p.clone());
    for i in 0..n {
        if p.terms.iter().all(|t| t.exps[i] == 0) {
            continue;
        }
        let sub = p.substitute(i, &BigInt::zero());
        let sub_set = if sub.terms.len() <= 2 {
            solve_le2(&sub)
        } else {
            continue;
        };
        let (fwd, inv) = zero_lift_maps(n, i);
        transform_into(&mut set, &sub_set, &fwd, Some(&inv));
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::parse_equation;
    use crate::oracle::{brute_force, compare};

    fn check(eq: &str, b: u64) {
        let p = parse_equation(eq).unwrap();
        let set = solve_le2(&p);
        let rep = compare(&set, &brute_force(&p, b).unwrap());
        assert!(rep.sound && rep.complete_in_box, "{eq}: {rep:?}");
    }

    #[test]
    fn examples() {
        let p = parse_equation("x^2*y^3 = 72").unwrap();
        let s = solve_le2(&p);
        let pts: Vec<Vec<i64>> =
            s.finite.iter().map(|x| x.iter().map(|v| i64::try_from(v).unwrap()).collect()).collect();
        assert_eq!(pts, vec![vec![-3, 2], vec![3, 2]]);
        let s = solve_le2(&parse_equation("x^2 = 2*y^2").unwrap());
        assert_eq!(s.finite, vec![vec![BigInt::zero(), BigInt::zero()]]);
        assert!(s.families.is_empty());
        check("x^2 = 2*y^2", 30);
        check("x^2 = 4*y^4", 30);
        check("x^3*y = 5*z^2", 12);
        check("x*y^2 = z^3*t", 6);
        check("3*x^4*z = 12*y^2", 12);
        check("x^2*y^2 = 0", 5);
        check("7", 3);
    }
}
