//! Reduction of a trinomial to equations with independent monomials,
//! A·∏W^g + B·∏V^f + C·∏U^e = 0, with maps back to the source variables.

use super::prop::Roles;
use crate::eqparse::{Monomial, Poly, Trinomial};
use crate::intcore::{divisors_k, factorize, gcd_all, ipow, positive_divisors, positive_power_tuples, vp};
use crate::lindioph::{hilbert_basis, minimal_divisibility_set, solve_system_nonneg};
use crate::solset::{int, mul_all, param, Expr};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const MAX_EQUATIONS: usize = 50_000;
const MAX_SIGN_VARS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockVar {
    pub name: String,
    /// Exponent of this block variable in each source variable.
    pub basis: Vec<u64>,
    /// Exponent in the term it belongs to; may be negative.
    pub exp: i64,
}

/// Blocks of the W-, V- and U-terms, in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocks(pub [Vec<BlockVar>; 3]);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedTerm {
    pub coeff: BigInt,
    pub vars: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedEquation {
    pub signs: Vec<i8>,
    pub x0: Vec<BigInt>,
    /// A, B, C before the integrality substitutions.
    pub coeffs: [BigRational; 3],
    /// The three terms after the substitutions, gcd removed.
    pub terms: Vec<ReducedTerm>,
    pub poly: Poly,
    /// Nonzero parameters that occur only in the back map.
    pub extra: Vec<String>,
    /// Source coordinates over the poly variables followed by `extra`;
    /// absent when a mixed-sign block has no unit exponent to solve for.
    pub back_map: Option<Vec<Expr>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub roles: Roles,
    pub vars: Vec<String>,
    pub blocks: Blocks,
    pub equations: Vec<ReducedEquation>,
    /// Only solutions with coprime values across different terms matter.
    pub primitive_suffices: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("linear system exceeded the node budget")]
    Budget,
    #[error("more than {MAX_EQUATIONS} reduced equations")]
    TooManyBranches,
    #[error("too many variables for sign enumeration")]
    TooManyVariables,
}

fn diff(a: &[u32], b: &[u32]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x as i64 - *y as i64).collect()
}

fn dot(a: &[i64], z: &[u64]) -> i64 {
    a.iter().zip(z).map(|(x, y)| x * *y as i64).sum()
}

fn name_blocks(letter: char, basis: Vec<Vec<u64>>, weight: &[i64], vars: &[String]) -> Vec<BlockVar> {
    let stems: Vec<String> = basis
        .iter()
        .map(|b| {
            let last = b.iter().rposition(|&e| e > 0).unwrap_or(0);
            format!("{letter}_{}", vars[last])
        })
        .collect();
    let mut seen: BTreeMap<&String, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let total = stems.iter().filter(|s| **s == stems[k]).count();
        let c = seen.entry(&stems[k]).or_insert(0);
        *c += 1;
        let name = if total > 1 { format!("{}{}", stems[k], c) } else { stems[k].clone() };
        out.push(BlockVar { name, basis: b.clone(), exp: dot(weight, b) });
    }
    out
}

pub fn blocks(roles: &Roles, vars: &[String]) -> Blocks {
    let (al, be, ga) = (&roles.alpha, &roles.beta, &roles.gamma);
    let g = hilbert_basis(&[diff(be, ga)]).homogeneous_minimals;
    let f = hilbert_basis(&[diff(al, ga)]).homogeneous_minimals;
    let e = hilbert_basis(&[diff(al, be)]).homogeneous_minimals;
    Blocks([
        name_blocks('w', g, &diff(al, be), vars),
        name_blocks('v', f, &diff(be, ga), vars),
        name_blocks('u', e, &diff(ga, al), vars),
    ])
}

/// One way of making a term integral.
#[derive(Clone, Debug)]
struct TermAlt {
    coeff: BigInt,
    red: Vec<(String, u32)>,
    extra: Vec<String>,
    /// Block values over local params: red first, then extra.
    vals: Option<Vec<Expr>>,
}

fn q_star(q: &BigInt, d: u32) -> BigInt {
    let mut r = BigInt::one();
    for (p, e) in factorize(q).factors {
        r *= ipow(&p, e.div_ceil(d));
    }
    r
}

/// Alternatives for K·∏B_k^{x_k} with K > 0 rational.
fn term_alternatives(k: &BigRational, blocks: &[BlockVar], letter: char) -> Vec<TermAlt> {
    let nz: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i].exp != 0).collect();
    let s = k.numer().clone();
    let q = k.denom().clone();
    let mut out = Vec::new();
    // block values with free nonzero blocks appended after `nred` reduced vars
    let assemble = |nred: usize, fixed: &dyn Fn(usize) -> Option<Expr>| -> (Vec<String>, Vec<Expr>) {
        let mut extra = Vec::new();
        let mut vals = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            match fixed(i) {
                Some(e) => vals.push(e),
                None => {
                    vals.push(param(nred + extra.len()));
                    extra.push(b.name.clone());
                }
            }
        }
        (extra, vals)
    };
    if nz.is_empty() {
        if q.is_one() {
            let (extra, vals) = assemble(0, &|_| None);
            out.push(TermAlt { coeff: s, red: vec![], extra, vals: Some(vals) });
        }
        return out;
    }
    if nz.iter().all(|&i| blocks[i].exp > 0) {
        let e: Vec<u32> = nz.iter().map(|&i| blocks[i].exp as u32).collect();
        let m = minimal_divisibility_set(&e, &q).expect("some exponent is positive");
        for d in m.tuples {
            let mut num = s.clone();
            for (t, &ei) in d.iter().zip(&e) {
                num *= ipow(t, ei);
            }
            let coeff = num / &q;
            let red: Vec<(String, u32)> = nz.iter().zip(&e).map(|(&i, &ei)| (blocks[i].name.clone(), ei)).collect();
            let (extra, vals) = assemble(nz.len(), &|i| {
                nz.iter().position(|&j| j == i).map(|p| Expr::Int(d[p].clone()).mul(param(p)))
            });
            out.push(TermAlt { coeff, red, extra, vals: Some(vals) });
        }
        return out;
    }
    if nz.iter().all(|&i| blocks[i].exp < 0) {
        if !q.is_one() {
            return out;
        }
        let e: Vec<u32> = nz.iter().map(|&i| (-blocks[i].exp) as u32).collect();
        for dv in positive_divisors(&s) {
            for tuple in positive_power_tuples(&dv, &e) {
                let (extra, vals) =
                    assemble(0, &|i| nz.iter().position(|&j| j == i).map(|p| Expr::Int(tuple[p].clone())));
                out.push(TermAlt { coeff: &s / &dv, red: vec![], extra, vals: Some(vals) });
            }
        }
        return out;
    }
    // mixed signs: ∏B^{x/d} = q*·U'/v
    let d = gcd_all(nz.iter().map(|&i| BigInt::from(blocks[i].exp)).collect::<Vec<_>>().iter());
    let d: u32 = d.try_into().unwrap();
    let qs = q_star(&q, d);
    let solved = nz.iter().copied().find(|&i| blocks[i].exp.unsigned_abs() == d as u64);
    for v in divisors_k(&s, d).unwrap().into_iter().filter(|v| v.is_positive()) {
        let coeff = (&s / ipow(&v, d)) * (ipow(&qs, d) / &q);
        let red = vec![(letter.to_string(), d)];
        let vals = solved.map(|j| {
            let (extra, mut vals) = assemble(1, &|i| if i == j { Some(int(0)) } else { None });
            let _ = extra;
            let mut num = vec![Expr::Int(qs.clone()).mul(param(0))];
            let mut den = vec![Expr::Int(v.clone())];
            for &i in &nz {
                if i == j {
                    continue;
                }
                let r = (blocks[i].exp / d as i64).unsigned_abs() as u32;
                if blocks[i].exp < 0 {
                    num.push(vals[i].clone().pow(r));
                } else {
                    den.push(vals[i].clone().pow(r));
                }
            }
            let (num, den) = if blocks[j].exp > 0 { (num, den) } else { (den, num) };
            vals[j] = mul_all(num).div(mul_all(den));
            vals
        });
        let (extra, _) = assemble(1, &|i| if Some(i) == solved { Some(int(0)) } else { None });
        out.push(TermAlt { coeff, red, extra, vals });
    }
    out
}

struct PrimeOption {
    p: BigInt,
    z0: Vec<u64>,
    common: u32,
}

fn prime_options(roles: &Roles, coeffs: [&BigInt; 3], p: &BigInt, budget: usize) -> Result<Vec<PrimeOption>, ReduceError> {
    let (ap, bp, cp) = (vp(coeffs[0], p) as i64, vp(coeffs[1], p) as i64, vp(coeffs[2], p) as i64);
    let (al, be, ga) = (&roles.alpha, &roles.beta, &roles.gamma);
    let n = al.len();
    let mut out = Vec::new();
    let cases: [(Vec<i64>, i64, i64, &Vec<u32>); 3] = [
        (diff(al, be), bp - ap, ap, al),
        (diff(al, ga), cp - ap, ap, al),
        (diff(be, ga), cp - bp, bp, be),
    ];
    for (row, rhs, base, mono) in cases {
        let sols = if rhs == 0 {
            vec![vec![0u64; n]]
        } else {
            solve_system_nonneg(&[(row, rhs)], budget).map_err(|_| ReduceError::Budget)?.particular_minimals
        };
        for z0 in sols {
            let common = base + mono.iter().zip(&z0).map(|(a, z)| *a as i64 * *z as i64).sum::<i64>();
            out.push(PrimeOption { p: p.clone(), z0, common: common as u32 });
        }
    }
    Ok(out)
}

fn monomial_value(x: &[BigInt], e: &[u32]) -> BigInt {
    x.iter().zip(e).fold(BigInt::one(), |acc, (v, k)| acc * ipow(v, *k))
}

/// Reduce with the monomials in the given roles.
pub fn reduce_with_roles(t: &Trinomial, roles: &Roles, budget: usize) -> Result<Reduction, ReduceError> {
    let n = t.nvars();
    if n > MAX_SIGN_VARS {
        return Err(ReduceError::TooManyVariables);
    }
    let coeffs = [&t.coeffs[roles.order[0]], &t.coeffs[roles.order[1]], &t.coeffs[roles.order[2]]];
    let bl = blocks(roles, &t.vars);
    let exps = [&roles.alpha, &roles.beta, &roles.gamma];
    let abc = coeffs[0] * coeffs[1] * coeffs[2];
    let mut branches: Vec<(Vec<BigInt>, BigInt)> = vec![(vec![BigInt::one(); n], BigInt::one())];
    for p in factorize(&abc.abs()).primes() {
        let opts = prime_options(roles, coeffs, &p, budget)?;
        let mut next = Vec::new();
        for (x0, d0) in &branches {
            for o in &opts {
                let x: Vec<BigInt> = x0.iter().zip(&o.z0).map(|(v, z)| v * ipow(&o.p, *z as u32)).collect();
                next.push((x, d0 * ipow(&o.p, o.common)));
            }
        }
        branches = next;
        if branches.len() > MAX_EQUATIONS {
            return Err(ReduceError::TooManyBranches);
        }
    }
    let mut equations = Vec::new();
    let mut cache: BTreeMap<(usize, BigRational), Vec<TermAlt>> = BTreeMap::new();
    for (x0, d0) in &branches {
        let mag: Vec<BigRational> = (0..3)
            .map(|k| BigRational::new(coeffs[k].abs() * monomial_value(x0, exps[k]), d0.clone()))
            .collect();
        let alts: Vec<Vec<TermAlt>> = (0..3)
            .map(|k| {
                cache
                    .entry((k, mag[k].clone()))
                    .or_insert_with(|| term_alternatives(&mag[k], &bl.0[k], ['w', 'v', 'u'][k]))
                    .clone()
            })
            .collect();
        let combos = alts[0].len() * alts[1].len() * alts[2].len();
        if equations.len() + (combos << n) > MAX_EQUATIONS {
            return Err(ReduceError::TooManyBranches);
        }
        for signs in 0u32..(1 << n) {
            let sigma: Vec<i8> = (0..n).map(|i| if signs >> i & 1 == 1 { -1 } else { 1 }).collect();
            let sgn: Vec<BigInt> = (0..3)
                .map(|k| {
                    let neg = exps[k].iter().zip(&sigma).filter(|(e, s)| **s < 0 && **e % 2 == 1).count() % 2 == 1;
                    let s = if neg { -coeffs[k].signum() } else { coeffs[k].signum() };
                    s
                })
                .collect();
            for a in &alts[0] {
                for b in &alts[1] {
                    for c in &alts[2] {
                        let chosen = [a, b, c];
                        let signed: [BigRational; 3] =
                            std::array::from_fn(|k| &mag[k] * BigRational::from_integer(sgn[k].clone()));
                        equations.push(assemble_equation(&t.vars, &bl, &sigma, x0, signed, &chosen, &sgn));
                    }
                }
            }
        }
    }
    Ok(Reduction { roles: roles.clone(), vars: t.vars.clone(), blocks: bl, equations, primitive_suffices: true })
}

fn assemble_equation(
    vars: &[String],
    bl: &Blocks,
    sigma: &[i8],
    x0: &[BigInt],
    coeffs: [BigRational; 3],
    chosen: &[&TermAlt; 3],
    sgn: &[BigInt],
) -> ReducedEquation {
    let n = vars.len();
    let red_names: Vec<String> = chosen.iter().flat_map(|a| a.red.iter().map(|(s, _)| s.clone())).collect();
    let nred = red_names.len();
    let mut extra = Vec::new();
    let mut red_off = 0;
    let mut block_vals: Vec<Vec<Expr>> = Vec::new();
    let mut ok = true;
    for a in chosen {
        let r = a.red.len();
        let subs: Vec<Expr> = (0..r)
            .map(|j| param(red_off + j))
            .chain((0..a.extra.len()).map(|j| param(nred + extra.len() + j)))
            .collect();
        match &a.vals {
            Some(v) => block_vals.push(v.iter().map(|e| e.subst(&subs)).collect()),
            None => {
                ok = false;
                block_vals.push(vec![]);
            }
        }
        extra.extend(a.extra.iter().cloned());
        red_off += r;
    }
    let g = gcd_all(chosen.iter().map(|a| &a.coeff));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let mut terms = Vec::new();
    let mut poly_terms = Vec::new();
    let mut off = 0;
    for (k, a) in chosen.iter().enumerate() {
        let coeff = &sgn[k] * &a.coeff / &g;
        let mut exps = vec![0u32; nred];
        for (j, (_, e)) in a.red.iter().enumerate() {
            exps[off + j] = *e;
        }
        off += a.red.len();
        poly_terms.push(Monomial { coeff: coeff.clone(), exps });
        terms.push(ReducedTerm { coeff, vars: a.red.clone() });
    }
    let poly = Poly { vars: red_names, terms: poly_terms }.normalized();
    let back_map = ok.then(|| {
        (0..n)
            .map(|i| {
                let mut fs = vec![int(sigma[i] as i64).mul(Expr::Int(x0[i].clone()))];
                for (k, blocks) in bl.0.iter().enumerate() {
                    for (b, val) in blocks.iter().zip(&block_vals[k]) {
                        if b.basis[i] > 0 {
                            fs.push(val.clone().pow(b.basis[i] as u32));
                        }
                    }
                }
                mul_all(fs)
            })
            .collect()
    });
    ReducedEquation { signs: sigma.to_vec(), x0: x0.to_vec(), coeffs, terms, poly, extra, back_map }
}

/// Reduction in input order: the monomials play a, b, c as written.
pub fn reduce_to_independent(t: &Trinomial, budget: usize) -> Result<Reduction, ReduceError> {
    reduce_with_roles(t, &Roles::new(&t.exps, 2), budget)
}

fn superscript(n: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

fn fmt_mono(vars: &[(String, u32)]) -> String {
    vars.iter()
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}{}", superscript(*e)) })
        .collect::<Vec<_>>()
        .join("·")
}

/// Terms with constants merged, gcd removed and the first coefficient positive.
fn display_terms(eq: &ReducedEquation) -> Vec<ReducedTerm> {
    let mut out: Vec<ReducedTerm> = Vec::new();
    for t in &eq.terms {
        if t.vars.is_empty() {
            if let Some(c) = out.iter_mut().find(|u| u.vars.is_empty()) {
                c.coeff += &t.coeff;
                continue;
            }
        }
        out.push(t.clone());
    }
    out.retain(|t| !t.coeff.is_zero());
    let g = gcd_all(out.iter().map(|t| &t.coeff));
    if !g.is_zero() {
        let s = if out[0].coeff.is_negative() { -g } else { g };
        for t in &mut out {
            t.coeff = &t.coeff / &s;
        }
    }
    out
}

/// One line per structurally distinct reduced equation; sign variants that
/// differ by a common ± on some terms are shown with e ∈ {±1}.
pub fn display_reduction(r: &Reduction) -> Vec<String> {
    let mut groups: BTreeMap<Vec<(BigInt, Vec<(String, u32)>)>, Vec<Vec<i8>>> = BTreeMap::new();
    let mut order = Vec::new();
    for eq in &r.equations {
        let ts = display_terms(eq);
        let key: Vec<(BigInt, Vec<(String, u32)>)> = ts.iter().map(|t| (t.coeff.abs(), t.vars.clone())).collect();
        let signs: Vec<i8> = ts.iter().map(|t| if t.coeff.is_negative() { -1 } else { 1 }).collect();
        let entry = groups.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        if !entry.contains(&signs) {
            entry.push(signs);
        }
    }
    let mut lines = Vec::new();
    for key in order {
        let mut variants = groups[&key].clone();
        variants.sort_by(|a, b| b.cmp(a));
        let fmt = |signs: &[String]| -> String {
            let mut s = String::new();
            for (k, (c, vars)) in key.iter().enumerate() {
                let sign = &signs[k];
                let body = match (c.is_one(), vars.is_empty()) {
                    (true, true) => "1".to_string(),
                    (true, false) => fmt_mono(vars),
                    (false, true) => c.to_string(),
                    (false, false) => format!("{c}·{}", fmt_mono(vars)),
                };
                if k == 0 {
                    s.push_str(if sign == "-" { "−" } else { "" });
                    s.push_str(&body);
                } else {
                    let (op, pre) = match sign.as_str() {
                        "+" => ("+", ""),
                        "-" => ("−", ""),
                        "+e" => ("+", "e·"),
                        _ => ("−", "e·"),
                    };
                    s.push_str(&format!(" {op} {pre}{body}"));
                }
            }
            s + " = 0"
        };
        let lit = |v: &[i8]| -> Vec<String> { v.iter().map(|s| if *s < 0 { "-" } else { "+" }.to_string()).collect() };
        if variants.len() == 2 {
            let (p, q) = (&variants[0], &variants[1]);
            let varying: Vec<usize> = (0..p.len()).filter(|&k| p[k] != q[k]).collect();
            let base = if varying.first().map_or(true, |&k| p[k] > 0) { p } else { q };
            let signs: Vec<String> = (0..p.len())
                .map(|k| {
                    let s = if base[k] < 0 { "-" } else { "+" };
                    if varying.contains(&k) { format!("{s}e") } else { s.to_string() }
                })
                .collect();
            lines.push(format!("{}, e ∈ {{±1}}", fmt(&signs)));
        } else {
            for v in &variants {
                lines.push(fmt(&lit(v)));
            }
        }
    }
    lines
}

/// Exponent multiset of each monomial; a monomial with an exponent equal to
/// the gcd of its exponents collapses to that gcd; constants merge.
pub fn shape_of_terms(terms: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut has_const = false;
    for t in terms {
        let mut e: Vec<u32> = t.iter().copied().filter(|x| *x > 0).collect();
        if e.is_empty() {
            if has_const {
                continue;
            }
            has_const = true;
            out.push(vec![]);
            continue;
        }
        let g = e.iter().fold(0u32, |a, b| a.gcd(b));
        if e.contains(&g) {
            e = vec![g];
        }
        e.sort();
        out.push(e);
    }
    out.sort();
    out
}

pub fn shape(eq: &ReducedEquation) -> Vec<Vec<u32>> {
    let terms: Vec<Vec<u32>> = display_terms(eq).iter().map(|t| t.vars.iter().map(|(_, e)| *e).collect()).collect();
    shape_of_terms(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::{canonicalize, parse_equation};

    fn reduce(eq: &str) -> Reduction {
        let t = canonicalize(&parse_equation(eq).unwrap()).unwrap();
        reduce_to_independent(&t, 1_000_000).unwrap()
    }

    fn check_back_maps(eq: &str, r: &Reduction, box_b: i64) {
        let src = parse_equation(eq).unwrap();
        for e in &r.equations {
            let Some(bm) = &e.back_map else { continue };
            let nr = e.poly.nvars();
            let np = nr + e.extra.len();
            // every small reduced solution maps to a source solution
            let mut vals = vec![BigInt::from(-box_b); np];
            loop {
                if e.poly.is_solution(&vals[..nr]) {
                    if let Ok(x) = bm.iter().map(|m| m.eval(&vals)).collect::<Result<Vec<_>, _>>() {
                        if e.extra.len() == 0 || vals[nr..].iter().all(|v| !v.is_zero()) {
                            assert!(src.is_solution(&x), "{eq}: {vals:?} -> {x:?}");
                        }
                    }
                }
                let mut k = 0;
                loop {
                    if k == np {
                        return;
                    }
                    vals[k] += 1;
                    if vals[k] <= BigInt::from(box_b) {
                        break;
                    }
                    vals[k] = BigInt::from(-box_b);
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn worked_example() {
        let r = reduce("x + x^2*y - y*z^2");
        assert_eq!(display_reduction(&r), vec!["1 + e·v_y²·v_z² − e·u_z² = 0, e ∈ {±1}"]);
        check_back_maps("x + x^2*y - y*z^2", &r, 3);
    }

    #[test]
    fn table_shapes() {
        let s = |eq: &str| -> Vec<Vec<Vec<u32>>> {
            let mut v: Vec<_> = reduce(eq).equations.iter().map(shape).collect();
            v.sort();
            v.dedup();
            v
        };
        assert_eq!(s("x^3 + y^3 + z^3"), vec![vec![vec![3], vec![3], vec![3]]]);
        assert!(s("x^4 + y^2 + z^2").contains(&vec![vec![2], vec![2], vec![2]]));
        assert!(s("x^4 + x*y^3 + z^2").contains(&vec![vec![2], vec![3], vec![6]]));
    }

    #[test]
    fn back_maps_are_sound() {
        for eq in ["x^3 - y^2*z - y", "3*x^3 + 4*y^3 + 5*z^3", "2*x^2*y + 6*x*z - 3*y*z^2"] {
            let r = reduce(eq);
            assert!(!r.equations.is_empty());
            check_back_maps(eq, &r, 2);
        }
    }
}
