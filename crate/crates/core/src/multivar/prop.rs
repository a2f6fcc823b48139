//! The direct formula and the sufficient-condition certificate.

use crate::eqparse::{Poly, Trinomial};
use crate::lindioph::{feasible_2d, solve_system_nonneg, Feasibility};
use crate::solset::{mul_all, param, Expr, ParamDomain, SolutionFamily};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Exponent vectors in the roles a·X^α + b·X^β = c·X^γ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    /// Indices of the monomials playing a, b, c.
    pub order: [usize; 3],
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub gamma: Vec<u32>,
}

impl Roles {
    /// Monomial `c_role` on the right-hand side, the other two in input order.
    pub fn new(exps: &[Vec<u32>; 3], c_role: usize) -> Roles {
        let rest: Vec<usize> = (0..3).filter(|&i| i != c_role).collect();
        Roles {
            order: [rest[0], rest[1], c_role],
            alpha: exps[rest[0]].clone(),
            beta: exps[rest[1]].clone(),
            gamma: exps[c_role].clone(),
        }
    }

    fn rows(&self, rhs: i64) -> Vec<(Vec<i64>, i64)> {
        let n = self.alpha.len();
        let ab: Vec<i64> = (0..n).map(|i| self.alpha[i] as i64 - self.beta[i] as i64).collect();
        let ga: Vec<i64> = (0..n).map(|i| self.gamma[i] as i64 - self.alpha[i] as i64).collect();
        vec![(ab, 0), (ga, rhs)]
    }

    /// Σα·z = Σβ·z = Σγ·z + shift, with shift = -1 for the z-system and +1 for the t-system.
    pub fn satisfies(&self, z: &[u64], shift: i64) -> bool {
        let dot = |e: &[u32]| -> i64 { e.iter().zip(z).map(|(a, b)| *a as i64 * *b as i64).sum() };
        dot(&self.alpha) == dot(&self.beta) && dot(&self.alpha) == dot(&self.gamma) + shift
    }

    /// Smallest minimal non-negative solution of the z-system (shift -1) or t-system (+1).
    pub fn solve_system(&self, shift: i64, budget: usize) -> Result<Option<Vec<u64>>, Feasibility> {
        let rows = self.rows(-shift);
        match solve_system_nonneg(&rows, budget) {
            Ok(basis) => Ok(basis
                .particular_minimals
                .into_iter()
                .min_by_key(|v| (v.iter().sum::<u64>(), v.clone()))),
            Err(_) => Err(Feasibility::Unknown),
        }
    }

    /// Feasibility of the z-system without producing a vector.
    pub fn z_feasible(&self, budget: usize) -> Feasibility {
        let n = self.alpha.len();
        let cols: Vec<(i64, i64)> = (0..n)
            .map(|i| {
                (
                    self.alpha[i] as i64 - self.beta[i] as i64,
                    self.gamma[i] as i64 - self.alpha[i] as i64,
                )
            })
            .collect();
        feasible_2d(&cols, budget)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop4Certificate {
    pub roles: Roles,
    pub z: Vec<u64>,
    pub t: Option<Vec<u64>>,
}

impl Prop4Certificate {
    pub fn new(roles: Roles, z: Vec<u64>, t: Option<Vec<u64>>) -> Self {
        assert!(roles.satisfies(&z, -1), "z does not solve the certificate system");
        if let Some(t) = &t {
            assert!(roles.satisfies(t, 1), "t does not solve the second system");
        }
        Prop4Certificate { roles, z, t }
    }

    pub fn direct_formula_applies(&self) -> bool {
        self.t.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("feasibility undecided within the node budget")]
pub struct FeasibilityUnknown;

/// Orientations are tried with the last monomial on the right first. One that
/// also admits the t-system is preferred, so the direct formula is found
/// whenever some orientation allows it.
pub fn check_prop4(t: &Trinomial, budget: usize) -> Result<Option<Prop4Certificate>, FeasibilityUnknown> {
    let mut first: Option<Prop4Certificate> = None;
    let mut unknown = false;
    for c_role in (0..3).rev() {
        let roles = Roles::new(&t.exps, c_role);
        let z = match roles.solve_system(-1, budget) {
            Ok(Some(z)) => z,
            Ok(None) => continue,
            Err(_) => {
                unknown = true;
                continue;
            }
        };
        let tv = roles.solve_system(1, budget).ok().flatten();
        let cert = Prop4Certificate::new(roles, z, tv);
        if cert.direct_formula_applies() {
            return Ok(Some(cert));
        }
        if first.is_none() {
            first = Some(cert);
        }
    }
    match first {
        Some(c) => Ok(Some(c)),
        None if unknown => Err(FeasibilityUnknown),
        None => Ok(None),
    }
}

/// Decide the sufficient condition from exponent data alone.
pub fn prop4_feasible(exps: &[Vec<u32>; 3], budget: usize) -> Feasibility {
    let mut unknown = false;
    for c_role in 0..3 {
        match Roles::new(exps, c_role).z_feasible(budget) {
            Feasibility::Feasible => return Feasibility::Feasible,
            Feasibility::Unknown => unknown = true,
            Feasibility::Infeasible => {}
        }
    }
    if unknown {
        Feasibility::Unknown
    } else {
        Feasibility::Infeasible
    }
}

fn monomial(coeff: &BigInt, exps: &[u32], vals: &[Expr]) -> Expr {
    let mut fs = vec![Expr::Int(coeff.clone())];
    for (e, v) in exps.iter().zip(vals) {
        if *e > 0 {
            fs.push(v.clone().pow(*e));
        }
    }
    mul_all(fs)
}

/// The parametric family of all solutions with every coordinate nonzero.
pub fn direct_formula(poly: &Poly, t: &Trinomial, cert: &Prop4Certificate) -> SolutionFamily {
    let tv = cert.t.as_ref().expect("direct formula needs both systems");
    let n = t.nvars();
    let [ia, ib, ic] = cert.roles.order;
    let a = &t.coeffs[ia];
    let b = &t.coeffs[ib];
    let c = -&t.coeffs[ic];
    let u: Vec<Expr> = (0..n).map(param).collect();
    let p = monomial(a, &cert.roles.alpha, &u).add(monomial(b, &cert.roles.beta, &u));
    let q = monomial(&c, &cert.roles.gamma, &u);
    let mut params: Vec<(String, ParamDomain)> =
        poly.vars.iter().map(|v| (format!("u_{v}"), ParamDomain::AllIntegers)).collect();
    let w = param(n);
    params.push(("w".into(), ParamDomain::DivisorSet { k: 1, of: vec![p.clone(), q.clone()] }));
    let exprs: Vec<Expr> = (0..n)
        .map(|i| {
            let (zi, ti) = (cert.z[i] as u32, tv[i] as u32);
            mul_all(vec![p.clone().pow(zi), q.clone().pow(ti), u[i].clone()]).div(w.clone().pow(zi + ti))
        })
        .collect();
    let coords: Vec<Expr> = (0..n).map(param).collect();
    let mut wit = coords.clone();
    // the cancelled common monomial does not change the identity
    wit.push(monomial(&c, &cert.roles.gamma, &coords));
    SolutionFamily::new(params, exprs).with_witness(wit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::{canonicalize, parse_equation};

    fn cert(eq: &str) -> Option<Prop4Certificate> {
        let t = canonicalize(&parse_equation(eq).unwrap()).unwrap();
        check_prop4(&t, 100_000).unwrap()
    }

    #[test]
    fn certificates() {
        let c = cert("x^2 + y^3 - z^5").unwrap();
        assert_eq!(c.z, vec![12, 8, 5]);
        assert_eq!(c.t, Some(vec![3, 2, 1]));
        let c = cert("x^3 - y^2*z - z").unwrap();
        assert_eq!(c.z, vec![1, 0, 2]);
        assert_eq!(c.t, Some(vec![0, 0, 1]));
        let c = cert("x^3 - y^2*z - y").unwrap();
        assert_eq!(c.z, vec![0, 0, 1]);
        assert!(c.t.is_none());
        assert!(cert("x + x^2*y - y*z^2").is_none());
    }

    fn direct_set(eq: &str) -> crate::solset::SolutionSet {
        let p = parse_equation(eq).unwrap();
        let t = canonicalize(&p).unwrap();
        let c = check_prop4(&t, 100_000).unwrap().unwrap();
        let mut set = crate::multivar::trivial_solutions(&t.original_poly());
        set.push_family(direct_formula(&t.original_poly(), &t, &c));
        set
    }

    #[test]
    fn direct_formula_matches_oracle() {
        use crate::oracle::{brute_force, compare};
        for (eq, b) in [("x^2 + y^3 - z^5", 40), ("x^3 - y^2*z - z", 30), ("2*x*y + 3*z^2 - x^3*z", 20)] {
            let set = direct_set(eq);
            let p = parse_equation(eq).unwrap();
            let rep = compare(&set, &brute_force(&p, b).unwrap());
            assert!(rep.sound && rep.complete_in_box, "{eq}: {rep:?}");
        }
    }
}
