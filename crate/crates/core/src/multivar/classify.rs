//! Families of trinomials with symbolic coefficients: certificate check,
//! reduced shapes, enumeration by degree, and the cyclic equations
//! x^a·y^b + y^a·z^b + z^a·x^b = 0.

use super::prop::{check_prop4, Roles};
use super::reduce::{reduce_with_roles, shape, shape_of_terms};
use super::twomono::trivial_solutions;
use crate::eqparse::{Poly, Trinomial};
use crate::lindioph::Feasibility;
use crate::solset::{SolutionSet, Status};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

const VAR_ORDER: [char; 4] = ['x', 'y', 'z', 't'];

/// A family written as `a A + b B = c C` or `a A + b B + c C = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub vars: Vec<String>,
    pub exps: [Vec<u32>; 3],
    /// The third monomial was written on the right-hand side.
    pub rhs: bool,
}

impl Family {
    /// Instance with every written coefficient equal to 1.
    pub fn unit_instance(&self) -> Trinomial {
        let c = if self.rhs { -1 } else { 1 };
        Trinomial::from_parts(self.vars.clone(), [1.into(), 1.into(), c.into()], self.exps.clone())
    }
}

fn parse_monomial(s: &str) -> Result<Vec<(char, u32)>, String> {
    let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}' && *c != '$').collect();
    let mut out: Vec<(char, u32)> = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        i += 1;
        match c {
            'a' | 'b' | 'c' | 'A' | 'B' | 'C' => {}
            '^' => {
                let start = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let e: u32 = cs[start..i].iter().collect::<String>().parse().map_err(|_| format!("bad exponent in {s}"))?;
                let last = out.last_mut().ok_or(format!("exponent without variable in {s}"))?;
                last.1 = e;
            }
            c if c.is_ascii_lowercase() => out.push((c, 1)),
            '0' | '1' if out.is_empty() && cs.len() == 1 => {}
            _ => return Err(format!("unexpected '{c}' in {s}")),
        }
    }
    Ok(out)
}

/// Parse a table row such as `a x^2 y + b y = c z^2`.
pub fn parse_family(s: &str) -> Result<Family, String> {
    let (lhs, rhs) = s.split_once('=').ok_or("missing '='")?;
    let rhs = rhs.trim();
    let mut monos: Vec<Vec<(char, u32)>> = lhs.split('+').map(parse_monomial).collect::<Result<_, _>>()?;
    let on_right = rhs != "0";
    if on_right {
        monos.push(parse_monomial(rhs)?);
    }
    if monos.len() != 3 {
        return Err(format!("expected three monomials in {s}"));
    }
    let used: BTreeSet<char> = monos.iter().flatten().map(|(c, _)| *c).collect();
    let vars: Vec<char> = if used.iter().all(|c| VAR_ORDER.contains(c)) {
        let top = if used.contains(&'t') { 4 } else { 3 };
        VAR_ORDER[..top].to_vec()
    } else {
        used.into_iter().collect()
    };
    let exps: [Vec<u32>; 3] = std::array::from_fn(|k| {
        vars.iter().map(|v| monos[k].iter().filter(|(c, _)| c == v).map(|(_, e)| *e).sum()).collect()
    });
    Ok(Family { vars: vars.iter().map(|c| c.to_string()).collect(), exps, rhs: on_right })
}

/// Shape of a reduced-equation string such as `Au^3 v^2 + Bw^2 + C = 0`.
pub fn parse_shape(s: &str) -> Result<Vec<Vec<u32>>, String> {
    let lhs = s.split_once('=').map_or(s, |(l, _)| l);
    let terms: Vec<Vec<u32>> = lhs
        .split('+')
        .map(|t| parse_monomial(t).map(|m| m.into_iter().map(|(_, e)| e).collect()))
        .collect::<Result<_, _>>()?;
    Ok(shape_of_terms(&terms))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Prop4 { roles: Roles, z: Vec<u64>, direct: bool },
    Reduced { shapes: Vec<Vec<Vec<u32>>> },
    Unknown,
}

/// Certificate over all orientations; otherwise the shapes of the unit
/// instance's reduced equations.
pub fn classify_family(f: &Family, budget: usize) -> Classification {
    let t = f.unit_instance();
    match check_prop4(&t, budget) {
        Ok(Some(c)) => Classification::Prop4 { direct: c.t.is_some(), roles: c.roles, z: c.z },
        Ok(None) => Classification::Reduced { shapes: reduced_shapes(&t, budget) },
        Err(_) => Classification::Unknown,
    }
}

/// Distinct shapes over the reductions in each orientation.
pub fn reduced_shapes(t: &Trinomial, budget: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = Vec::new();
    for c_role in (0..3).rev() {
        let Ok(r) = reduce_with_roles(t, &Roles::new(&t.exps, c_role), budget) else { continue };
        for eq in &r.equations {
            let s = shape(eq);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Exponent matrix up to renaming variables and reordering monomials.
pub fn canonical_form(exps: &[Vec<u32>; 3]) -> Vec<Vec<u32>> {
    let n = exps[0].len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Vec<u32>>> = None;
    loop {
        let mut rows: Vec<Vec<u32>> = exps.iter().map(|r| perm.iter().map(|&i| r[i]).collect()).collect();
        rows.sort();
        if best.as_ref().map_or(true, |b| rows < *b) {
            best = Some(rows);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn monomials(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_deg, &mut vec![], &mut out);
    out
}

/// Families solved by a substitution or by isolating a variable: a constant
/// monomial, a monomial x_i alone with x_i nowhere else, or two variables
/// whose exponent columns are proportional.
pub fn is_trivial_family(e: &[Vec<u32>; 3]) -> bool {
    let n = e[0].len();
    let col = |i: usize| -> Vec<u32> { e.iter().map(|m| m[i]).collect() };
    if e.iter().any(|m| m.iter().all(|x| *x == 0)) {
        return true;
    }
    let isolated = (0..n).any(|i| {
        col(i).iter().filter(|x| **x > 0).count() == 1 && e.iter().any(|m| m[i] == 1 && m.iter().sum::<u32>() == 1)
    });
    if isolated {
        return true;
    }
    (0..n).any(|i| {
        (0..n).any(|j| {
            let (a, b) = (col(i), col(j));
            i != j && (1..=a.iter().copied().max().unwrap_or(0)).any(|k| (0..3).all(|r| a[r] == k * b[r]))
        })
    })
}

/// Canonical families of the given degree: three distinct monomials, some
/// monomial of full degree, every one of 3..=max_vars variables used, no
/// variable shared by all three monomials. With `refined`, families trivial
/// in the sense of [`is_trivial_family`] are dropped too.
pub fn enumerate_families(degree: u32, max_vars: usize, refined: bool) -> Vec<Vec<Vec<u32>>> {
    let mut seen = BTreeSet::new();
    for n in 3..=max_vars {
        let ms = monomials(n, degree);
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                for k in j + 1..ms.len() {
                    let e = [ms[i].clone(), ms[j].clone(), ms[k].clone()];
                    let deg = |m: &Vec<u32>| m.iter().sum::<u32>();
                    if e.iter().map(deg).max() != Some(degree) {
                        continue;
                    }
                    if (0..n).any(|v| e.iter().all(|m| m[v] == 0) || e.iter().all(|m| m[v] > 0)) {
                        continue;
                    }
                    if refined && is_trivial_family(&e) {
                        continue;
                    }
                    seen.insert(canonical_form(&e));
                }
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCensus {
    pub degree: u32,
    pub max_vars: usize,
    pub refined: bool,
    pub total: usize,
    pub prop4: usize,
    pub unknown: usize,
    /// Canonical forms without a certificate.
    pub others: Vec<Vec<Vec<u32>>>,
}

pub fn census(degree: u32, max_vars: usize, refined: bool, budget: usize) -> DegreeCensus {
    let fams = enumerate_families(degree, max_vars, refined);
    let mut prop4 = 0;
    let mut unknown = 0;
    let mut others = Vec::new();
    for f in &fams {
        let e: [Vec<u32>; 3] = [f[0].clone(), f[1].clone(), f[2].clone()];
        match super::prop::prop4_feasible(&e, budget) {
            Feasibility::Feasible => prop4 += 1,
            Feasibility::Unknown => unknown += 1,
            Feasibility::Infeasible => others.push(f.clone()),
        }
    }
    DegreeCensus { degree, max_vars, refined, total: fams.len(), prop4, unknown, others }
}

/// Degree-3 census set against the published tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub basic: DegreeCensus,
    pub refined: DegreeCensus,
    /// Distinct families listed with a certificate, and without one.
    pub listed_prop4: usize,
    pub listed_others: usize,
    /// Listed rows that repeat an earlier row up to renaming.
    pub duplicate_rows: Vec<String>,
    /// Listed families the refined enumeration misses.
    pub missing: Vec<String>,
    /// Refined families that are not listed.
    pub extra: Vec<String>,
}

impl CensusReport {
    pub fn lines(&self) -> Vec<String> {
        let c = |d: &DegreeCensus| {
            format!("total {}, prop4 {}, unknown {}, without certificate {}", d.total, d.prop4, d.unknown, d.others.len())
        };
        let mut out = vec![
            format!("rules: 3..={} variables, all used, a monomial of degree {}, no variable in all three monomials", self.basic.max_vars, self.basic.degree),
            format!("basic: {}", c(&self.basic)),
            "refined: also drop a constant monomial, a lone linear variable, proportional variable columns".into(),
            format!("refined: {}", c(&self.refined)),
            format!("listed: {} distinct with certificate, {} without", self.listed_prop4, self.listed_others),
        ];
        for r in &self.duplicate_rows {
            out.push(format!("duplicate listed row: {r}"));
        }
        for r in &self.missing {
            out.push(format!("listed but not enumerated: {r}"));
        }
        for r in &self.extra {
            out.push(format!("enumerated but not listed: {r}"));
        }
        out
    }
}

/// Renders a canonical exponent matrix as `m1 + m2 + m3`.
pub fn family_string(e: &[Vec<u32>]) -> String {
    let names = ["x", "y", "z", "t", "s", "r"];
    let mono = |m: &Vec<u32>| {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, k)| **k > 0)
            .map(|(i, k)| if *k == 1 { names[i].to_string() } else { format!("{}^{k}", names[i]) })
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join("*") }
    };
    e.iter().map(mono).collect::<Vec<_>>().join(" + ")
}

/// Renders a reduced shape as `A u^3 v^2 + B w^2 + C = 0`.
pub fn shape_string(shape: &[Vec<u32>]) -> String {
    let letters = ["u", "v", "w", "s", "r", "q", "p"];
    let mut next = 0;
    let terms: Vec<String> = shape
        .iter()
        .zip(["A", "B", "C"])
        .map(|(t, coeff)| {
            let mut out = coeff.to_string();
            for e in t {
                let name = letters.get(next).map_or_else(|| format!("u{next}"), |l| l.to_string());
                next += 1;
                out += &if *e == 1 { format!(" {name}") } else { format!(" {name}^{e}") };
            }
            out
        })
        .collect();
    format!("{} = 0", terms.join(" + "))
}

pub fn degree3_report(budget: usize) -> CensusReport {
    use crate::fixtures::{TABLE3, TABLE4};
    let basic = census(3, 4, false, budget);
    let refined = census(3, 4, true, budget);
    let enumerated: BTreeSet<Vec<Vec<u32>>> = enumerate_families(3, 4, true).into_iter().collect();
    let mut listed = BTreeSet::new();
    let mut duplicate_rows = Vec::new();
    let mut listed_prop4 = 0;
    let mut listed_others = 0;
    for (k, row) in TABLE3.iter().map(|r| r.0).chain(TABLE4.iter().map(|r| r.0)).enumerate() {
        let f = parse_family(row).expect("fixture row parses");
        if !listed.insert(canonical_form(&f.exps)) {
            duplicate_rows.push(row.to_string());
        } else if k < TABLE3.len() {
            listed_prop4 += 1;
        } else {
            listed_others += 1;
        }
    }
    CensusReport {
        missing: listed.difference(&enumerated).map(|e| family_string(e)).collect(),
        extra: enumerated.difference(&listed).map(|e| family_string(e)).collect(),
        basic,
        refined,
        listed_prop4,
        listed_others,
        duplicate_rows,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CyclicCase {
    /// gcd(a, b) = 2: every monomial is a square.
    EvenSquares,
    /// gcd(a, b) ≥ 3.
    FermatPower(u64),
    /// Coprime with m = a² − ab + b² ≥ 3.
    FermatAfterCancelling(u64),
    /// m < 3: left to the general solver.
    General,
}

#[derive(Clone, Debug)]
pub struct CyclicReport {
    pub a: u32,
    pub b: u32,
    pub case: CyclicCase,
    pub poly: Poly,
    /// Filled for every case except `General`.
    pub solutions: Option<SolutionSet>,
}

pub fn cyclic_poly(a: u32, b: u32) -> Poly {
    Poly::from_terms(
        &["x", "y", "z"],
        vec![(BigInt::from(1), vec![a, b, 0]), (BigInt::from(1), vec![0, a, b]), (BigInt::from(1), vec![b, 0, a])],
    )
}

/// Solutions with xyz ≠ 0 are excluded in every case but m < 3, so the
/// answer is the trivial part.
pub fn classify_cyclic(a: u32, b: u32) -> CyclicReport {
    assert!((a, b) != (0, 0), "classify_cyclic needs (a, b) ≠ (0, 0)");
    let d = a.gcd(&b) as u64;
    let m = (a as i64 * a as i64 - a as i64 * b as i64 + b as i64 * b as i64) as u64;
    let poly = cyclic_poly(a, b);
    let case = if d == 2 {
        CyclicCase::EvenSquares
    } else if d >= 3 {
        CyclicCase::FermatPower(d)
    } else if m >= 3 {
        CyclicCase::FermatAfterCancelling(m)
    } else {
        CyclicCase::General
    };
    let solutions = match case {
        CyclicCase::General => None,
        _ => {
            let mut s = trivial_solutions(&poly);
            s.cite(match case {
                CyclicCase::EvenSquares => "sum of squares",
                _ => "Fermat's Last Theorem",
            });
            s.status = Status::Complete;
            Some(s)
        }
    };
    CyclicReport { a, b, case, poly, solutions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{TABLE3, TABLE4, TABLE5};

    #[test]
    fn parses_rows() {
        let f = parse_family("a x^2 y + b y = c z^2").unwrap();
        assert_eq!(f.exps, [vec![2, 1, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        assert!(f.rhs);
        let f = parse_family("x^3 + b x y z = c t^2 y").unwrap();
        assert_eq!(f.vars.len(), 4);
        assert_eq!(parse_shape("Au^3 v^2 + Bw^2 + C = 0").unwrap(), vec![vec![], vec![2], vec![2, 3]]);
        assert_eq!(parse_shape("Au^{12}+Bv^4+Cw^3=0").unwrap(), vec![vec![3], vec![4], vec![12]]);
    }

    #[test]
    fn table3_vectors_check() {
        for (row, z) in TABLE3 {
            let f = parse_family(row).unwrap();
            let roles = Roles::new(&f.exps, 2);
            assert_eq!(z.len(), f.vars.len(), "{row}");
            assert!(roles.satisfies(z, -1), "{row} {z:?}");
        }
    }

    #[test]
    fn tables_4_5_lack_certificates() {
        for (row, _) in TABLE4.iter().chain(TABLE5) {
            let f = parse_family(row).unwrap();
            assert_eq!(check_prop4(&f.unit_instance(), 1_000_000), Ok(None), "{row}");
        }
    }

    #[test]
    fn shape_rendering() {
        assert_eq!(shape_string(&parse_shape("Au^3 v^2 + Bw^2 + C = 0").unwrap()), "A + B u^2 + C v^2 w^3 = 0");
    }

    #[test]
    fn degree3_census() {
        let r = degree3_report(1_000_000);
        assert_eq!((r.basic.total, r.basic.prop4, r.basic.others.len()), (218, 209, 9));
        assert_eq!((r.refined.total, r.refined.prop4, r.refined.others.len()), (108, 100, 8));
        assert_eq!((r.listed_prop4, r.listed_others), (86, 8));
        assert_eq!(r.duplicate_rows.len(), 2);
        assert!(r.missing.is_empty());
        assert_eq!(r.extra.len(), 14);
    }

    #[test]
    fn cyclic_cases() {
        use crate::oracle::{brute_force, compare};
        for (a, b) in [(2, 4), (2, 1), (3, 0), (2, 2), (1, 2)] {
            let r = classify_cyclic(a, b);
            let s = r.solutions.unwrap();
            let rep = compare(&s, &brute_force(&r.poly, 12).unwrap());
            assert!(rep.sound && rep.complete_in_box, "({a},{b}) {rep:?}");
        }
        assert_eq!(classify_cyclic(1, 1).case, CyclicCase::General);
        assert_eq!(classify_cyclic(2, 1).case, CyclicCase::FermatAfterCancelling(3));
    }
}
