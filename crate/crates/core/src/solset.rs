//! Solution sets: finite lists plus parametric families over integer,
//! finite, or divisor-constrained parameters.

use crate::eqparse::Poly;
use crate::intcore::{divisors_k, gcd_all, ipow};
use crate::oracle;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expr {
    Int(BigInt),
    Param(usize),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    /// Exact division; a remainder is an evaluation error.
    Div(Box<Expr>, Box<Expr>),
    /// Component `comp` of mat^index · init, with mat unimodular.
    Pell { mat: [BigInt; 4], init: [BigInt; 2], index: Box<Expr>, comp: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("inexact division")]
    Inexact,
    #[error("division by zero")]
    DivByZero,
    #[error("parameter {0} outside its domain")]
    Domain(String),
    #[error("wrong number of parameters")]
    Arity,
    #[error("recurrence index too large")]
    IndexTooLarge,
}

pub fn int(v: impl Into<BigInt>) -> Expr {
    Expr::Int(v.into())
}

pub fn param(i: usize) -> Expr {
    Expr::Param(i)
}

impl Expr {
    pub fn is_int(&self, v: i64) -> bool {
        matches!(self, Expr::Int(x) if *x == BigInt::from(v))
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Expr::Int(x) => Some(x),
            _ => None,
        }
    }

    pub fn add(self, other: Expr) -> Expr {
        add_all(vec![self, other])
    }

    pub fn sub(self, other: Expr) -> Expr {
        add_all(vec![self, other.neg()])
    }

    pub fn mul(self, other: Expr) -> Expr {
        mul_all(vec![self, other])
    }

    pub fn neg(self) -> Expr {
        match self {
            Expr::Int(x) => Expr::Int(-x),
            Expr::Neg(e) => *e,
            Expr::Add(xs) => add_all(xs.into_iter().map(|x| x.neg()).collect()),
            Expr::Mul(xs) => mul_all(std::iter::once(int(-1)).chain(xs).collect()),
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn pow(self, e: u32) -> Expr {
        match (self, e) {
            (_, 0) => int(1),
            (x, 1) => x,
            (Expr::Int(x), e) => Expr::Int(ipow(&x, e)),
            (Expr::Pow(b, k), e) => Expr::Pow(b, k * e),
            (x, e) => Expr::Pow(Box::new(x), e),
        }
    }

    pub fn div(self, d: Expr) -> Expr {
        if d.is_int(1) {
            return self;
        }
        if d.is_int(-1) {
            return self.neg();
        }
        if let (Expr::Int(a), Expr::Int(b)) = (&self, &d) {
            if !b.is_zero() && (a % b).is_zero() {
                return Expr::Int(a / b);
            }
        }
        Expr::Div(Box::new(self), Box::new(d))
    }

    pub fn eval(&self, p: &[BigInt]) -> Result<BigInt, EvalError> {
        Ok(match self {
            Expr::Int(x) => x.clone(),
            Expr::Param(i) => p.get(*i).ok_or(EvalError::Arity)?.clone(),
            Expr::Add(xs) => {
                let mut s = BigInt::zero();
                for x in xs {
                    s += x.eval(p)?;
                }
                s
            }
            Expr::Mul(xs) => {
                let mut s = BigInt::one();
                for x in xs {
                    s *= x.eval(p)?;
                    if s.is_zero() {
                        // remaining factors may still be ill-defined
                        for y in xs {
                            y.eval(p)?;
                        }
                        return Ok(s);
                    }
                }
                s
            }
            Expr::Neg(x) => -x.eval(p)?,
            Expr::Pow(x, e) => ipow(&x.eval(p)?, *e),
            Expr::Div(a, b) => {
                let d = b.eval(p)?;
                if d.is_zero() {
                    return Err(EvalError::DivByZero);
                }
                let (q, r) = a.eval(p)?.div_rem(&d);
                if !r.is_zero() {
                    return Err(EvalError::Inexact);
                }
                q
            }
            Expr::Pell { mat, init, index, comp } => {
                let k = index.eval(p)?;
                let k = k.to_i64().ok_or(EvalError::IndexTooLarge)?;
                if k.unsigned_abs() > 100_000 {
                    return Err(EvalError::IndexTooLarge);
                }
                let v = pell_step(mat, init, k);
                v[*comp as usize].clone()
            }
        })
    }

    pub fn params_used(&self, out: &mut BTreeSet<usize>) {
        match self {
            Expr::Int(_) => {}
            Expr::Param(i) => {
                out.insert(*i);
            }
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.params_used(out)),
            Expr::Neg(x) | Expr::Pow(x, _) => x.params_used(out),
            Expr::Div(a, b) => {
                a.params_used(out);
                b.params_used(out);
            }
            Expr::Pell { index, .. } => index.params_used(out),
        }
    }

    pub fn params(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        self.params_used(&mut s);
        s
    }

    /// Replace Param(i) by subs[i].
    pub fn subst(&self, subs: &[Expr]) -> Expr {
        match self {
            Expr::Int(x) => Expr::Int(x.clone()),
            Expr::Param(i) => subs[*i].clone(),
            Expr::Add(xs) => add_all(xs.iter().map(|x| x.subst(subs)).collect()),
            Expr::Mul(xs) => mul_all(xs.iter().map(|x| x.subst(subs)).collect()),
            Expr::Neg(x) => x.subst(subs).neg(),
            Expr::Pow(x, e) => x.subst(subs).pow(*e),
            Expr::Div(a, b) => a.subst(subs).div(b.subst(subs)),
            Expr::Pell { mat, init, index, comp } => Expr::Pell {
                mat: mat.clone(),
                init: init.clone(),
                index: Box::new(index.subst(subs)),
                comp: *comp,
            },
        }
    }

    pub fn shift(&self, offset: usize) -> Expr {
        match self {
            Expr::Param(i) => Expr::Param(i + offset),
            Expr::Int(x) => Expr::Int(x.clone()),
            Expr::Add(xs) => Expr::Add(xs.iter().map(|x| x.shift(offset)).collect()),
            Expr::Mul(xs) => Expr::Mul(xs.iter().map(|x| x.shift(offset)).collect()),
            Expr::Neg(x) => Expr::Neg(Box::new(x.shift(offset))),
            Expr::Pow(x, e) => Expr::Pow(Box::new(x.shift(offset)), *e),
            Expr::Div(a, b) => Expr::Div(Box::new(a.shift(offset)), Box::new(b.shift(offset))),
            Expr::Pell { mat, init, index, comp } => Expr::Pell {
                mat: mat.clone(),
                init: init.clone(),
                index: Box::new(index.shift(offset)),
                comp: *comp,
            },
        }
    }

    pub fn contains_div(&self) -> bool {
        match self {
            Expr::Div(..) => true,
            Expr::Int(_) | Expr::Param(_) => false,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().any(|x| x.contains_div()),
            Expr::Neg(x) | Expr::Pow(x, _) => x.contains_div(),
            Expr::Pell { index, .. } => index.contains_div(),
        }
    }

    pub fn contains_pell(&self) -> bool {
        match self {
            Expr::Pell { .. } => true,
            Expr::Int(_) | Expr::Param(_) => false,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().any(|x| x.contains_pell()),
            Expr::Neg(x) | Expr::Pow(x, _) => x.contains_pell(),
            Expr::Div(a, b) => a.contains_pell() || b.contains_pell(),
        }
    }

    /// Univariate polynomial in Param(var) with rational coefficients, when
    /// every other parameter is fixed and no division depends on `var`.
    pub fn to_upoly(&self, var: usize, fixed: &[Option<BigInt>]) -> Option<Vec<BigRational>> {
        Some(match self {
            Expr::Int(x) => vec![BigRational::from_integer(x.clone())],
            Expr::Param(i) if *i == var => vec![BigRational::zero(), BigRational::one()],
            Expr::Param(i) => vec![BigRational::from_integer(fixed.get(*i)?.clone()?)],
            Expr::Add(xs) => {
                let mut acc = vec![];
                for x in xs {
                    acc = upoly_add(&acc, &x.to_upoly(var, fixed)?);
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = vec![BigRational::one()];
                for x in xs {
                    acc = upoly_mul(&acc, &x.to_upoly(var, fixed)?);
                }
                acc
            }
            Expr::Neg(x) => x.to_upoly(var, fixed)?.into_iter().map(|c| -c).collect(),
            Expr::Pow(x, e) => {
                let b = x.to_upoly(var, fixed)?;
                let mut acc = vec![BigRational::one()];
                for _ in 0..*e {
                    acc = upoly_mul(&acc, &b);
                }
                acc
            }
            Expr::Div(a, b) => {
                let d = b.to_upoly(var, fixed)?;
                let d = upoly_trim(d);
                if d.len() != 1 || d[0].is_zero() {
                    return None;
                }
                a.to_upoly(var, fixed)?.into_iter().map(|c| c / &d[0]).collect()
            }
            Expr::Pell { .. } => {
                if self.params().contains(&var) {
                    return None;
                }
                let vals: Option<Vec<BigInt>> =
                    fixed.iter().map(|v| Some(v.clone().unwrap_or_default())).collect();
                let v = self.eval(&vals?).ok()?;
                vec![BigRational::from_integer(v)]
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(_) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(xs) if xs.first().and_then(|x| x.as_int()).map_or(false, |c| c.is_negative()) => 2,
            Expr::Mul(_) | Expr::Div(_, _) => 3,
            Expr::Pow(_, _) => 4,
            Expr::Int(x) if x.is_negative() => 2,
            _ => 5,
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        let wrap = |e: &Expr, min: u8| {
            let s = e.display(names);
            if e.prec() < min {
                format!("({s})")
            } else {
                s
            }
        };
        match self {
            Expr::Int(x) => x.to_string(),
            Expr::Param(i) => names.get(*i).cloned().unwrap_or_else(|| format!("p{i}")),
            Expr::Add(xs) => {
                let mut s = String::new();
                for (k, x) in xs.iter().enumerate() {
                    let (neg, body) = match x {
                        Expr::Neg(inner) => (true, wrap(inner, 2)),
                        Expr::Int(v) if v.is_negative() => (true, (-v).to_string()),
                        Expr::Mul(ys) if x.prec() == 2 => {
                            let mut ys = ys.clone();
                            let c = -ys[0].as_int().unwrap();
                            if c.is_one() {
                                ys.remove(0);
                            } else {
                                ys[0] = Expr::Int(c);
                            }
                            let m = if ys.len() == 1 { ys.pop().unwrap() } else { Expr::Mul(ys) };
                            (true, wrap(&m, 2))
                        }
                        _ => (false, wrap(x, 2)),
                    };
                    if k == 0 {
                        if neg {
                            s.push('-');
                        }
                    } else {
                        s.push_str(if neg { " - " } else { " + " });
                    }
                    s.push_str(&body);
                }
                s
            }
            Expr::Mul(xs) => {
                let mut parts: Vec<String> = xs.iter().map(|x| wrap(x, 3)).collect();
                let mut sign = "";
                if let Some(c) = xs.first().and_then(|x| x.as_int()).filter(|c| c.is_negative()) {
                    sign = "-";
                    if c == &BigInt::from(-1) && xs.len() > 1 {
                        parts.remove(0);
                    } else {
                        parts[0] = (-c).to_string();
                    }
                }
                format!("{sign}{}", parts.join("*"))
            }
            Expr::Neg(x) => format!("-{}", wrap(x, 3)),
            Expr::Pow(x, e) => format!("{}^{e}", wrap(x, 5)),
            Expr::Div(a, b) => format!("{}/{}", wrap(a, 3), wrap(b, 4)),
            Expr::Pell { mat, init, index, comp } => format!(
                "rec([{} {}; {} {}]^{} * ({}, {}))[{}]",
                mat[0],
                mat[1],
                mat[2],
                mat[3],
                wrap(index, 5),
                init[0],
                init[1],
                comp
            ),
        }
    }
}

pub fn add_all(xs: Vec<Expr>) -> Expr {
    let mut flat = Vec::new();
    let mut c = BigInt::zero();
    for x in xs {
        match x {
            Expr::Int(v) => c += v,
            Expr::Add(ys) => {
                for y in ys {
                    match y {
                        Expr::Int(v) => c += v,
                        y => flat.push(y),
                    }
                }
            }
            x => flat.push(x),
        }
    }
    if !c.is_zero() {
        flat.push(Expr::Int(c));
    }
    match flat.len() {
        0 => int(0),
        1 => flat.pop().unwrap(),
        _ => Expr::Add(flat),
    }
}

pub fn mul_all(xs: Vec<Expr>) -> Expr {
    let mut flat = Vec::new();
    let mut c = BigInt::one();
    for x in xs {
        match x {
            Expr::Int(v) => c *= v,
            Expr::Mul(ys) => {
                for y in ys {
                    match y {
                        Expr::Int(v) => c *= v,
                        y => flat.push(y),
                    }
                }
            }
            Expr::Neg(y) => {
                c = -c;
                flat.push(*y);
            }
            x => flat.push(x),
        }
    }
    if c.is_zero() {
        // the product is zero, but its divisions must still be exact
        let checks: Vec<Expr> = flat.into_iter().filter(|x| x.contains_div()).collect();
        if checks.is_empty() {
            return int(0);
        }
        let mut v = vec![int(0)];
        v.extend(checks);
        return Expr::Mul(v);
    }
    if flat.len() == 1 && matches!(flat[0], Expr::Add(_)) && (c.is_one() || c == -BigInt::one()) {
        let x = flat.pop().unwrap();
        return if c.is_one() { x } else { x.neg() };
    }
    if !c.is_one() {
        flat.insert(0, Expr::Int(c));
    }
    match flat.len() {
        0 => int(1),
        1 => flat.pop().unwrap(),
        _ => Expr::Mul(flat),
    }
}

fn upoly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn upoly_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn upoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Integer coefficient list proportional to a rational polynomial.
pub fn clear_denominators(p: &[BigRational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

pub fn pell_step(mat: &[BigInt; 4], init: &[BigInt; 2], k: i64) -> [BigInt; 2] {
    let m = if k >= 0 {
        mat.clone()
    } else {
        // inverse of a unimodular 2x2 matrix
        let det = &mat[0] * &mat[3] - &mat[1] * &mat[2];
        [&mat[3] * &det, -&mat[1] * &det, -&mat[2] * &det, &mat[0] * &det]
    };
    let mut v = init.clone();
    for _ in 0..k.unsigned_abs() {
        v = [&m[0] * &v[0] + &m[1] * &v[1], &m[2] * &v[0] + &m[3] * &v[1]];
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParamDomain {
    AllIntegers,
    FiniteSet(Vec<BigInt>),
    /// z with z^k dividing every listed expression; all of them zero means z ≠ 0.
    DivisorSet { k: u32, of: Vec<Expr> },
}

impl ParamDomain {
    pub fn nonzero() -> ParamDomain {
        ParamDomain::DivisorSet { k: 1, of: vec![int(0)] }
    }

    pub fn signs() -> ParamDomain {
        ParamDomain::FiniteSet(vec![BigInt::from(-1), BigInt::from(1)])
    }

    pub fn display(&self, names: &[String]) -> String {
        match self {
            ParamDomain::AllIntegers => "Z".to_string(),
            ParamDomain::FiniteSet(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", s.join(", "))
            }
            ParamDomain::DivisorSet { of, .. } if of.iter().all(|e| e.is_int(0)) => "Z\\{0}".to_string(),
            ParamDomain::DivisorSet { k, of } => {
                let parts: Vec<String> = of.iter().map(|e| format!("D_{k}({})", e.display(names))).collect();
                parts.join(" ∩ ")
            }
        }
    }

    /// Membership given values of the earlier parameters.
    pub fn contains(&self, z: &BigInt, earlier: &[BigInt]) -> Result<bool, EvalError> {
        Ok(match self {
            ParamDomain::AllIntegers => true,
            ParamDomain::FiniteSet(v) => v.contains(z),
            ParamDomain::DivisorSet { k, of } => {
                let m = self.divisor_target(earlier)?;
                let _ = of;
                if m.is_zero() {
                    !z.is_zero()
                } else {
                    !z.is_zero() && (&m % ipow(z, *k)).is_zero()
                }
            }
        })
    }

    /// gcd of the listed expressions; zero when there is no constraint.
    pub fn divisor_target(&self, earlier: &[BigInt]) -> Result<BigInt, EvalError> {
        match self {
            ParamDomain::DivisorSet { of, .. } => {
                let mut vals = Vec::new();
                for e in of {
                    vals.push(e.eval(earlier)?);
                }
                Ok(gcd_all(vals.iter()))
            }
            _ => Ok(BigInt::zero()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Witness {
    /// No inverse known beyond generic inversion.
    Generic,
    /// Parameter values as expressions in the solution coordinates.
    Explicit(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolutionFamily {
    pub params: Vec<(String, ParamDomain)>,
    pub exprs: Vec<Expr>,
    pub witness: Witness,
}

impl SolutionFamily {
    pub fn new(params: Vec<(String, ParamDomain)>, exprs: Vec<Expr>) -> Self {
        SolutionFamily { params, exprs, witness: Witness::Generic }
    }

    pub fn with_witness(mut self, w: Vec<Expr>) -> Self {
        self.witness = Witness::Explicit(w);
        self
    }

    pub fn names(&self) -> Vec<String> {
        self.params.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn display(&self, vars: &[String]) -> String {
        let names = self.names();
        let coords: Vec<String> = self.exprs.iter().map(|e| e.display(&names)).collect();
        let doms: Vec<String> =
            self.params.iter().map(|(n, d)| format!("{n} ∈ {}", d.display(&names))).collect();
        format!("({}) = ({}), {}", vars.join(", "), coords.join(", "), doms.join(", "))
    }
}

/// Evaluate a family at an assignment, checking every parameter domain.
pub fn evaluate(family: &SolutionFamily, assignment: &[BigInt]) -> Result<Vec<BigInt>, EvalError> {
    if assignment.len() != family.params.len() {
        return Err(EvalError::Arity);
    }
    for (i, (name, dom)) in family.params.iter().enumerate() {
        if !dom.contains(&assignment[i], &assignment[..i])? {
            return Err(EvalError::Domain(name.clone()));
        }
    }
    family.exprs.iter().map(|e| e.eval(assignment)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    Unknown,
    ReducedOnly,
    SearchedToBound(u64),
    Complete,
}

impl Status {
    fn rank(&self) -> (u8, std::cmp::Reverse<u64>) {
        match self {
            Status::Unknown => (0, std::cmp::Reverse(0)),
            Status::ReducedOnly => (1, std::cmp::Reverse(0)),
            Status::SearchedToBound(b) => (2, std::cmp::Reverse(u64::MAX - b)),
            Status::Complete => (3, std::cmp::Reverse(0)),
        }
    }

    pub fn weakest(a: &Status, b: &Status) -> Status {
        if let (Status::SearchedToBound(x), Status::SearchedToBound(y)) = (a, b) {
            return Status::SearchedToBound(*x.min(y));
        }
        if a.rank().0 <= b.rank().0 {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Complete => write!(f, "Complete"),
            Status::SearchedToBound(b) => write!(f, "SearchedToBound({b})"),
            Status::ReducedOnly => write!(f, "ReducedOnly"),
            Status::Unknown => write!(f, "Unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub equation: Poly,
    pub finite: Vec<Vec<BigInt>>,
    pub families: Vec<SolutionFamily>,
    pub status: Status,
    pub provenance: Vec<String>,
    /// Intermediate equations and their solutions, for reporting.
    pub trace: Vec<String>,
}

impl SolutionSet {
    pub fn new(equation: Poly) -> Self {
        SolutionSet { equation, finite: vec![], families: vec![], status: Status::Complete, provenance: vec![], trace: vec![] }
    }

    pub fn vars(&self) -> &[String] {
        &self.equation.vars
    }

    /// Insert a point; a non-solution is a construction bug.
    pub fn push_point(&mut self, x: Vec<BigInt>) {
        assert!(self.equation.is_solution(&x), "not a solution of {}: {:?}", self.equation, x);
        if let Err(pos) = self.finite.binary_search(&x) {
            self.finite.insert(pos, x);
        }
    }

    pub fn push_family(&mut self, f: SolutionFamily) {
        assert_eq!(f.exprs.len(), self.equation.nvars());
        if f.params.is_empty() {
            if let Ok(x) = f.exprs.iter().map(|e| e.eval(&[])).collect::<Result<Vec<_>, _>>() {
                self.push_point(x);
            }
            return;
        }
        if let Some(bad) = family_counterexample(&f, &self.equation, 24) {
            panic!("unsound family {} at {:?}", f.display(self.vars()), bad);
        }
        if !self.families.contains(&f) {
            self.families.push(f);
        }
    }

    pub fn weaken(&mut self, s: Status) {
        self.status = Status::weakest(&self.status, &s);
    }

    pub fn cite(&mut self, c: &str) {
        if !self.provenance.iter().any(|p| p == c) {
            self.provenance.push(c.to_string());
        }
    }

    pub fn merge(&mut self, other: SolutionSet) {
        assert_eq!(self.equation.vars.len(), other.equation.vars.len());
        for x in other.finite {
            self.push_point(x);
        }
        for f in other.families {
            if !self.families.contains(&f) {
                self.families.push(f);
            }
        }
        self.weaken(other.status);
        for p in other.provenance {
            self.cite(&p);
        }
        self.trace.extend(other.trace);
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.families.is_empty()
    }
}

/// Map a solution set of an auxiliary equation into `target`.
/// `fwd[i]` gives target coordinate i over the auxiliary coordinates;
/// `inv` recovers the auxiliary coordinates from target ones.
pub fn transform_into(target: &mut SolutionSet, sub: &SolutionSet, fwd: &[Expr], inv: Option<&[Expr]>) {
    for x in &sub.finite {
        let y: Vec<BigInt> = fwd.iter().map(|e| e.eval(x).expect("point map")).collect();
        target.push_point(y);
    }
    for f in &sub.families {
        let exprs: Vec<Expr> = fwd.iter().map(|e| e.subst(&f.exprs)).collect();
        let witness = match (&f.witness, inv) {
            (Witness::Explicit(w), Some(inv)) => Witness::Explicit(w.iter().map(|e| e.subst(inv)).collect()),
            _ => Witness::Generic,
        };
        target.push_family(SolutionFamily { params: f.params.clone(), exprs, witness });
    }
    target.weaken(sub.status.clone());
    for p in &sub.provenance {
        target.cite(p);
    }
    target.trace.extend(sub.trace.iter().cloned());
}

/// Like `transform_into`, but the image may use extra parameters appended
/// after each source family's own. `fwd` is over the source coordinates
/// followed by the extras; extra domains refer to the same indices. `inv`
/// recovers source coordinates and then extras from target coordinates.
pub fn lift_into(
    target: &mut SolutionSet,
    sub: &SolutionSet,
    extra: &[(String, ParamDomain)],
    fwd: &[Expr],
    inv: Option<&[Expr]>,
) {
    let m = sub.equation.nvars();
    let lift = |subs_coords: Vec<Expr>, mut params: Vec<(String, ParamDomain)>, witness: Option<Vec<Expr>>| {
        let np = params.len();
        let mut subs = subs_coords;
        subs.extend((0..extra.len()).map(|j| param(np + j)));
        for (name, dom) in extra {
            let dom = match dom {
                ParamDomain::DivisorSet { k, of } => {
                    ParamDomain::DivisorSet { k: *k, of: of.iter().map(|e| e.subst(&subs)).collect() }
                }
                d => d.clone(),
            };
            params.push((name.clone(), dom));
        }
        let exprs: Vec<Expr> = fwd.iter().map(|e| e.subst(&subs)).collect();
        let fam = SolutionFamily::new(params, exprs);
        match witness {
            Some(w) => fam.with_witness(w),
            None => fam,
        }
    };
    for x in &sub.finite {
        let coords: Vec<Expr> = x.iter().map(|v| Expr::Int(v.clone())).collect();
        let w = inv.map(|inv| inv[m..].to_vec());
        target.push_family(lift(coords, vec![], w));
    }
    for f in &sub.families {
        let w = match (&f.witness, inv) {
            (Witness::Explicit(w), Some(inv)) => {
                let mut v: Vec<Expr> = w.iter().map(|e| e.subst(&inv[..m])).collect();
                v.extend(inv[m..].iter().cloned());
                Some(v)
            }
            _ => None,
        };
        target.push_family(lift(f.exprs.clone(), f.params.clone(), w));
    }
    target.weaken(sub.status.clone());
    for p in &sub.provenance {
        target.cite(p);
    }
    target.trace.extend(sub.trace.iter().cloned());
}

/// Coordinates of an n-variable set with x_i = 0 inserted into a set over the other n-1.
pub fn zero_lift_maps(n: usize, i: usize) -> (Vec<Expr>, Vec<Expr>) {
    let fwd = (0..n)
        .map(|k| match k.cmp(&i) {
            std::cmp::Ordering::Less => param(k),
            std::cmp::Ordering::Equal => int(0),
            std::cmp::Ordering::Greater => param(k - 1),
        })
        .collect();
    let inv = (0..n).filter(|&k| k != i).map(param).collect();
    (fwd, inv)
}

/// Small deterministic assignments; returns a point that is not a solution.
pub fn family_counterexample(f: &SolutionFamily, eq: &Poly, tries: usize) -> Option<Vec<BigInt>> {
    let vals: [i64; 7] = [1, -1, 2, -2, 3, 5, -7];
    let n = f.params.len();
    let mut done = 0;
    let mut seed = 0usize;
    while done < tries && seed < tries * 40 {
        let mut assign: Vec<BigInt> = Vec::with_capacity(n);
        let mut ok = true;
        for (i, (_, dom)) in f.params.iter().enumerate() {
            let pick = vals[(seed / 7usize.pow(i as u32 % 4) + i) % 7];
            let v = match dom {
                ParamDomain::AllIntegers => BigInt::from(pick),
                ParamDomain::FiniteSet(s) => s[(seed + i) % s.len()].clone(),
                ParamDomain::DivisorSet { k, .. } => {
                    match dom.divisor_target(&assign) {
                        Ok(m) if m.is_zero() => BigInt::from(pick),
                        Ok(m) => {
                            let ds = divisors_k(&m, *k).unwrap();
                            ds[(seed + i) % ds.len()].clone()
                        }
                        Err(_) => {
                            ok = false;
                            BigInt::zero()
                        }
                    }
                }
            };
            assign.push(v);
        }
        seed += 1;
        if !ok {
            continue;
        }
        if let Ok(x) = evaluate(f, &assign) {
            done += 1;
            if !eq.is_solution(&x) {
                return Some(x);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvertResult {
    Found(Vec<BigInt>),
    NotMember,
    Unavailable,
}

/// Find parameters regenerating x, by the explicit witness or by solving
/// coordinates one parameter at a time.
pub fn invert(f: &SolutionFamily, x: &[BigInt]) -> InvertResult {
    if let Witness::Explicit(ws) = &f.witness {
        let mut vals = Vec::new();
        for w in ws {
            match w.eval(x) {
                Ok(v) => vals.push(v),
                Err(_) => return InvertResult::NotMember,
            }
        }
        return match evaluate(f, &vals) {
            Ok(y) if y == x => InvertResult::Found(vals),
            _ => InvertResult::NotMember,
        };
    }
    let mut assigned: Vec<Option<BigInt>> = vec![None; f.params.len()];
    let used: Vec<BTreeSet<usize>> = f.exprs.iter().map(|e| e.params()).collect();
    let mut budget = 20_000usize;
    invert_rec(f, x, &used, &mut assigned, &mut budget)
}

fn invert_rec(
    f: &SolutionFamily,
    x: &[BigInt],
    used: &[BTreeSet<usize>],
    assigned: &mut Vec<Option<BigInt>>,
    budget: &mut usize,
) -> InvertResult {
    if *budget == 0 {
        return InvertResult::Unavailable;
    }
    *budget -= 1;
    let np = f.params.len();
    if assigned.iter().all(|a| a.is_some()) {
        let vals: Vec<BigInt> = assigned.iter().map(|a| a.clone().unwrap()).collect();
        return match evaluate(f, &vals) {
            Ok(y) if y == x => InvertResult::Found(vals),
            _ => InvertResult::NotMember,
        };
    }
    // unused parameters: any domain member
    for j in 0..np {
        if assigned[j].is_none() && !used.iter().any(|u| u.contains(&j)) && !later_domains_use(f, j) {
            let earlier: Vec<BigInt> = assigned[..j].iter().map(|a| a.clone().unwrap_or_default()).collect();
            let cand = [BigInt::zero(), BigInt::one(), BigInt::from(-1)];
            for c in cand {
                if f.params[j].1.contains(&c, &earlier).unwrap_or(false) {
                    assigned[j] = Some(c);
                    let r = invert_rec(f, x, used, assigned, budget);
                    assigned[j] = None;
                    return r;
                }
            }
        }
    }
    for (i, u) in used.iter().enumerate() {
        let open: Vec<usize> = u.iter().copied().filter(|j| assigned[*j].is_none()).collect();
        if open.len() != 1 {
            continue;
        }
        let j = open[0];
        let Some(p) = f.exprs[i].to_upoly(j, assigned) else { continue };
        let p = upoly_trim(p);
        if p.len() < 2 {
            continue;
        }
        let mut q = p.clone();
        q[0] -= BigRational::from_integer(x[i].clone());
        let coeffs = clear_denominators(&q);
        let roots = crate::intcore::integer_roots(&coeffs);
        let mut unavailable = false;
        for r in roots {
            assigned[j] = Some(r);
            match invert_rec(f, x, used, assigned, budget) {
                InvertResult::Found(v) => {
                    assigned[j] = None;
                    return InvertResult::Found(v);
                }
                InvertResult::Unavailable => unavailable = true,
                InvertResult::NotMember => {}
            }
        }
        assigned[j] = None;
        return if unavailable { InvertResult::Unavailable } else { InvertResult::NotMember };
    }
    // recurrence index: the orbit leaves any box, so scan until it has
    for j in 0..np {
        if assigned[j].is_some() || assigned[..j].iter().any(|a| a.is_none()) {
            continue;
        }
        let earlier: Vec<BigInt> = assigned[..j].iter().map(|a| a.clone().unwrap()).collect();
        let top = x.iter().map(|v| v.abs()).max().unwrap_or_default();
        let Some(top) = top.to_u64() else { continue };
        let Some(ks) = pell_range(f, j, &earlier, top) else { continue };
        let mut unavailable = false;
        for k in ks {
            assigned[j] = Some(k);
            match invert_rec(f, x, used, assigned, budget) {
                InvertResult::Found(v) => {
                    assigned[j] = None;
                    return InvertResult::Found(v);
                }
                InvertResult::Unavailable => unavailable = true,
                InvertResult::NotMember => {}
            }
        }
        assigned[j] = None;
        return if unavailable { InvertResult::Unavailable } else { InvertResult::NotMember };
    }
    // finite or divisor-constrained parameter whose earlier parameters are known
    for j in 0..np {
        if assigned[j].is_some() || assigned[..j].iter().any(|a| a.is_none()) {
            continue;
        }
        let earlier: Vec<BigInt> = assigned[..j].iter().map(|a| a.clone().unwrap()).collect();
        let cands: Vec<BigInt> = match &f.params[j].1 {
            ParamDomain::FiniteSet(v) => v.clone(),
            d @ ParamDomain::DivisorSet { k, .. } => match d.divisor_target(&earlier) {
                Ok(m) if !m.is_zero() => divisors_k(&m, *k).unwrap(),
                _ => continue,
            },
            ParamDomain::AllIntegers => continue,
        };
        let mut unavailable = false;
        for c in cands {
            assigned[j] = Some(c);
            match invert_rec(f, x, used, assigned, budget) {
                InvertResult::Found(v) => {
                    assigned[j] = None;
                    return InvertResult::Found(v);
                }
                InvertResult::Unavailable => unavailable = true,
                InvertResult::NotMember => {}
            }
        }
        assigned[j] = None;
        return if unavailable { InvertResult::Unavailable } else { InvertResult::NotMember };
    }
    InvertResult::Unavailable
}

fn later_domains_use(f: &SolutionFamily, j: usize) -> bool {
    f.params.iter().any(|(_, d)| match d {
        ParamDomain::DivisorSet { of, .. } => of.iter().any(|e| e.params().contains(&j)),
        _ => false,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoxListing {
    pub points: Vec<Vec<BigInt>>,
    /// Some family was swept without a completeness argument.
    pub heuristic: bool,
}

const SWEEP_CAP: usize = 4_000_000;

/// All points of the set inside [-B, B]^n.
pub fn enumerate_box(set: &SolutionSet, b: u64) -> BoxListing {
    let bb = BigInt::from(b);
    let in_box = |x: &[BigInt]| x.iter().all(|v| v.abs() <= bb);
    let mut pts: BTreeSet<Vec<BigInt>> = set.finite.iter().filter(|x| in_box(x)).cloned().collect();
    let mut heuristic = false;
    let mut oracle_pts: Option<Vec<Vec<BigInt>>> = None;
    let oracle_ok = oracle::box_is_feasible(set.equation.nvars(), b);
    for f in &set.families {
        let (mut found, complete) = sweep_family_inner(f, b, oracle_ok);
        if complete {
            pts.extend(found.into_iter().filter(|x| in_box(x)));
            continue;
        }
        // membership of oracle points via the witness
        if oracle_pts.is_none() && oracle_ok {
            oracle_pts = Some(oracle::brute_force(&set.equation, b).map(|r| r.solutions).unwrap_or_default());
        }
        match &oracle_pts {
            Some(op) => {
                let mut all_decided = true;
                let mut members = Vec::new();
                for x in op {
                    if pts.contains(x) {
                        continue;
                    }
                    match invert(f, x) {
                        InvertResult::Found(_) => members.push(x.clone()),
                        InvertResult::NotMember => {}
                        InvertResult::Unavailable => all_decided = false,
                    }
                }
                pts.extend(members);
                if !all_decided {
                    heuristic = true;
                    found = sweep_family(f, b).0;
                    pts.extend(found.into_iter().filter(|x| in_box(x)));
                }
            }
            None => {
                heuristic = true;
                pts.extend(found.into_iter().filter(|x| in_box(x)));
            }
        }
    }
    BoxListing { points: pts.into_iter().collect(), heuristic }
}

/// Sweep a family's parameters within bounds derived from the box.
/// Returns the points and whether the bounds were all justified.
pub fn sweep_family(f: &SolutionFamily, b: u64) -> (Vec<Vec<BigInt>>, bool) {
    sweep_family_inner(f, b, false)
}

fn sweep_family_inner(f: &SolutionFamily, b: u64, stop_early: bool) -> (Vec<Vec<BigInt>>, bool) {
    let used: Vec<BTreeSet<usize>> = f.exprs.iter().map(|e| e.params()).collect();
    let mut out = Vec::new();
    let mut complete = true;
    let mut assigned: Vec<BigInt> = Vec::new();
    let mut count = 0usize;
    sweep_rec(f, b, &used, &mut assigned, &mut out, &mut complete, &mut count, stop_early);
    if count >= SWEEP_CAP {
        complete = false;
    }
    (out, complete)
}

fn sweep_rec(
    f: &SolutionFamily,
    b: u64,
    used: &[BTreeSet<usize>],
    assigned: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    complete: &mut bool,
    count: &mut usize,
    stop_early: bool,
) {
    if *count >= SWEEP_CAP || (stop_early && !*complete) {
        return;
    }
    let j = assigned.len();
    if j == f.params.len() {
        *count += 1;
        if let Ok(x) = f.exprs.iter().map(|e| e.eval(assigned)).collect::<Result<Vec<_>, _>>() {
            out.push(x);
        }
        return;
    }
    let dom = &f.params[j].1;
    let cands: Vec<BigInt> = match dom {
        ParamDomain::FiniteSet(v) => v.clone(),
        ParamDomain::DivisorSet { k, .. } => match dom.divisor_target(assigned) {
            Ok(m) if !m.is_zero() => divisors_k(&m, *k).unwrap(),
            Ok(_) => unbounded_candidates(f, b, used, assigned, complete)
                .into_iter()
                .filter(|v| !v.is_zero())
                .collect(),
            Err(_) => vec![],
        },
        ParamDomain::AllIntegers => unbounded_candidates(f, b, used, assigned, complete),
    };
    for c in cands {
        assigned.push(c);
        sweep_rec(f, b, used, assigned, out, complete, count, stop_early);
        assigned.pop();
    }
}

fn unbounded_candidates(
    f: &SolutionFamily,
    b: u64,
    used: &[BTreeSet<usize>],
    assigned: &[BigInt],
    complete: &mut bool,
) -> Vec<BigInt> {
    let j = assigned.len();
    let fixed: Vec<Option<BigInt>> = assigned.iter().cloned().map(Some).collect();
    let mut best: Option<BigInt> = None;
    for (i, u) in used.iter().enumerate() {
        if !u.contains(&j) || u.iter().any(|&k| k > j) {
            continue;
        }
        if f.exprs[i].contains_pell() {
            continue;
        }
        let Some(p) = f.exprs[i].to_upoly(j, &fixed) else { continue };
        let p = upoly_trim(p);
        if p.len() < 2 {
            continue;
        }
        // |p(t)| ≤ B forces |t| below the Cauchy bound of p(t) - c for all |c| ≤ B
        let l = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let lead = ints.last().unwrap().abs();
        let mut m = &ints[0].abs() + &l * BigInt::from(b);
        for c in &ints[1..ints.len() - 1] {
            m = m.max(c.abs());
        }
        let r = BigInt::one() + m / lead;
        best = Some(match best {
            Some(x) if x <= r => x,
            _ => r,
        });
    }
    if let Some(r) = best {
        let r = r.to_i64().unwrap_or(i64::MAX).min(b as i64 * 4 + 64);
        return (-r..=r).map(BigInt::from).collect();
    }
    if let Some(r) = pell_range(f, j, assigned, b) {
        return r;
    }
    *complete = false;
    let r = b as i64;
    (-r..=r).map(BigInt::from).collect()
}

/// Indices k where a recurrence family can still be inside the box.
fn pell_range(f: &SolutionFamily, j: usize, assigned: &[BigInt], b: u64) -> Option<Vec<BigInt>> {
    let mut pells = Vec::new();
    for e in &f.exprs {
        collect_pell(e, &mut pells);
    }
    let relevant: Vec<&Expr> = pells
        .into_iter()
        .filter(|p| matches!(p, Expr::Pell { index, .. } if matches!(**index, Expr::Param(k) if k == j)))
        .collect();
    if relevant.is_empty() {
        return None;
    }
    let bb = BigInt::from(b);
    let mut ks = Vec::new();
    for dir in [1i64, -1] {
        let mut outside = 0;
        let mut k = if dir == 1 { 0 } else { -1 };
        while outside < 6 && k.abs() < 10_000 {
            let mut vals: Vec<BigInt> = assigned.to_vec();
            vals.push(BigInt::from(k));
            let big = relevant.iter().all(|p| match p {
                Expr::Pell { mat, init, .. } => {
                    let v = pell_step(mat, init, k);
                    v[0].abs() > bb && v[1].abs() > bb
                }
                _ => true,
            });
            ks.push(BigInt::from(k));
            if big {
                outside += 1;
            } else {
                outside = 0;
            }
            k += dir;
        }
    }
    ks.sort();
    Some(ks)
}

fn collect_pell<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    match e {
        Expr::Pell { .. } => out.push(e),
        Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| collect_pell(x, out)),
        Expr::Neg(x) | Expr::Pow(x, _) => collect_pell(x, out),
        Expr::Div(a, b) => {
            collect_pell(a, out);
            collect_pell(b, out);
        }
        _ => {}
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub sound: bool,
    pub complete_in_box: bool,
    pub missing: Vec<Vec<BigInt>>,
    pub spurious: Vec<Vec<BigInt>>,
    pub heuristic: bool,
}

pub fn verify_against_oracle(set: &SolutionSet, equation: &Poly, b: u64) -> VerifyReport {
    let run = oracle::brute_force(equation, b).expect("oracle box too large");
    oracle::compare(set, &run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqparse::parse_equation;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn yzt_family() -> SolutionFamily {
        // (u1, u2, u3, (u1^2+1)/(u2 u3))
        let s = param(0).pow(2).add(int(1));
        SolutionFamily::new(
            vec![
                ("u1".into(), ParamDomain::AllIntegers),
                ("u2".into(), ParamDomain::DivisorSet { k: 1, of: vec![s.clone()] }),
                ("u3".into(), ParamDomain::DivisorSet { k: 1, of: vec![s.clone().div(param(1))] }),
            ],
            vec![param(0), param(1), param(2), s.div(param(1).mul(param(2)))],
        )
    }

    #[test]
    fn evaluate_examples() {
        let f = yzt_family();
        assert_eq!(evaluate(&f, &[b(2), b(5), b(1)]).unwrap(), vec![b(2), b(5), b(1), b(1)]);
        assert!(matches!(evaluate(&f, &[b(2), b(3), b(1)]), Err(EvalError::Domain(_))));
        let w = param(0);
        let t2 = SolutionFamily::new(
            vec![("w".into(), ParamDomain::AllIntegers)],
            vec![
                w.clone().pow(2).mul(int(1).add(w.clone())).neg(),
                w.clone().pow(3).mul(int(1).add(w.clone())).neg(),
            ],
        );
        assert_eq!(evaluate(&t2, &[b(1)]).unwrap(), vec![b(-2), b(-2)]);
    }

    #[test]
    fn status_weakest() {
        assert_eq!(Status::weakest(&Status::Complete, &Status::SearchedToBound(10)), Status::SearchedToBound(10));
        assert_eq!(
            Status::weakest(&Status::SearchedToBound(5), &Status::SearchedToBound(10)),
            Status::SearchedToBound(5)
        );
        assert_eq!(Status::weakest(&Status::ReducedOnly, &Status::SearchedToBound(10)), Status::ReducedOnly);
        assert_eq!(Status::weakest(&Status::Unknown, &Status::Complete), Status::Unknown);
    }

    #[test]
    #[should_panic]
    fn bad_point_rejected() {
        let mut s = SolutionSet::new(parse_equation("x + y").unwrap());
        s.push_point(vec![b(1), b(1)]);
    }

    #[test]
    fn invert_generic() {
        let f = yzt_family();
        let x = vec![b(3), b(2), b(5), b(1)];
        assert_eq!(invert(&f, &x), InvertResult::Found(vec![b(3), b(2), b(5)]));
        assert_eq!(invert(&f, &[b(3), b(2), b(5), b(2)]), InvertResult::NotMember);
    }

    #[test]
    fn box_listing_of_family() {
        let eq = parse_equation("y*z*t = x^2 + 1").unwrap();
        // variables in order y, z, t, x
        let s = param(0).pow(2).add(int(1));
        let f = SolutionFamily::new(
            vec![
                ("u1".into(), ParamDomain::AllIntegers),
                ("u2".into(), ParamDomain::DivisorSet { k: 1, of: vec![s.clone()] }),
                ("u3".into(), ParamDomain::DivisorSet { k: 1, of: vec![s.clone().div(param(1))] }),
            ],
            vec![param(1), param(2), s.div(param(1).mul(param(2))), param(0)],
        );
        let mut set = SolutionSet::new(eq.clone());
        set.push_family(f);
        let listing = enumerate_box(&set, 6);
        assert!(!listing.heuristic);
        let run = oracle::brute_force(&eq, 6).unwrap();
        assert_eq!(listing.points, run.solutions);
    }

    #[test]
    fn expr_display() {
        let names = vec!["w".to_string()];
        let e = param(0).pow(2).mul(int(1).add(param(0))).neg();
        assert_eq!(e.display(&names), "-w^2*(w + 1)");
    }
}
