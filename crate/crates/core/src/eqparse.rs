//! Parsing of polynomial equations and canonical three-monomial form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: BigInt,
    /// Exponents indexed by the owning polynomial's variable list.
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub vars: Vec<String>,
    pub terms: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expected a three-monomial equation, found {0} monomials")]
    NotTrinomial(usize),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '=' => {
                i += 1;
                Tok::Eq
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(text[start..i].parse().unwrap())
            }
            'a'..='z' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
                {
                    i += 1;
                }
                Tok::Var(text[start..i].to_string())
            }
            _ => {
                return Err(ParseError::Syntax { pos: start, msg: format!("unexpected character '{c}'") });
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: Vec<String>,
    order: Vec<Vec<(usize, u32)>>,
}

type Terms = BTreeMap<Vec<(usize, u32)>, BigInt>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.here(), msg: msg.to_string() })
    }

    fn var_index(&mut self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        }
    }

    fn poly(&mut self, sign: i32, acc: &mut Terms) -> Result<(), ParseError> {
        let mut s = sign;
        match self.peek() {
            Some(Tok::Minus) => {
                s = -s;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        self.term(s, acc)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    self.term(sign, acc)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    self.term(-sign, acc)?;
                }
                _ => return Ok(()),
            }
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                u32::try_from(n).or_else(|_| self.err("exponent too large"))
            }
            Some(Tok::Minus) => self.err("negative exponent"),
            _ => self.err("expected exponent"),
        }
    }

    fn term(&mut self, sign: i32, acc: &mut Terms) -> Result<(), ParseError> {
        let mut coeff = BigInt::from(sign);
        let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
        let mut nfactors = 0;
        loop {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let mut v = n;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        let e = self.uint()?;
                        v = num_traits::pow(v, e as usize);
                    }
                    coeff *= v;
                }
                Some(Tok::Var(name)) => {
                    self.pos += 1;
                    let idx = self.var_index(&name);
                    let mut e = 1;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        e = self.uint()?;
                    }
                    *exps.entry(idx).or_insert(0) += e;
                }
                _ => {
                    if nfactors == 0 {
                        return self.err("expected a term");
                    }
                    break;
                }
            }
            nfactors += 1;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                match self.peek() {
                    Some(Tok::Int(_)) | Some(Tok::Var(_)) => {}
                    _ => return self.err("expected a factor after '*'"),
                }
            }
        }
        let key: Vec<(usize, u32)> = exps.into_iter().filter(|(_, e)| *e > 0).collect();
        if !self.order.contains(&key) {
            self.order.push(key.clone());
        }
        *acc.entry(key).or_insert_with(BigInt::zero) += coeff;
        Ok(())
    }
}

pub fn parse_equation(text: &str) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), vars: Vec::new(), order: Vec::new() };
    let mut acc: Terms = BTreeMap::new();
    p.poly(1, &mut acc)?;
    if p.peek() == Some(&Tok::Eq) {
        p.pos += 1;
        p.poly(-1, &mut acc)?;
    }
    if p.pos != p.toks.len() {
        return p.err("unexpected token");
    }
    let n = p.vars.len();
    let mut terms: Vec<Monomial> = Vec::new();
    for key in &p.order {
        if let Some(c) = acc.get(key) {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; n];
            for (i, e) in key {
                exps[*i] = *e;
            }
            terms.push(Monomial { coeff: c.clone(), exps });
        }
    }
    Ok(Poly { vars: p.vars, terms })
}

impl Poly {
    pub fn from_terms(vars: &[&str], terms: Vec<(BigInt, Vec<u32>)>) -> Poly {
        Poly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: terms.into_iter().map(|(coeff, exps)| Monomial { coeff, exps }).collect(),
        }
        .normalized()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (xi, e) in x.iter().zip(&t.exps) {
                if *e > 0 {
                    v *= num_traits::pow(xi.clone(), *e as usize);
                }
            }
            s += v;
        }
        s
    }

    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        self.eval(x).is_zero()
    }

    /// Variables that occur with positive exponent somewhere.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.terms.iter().any(|t| t.exps[i] > 0)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exps.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Merge like monomials and drop zeros, keeping first-appearance order.
    pub fn normalized(&self) -> Poly {
        let mut terms: Vec<Monomial> = Vec::new();
        for t in &self.terms {
            if let Some(u) = terms.iter_mut().find(|u| u.exps == t.exps) {
                u.coeff += &t.coeff;
            } else {
                terms.push(t.clone());
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Poly { vars: self.vars.clone(), terms }
    }

    /// Substitute x_i = value and drop the variable.
    pub fn substitute(&self, i: usize, value: &BigInt) -> Poly {
        let mut vars = self.vars.clone();
        vars.remove(i);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exps = t.exps.clone();
                let e = exps.remove(i);
                Monomial { coeff: &t.coeff * num_traits::pow(value.clone(), e as usize), exps }
            })
            .collect();
        Poly { vars, terms }.normalized()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|t| Monomial { coeff: -&t.coeff, exps: t.exps.clone() }).collect(),
        }
    }
}

pub fn fmt_monomial(f: &mut impl fmt::Write, vars: &[String], exps: &[u32]) -> fmt::Result {
    let mut first = true;
    for (v, e) in vars.iter().zip(exps) {
        if *e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        if *e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 = 0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let a = t.coeff.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let constant = t.exps.iter().all(|e| *e == 0);
            if constant {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                fmt_monomial(f, &self.vars, &t.exps)?;
            }
        }
        f.write_str(" = 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trinomial {
    pub vars: Vec<String>,
    pub coeffs: [BigInt; 3],
    pub exps: [Vec<u32>; 3],
    /// Common monomial factor removed by canonicalization.
    pub cancelled: Vec<u32>,
}

impl Trinomial {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn to_poly(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: (0..3).map(|i| Monomial { coeff: self.coeffs[i].clone(), exps: self.exps[i].clone() }).collect(),
        }
    }

    /// The uncancelled polynomial.
    pub fn original_poly(&self) -> Poly {
        let mut p = self.to_poly();
        for t in &mut p.terms {
            for (e, c) in t.exps.iter_mut().zip(&self.cancelled) {
                *e += c;
            }
        }
        p
    }

    pub fn from_parts(vars: Vec<String>, coeffs: [BigInt; 3], exps: [Vec<u32>; 3]) -> Trinomial {
        let n = vars.len();
        Trinomial { vars, coeffs, exps, cancelled: vec![0; n] }
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

pub fn canonicalize(poly: &Poly) -> Result<Trinomial, ParseError> {
    let p = poly.normalized();
    if p.terms.len() != 3 {
        return Err(ParseError::NotTrinomial(p.terms.len()));
    }
    let n = p.vars.len();
    let cancelled: Vec<u32> = (0..n).map(|i| p.terms.iter().map(|t| t.exps[i]).min().unwrap()).collect();
    let mut coeffs: [BigInt; 3] = [p.terms[0].coeff.clone(), p.terms[1].coeff.clone(), p.terms[2].coeff.clone()];
    let exps: [Vec<u32>; 3] = std::array::from_fn(|k| {
        p.terms[k].exps.iter().zip(&cancelled).map(|(e, c)| e - c).collect()
    });
    if coeffs[0].is_negative() {
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
    }
    Ok(Trinomial { vars: p.vars.clone(), coeffs, exps, cancelled })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &Poly) -> Vec<i64> {
        p.terms.iter().map(|t| i64::try_from(t.coeff.clone()).unwrap()).collect()
    }

    #[test]
    fn parse_examples() {
        let p = parse_equation("x^4 + 2*x*y + y^3 = 0").unwrap();
        assert_eq!(p.vars, vec!["x", "y"]);
        assert_eq!(coeffs(&p), vec![1, 2, 1]);
        let p = parse_equation("x*y - z*t = 1").unwrap();
        assert_eq!(coeffs(&p), vec![1, -1, -1]);
        assert_eq!(p.terms[1].exps, vec![0, 0, 1, 1]);
        assert!(p.terms[2].exps.iter().all(|e| *e == 0));
        let p = parse_equation("x^2 + x^2 - y = y").unwrap();
        assert_eq!(coeffs(&p), vec![2, -2]);
        assert_eq!(p.to_string(), "2*x^2 - 2*y = 0");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_equation("x^-2 + y"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_equation("x + * y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_equation("x + Y"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_equation("x = y = z"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn implicit_product_and_unary_minus() {
        let p = parse_equation("-3x^2y + 2 x y").unwrap();
        assert_eq!(coeffs(&p), vec![-3, 2]);
        assert_eq!(p.terms[0].exps, vec![2, 1]);
        // ^ binds tighter than unary minus
        let p = parse_equation("-2^2*x").unwrap();
        assert_eq!(coeffs(&p), vec![-4]);
    }

    #[test]
    fn canonicalize_examples() {
        let t = canonicalize(&parse_equation("x^3*y + x*y^2 - x^2*y^3").unwrap()).unwrap();
        assert_eq!(t.cancelled, vec![1, 1]);
        assert_eq!(t.to_string(), "x^2 + y - x*y^2 = 0");
        let t = canonicalize(&parse_equation("x^4 + 2*x*y + y^3").unwrap()).unwrap();
        assert_eq!(t.cancelled, vec![0, 0]);
        assert_eq!(t.to_string(), "x^4 + 2*x*y + y^3 = 0");
        let t = canonicalize(&parse_equation("2*x^2 + 4*y - 6*z").unwrap()).unwrap();
        assert_eq!(t.coeffs, [BigInt::from(2), BigInt::from(4), BigInt::from(-6)]);
        let t = canonicalize(&parse_equation("-x + y + z").unwrap()).unwrap();
        assert_eq!(t.to_string(), "x - y - z = 0");
        assert_eq!(
            canonicalize(&parse_equation("x + y").unwrap()),
            Err(ParseError::NotTrinomial(2))
        );
    }

    #[test]
    fn canonicalize_idempotent() {
        let t = canonicalize(&parse_equation("x^3*y + x*y^2 - x^2*y^3").unwrap()).unwrap();
        let t2 = canonicalize(&t.to_poly()).unwrap();
        assert_eq!(t.coeffs, t2.coeffs);
        assert_eq!(t.exps, t2.exps);
        assert_eq!(t.original_poly().eval(&[BigInt::from(2), BigInt::from(3)]), {
            let p = parse_equation("x^3*y + x*y^2 - x^2*y^3").unwrap();
            p.eval(&[BigInt::from(2), BigInt::from(3)])
        });
    }
}
