//! Integer and rational primitives: factorization, valuations, divisor sets,
//! exact roots, and univariate root finding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        v
    }

    pub fn primes(&self) -> Vec<BigInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }
}

/// Valuation with an explicit infinite tag for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitTag {
    AbMin,
    AcMin,
    BcMin,
    AllEqual,
}

const SMALL_PRIME_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SMALL_PRIME_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u32)
            .collect()
    })
}

pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for &p in &small_primes()[..50] {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    // first 13 primes are deterministic below 3.3e24; extra bases beyond that
    let bases: &[u32] = if n.bits() <= 81 {
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
    } else {
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]
    };
    'outer: for &a in bases {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, c: u64) -> Option<BigInt> {
    let one = BigInt::one();
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r: u64 = 1;
    let mut q = one.clone();
    let m: u64 = 128;
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if g > one {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}

fn split_large(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let s = n.sqrt();
    if &s * &s == n {
        split_large(s.clone(), out);
        split_large(s, out);
        return;
    }
    for c in 1u64.. {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split_large(d, out);
            split_large(other, out);
            return;
        }
    }
}

pub fn factorize(n: &BigInt) -> Factorization {
    assert!(!n.is_zero(), "factorize: zero has no factorization");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % &pb).is_zero() {
            let mut e = 0;
            while (&m % &pb).is_zero() {
                m /= &pb;
                e += 1;
            }
            factors.push((pb, e));
        }
    }
    if !m.is_one() {
        let mut rest = Vec::new();
        split_large(m, &mut rest);
        rest.sort();
        for p in rest {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    factors.sort();
    Factorization { sign, factors }
}

pub fn valuation(n: &BigInt, p: &BigInt) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let mut m = n.abs();
    let mut e = 0;
    while (&m % p).is_zero() {
        m /= p;
        e += 1;
    }
    Valuation::Finite(e)
}

/// v_p for nonzero n, as a plain integer.
pub fn vp(n: &BigInt, p: &BigInt) -> u32 {
    match valuation(n, p) {
        Valuation::Finite(e) => e,
        Valuation::Infinite => panic!("vp of zero"),
    }
}

pub fn valuation_split(a: &BigInt, b: &BigInt, c: &BigInt, p: &BigInt) -> (SplitTag, Valuation) {
    assert!((a + b + c).is_zero(), "valuation_split needs A+B+C=0");
    assert!(!(a.is_zero() && b.is_zero() && c.is_zero()));
    let va = valuation(a, p);
    let vb = valuation(b, p);
    let vc = valuation(c, p);
    if va == vb && vb == vc {
        return (SplitTag::AllEqual, va);
    }
    if va == vb && va < vc {
        (SplitTag::AbMin, va)
    } else if va == vc && va < vb {
        (SplitTag::AcMin, va)
    } else if vb == vc && vb < va {
        (SplitTag::BcMin, vb)
    } else {
        unreachable!("two smallest valuations of a zero-sum triple differ")
    }
}

/// Positive divisors of a nonzero integer, sorted.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let f = factorize(n);
    let mut divs = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IntError {
    #[error("D_k(0) is all of Z and cannot be listed")]
    ZeroDivisorSet,
    #[error("k must be positive")]
    ZeroK,
}

/// All z (both signs) with z^k dividing m, sorted.
pub fn divisors_k(m: &BigInt, k: u32) -> Result<Vec<BigInt>, IntError> {
    if m.is_zero() {
        return Err(IntError::ZeroDivisorSet);
    }
    if k == 0 {
        return Err(IntError::ZeroK);
    }
    let f = factorize(m);
    let mut out = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let top = e / k;
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=top {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    let mut all: Vec<BigInt> = out.iter().map(|d| -d).collect();
    all.extend(out);
    all.sort();
    Ok(all)
}

/// Exact integer k-th root (negative allowed for odd k).
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if k == 1 {
        return Some(n.clone());
    }
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn rational_root_d(r: &BigRational, d: u32) -> Option<BigRational> {
    assert!(!r.is_zero(), "rational_root_d of zero");
    let n = exact_root(r.numer(), d)?;
    let m = exact_root(r.denom(), d)?;
    Some(BigRational::new(n, m))
}

pub fn ratio(n: &BigInt, d: &BigInt) -> BigRational {
    BigRational::new(n.clone(), d.clone())
}

/// Σ c_i p^i q^(deg-i): numerator of P(p/q) scaled by q^deg.
fn eval_scaled(coeffs: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let deg = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    // Horner in homogeneous form: acc = acc*p + c_i*q^(deg-i), running from top
    for (j, c) in coeffs.iter().rev().enumerate() {
        if j == 0 {
            acc = c.clone();
        } else {
            qpow *= q;
            acc = acc * p + c * &qpow;
        }
    }
    let _ = deg;
    acc
}

/// Integer and rational roots of Σ coeffs[i] x^i. Integer roots are excluded
/// from the rational list.
pub fn solve_univariate(coeffs: &[BigInt]) -> (Vec<BigInt>, Vec<BigRational>) {
    let mut c: Vec<BigInt> = coeffs.to_vec();
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    assert!(!c.is_empty(), "solve_univariate: zero polynomial");
    let mut ints = Vec::new();
    let mut rats = Vec::new();
    let shift = c.iter().position(|x| !x.is_zero()).unwrap();
    if shift > 0 {
        ints.push(BigInt::zero());
        c.drain(..shift);
    }
    if c.len() == 1 {
        return (ints, rats);
    }
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let c: Vec<BigInt> = c.iter().map(|x| x / &g).collect();
    let low = c[0].clone();
    let high = c.last().unwrap().clone();
    if c.len() == 2 {
        // linear: c0 + c1 x
        let r = BigRational::new(-low, high);
        if r.is_integer() {
            ints.push(r.to_integer());
        } else {
            rats.push(r);
        }
        ints.sort();
        return (ints, rats);
    }
    let ps = positive_divisors(&low);
    let qs = positive_divisors(&high);
    for q in &qs {
        for p in &ps {
            if !p.gcd(q).is_one() {
                continue;
            }
            for p in [p.clone(), -p] {
                if eval_scaled(&c, &p, q).is_zero() {
                    if q.is_one() {
                        ints.push(p);
                    } else {
                        rats.push(BigRational::new(p, q.clone()));
                    }
                }
            }
        }
    }
    ints.sort();
    rats.sort();
    (ints, rats)
}

/// Integer roots only, skipping the denominator loop.
pub fn integer_roots(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = coeffs.to_vec();
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    assert!(!c.is_empty(), "integer_roots: zero polynomial");
    let mut out = Vec::new();
    let shift = c.iter().position(|x| !x.is_zero()).unwrap();
    if shift > 0 {
        out.push(BigInt::zero());
        c.drain(..shift);
    }
    if c.len() == 1 {
        return out;
    }
    if c.len() == 2 {
        let (q, r) = (-&c[0]).div_rem(&c[1]);
        if r.is_zero() {
            out.push(q);
        }
        out.sort();
        return out;
    }
    let bound = cauchy_bound(&c);
    let low = c[0].abs();
    let one = BigInt::one();
    if low.bits() <= 40 {
        let l = low.to_u64().unwrap();
        let lim = bound.to_u64().unwrap_or(u64::MAX);
        let mut d = 1u64;
        while d * d <= l && d <= lim {
            if l % d == 0 {
                for cand in [d, l / d] {
                    let cb = BigInt::from(cand);
                    if cb > bound {
                        continue;
                    }
                    for s in [cb.clone(), -cb] {
                        if eval_scaled(&c, &s, &one).is_zero() && !out.contains(&s) {
                            out.push(s);
                        }
                    }
                }
            }
            d += 1;
        }
    } else {
        for p in positive_divisors(&low) {
            if p > bound {
                break;
            }
            for s in [p.clone(), -p] {
                if eval_scaled(&c, &s, &one).is_zero() {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// 1 + max|c_i|/|c_d| (floor), bounding all complex roots.
pub fn cauchy_bound(c: &[BigInt]) -> BigInt {
    let lead = c.last().unwrap().abs();
    let m = c[..c.len() - 1].iter().map(|x| x.abs()).max().unwrap_or_default();
    BigInt::one() + m / lead + BigInt::one()
}

/// Smallest positive q* with q | q*^d.
pub fn root_cover(q: &BigInt, d: u32) -> BigInt {
    let f = factorize(q);
    let mut out = BigInt::one();
    for (p, e) in f.factors {
        let k = (e + d - 1) / d;
        out *= num_traits::pow(p, k as usize);
    }
    out
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn cmp_abs(a: &BigInt, b: &BigInt) -> Ordering {
    a.abs().cmp(&b.abs())
}

pub fn ipow(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

/// Positive tuples (d_1..d_k) with Π d_i^{e_i} = n (n > 0), e_i ≥ 1.
pub fn positive_power_tuples(n: &BigInt, e: &[u32]) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    power_tuples_rec(n, e, &mut cur, &mut out);
    out
}

fn power_tuples_rec(n: &BigInt, e: &[u32], cur: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    if e.is_empty() {
        if n.is_one() {
            out.push(cur.clone());
        }
        return;
    }
    if e.len() == 1 {
        if let Some(r) = exact_root(n, e[0]) {
            cur.push(r);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    for d in divisors_k(n, e[0]).unwrap() {
        if d.is_negative() {
            continue;
        }
        let rest = n / ipow(&d, e[0]);
        cur.push(d);
        power_tuples_rec(&rest, &e[1..], cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&b(12));
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(b(2), 2), (b(3), 1)]);
        let f = factorize(&b(-1));
        assert_eq!(f.sign, -1);
        assert!(f.factors.is_empty());
        let n = (BigInt::one() << 64) + 1;
        let f = factorize(&n);
        assert_eq!(
            f.factors,
            vec![(b(274177), 1), (BigInt::from(67280421310721u64), 1)]
        );
        assert_eq!(f.value(), n);
    }

    #[test]
    fn factorize_reconstructs() {
        for n in -2000i64..2000 {
            if n == 0 {
                continue;
            }
            let f = factorize(&b(n));
            assert_eq!(f.value(), b(n));
            for (p, _) in &f.factors {
                assert!(is_probable_prime(p));
            }
        }
        let big = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64) * b(-12);
        assert_eq!(factorize(&big).value(), big);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&b(12), &b(2)), Valuation::Finite(2));
        assert_eq!(valuation(&b(12), &b(5)), Valuation::Finite(0));
        assert_eq!(valuation(&b(-8), &b(2)), Valuation::Finite(3));
        assert_eq!(valuation(&b(0), &b(2)), Valuation::Infinite);
    }

    #[test]
    fn divisor_sets() {
        let d1: Vec<i64> = vec![-6, -3, -2, -1, 1, 2, 3, 6];
        assert_eq!(divisors_k(&b(6), 1).unwrap(), d1.into_iter().map(b).collect::<Vec<_>>());
        assert_eq!(divisors_k(&b(12), 2).unwrap(), vec![b(-2), b(-1), b(1), b(2)]);
        assert_eq!(divisors_k(&b(7), 3).unwrap(), vec![b(-1), b(1)]);
        assert_eq!(divisors_k(&b(0), 1), Err(IntError::ZeroDivisorSet));
    }

    #[test]
    fn divisor_sets_exhaustive() {
        for m in 1i64..=400 {
            for k in 1u32..=5 {
                for m in [m, -m] {
                    let got = divisors_k(&b(m), k).unwrap();
                    let want: Vec<BigInt> = (-m.abs()..=m.abs())
                        .filter(|&z| z != 0 && m % z.pow(k) == 0)
                        .map(b)
                        .collect();
                    assert_eq!(got, want, "m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn rational_roots() {
        let r = |n: i64, d: i64| BigRational::new(b(n), b(d));
        assert_eq!(rational_root_d(&r(9, 4), 2), Some(r(3, 2)));
        assert_eq!(rational_root_d(&r(8, 27), 3), Some(r(2, 3)));
        assert_eq!(rational_root_d(&r(2, 1), 2), None);
        assert_eq!(rational_root_d(&r(-8, 1), 3), Some(r(-2, 1)));
        assert_eq!(rational_root_d(&r(-4, 1), 2), None);
    }

    #[test]
    fn split_examples() {
        assert_eq!(valuation_split(&b(4), &b(-6), &b(2), &b(2)), (SplitTag::BcMin, Valuation::Finite(1)));
        assert_eq!(valuation_split(&b(1), &b(1), &b(-2), &b(2)), (SplitTag::AbMin, Valuation::Finite(0)));
        assert_eq!(valuation_split(&b(9), &b(-3), &b(-6), &b(3)), (SplitTag::BcMin, Valuation::Finite(1)));
    }

    #[test]
    fn univariate_examples() {
        let (i, r) = solve_univariate(&[b(2), b(-3), b(1)]);
        assert_eq!(i, vec![b(1), b(2)]);
        assert!(r.is_empty());
        let (i, r) = solve_univariate(&[b(-3), b(2)]);
        assert!(i.is_empty());
        assert_eq!(r, vec![BigRational::new(b(3), b(2))]);
        let (i, r) = solve_univariate(&[b(1), b(1), b(1)]);
        assert!(i.is_empty() && r.is_empty());
        let (i, _) = solve_univariate(&[b(0), b(0), b(-1), b(1)]);
        assert_eq!(i, vec![b(0), b(1)]);
        assert_eq!(integer_roots(&[b(-6), b(11), b(-6), b(1)]), vec![b(1), b(2), b(3)]);
    }

    #[test]
    fn root_cover_values() {
        assert_eq!(root_cover(&b(8), 2), b(4));
        assert_eq!(root_cover(&b(12), 2), b(6));
        assert_eq!(root_cover(&b(1), 3), b(1));
    }

    #[test]
    fn power_tuples() {
        let t = positive_power_tuples(&b(72), &[2, 3]);
        assert_eq!(t, vec![vec![b(3), b(2)]]);
    }
}
