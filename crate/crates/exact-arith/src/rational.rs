//! Aliases and helpers for exact integers and rationals.
//!
//! `Rat` is always kept reduced with positive denominator (num_rational
//! maintains both invariants). Printing and parsing use the `a/b` form with
//! the `/b` suffix omitted for integers.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)` for unsigned arguments.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Rising factorial `(x)_n = x (x+1) ⋯ (x+n−1)` over the rationals.
pub fn pochhammer(x: &Rat, n: u64) -> Rat {
    let mut acc = Rat::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc *= &t;
        t += Rat::one();
    }
    acc
}

/// `base^exp` for integer base.
pub fn int_pow(base: &Int, exp: u32) -> Int {
    base.pow(exp)
}

/// `q^exp` for a rational base and signed exponent.
pub fn rat_pow(q: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc *= q;
        }
        acc
    } else {
        rat_pow(q, -exp).recip()
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_ord_p(n: &Int, p: &Int) -> u32 {
    assert!(!n.is_zero(), "ord_p of zero");
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = num::Integer::div_rem(&m, p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational (negative for denominators).
pub fn rat_ord_p(q: &Rat, p: &Int) -> i64 {
    assert!(!q.is_zero(), "ord_p of zero");
    int_ord_p(q.numer(), p) as i64 - int_ord_p(q.denom(), p) as i64
}

/// Exact square root of a perfect-square integer, if one exists.
pub fn int_sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Canonical `a/b` rendering (integers print without the `/1`).
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse the `a/b` form accepted by matrix files and the CLI.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).ok()?;
            let d = Int::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(Int::from_str(s).ok()?)),
    }
}

/// Floor of a rational as an integer.
pub fn rat_floor(q: &Rat) -> Int {
    q.floor().to_integer()
}

pub fn sign_i32(n: &Int) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_and_binomial_small() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(6), int(720));
        assert_eq!(binomial(10, 3), int(120));
        assert_eq!(binomial(3, 7), int(0));
    }

    #[test]
    fn pochhammer_half_integer() {
        // (1/2)_3 = 1/2 · 3/2 · 5/2 = 15/8
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&rat(-3, 2), 0), rat(1, 1));
    }

    #[test]
    fn ord_p_and_parse_roundtrip() {
        assert_eq!(int_ord_p(&int(48), &int(2)), 4);
        assert_eq!(rat_ord_p(&rat(4, 27), &int(3)), -3);
        let q = rat(-355, 113);
        assert_eq!(rat_from_str(&rat_to_string(&q)).unwrap(), q);
        assert_eq!(rat_from_str("7").unwrap(), rat_int(7));
        assert!(rat_from_str("1/0").is_none());
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(int_sqrt_exact(&int(144)), Some(int(12)));
        assert_eq!(int_sqrt_exact(&int(51349)), None);
        assert_eq!(int_sqrt_exact(&int(-4)), None);
    }
}
