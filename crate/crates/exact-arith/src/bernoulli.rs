//! Bernoulli numbers three ways: exact rationals (recurrence), Bernoulli
//! polynomials, and a mod-p sweep of all even indices 2..=p−3 computed by
//! power-series inversion of (e^x − 1)/x over F_p. The sweep is O(p²) word
//! operations with lazy-reduced accumulators, not O(p²) rational operations,
//! which is what makes irregularity scans at p ≈ 7·10^4 feasible.
//!
//! Convention: B₁ = −1/2 (the generating function x/(e^x − 1)).

use crate::rational::{binomial, Int, Rat};
use crate::{ArithError, Exec, Result};
use num::{BigUint, One, Zero};
use std::collections::BTreeMap;

/// B_0..=B_n as exact rationals, by the defining recurrence
/// Σ_{j=0}^{n} C(n+1, j)·B_j = 0.
pub fn bernoulli_upto(n: u64) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n as usize + 1);
    b.push(Rat::one());
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(Rat::zero());
            continue;
        }
        let mut s = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                s += Rat::from_integer(binomial(m + 1, j as u64)) * bj;
            }
        }
        b.push(-s / Rat::from_integer(Int::from(m + 1)));
    }
    b
}

/// The n-th Bernoulli number B_n.
pub fn bernoulli(n: u64) -> Rat {
    bernoulli_upto(n).pop().unwrap()
}

/// Bernoulli polynomial value B_n(x) = Σ_k C(n,k)·B_k·x^{n−k}.
pub fn bernoulli_poly(n: u64, x: &Rat) -> Rat {
    let b = bernoulli_upto(n);
    let mut acc = Rat::zero();
    // Horner in x over k = 0..=n: acc = ((B_0·C)·x + …).
    for k in 0..=n {
        acc = acc * x + Rat::from_integer(binomial(n, k)) * &b[k as usize];
    }
    acc
}

/// ζ(s) at s = 0 or negative integers, via ζ(−m) = −B_{m+1}/(m+1).
///
/// Negative even arguments are the trivial zeros; asking for one is always a
/// bug in a divisibility argument, so it is an error rather than `0`.
pub fn zeta_negative(s: i64) -> Result<Rat> {
    if s > 0 {
        return Err(ArithError::Domain(format!(
            "zeta_negative is defined for s <= 0 only, got s = {s}"
        )));
    }
    if s < 0 && s % 2 == 0 {
        return Err(ArithError::ZetaTrivialZero(s));
    }
    if s == 0 {
        // ζ(0) = −B₁(1) = −1/2; the generating-function B₁ = −1/2 has the
        // opposite sign, so this is the one case the formula below misses.
        return Ok(Rat::new(Int::from(-1), Int::from(2)));
    }
    let m = (-s) as u64;
    Ok(-bernoulli(m + 1) / Rat::from_integer(Int::from(m + 1)))
}

#[inline]
fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

#[inline]
fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn int_mod_u64(x: &Int, p: u64) -> u64 {
    use num::Integer;
    let r = x.mod_floor(&Int::from(p));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

/// Reduce an exact rational mod p; `None` if p divides the denominator.
pub fn rat_mod_p(r: &Rat, p: u64) -> Option<u64> {
    let den = int_mod_u64(r.denom(), p);
    if den == 0 {
        return None;
    }
    let num = int_mod_u64(r.numer(), p);
    Some(((num as u128 * invmod(den, p) as u128) % p as u128) as u64)
}

/// All B_k mod p for even k in 2..=p−3, with the default execution mode.
pub fn bernoulli_mod_p(p: u64) -> Result<BTreeMap<u64, u64>> {
    bernoulli_mod_p_with(p, Exec::default())
}

/// All B_k mod p for even k in 2..=p−3.
///
/// Strategy: with f(x) = (e^x−1)/x = Σ x^j/(j+1)! and g = 1/f mod x^{p−2},
/// B_n ≡ n!·g_n (mod p). The denominators (j+1)! with j+1 ≤ p−2 are units,
/// and von Staudt–Clausen guarantees p never divides the denominator of B_k
/// for k ≤ p−3. The inversion is the sequential recurrence
/// g_n = −Σ_{j=1}^{n} f_j·g_{n−j}; in `Parallel` mode each dot product is a
/// rayon reduction, which changes nothing about the result.
pub fn bernoulli_mod_p_with(p: u64, exec: Exec) -> Result<BTreeMap<u64, u64>> {
    if !crate::factor::is_probable_prime(&BigUint::from(p)) {
        return Err(ArithError::Domain(format!("bernoulli_mod_p requires a prime modulus, got {p}")));
    }
    if p >= 1 << 32 {
        return Err(ArithError::Domain(format!("modulus {p} out of supported range (< 2^32)")));
    }
    let mut out = BTreeMap::new();
    if p < 5 {
        return Ok(out);
    }
    let len = (p - 2) as usize; // coefficients 0..=p−3

    // Factorials and inverse factorials mod p up to p−2.
    let mut fact = vec![1u64; len + 1];
    for i in 1..=len {
        fact[i] = ((fact[i - 1] as u128 * i as u128) % p as u128) as u64;
    }
    let mut inv_fact = vec![1u64; len + 1];
    inv_fact[len] = invmod(fact[len], p);
    for i in (1..=len).rev() {
        inv_fact[i - 1] = ((inv_fact[i] as u128 * i as u128) % p as u128) as u64;
    }

    // f_j = 1/(j+1)! for j = 0..=p−3 (f_0 = 1).
    let f: Vec<u64> = (0..len).map(|j| inv_fact[j + 1]).collect();

    let mut g = vec![0u64; len];
    g[0] = 1;
    for n in 1..len {
        // Terms f_j·g_{n−j} are < p² < 2^64; a u128 accumulator absorbs the
        // whole row without intermediate reductions.
        let dot = |range: std::ops::Range<usize>| -> u128 {
            let mut s: u128 = 0;
            for j in range {
                s += (f[j] * g[n - j]) as u128;
            }
            s
        };
        let sum: u128 = match exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel if n >= 4096 => {
                use rayon::prelude::*;
                let chunk = 2048;
                let nchunks = n.div_ceil(chunk);
                (0..nchunks)
                    .into_par_iter()
                    .map(|c| {
                        let start = 1 + c * chunk;
                        dot(start..(start + chunk).min(n + 1))
                    })
                    .sum()
            }
            _ => dot(1..n + 1),
        };
        g[n] = (p - (sum % p as u128) as u64) % p;
    }

    for k in (2..=p - 3).step_by(2) {
        let bk = ((fact[k as usize] as u128 * g[k as usize] as u128) % p as u128) as u64;
        out.insert(k, bk);
    }
    Ok(out)
}

/// Whether p is a regular prime: p divides no numerator of B_2, B_4, …, B_{p−3}.
pub fn is_regular_prime(p: u64) -> Result<bool> {
    if p == 2 || p == 3 {
        return Ok(true);
    }
    Ok(bernoulli_mod_p(p)?.values().all(|&v| v != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, rat_int};

    /// Independent oracle: Akiyama–Tanigawa transform, a different algorithm
    /// from the defining recurrence used by `bernoulli_upto`.
    fn bernoulli_at(n: u64) -> Rat {
        let n = n as usize;
        let mut a: Vec<Rat> = (0..=n).map(|j| rat(1, (j + 1) as i64)).collect();
        for m in 1..=n {
            for j in 0..=(n - m) {
                let d = a[j].clone() - &a[j + 1];
                a[j] = rat_int((j + 1) as i64) * d;
            }
        }
        // This transform produces B_n with B₁ = +1/2; flip to our convention.
        if n == 1 {
            -a[0].clone()
        } else {
            a[0].clone()
        }
    }

    #[test]
    fn exact_values_and_oracle_agreement() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(7), rat(0, 1));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for n in 0..=40 {
            assert_eq!(bernoulli(n), bernoulli_at(n), "B_{n} mismatch vs oracle");
        }
    }

    #[test]
    fn zeta_special_values() {
        assert_eq!(zeta_negative(0).unwrap(), rat(-1, 2));
        assert_eq!(zeta_negative(-9).unwrap(), rat(-1, 132));
        assert_eq!(zeta_negative(-11).unwrap(), rat(691, 32760));
        assert!(matches!(zeta_negative(-2), Err(ArithError::ZetaTrivialZero(-2))));
        assert!(matches!(zeta_negative(3), Err(ArithError::Domain(_))));
    }

    #[test]
    fn bernoulli_polynomial_identities() {
        let half = rat(1, 2);
        for n in [2u64, 4, 6, 10, 12] {
            // B_n(1/2) = (2^{1−n} − 1)·B_n
            let lhs = bernoulli_poly(n, &half);
            let scale = rat(1, 1 << (n - 1)) - rat(1, 1);
            assert_eq!(lhs, scale * bernoulli(n));
            // B_n(0) = B_n and B_n(1) = B_n for n ≥ 2
            assert_eq!(bernoulli_poly(n, &rat(0, 1)), bernoulli(n));
            assert_eq!(bernoulli_poly(n, &rat(1, 1)), bernoulli(n));
        }
        // B_1(1) = 1/2 = −B_1
        assert_eq!(bernoulli_poly(1, &rat(1, 1)), rat(1, 2));
    }

    #[test]
    fn mod_p_sweep_matches_exact_values() {
        let p = 53u64;
        let table = bernoulli_mod_p(p).unwrap();
        for k in (2..=50u64).step_by(2) {
            let exact = rat_mod_p(&bernoulli(k), p).unwrap();
            assert_eq!(table[&k], exact, "B_{k} mod {p}");
        }
    }

    #[test]
    fn irregularity_witnesses() {
        // 691 | numerator(B_12), 37 | numerator(B_32); 7 has no witness.
        assert_eq!(bernoulli_mod_p(691).unwrap()[&12], 0);
        assert_eq!(bernoulli_mod_p(37).unwrap()[&32], 0);
        assert!(bernoulli_mod_p(7).unwrap().values().all(|&v| v != 0));
        assert!(is_regular_prime(97).unwrap());
        assert!(!is_regular_prime(37).unwrap());
        assert!(!is_regular_prime(691).unwrap());
        assert!(is_regular_prime(2).unwrap());
        assert!(matches!(is_regular_prime(91), Err(ArithError::Domain(_))));
    }

    #[test]
    fn sequential_and_parallel_modes_agree() {
        let p = 4289u64;
        let seq = bernoulli_mod_p_with(p, Exec::Sequential).unwrap();
        let par = bernoulli_mod_p_with(p, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        // Spot-check one value against the exact rational.
        assert_eq!(seq[&100], rat_mod_p(&bernoulli(100), p).unwrap());
    }

    #[test]
    fn rat_mod_p_handles_negatives_and_denominators() {
        assert_eq!(rat_mod_p(&rat(-1, 2), 7).unwrap(), 3); // −1/2 ≡ 3 (mod 7)
        assert_eq!(rat_mod_p(&rat(691, 2730), 691).unwrap(), 0);
        assert_eq!(rat_mod_p(&Rat::new(int(1), int(7)), 7), None);
    }
}
