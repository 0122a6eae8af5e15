//! Character-sum oracle for small Siegel series.
//!
//! This is an implementation of the *definition*, independent of the
//! overlattice machinery: truncate b_p(T, s) = Σ_R e_p(tr TR)·ν(R)^{-s} to
//! the symmetric matrices R = A/p^M with A ∈ Sym_n(ℤ/p^M).  Averaging each
//! unit-scaling orbit A ↦ uA turns the additive character into a Ramanujan
//! sum, so the exponential sum over a ν-level collapses to
//!
//!   Σ_A e_p(tr TA / p^M) = N₀ - N₁/(p-1),
//!
//! where N₀ counts A with tr(TA) ≡ 0 mod p^M and N₁ those with valuation
//! exactly M-1.  The denominator invariant is ν(A/p^M) = p^{Mn}/[ℤⁿ : L]
//! with L = Aℤⁿ + p^Mℤⁿ, computable from gcds of minors.  Equality of the
//! truncations at levels M and M+1 certifies that deeper denominators
//! contribute nothing, i.e. that the polynomial is the full sum; dividing by
//! the definitional γ-factor then recovers F_p(T, X).
//!
//! Only sizes 1 and 2 are supported — the state count p^{M·n(n+1)/2} is the
//! whole cost, and a work budget caps it.

use crate::half_integral::HalfIntegralMatrix;
use crate::quadric::pow_int;
use crate::series::{classical_from_coeffs, degree_invariants, SiegelSeriesPoly};
use crate::{Result, SiegelError};
use exact_arith::{is_prime_int, Int};
use num::{integer::gcd, One, ToPrimitive, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on the total number of enumerated symmetric matrices.
pub const DEFAULT_ORACLE_BUDGET: u64 = 600_000_000;

/// `local_density_oracle` with the default work budget.
pub fn local_density_oracle(
    t: &HalfIntegralMatrix,
    p: &Int,
    level: u32,
) -> Result<SiegelSeriesPoly> {
    local_density_oracle_with(t, p, level, DEFAULT_ORACLE_BUDGET)
}

/// Recover F_p(T, X) for T of size ≤ 2 from the truncated defining sum at
/// denominator levels `level` and `level + 1`, requiring stabilization.
pub fn local_density_oracle_with(
    t: &HalfIntegralMatrix,
    p: &Int,
    level: u32,
    budget: u64,
) -> Result<SiegelSeriesPoly> {
    let n = t.n();
    if n == 0 || n > 2 {
        return Err(SiegelError::UnsupportedSize(n));
    }
    if !is_prime_int(p) {
        return Err(SiegelError::InvalidPrime(p.to_string()));
    }
    if !t.is_nondegenerate() {
        return Err(SiegelError::Degenerate);
    }
    if level == 0 {
        return Err(SiegelError::Internal("oracle level must be at least 1".into()));
    }
    let sym_dim = (n * (n + 1) / 2) as u32;
    let states = |m: u32| -> Option<u128> {
        let base = p.to_u128()?;
        base.checked_pow(m.checked_mul(sym_dim)?)
    };
    let needed = match (states(level), states(level + 1)) {
        (Some(a), Some(b)) => a.saturating_add(b),
        _ => u128::MAX,
    };
    if needed > budget as u128 {
        return Err(SiegelError::BudgetExceeded { needed, budget: budget as u128 });
    }

    let p_i64 = p.to_i64().expect("prime fits i64 under any sane budget");
    let b_lo = b_poly(t, p_i64, level)?;
    let b_hi = b_poly(t, p_i64, level + 1)?;
    if !poly_eq(&b_lo, &b_hi) {
        return Err(SiegelError::Unstable(level));
    }

    // b = γ·F: multiply by the ξ-denominator of γ (size 2 only), then divide
    // exactly by (1-X)·∏(1-p^{2i}X²).
    let (_e, xi) = degree_invariants(t, p)?;
    let mut num = b_lo;
    if n == 2 {
        let c = Int::from(xi) * p;
        num = poly_mul(&num, &[Int::one(), -c]);
    }
    let mut den = vec![Int::one(), -Int::one()]; // (1 - X)
    for i in 1..=(n / 2) {
        den = poly_mul(&den, &[Int::one(), Int::zero(), -pow_int(p, 2 * i as u32)]);
    }
    let f = poly_divide_exact(&num, &den)?;
    classical_from_coeffs(p, f, n)
}

fn poly_eq(a: &[Int], b: &[Int]) -> bool {
    let zero = Int::zero();
    let len = a.len().max(b.len());
    (0..len).all(|i| a.get(i).unwrap_or(&zero) == b.get(i).unwrap_or(&zero))
}

fn poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division in ℤ[X] by a polynomial with constant term 1; errors if a
/// nonzero remainder appears.
fn poly_divide_exact(num: &[Int], den: &[Int]) -> Result<Vec<Int>> {
    assert!(den[0].is_one());
    let mut q = vec![Int::zero(); num.len()];
    for k in 0..num.len() {
        let mut acc = num[k].clone();
        for j in 1..den.len().min(k + 1) {
            acc -= &den[j] * &q[k - j];
        }
        q[k] = acc;
    }
    // The quotient of an exact division must have trailing zeros past its
    // true degree; anything else means the division was not exact.
    let mut deg = 0;
    for (i, c) in q.iter().enumerate() {
        if !c.is_zero() {
            deg = i;
        }
    }
    q.truncate(deg + 1);
    if poly_mul(&q, den) != {
        let mut n = num.to_vec();
        let mut d = n.len();
        while d > 1 && n[d - 1].is_zero() {
            d -= 1;
        }
        n.truncate(d);
        n
    } {
        return Err(SiegelError::Internal("character sum is not divisible by γ".into()));
    }
    Ok(q)
}

/// Per-level exponential-sum counters: (N₀, N₁) for each ν-exponent j.
type Counters = Vec<(u64, u64)>;

fn merge(mut a: Counters, b: Counters) -> Counters {
    for (x, y) in a.iter_mut().zip(b) {
        x.0 += y.0;
        x.1 += y.1;
    }
    a
}

/// The truncated character sum b_M(X) = Σ_j c_j X^j as an integer polynomial.
fn b_poly(t: &HalfIntegralMatrix, p: i64, m: u32) -> Result<Vec<Int>> {
    let n = t.n();
    let two_t = t.two_t();
    let s: Vec<Vec<i64>> = two_t
        .iter()
        .map(|row| row.iter().map(|e| e.to_i64().expect("oracle entries fit i64")).collect())
        .collect();
    let pm = p.checked_pow(m).ok_or(SiegelError::Internal("level overflow".into()))?;
    let jmax = m as usize * n;
    let counters = match n {
        1 => b_counters_rank1(s[0][0] / 2, p, m, pm, jmax),
        2 => b_counters_rank2(&s, p, m, pm, jmax),
        _ => unreachable!("size checked by the caller"),
    };
    // A coefficient of X^j is complete — i.e. every A with ν(A) = p^j has
    // been enumerated — exactly when j ≤ M, because such an A has entry
    // denominators dividing p^j.  Higher-index counters are partial sums;
    // discard them so that level-M and level-(M+1) runs are comparable.
    let mut coeffs = vec![Int::zero(); m as usize + 1];
    let pm1 = Int::from(p - 1);
    for (j, (n0, n1)) in counters.into_iter().enumerate().take(m as usize + 1) {
        let n1 = Int::from(n1);
        if !(&n1 % &pm1).is_zero() {
            return Err(SiegelError::Internal(
                "orbit count not divisible by p-1; the Ramanujan collapse failed".into(),
            ));
        }
        coeffs[j] = Int::from(n0) - n1 / &pm1;
    }
    Ok(coeffs)
}

fn classify(t_val: i64, p: i64, m: u32, pm: i64) -> Option<bool> {
    // Some(true) → contributes to N₀; Some(false) → to N₁.
    let r = t_val.rem_euclid(pm);
    if r == 0 {
        Some(true)
    } else if m >= 1 && r % (pm / p) == 0 {
        Some(false)
    } else {
        None
    }
}

fn b_counters_rank1(t11: i64, p: i64, m: u32, pm: i64, jmax: usize) -> Counters {
    let mut out = vec![(0u64, 0u64); jmax + 1];
    for a in 0..pm {
        // ν(a/p^M) = p^M / gcd(a, p^M).
        let g = gcd(a, pm);
        let j = m as usize - ord_p_i64(g, p) as usize;
        if let Some(zero) = classify(t11 * a, p, m, pm) {
            if zero {
                out[j].0 += 1;
            } else {
                out[j].1 += 1;
            }
        }
    }
    out
}

fn rank2_row(s: &[Vec<i64>], a: i64, p: i64, m: u32, pm: i64, jmax: usize) -> Counters {
    let mut out = vec![(0u64, 0u64); jmax + 1];
    let (s11, s12, s22) = (s[0][0] / 2, s[0][1], s[1][1] / 2);
    let p2m = pm * pm;
    for b in 0..pm {
        let det_ab = -b * b;
        let g_ab = gcd(a, b);
        let t_ab = s11 * a + s12 * b;
        for c in 0..pm {
            // tr(TA) for A = [[a,b],[b,c]].
            let t_val = t_ab + s22 * c;
            // [ℤ² : Aℤ² + p^Mℤ²] = gcd(det A, p^M·gcd(a,b,c), p^{2M}).
            let g1 = gcd(g_ab, c);
            let g2 = gcd(gcd(det_ab + a * c, pm * g1), p2m);
            let j = 2 * m as usize - ord_p_i64(g2, p) as usize;
            if let Some(zero) = classify(t_val, p, m, pm) {
                if zero {
                    out[j].0 += 1;
                } else {
                    out[j].1 += 1;
                }
            }
        }
    }
    out
}

#[cfg(feature = "parallel")]
fn b_counters_rank2(s: &[Vec<i64>], p: i64, m: u32, pm: i64, jmax: usize) -> Counters {
    (0..pm)
        .into_par_iter()
        .fold(
            || vec![(0u64, 0u64); jmax + 1],
            |acc, a| merge(acc, rank2_row(s, a, p, m, pm, jmax)),
        )
        .reduce(|| vec![(0u64, 0u64); jmax + 1], merge)
}

#[cfg(not(feature = "parallel"))]
fn b_counters_rank2(s: &[Vec<i64>], p: i64, m: u32, pm: i64, jmax: usize) -> Counters {
    (0..pm).fold(vec![(0u64, 0u64); jmax + 1], |acc, a| {
        merge(acc, rank2_row(s, a, p, m, pm, jmax))
    })
}

fn ord_p_i64(mut x: i64, p: i64) -> u32 {
    assert!(x != 0);
    x = x.abs();
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}
