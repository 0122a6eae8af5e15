//! Overlattice enumeration for the local character sum behind a Siegel
//! series.
//!
//! Grouping the defining sum b_p(T, s) = Σ_R e_p(tr TR)·ν(R)^{-s} by the
//! lattice W = RZⁿ + Zⁿ collapses the additive characters: each overlattice
//! W ⊇ Zⁿ of p-power index contributes σ(W)·[W valid]·X^{ind(W)} with
//! X = p^{-s}, where validity and σ depend only on the elementary-divisor
//! profile c₁ ≥ … ≥ c_n of W over Zⁿ and the Gram matrix of T in a basis
//! adapted to W:
//!
//!   valid(W)  ⟺  ord_p(T'_{ii}) ≥ c_i and ord_p(2T'_{ij}) ≥ min(c_i, c_j),
//!   σ(W) = p^{Σ_{i≤j} min(c_i, c_j)},
//!
//! with T' = R·T·ᵗR for the unimodular R whose rows scale to a basis of W.
//! Validity is inherited by sublattices (the character-triviality condition
//! shrinks with the lattice), so the valid overlattices form a downward-closed
//! family reachable by index-p extension steps; a breadth-first search over
//! such chains therefore enumerates every valid W of index ≤ p^deg.  The
//! resulting truncation of D(X) = Σ_W σ(W) X^{ind W} is all the series
//! routines need: D can be an infinite power series (split planes feed
//! arbitrarily deep valid chains), but F_p is a polynomial of known degree
//! and only finitely many coefficients of D enter it.

use crate::half_integral::HalfIntegralMatrix;
use crate::quadric::{for_each_projective_rep, pow_int};
use crate::{Result, SiegelError};
use exact_arith::rational::int_ord_p;
use exact_arith::{hnf_rows, smith_with_transforms, Int};
use num::{Integer, One, Zero};
use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// W = p^{-k}·rowspan(m), with m a full-rank integral row-HNF matrix and k
/// minimal (not every entry of m divisible by p unless k = 0).  The pair is
/// canonical for W, so it doubles as a dedup key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Overlattice {
    k: u32,
    m: Vec<Vec<Int>>,
}

impl Overlattice {
    fn standard(n: usize) -> Self {
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
        Overlattice { k: 0, m }
    }

    /// W + Z·(w/p) for w = x·m / p^k, given x over ℙ(W/pW) in row coordinates.
    fn extend(&self, x: &[Int], p: &Int) -> Self {
        let n = self.m.len();
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n + 1);
        for row in &self.m {
            rows.push(row.iter().map(|e| e * p).collect());
        }
        rows.push(row_times_matrix(x, &self.m));
        let mut m = hnf_rows(rows);
        assert_eq!(m.len(), n, "extension must stay full rank");
        let mut k = self.k + 1;
        while k > 0 && m.iter().all(|r| r.iter().all(|e| e.mod_floor(p).is_zero())) {
            for r in m.iter_mut() {
                for e in r.iter_mut() {
                    *e = &*e / p;
                }
            }
            k -= 1;
        }
        Overlattice { k, m }
    }
}

fn row_times_matrix(x: &[Int], m: &[Vec<Int>]) -> Vec<Int> {
    let n = m[0].len();
    let mut out = vec![Int::zero(); n];
    for (xi, row) in x.iter().zip(m.iter()) {
        if xi.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(row.iter()) {
            *o += xi * e;
        }
    }
    out
}

/// Necessary condition, cheap to test before the Smith form: the rank-one
/// sublattice Zⁿ + Z·(w/p) of the extension must itself be valid, which for
/// w = v/p^k reads ord_p(T[v]) ≥ k + 1 + ord_p(content v).
fn rank_one_prune(t: &HalfIntegralMatrix, v: &[Int], k: u32, p: &Int) -> bool {
    let content_ord = v
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| int_ord_p(e, p))
        .min()
        .expect("extension vector is nonzero");
    if (k + 1) as i64 - content_ord as i64 <= 0 {
        return true;
    }
    let val = t.quad_value(v);
    val.is_zero() || int_ord_p(&val, p) as i64 >= (k + 1 + content_ord) as i64
}

/// Row i of a · m for integer row lists.
fn gather_row(coefs: &[Int], m: &[Vec<Int>]) -> Vec<Int> {
    let n = m[0].len();
    let mut acc = vec![Int::zero(); n];
    for (coef, row) in coefs.iter().zip(m.iter()) {
        if coef.is_zero() {
            continue;
        }
        for (a, e) in acc.iter_mut().zip(row.iter()) {
            *a += coef * e;
        }
    }
    acc
}

/// Full validity check; returns σ(W) when W is valid.
///
/// Everything runs in integer arithmetic: the adapted unimodular basis r_i
/// (rows of v⁻¹) comes from the Smith form as d⁻¹·u·M by exact integer
/// division, and on it validity reads ord_p(T'_{ii}) ≥ c_i and
/// ord_p(2T'_{ij}) ≥ min(c_i, c_j) for T' the Gram matrix in that basis.
fn sigma_if_valid(t: &HalfIntegralMatrix, w: &Overlattice, p: &Int) -> Result<Option<Int>> {
    let n = w.m.len();
    let two_t = t.two_t();
    let (u, d, _v) = smith_with_transforms(&w.m);
    let mut c = Vec::with_capacity(n);
    let mut adapted: Vec<Vec<Int>> = Vec::with_capacity(n);
    for i in 0..n {
        let di = &d[i][i];
        let ord = int_ord_p(di, p);
        if pow_int(p, ord) != *di {
            return Err(SiegelError::Internal(
                "elementary divisor of a p-power lattice is not a p-power".into(),
            ));
        }
        c.push(w.k as i64 - ord as i64);
        let mut row = gather_row(&u[i], &w.m);
        for e in row.iter_mut() {
            let (q, r) = e.div_rem(di);
            if !r.is_zero() {
                return Err(SiegelError::Internal(
                    "Smith-adapted basis row is not integral".into(),
                ));
            }
            *e = q;
        }
        adapted.push(row);
    }
    debug_assert!(c.iter().all(|&ci| ci >= 0), "overlattice profile must be nonnegative");
    for i in 0..n {
        if c[i] == 0 {
            // c is ordered along the divisibility chain: every later
            // threshold min(c_i, c_j) vanishes too.
            break;
        }
        let s_i = gather_row(&adapted[i], &two_t);
        for j in i..n {
            let s_ij: Int = s_i.iter().zip(adapted[j].iter()).map(|(a, b)| a * b).sum();
            let (need, val) = if i == j {
                debug_assert!(s_ij.is_even(), "quadratic value of a half-integral form");
                (c[i], &s_ij / Int::from(2))
            } else {
                (c[i].min(c[j]), s_ij)
            };
            if need >= 1
                && !val.mod_floor(&pow_int(p, u32::try_from(need).expect("profile fits u32")))
                    .is_zero()
            {
                return Ok(None);
            }
        }
    }
    let mut exp = 0i64;
    for i in 0..n {
        for j in i..n {
            exp += c[i].min(c[j]);
        }
    }
    Ok(Some(pow_int(p, u32::try_from(exp).expect("σ exponent fits u32"))))
}

#[cfg(feature = "parallel")]
fn generate_candidates(
    t: &HalfIntegralMatrix,
    frontier: &[Overlattice],
    p: &Int,
) -> BTreeSet<Overlattice> {
    let locals: Vec<Vec<Overlattice>> = frontier
        .par_iter()
        .map(|w| candidates_of(t, w, p))
        .collect();
    locals.into_iter().flatten().collect()
}

#[cfg(not(feature = "parallel"))]
fn generate_candidates(
    t: &HalfIntegralMatrix,
    frontier: &[Overlattice],
    p: &Int,
) -> BTreeSet<Overlattice> {
    frontier.iter().flat_map(|w| candidates_of(t, w, p)).collect()
}

fn candidates_of(t: &HalfIntegralMatrix, w: &Overlattice, p: &Int) -> Vec<Overlattice> {
    let n = w.m.len();
    let mut out = Vec::new();
    for_each_projective_rep(n, p, |x| {
        let v = row_times_matrix(x, &w.m);
        if rank_one_prune(t, &v, w.k, p) {
            out.push(w.extend(x, p));
        }
    });
    out
}

#[cfg(feature = "parallel")]
fn check_candidates(
    t: &HalfIntegralMatrix,
    cands: Vec<Overlattice>,
    p: &Int,
) -> Result<Vec<(Overlattice, Int)>> {
    cands
        .into_par_iter()
        .filter_map(|w| match sigma_if_valid(t, &w, p) {
            Ok(Some(s)) => Some(Ok((w, s))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn check_candidates(
    t: &HalfIntegralMatrix,
    cands: Vec<Overlattice>,
    p: &Int,
) -> Result<Vec<(Overlattice, Int)>> {
    cands
        .into_iter()
        .filter_map(|w| match sigma_if_valid(t, &w, p) {
            Ok(Some(s)) => Some(Ok((w, s))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// Coefficients D₀, …, D_deg of the overlattice series D(X).
pub(crate) fn d_series_truncated(
    t: &HalfIntegralMatrix,
    p: &Int,
    deg: usize,
) -> Result<Vec<Int>> {
    let n = t.n();
    let mut out = vec![Int::zero(); deg + 1];
    out[0] = Int::one(); // W = Zⁿ is always valid with σ = 1.
    let mut frontier = vec![Overlattice::standard(n)];
    for depth in 1..=deg {
        if frontier.is_empty() {
            break;
        }
        let cands: Vec<Overlattice> =
            generate_candidates(t, &frontier, p).into_iter().collect();
        let valid = check_candidates(t, cands, p)?;
        let mut next = Vec::with_capacity(valid.len());
        for (w, sigma) in valid {
            out[depth] += sigma;
            next.push(w);
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::Rat;

    fn d(t: &HalfIntegralMatrix, p: i64, deg: usize) -> Vec<i64> {
        d_series_truncated(t, &Int::from(p), deg)
            .unwrap()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn rank_one_series() {
        // T = (p): overlattices p^{-c}Z are valid exactly for c ≤ 1, σ = p^c.
        for p in [2i64, 3, 5] {
            assert_eq!(d(&HalfIntegralMatrix::diagonal(&[p]), p, 2), vec![1, p, 0]);
        }
        // T = (p²): c ≤ 2 with σ = p^c, nothing deeper.
        for p in [2i64, 3] {
            assert_eq!(
                d(&HalfIntegralMatrix::diagonal(&[p * p]), p, 3),
                vec![1, p, p * p, 0]
            );
        }
        // Unit: only Zⁿ itself.
        assert_eq!(d(&HalfIntegralMatrix::diagonal(&[1]), 5, 2), vec![1, 0, 0]);
    }

    #[test]
    fn split_binary_series_is_geometric() {
        // The split plane T = [[0,1/2],[1/2,0]] has D(X) = (1+pX)/(1-pX):
        // two valid chains of coordinate-line overlattices at every depth,
        // each with σ = p^d.  This is the series that forces truncation — it
        // never terminates.
        let h = HalfIntegralMatrix::new(QMat::from_rows(vec![
            vec![Rat::zero(), Rat::new(1.into(), 2.into())],
            vec![Rat::new(1.into(), 2.into()), Rat::zero()],
        ]))
        .unwrap();
        for p in [2i64, 3, 5] {
            assert_eq!(d(&h, p, 3), vec![1, 2 * p, 2 * p * p, 2 * p * p * p]);
        }
    }

    #[test]
    fn unramified_binary_with_one_step() {
        // T = diag(1, p), p odd: one valid overlattice, at depth 1.
        for p in [3i64, 5, 7] {
            assert_eq!(d(&HalfIntegralMatrix::diagonal(&[1, p]), p, 2), vec![1, p, 0]);
        }
    }

    #[test]
    fn depth_profile_of_scaled_binary() {
        // T = diag(1, 4) at p = 2, derived by hand: depth 1 holds the single
        // even line (0,1) with σ = 2; depth 2 holds Z ⊕ ¼Z (σ = 4) and the
        // glued lattice spanned by (1, ½) and (0, ¼)·2 — i.e. 2⁻²·{(2,1),(0,4)}
        // — also with σ = 4.
        assert_eq!(d(&HalfIntegralMatrix::diagonal(&[1, 4]), 2, 2), vec![1, 2, 8]);
    }

    #[test]
    fn first_coefficient_matches_quadric_count() {
        use crate::quadric::projective_zero_count;
        let family = vec![
            HalfIntegralMatrix::diagonal(&[1, 1, 1]),
            HalfIntegralMatrix::diagonal(&[1, 2, 15]),
            HalfIntegralMatrix::diagonal(&[3, 5]),
            HalfIntegralMatrix::identity(4),
        ];
        for p in [3i64, 5, 7, 11, 13] {
            let p = Int::from(p);
            for t in &family {
                let d1 = d_series_truncated(t, &p, 1).unwrap()[1].clone();
                assert_eq!(d1, projective_zero_count(t, &p) * &p);
            }
        }
    }
}
