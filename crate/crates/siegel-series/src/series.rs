//! The local Siegel series polynomial F_p(T, X).
//!
//! For a nondegenerate half-integral T of size n, the character sum
//! b_p(T, s) = Σ_R e_p(tr TR)·ν(R)^{-s} over symmetric p-adic matrices mod
//! integral ones factors as b_p = γ_p(T; X)·F_p(T, X) with X = p^{-s}, where
//!
//!   γ_p(T; X) = (1-X)·∏_{i=1}^{⌊n/2⌋}(1-p^{2i}X²) / (1 - ξ p^{n/2} X)^{[n even]}
//!
//! and ξ = χ_𝔡(p) for the fundamental discriminant 𝔡 of (-1)^{n/2}det(2T).
//! F_p is a polynomial with F_p(T, 0) = 1 and integer coefficients; its
//! degree is e = ord_p(det 2T) - ord_p(𝔡) for n even and
//! e = ord_p(det 2T) - [p = 2] for n odd, and it obeys the functional
//! equation
//!
//!   F_p(T, 1/(p^{n+1}X)) = η · (p^{(n+1)/2} X)^{-e} · F_p(T, X),  η ∈ {±1}.
//!
//! We compute F_p from first principles: grouping b_p by overlattices gives
//! b_p = ∏_{i=0}^{n-1}(1-p^iX) · D(X) with D the overlattice sum of
//! `lattice`, so F_p is the truncation of D·∏_{i=1}^{n-1}(1-p^iX)·
//! (1-ξp^{n/2}X)^{[n even]} / ∏_{i=1}^{⌊n/2⌋}(1-p^{2i}X²).  The code
//! computes a couple of terms beyond degree e and asserts they vanish, that
//! the constant term is 1, and that the functional equation holds exactly —
//! any failure is reported as an internal error rather than patched over.

use crate::half_integral::{HalfIntegralMatrix, MAX_SIZE};
use crate::lattice::d_series_truncated;
use crate::quadric::{pow_int, projective_zero_count};
use crate::{Result, SiegelError};
use exact_arith::rational::{int_ord_p, rat_pow};
use exact_arith::{fundamental_discriminant, is_prime_int, kronecker, Int, Rat};
use num::{One, Signed, Zero};
use std::fmt;

/// Which normalization a Siegel series polynomial carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// F_p(T, X) itself, constant term 1.
    Classical,
    /// The normalization used inside Eisenstein Fourier-coefficient sums;
    /// fixed once by matching known end-to-end values (see `star`).
    Star,
}

/// Extra series terms computed past the predicted degree purely to confirm
/// that the truncated quotient really is the polynomial theory promises.
const DEGREE_GUARD: usize = 2;

/// Above this prime, degree-1 series take the closed-form quadric count
/// (exact for e = 1 at every p) instead of the overlattice walk, whose
/// index-p layer alone has ~p^{n-1} candidates.  Kept low enough that the
/// walk still runs — and cross-checks the count — on the small primes the
/// test matrix exercises.
const FASTPATH_MIN_P: i64 = 13;

/// An integer polynomial in X attached to (T, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelSeriesPoly {
    p: Int,
    coeffs: Vec<Int>,
    normalization: Normalization,
    rank: usize,
    fe_sign: i32,
}

impl SiegelSeriesPoly {
    pub(crate) fn new_raw(
        p: Int,
        coeffs: Vec<Int>,
        normalization: Normalization,
        rank: usize,
        fe_sign: i32,
    ) -> Self {
        assert!(!coeffs.is_empty());
        SiegelSeriesPoly { p, coeffs, normalization, rank, fe_sign }
    }

    /// The constant polynomial 1.
    pub(crate) fn one(p: Int, normalization: Normalization, rank: usize) -> Self {
        Self::new_raw(p, vec![Int::one()], normalization, rank, 1)
    }

    pub fn p(&self) -> &Int {
        &self.p
    }

    /// Coefficients by ascending degree; the constant term is first.
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Size of the nondegenerate form the polynomial belongs to.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Sign η in the functional equation
    /// F(1/(p^{rank+1}X)) = η·(p^{(rank+1)/2}X)^{-deg}·F(X).
    pub fn fe_sign(&self) -> i32 {
        self.fe_sign
    }

    /// Evaluate at a rational argument.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Check the functional equation as an exact Laurent identity: replacing
    /// X by 1/(p^{rank+1}X) and clearing (p^{(rank+1)/2}X)^{deg} must return
    /// fe_sign times the polynomial.
    pub fn functional_equation_holds(&self) -> bool {
        let e = self.degree() as i64;
        let np1 = self.rank as i64 + 1;
        for m in 0..=self.degree() {
            let expo2 = np1 * (2 * m as i64 - e);
            if expo2 % 2 != 0 {
                return false;
            }
            let lhs = Rat::from_integer(self.coeffs[self.degree() - m].clone())
                * rat_pow(&Rat::from_integer(self.p.clone()), expo2 / 2);
            let rhs = Rat::from_integer(&self.coeffs[m] * Int::from(self.fe_sign));
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for SiegelSeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match j {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match j {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{j}")?,
            }
        }
        Ok(())
    }
}

/// (degree e, character value ξ) of F_p(T, ·) for nondegenerate T.
pub(crate) fn degree_invariants(t: &HalfIntegralMatrix, p: &Int) -> Result<(usize, i32)> {
    let n = t.n();
    let det2 = t.det_two_t();
    debug_assert!(!det2.is_zero());
    let ord = int_ord_p(&det2, p) as i64;
    let (e, xi) = if n % 2 == 0 {
        let mut dd = det2.clone();
        if (n / 2) % 2 == 1 {
            dd = -dd;
        }
        let chi = fundamental_discriminant(&Rat::from_integer(dd))?;
        let disc = chi.discriminant().clone();
        let xi = kronecker(&disc, p);
        let e = ord - int_ord_p(&disc, p) as i64;
        if e % 2 != 0 {
            return Err(SiegelError::Internal(format!(
                "even-size series degree must be even, got {e}"
            )));
        }
        (e, xi)
    } else {
        let e = ord - if *p == Int::from(2) { 1 } else { 0 };
        (e, 0)
    };
    if e < 0 {
        return Err(SiegelError::Internal(format!("negative series degree {e}")));
    }
    Ok((e as usize, xi))
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

fn series_mul(a: &[Int], b: &[Int], deg: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); deg + 1];
    for (i, ai) in a.iter().enumerate().take(deg + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Inverse of a power series with constant term 1, truncated.
fn series_inv(a: &[Int], deg: usize) -> Vec<Int> {
    assert!(a[0].is_one(), "series inverse needs constant term 1");
    let mut out = vec![Int::zero(); deg + 1];
    out[0] = Int::one();
    for k in 1..=deg {
        let mut acc = Int::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &out[k - j];
        }
        out[k] = -acc;
    }
    out
}

/// The classical Siegel series polynomial F_p(T, X) for nondegenerate T of
/// size ≤ 6 and prime p.
pub fn siegel_series(t: &HalfIntegralMatrix, p: &Int) -> Result<SiegelSeriesPoly> {
    let n = t.n();
    if n == 0 || n > MAX_SIZE {
        return Err(SiegelError::UnsupportedSize(n));
    }
    if !is_prime_int(p) {
        return Err(SiegelError::InvalidPrime(p.to_string()));
    }
    if !t.is_nondegenerate() {
        return Err(SiegelError::Degenerate);
    }
    let (e, xi) = degree_invariants(t, p)?;
    if e == 0 {
        return Ok(SiegelSeriesPoly::one(p.clone(), Normalization::Classical, n));
    }

    let small_p = *p <= Int::from(FASTPATH_MIN_P);
    let guard = if small_p { DEGREE_GUARD } else { 0 };
    let d = if e == 1 && !small_p {
        // n is odd here (even sizes have even degree), p is odd and large:
        // the depth-1 coefficient is p times the closed-form quadric count.
        vec![Int::one(), projective_zero_count(t, p) * p]
    } else {
        d_series_truncated(t, p, e + guard)?
    };

    // numerator ∏_{i=1}^{n-1}(1 - p^i X) · (1 - ξ p^{n/2} X)^{[n even]},
    // denominator ∏_{i=1}^{⌊n/2⌋}(1 - p^{2i} X²).
    let mut numer = vec![Int::one()];
    for i in 1..n {
        numer = poly_mul(&numer, &[Int::one(), -pow_int(p, i as u32)]);
    }
    if n % 2 == 0 {
        let c = Int::from(xi) * pow_int(p, (n / 2) as u32);
        numer = poly_mul(&numer, &[Int::one(), -c]);
    }
    let mut denom = vec![Int::one()];
    for i in 1..=(n / 2) {
        denom = poly_mul(&denom, &[Int::one(), Int::zero(), -pow_int(p, 2 * i as u32)]);
    }

    let deg = e + guard;
    let mut f = series_mul(&d, &numer, deg);
    f = series_mul(&f, &series_inv(&denom, deg), deg);

    if !f[0].is_one() {
        return Err(SiegelError::Internal("series constant term is not 1".into()));
    }
    for (j, cj) in f.iter().enumerate().skip(e + 1) {
        if !cj.is_zero() {
            return Err(SiegelError::Internal(format!(
                "series fails to terminate at the predicted degree: X^{j} coefficient {cj}"
            )));
        }
    }
    if f[e].is_zero() {
        return Err(SiegelError::Internal("leading series coefficient vanished".into()));
    }
    f.truncate(e + 1);
    classical_from_coeffs(p, f, n)
}

/// Attach the functional-equation certificate to classical coefficients and
/// wrap them up; shared by the explicit computation and the character-sum
/// oracle so both get the same exactness checks.
pub(crate) fn classical_from_coeffs(
    p: &Int,
    coeffs: Vec<Int>,
    rank: usize,
) -> Result<SiegelSeriesPoly> {
    if coeffs.is_empty() || !coeffs[0].is_one() {
        return Err(SiegelError::Internal("series constant term is not 1".into()));
    }
    let e = coeffs.len() - 1;
    let scale = rat_pow(&Rat::from_integer(p.clone()), ((rank as i64 + 1) * e as i64) / 2);
    let eta_rat = Rat::from_integer(coeffs[e].clone()) / scale;
    let fe_sign = if eta_rat == Rat::from_integer(Int::one()) {
        1
    } else if eta_rat == Rat::from_integer(-Int::one()) {
        -1
    } else {
        return Err(SiegelError::Internal(format!(
            "functional-equation sign is not ±1: {eta_rat}"
        )));
    };
    let poly = SiegelSeriesPoly::new_raw(p.clone(), coeffs, Normalization::Classical, rank, fe_sign);
    if !poly.functional_equation_holds() {
        return Err(SiegelError::Internal(
            "computed series violates its functional equation".into(),
        ));
    }
    Ok(poly)
}
