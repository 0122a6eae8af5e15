//! Rigorous interval evaluation of completed L-values Λ(f, s), the
//! independent numerical cross-check for the exact period-ratio arithmetic.
//!
//! For a level-one eigenform f of even weight k, splitting the Mellin
//! integral at y = 1 and applying f(i/y) = i^k y^k f(iy) gives
//!   Λ(s) = Σ_{m≥1} a(m)[(2πm)^{−s}Γ(s,2πm)
//!                       + (−1)^{k/2}(2πm)^{s−k}Γ(k−s,2πm)],
//! with Γ(n,x) = (n−1)! e^{−x} Σ_{j<n} x^j/j! for integer n ≥ 1. Every
//! operation below is interval arithmetic, and the truncation tail is added
//! as a proven symmetric bound, so the returned interval certainly contains
//! the true Λ(s).
//!
//! Tail bound: for x ≥ n − 1 one has Γ(n,x) ≤ n x^{n−1} e^{−x}, so each
//! bracket above is ≤ k e^{−2πm} once 2πm ≥ k; with |a(m)| ≤ d(m)m^{(k−1)/2}
//! ≤ m^{k/2+1} the m-th term is ≤ 2k m^{k/2+1} e^{−2πm}, and consecutive
//! terms shrink by at least e^{1−2π} < 1/100 for m ≥ k/2 + 1. Hence
//!   Σ_{m>M} |term| ≤ (100/99) · 2k (M+1)^{k/2+1} e^{−2π(M+1)}.

use crate::{PeriodError, Result};
use exact_arith::bigfloat::{exp_neg_two_pi, pi, BigFloat};
use exact_arith::nf::NumberFieldElem;
use exact_arith::rational::{factorial, rat_pow};
use exact_arith::{Int, Rat};
use num::{One, Zero};
use qmodforms::Eigenform;

/// Number of q-expansion terms in every evaluation; far beyond what the
/// tail bound needs at 120 digits for weights up to 30.
const M_TERMS: u64 = 200;

/// Interval evaluator for Λ(f, s) at one real embedding of the Hecke field.
///
/// The embedding sends the field generator θ to (t + √disc)/2, the same
/// distinguished root for every eigenform over the field; the conjugate
/// form's coefficients are stored conjugated, so both labels evaluate
/// correctly through this single embedding.
pub struct LSeriesNumeric {
    weight: u64,
    scale: u32,
    theta: Option<BigFloat>,
    coeffs: Vec<BigFloat>,
    two_pi: BigFloat,
    u: BigFloat,
    tail: Rat,
}

impl LSeriesNumeric {
    /// Build an evaluator working at `digits` certified decimal digits.
    /// Requires the eigenform to carry at least `M_TERMS` coefficients.
    pub fn new(f: &Eigenform, digits: u32) -> Result<LSeriesNumeric> {
        let weight = f.weight();
        let scale = digits + 20;
        let two_pi = pi(scale).mul_int(&Int::from(2));
        let u = exp_neg_two_pi(scale);

        let field = f.field();
        let theta = match field.degree() {
            1 => None,
            2 => {
                let (t, disc) = field.quadratic_parts().ok_or_else(|| {
                    PeriodError::Domain("quadratic field without quadratic parts".into())
                })?;
                let half = Rat::new(Int::from(1), Int::from(2));
                let root = BigFloat::from_rat(&disc, scale).sqrt()?;
                Some(
                    BigFloat::from_rat(&t, scale)
                        .add(&root)
                        .mul(&BigFloat::from_rat(&half, scale)),
                )
            }
            d => {
                return Err(PeriodError::Domain(format!(
                    "numeric embedding implemented for degree ≤ 2, got {d}"
                )))
            }
        };

        let mut coeffs = Vec::with_capacity(M_TERMS as usize);
        for m in 1..=M_TERMS {
            let a = f.coefficient(m as usize)?;
            coeffs.push(embed_with(a, theta.as_ref(), scale)?);
        }

        // Σ_{m>M} |term| ≤ (100/99)·2k(M+1)^{k/2+1}·e^{−2π(M+1)}, using a
        // rational upper bound for e^{−2π} from the interval u.
        let u_hi = u.abs_hi_rat();
        let tail = Rat::from_integer(Int::from(2 * weight))
            * rat_pow(&Rat::from_integer(Int::from(M_TERMS + 1)), (weight / 2 + 1) as i64)
            * rat_pow(&u_hi, (M_TERMS + 1) as i64)
            * Rat::new(Int::from(100), Int::from(99));

        Ok(LSeriesNumeric { weight, scale, theta, coeffs, two_pi, u, tail })
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Embed a Hecke-field element through this evaluator's real embedding.
    pub fn embed(&self, e: &NumberFieldElem) -> Result<BigFloat> {
        embed_with(e, self.theta.as_ref(), self.scale)
    }

    /// Certified enclosure of Λ(s) for an integer critical point
    /// 1 ≤ s ≤ k − 1.
    pub fn lambda(&self, s: u64) -> Result<BigFloat> {
        let k = self.weight;
        if s < 1 || s > k - 1 {
            return Err(PeriodError::Domain(format!(
                "Λ(s) evaluated only for 1 ≤ s ≤ {}, got {s}",
                k - 1
            )));
        }
        let sign_pos = (k / 2) % 2 == 0;
        let mut acc = BigFloat::zero(self.scale);
        let mut emx = BigFloat::from_i64(1, self.scale);
        for m in 1..=M_TERMS {
            emx = emx.mul(&self.u);
            let x = self.two_pi.mul_int(&Int::from(m));
            let g1 = gamma_partial(s, &x, self.scale);
            let g2 = gamma_partial(k - s, &x, self.scale);
            let b1 = x.powi_signed(-(s as i64))?.mul(&g1);
            let b2 = x.powi_signed(s as i64 - k as i64)?.mul(&g2);
            let bracket = if sign_pos { b1.add(&b2) } else { b1.sub(&b2) };
            acc = acc.add(&self.coeffs[(m - 1) as usize].mul(&bracket.mul(&emx)));
        }
        Ok(acc.widen_by_rat(&self.tail))
    }

    /// Certified enclosure of Λ(m)/Λ(m′).
    pub fn lambda_ratio(&self, m: u64, mp: u64) -> Result<BigFloat> {
        Ok(self.lambda(m)?.div(&self.lambda(mp)?)?)
    }
}

/// (n−1)! Σ_{j<n} x^j/j! — the polynomial factor of Γ(n, x)e^{x}.
fn gamma_partial(n: u64, x: &BigFloat, scale: u32) -> BigFloat {
    let mut term = BigFloat::from_i64(1, scale);
    let mut sum = term.clone();
    for j in 1..n {
        let inv_j = Rat::new(Int::one(), Int::from(j));
        term = term.mul(x).mul(&BigFloat::from_rat(&inv_j, scale));
        sum = sum.add(&term);
    }
    sum.mul_int(&factorial(n - 1))
}

fn embed_with(e: &NumberFieldElem, theta: Option<&BigFloat>, scale: u32) -> Result<BigFloat> {
    let coords = e.coords();
    let c0 = BigFloat::from_rat(&coords[0], scale);
    match (coords.len(), theta) {
        (1, _) => Ok(c0),
        (2, Some(th)) => {
            if coords[1].is_zero() {
                Ok(c0)
            } else {
                Ok(c0.add(&BigFloat::from_rat(&coords[1], scale).mul(th)))
            }
        }
        _ => Err(PeriodError::Domain("element does not fit the configured embedding".into())),
    }
}
