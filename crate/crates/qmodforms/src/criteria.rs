//! Eigenvalue-separation and irreducibility criteria evaluated at a chosen
//! degree-one prime of the Hecke field.

use crate::eigen::Eigenform;
use crate::{QmfError, Result};
use exact_arith::rational::int_pow;
use exact_arith::{nf_ord, DegreeOnePrime, Int, NumberFieldElem, Rat};
use num::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DfpOutcome {
    /// Smallest m with p ∤ m whose eigenvalue differences are all 𝔭-units.
    Witness { m: u64 },
    /// No witness below the search bound: the check is indeterminate, not false.
    Inconclusive { m_max: u64 },
}

/// Search for m ≤ m_max, p ∤ m, with ord_𝔭 Π_{g ≠ f} (a(m, g) − a(m, f)) = 0.
///
/// `space` is the full list of eigenforms of f's weight; f is excluded by
/// (weight, label). A zero product at some m (coincident eigenvalues) skips
/// that m rather than deciding anything.
pub fn dfp_indivisibility(
    f: &Eigenform,
    space: &[Eigenform],
    prime: &DegreeOnePrime,
    m_max: u64,
) -> Result<DfpOutcome> {
    if f.prec() <= m_max as usize {
        return Err(QmfError::InsufficientPrecision {
            needed: m_max as usize + 1,
            have: f.prec(),
        });
    }
    let others: Vec<&Eigenform> = space
        .iter()
        .filter(|g| !(g.weight() == f.weight() && g.label() == f.label()))
        .collect();
    for m in 2..=m_max {
        if (Int::from(m) % prime.p()).is_zero() {
            continue;
        }
        let mut prod = NumberFieldElem::from_i64(f.field(), 1);
        for g in &others {
            let gm = lift_into(g.coefficient(m as usize)?, f)?;
            prod = prod.mul(&gm.sub(f.coefficient(m as usize)?));
        }
        if prod.is_zero() {
            continue;
        }
        if nf_ord(&prod, prime)? == 0 {
            return Ok(DfpOutcome::Witness { m });
        }
    }
    Ok(DfpOutcome::Inconclusive { m_max })
}

fn lift_into(x: &NumberFieldElem, f: &Eigenform) -> Result<NumberFieldElem> {
    if x.field().minpoly() == f.field().minpoly() {
        return Ok(NumberFieldElem::new(f.field(), x.coords().to_vec()));
    }
    match x.to_rat() {
        Some(r) => Ok(NumberFieldElem::from_rat(f.field(), &r)),
        None => Err(QmfError::Domain(
            "eigenvalue comparison across distinct irrational fields is unsupported".into(),
        )),
    }
}

/// a(2, f) and a(2, f) ± 2^{w/2} must all be 𝔭-units; requires p > 2w.
///
/// A zero value (a(2) exactly ±2^{w/2}) makes the criterion fail, since the
/// corresponding ord is +∞.
pub fn ribet_criterion(f: &Eigenform, prime: &DegreeOnePrime) -> Result<bool> {
    let w = f.weight();
    if w % 2 != 0 {
        return Err(QmfError::Domain(format!("criterion needs an even weight, got {w}")));
    }
    if *prime.p() <= Int::from(2 * w) {
        return Err(QmfError::Domain(format!(
            "criterion requires p > 2w = {}, got p = {}",
            2 * w,
            prime.p()
        )));
    }
    let a2 = f.coefficient(2)?;
    let half_pow = NumberFieldElem::from_rat(
        f.field(),
        &Rat::from_integer(int_pow(&Int::from(2), (w / 2) as u32)),
    );
    for v in [a2.clone(), a2.sub(&half_pow), a2.add(&half_pow)] {
        if v.is_zero() {
            return Ok(false);
        }
        if nf_ord(&v, prime)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigenforms;
    use exact_arith::degree_one_primes_above;

    #[test]
    fn weight_30_witness_at_m_2() {
        let forms = eigenforms(30, 24).unwrap();
        let f = &forms[0];
        for p in [6701i64, 5] {
            let primes = degree_one_primes_above(f.field(), &Int::from(p)).unwrap();
            assert_eq!(primes.len(), 2, "{p} splits in the weight-30 Hecke field");
            for pr in &primes {
                assert_eq!(
                    dfp_indivisibility(f, &forms, pr, 20).unwrap(),
                    DfpOutcome::Witness { m: 2 },
                    "p = {p}"
                );
            }
        }
    }

    #[test]
    fn witness_search_skips_multiples_of_p_and_can_be_inconclusive() {
        let forms = eigenforms(30, 24).unwrap();
        let f = &forms[0];
        let primes = degree_one_primes_above(f.field(), &Int::from(5)).unwrap();
        // With m capped below the first admissible m there is no witness.
        assert_eq!(
            dfp_indivisibility(f, &forms, &primes[0], 1).unwrap(),
            DfpOutcome::Inconclusive { m_max: 1 }
        );
        // Precision guard: prec must exceed m_max.
        assert!(matches!(
            dfp_indivisibility(f, &forms, &primes[0], 30),
            Err(QmfError::InsufficientPrecision { needed: 31, have: 24 })
        ));
    }

    #[test]
    fn unique_form_has_vacuous_witness() {
        let forms = eigenforms(12, 8).unwrap();
        let primes = degree_one_primes_above(forms[0].field(), &Int::from(691)).unwrap();
        assert_eq!(
            dfp_indivisibility(&forms[0], &forms, &primes[0], 6).unwrap(),
            DfpOutcome::Witness { m: 2 }
        );
    }

    #[test]
    fn ribet_criterion_weight_30() {
        let forms = eigenforms(30, 4).unwrap();
        let f = &forms[0];
        let primes = degree_one_primes_above(f.field(), &Int::from(6701)).unwrap();
        for pr in &primes {
            assert!(ribet_criterion(f, pr).unwrap());
        }
        // p = 53 < 2·30 violates the precondition.
        let small = degree_one_primes_above(f.field(), &Int::from(53));
        if let Ok(ps) = small {
            if let Some(pr) = ps.first() {
                assert!(ribet_criterion(f, pr).is_err());
            }
        }
    }

    #[test]
    fn ribet_detects_divisible_values() {
        // Δ at p = 691: a(2) = −24 is a unit, a(2) ± 2⁶ = 40 / −88 both units,
        // so the criterion holds; at p = 29 the precondition p > 24 holds and
        // a(2) + 2⁶ = 40, a(2) − 2⁶ = −88, a(2) = −24: all prime to 29 → true.
        let f = &eigenforms(12, 4).unwrap()[0];
        for p in [691i64, 29] {
            let primes = degree_one_primes_above(f.field(), &Int::from(p)).unwrap();
            assert!(ribet_criterion(f, &primes[0]).unwrap(), "p = {p}");
        }
        // p = 5 divides 40 = a(2) + 2⁶ but fails the precondition p > 24,
        // so the criterion refuses rather than answering.
        let p5 = degree_one_primes_above(f.field(), &Int::from(5)).unwrap();
        assert!(ribet_criterion(f, &p5[0]).is_err());
    }
}
