//! The two scalar factors of one R-term: the zeta/Dirichlet-L product 𝒵
//! determined by the block rank, and the bordered-determinant polynomial P
//! evaluated at the integer matrix V.

use crate::params::{EpsilonParams, RTerm};
use crate::{EpsilonError, Result};
use exact_arith::rational::{factorial, pochhammer, rat_int, rat_pow};
use exact_arith::{dirichlet_L_negative, fundamental_discriminant, zeta_negative, Int, QMat, Rat};
use num::{One, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// 𝒵(A₀, A₁, R, l): by the rank r of the block,
///   r = 6 → L(4−l, χ_B) for the character of the full block,
///   r = 5 → ζ(7−2l),
///   r = 4 → ζ(7−2l)·L(3−l, χ_{A₀}).
///
/// Characters of even-size forms come from the fundamental discriminant of
/// (−1)^{n/2}·det(2B).  For positive-definite A₀ the rank-4 character is
/// odd while 3−l has even conductor-exponent, so L(3−l, χ_{A₀}) — hence the
/// whole rank-4 contribution — vanishes identically; the sum keeps those
/// zeros and the statistics report them.
pub fn zcal(params: &EpsilonParams, term: &RTerm) -> Result<Rat> {
    let l = params.l() as i64;
    match term.rank() {
        6 => {
            let disc = -Rat::from_integer(term.block().det_two_t());
            l_value_cached(4 - l, &disc)
        }
        5 => zeta_cached(7 - 2 * l),
        4 => {
            let zeta = zeta_cached(7 - 2 * l)?;
            let disc = -Rat::from_integer(params.a0().det_two_t());
            Ok(zeta * l_value_cached(3 - l, &disc)?)
        }
        r => Err(EpsilonError::Internal(format!(
            "block rank {r} outside 4..=6"
        ))),
    }
}

/// L(s, χ_D) with a global (s, fundamental discriminant) memo; the ε sums
/// request the same few characters thousands of times.
fn l_value_cached(s: i64, disc: &Rat) -> Result<Rat> {
    let chi = fundamental_discriminant(disc)?;
    let key = (s, chi.discriminant().clone());
    if let Some(hit) = l_memo().lock().expect("L memo").get(&key) {
        return Ok(hit.clone());
    }
    let value = dirichlet_L_negative(s, &chi)?;
    l_memo().lock().expect("L memo").insert(key, value.clone());
    Ok(value)
}

fn zeta_cached(s: i64) -> Result<Rat> {
    let key = (s, Int::one());
    if let Some(hit) = l_memo().lock().expect("L memo").get(&key) {
        return Ok(hit.clone());
    }
    let value = zeta_negative(s)?;
    l_memo().lock().expect("L memo").insert(key, value.clone());
    Ok(value)
}

fn l_memo() -> &'static Mutex<HashMap<(i64, Int), Rat>> {
    static MEMO: OnceLock<Mutex<HashMap<(i64, Int), Rat>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// P(B_R)(V): the exact finite sum
///
///   (k−l)! Σ_{a+2b+2c=k−l} (−1)^b 2^{−a} / (a! b! c!) · (l+c−3/2)_{a+b+c}
///          · |R·ᵗV|^a · (|V·A₁·ᵗV|·|A₀|)^b · |bordered|^c
///
/// with the bordered 4×4 matrix [[A₀, R·ᵗV/2], [V·ᵗR/2, V·A₁·ᵗV]].  The
/// three determinants do not depend on (a, b, c), so they are computed once.
pub fn bordered_p(params: &EpsilonParams, term: &RTerm) -> Result<Rat> {
    let kl = params.k() - params.l();
    debug_assert_eq!(kl % 2, 0);
    let m = term.r_vt(params);
    let det_m = m.det();
    let det_q = params.det_va1vt() * params.det_a0();
    let det_s = bordered_det(params, &m);

    let mut sum = Rat::zero();
    for c in 0..=(kl / 2) {
        for b in 0..=(kl / 2 - c) {
            let a = kl - 2 * b - 2 * c;
            // (l + c − 3/2)_{a+b+c}, an exact rational.
            let base = rat_int(params.l() as i64 + c as i64) - Rat::new(Int::from(3), Int::from(2));
            let poch = pochhammer(&base, a + b + c);
            let mut coeff = poch / Rat::from_integer(factorial(a) * factorial(b) * factorial(c));
            coeff *= rat_pow(&rat_int(2), -(a as i64));
            if b % 2 == 1 {
                coeff = -coeff;
            }
            let term_val = coeff
                * rat_pow_nonneg(&det_m, a)
                * rat_pow_nonneg(&det_q, b)
                * rat_pow_nonneg(&det_s, c);
            sum += term_val;
        }
    }
    Ok(sum * Rat::from_integer(factorial(kl)))
}

/// x^e with the 0⁰ = 1 convention the a = 0 terms rely on.
fn rat_pow_nonneg(x: &Rat, e: u64) -> Rat {
    if e == 0 {
        Rat::one()
    } else {
        rat_pow(x, e as i64)
    }
}

/// |[[A₀, M/2], [ᵗM/2, V·A₁·ᵗV]]| for M = R·ᵗV.
fn bordered_det(params: &EpsilonParams, m: &QMat) -> Rat {
    let half = Rat::new(Int::one(), Int::from(2));
    let mut s = QMat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            s.set(i, j, params.a0().matrix().at(i, j).clone());
            s.set(i, 2 + j, m.at(i, j).clone() * &half);
            s.set(2 + j, i, m.at(i, j).clone() * &half);
            s.set(2 + i, 2 + j, params.va1vt().at(i, j).clone());
        }
    }
    s.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{default_a0, default_a1, default_v, EpsilonParams, RTerm};
    use exact_arith::rational::rat;

    fn instance(k: u64, l: u64) -> EpsilonParams {
        EpsilonParams::new(k, l, default_a0(), default_a1(), default_v()).unwrap()
    }

    fn zero_term(params: &EpsilonParams) -> RTerm {
        let zero = vec![vec![Int::zero(); 4], vec![Int::zero(); 4]];
        RTerm::new(params, zero).unwrap().unwrap()
    }

    #[test]
    fn rank5_and_rank4_zetas_have_their_classical_values() {
        // ζ(7 − 2l) at l = 8 is ζ(−9) = −1/132.
        assert_eq!(zeta_cached(-9).unwrap(), rat(-1, 132));
        // The rank-4 branch multiplies it by the odd-character value
        // L(3 − l, χ_{A₀}) which vanishes by parity for l even.
        let params = instance(16, 8);
        let rank4_factor = l_value_cached(-5, &rat(-4, 1)).unwrap();
        assert!(rank4_factor.is_zero());
        let _ = params;
    }

    #[test]
    fn rank6_character_comes_from_the_block_discriminant() {
        let params = instance(16, 8);
        let term = zero_term(&params);
        assert_eq!(term.rank(), 6);
        // det(2B) = det(2A₀)·det(2A₁) = 4·5, so the character has
        // fundamental discriminant −20, and 𝒵 = L(−4, χ₋₂₀) = −B₅(χ₋₂₀)/5.
        let z = zcal(&params, &term).unwrap();
        assert_eq!(z, dirichlet_L_negative(-4, &fundamental_discriminant(&rat(-20, 1)).unwrap()).unwrap());
        assert!(!z.is_zero());
    }

    #[test]
    fn k_equal_l_collapses_p_to_one() {
        let params = instance(16, 16);
        let term = zero_term(&params);
        assert_eq!(bordered_p(&params, &term).unwrap(), Rat::one());
    }

    #[test]
    fn zero_r_kills_every_positive_power_of_the_coupling() {
        // With R = 0 the coupling determinant |R·ᵗV| vanishes, so only the
        // a = 0 terms survive; the result must match a direct a = 0 sum.
        let params = instance(20, 16);
        let term = zero_term(&params);
        let got = bordered_p(&params, &term).unwrap();

        let kl = 4u64;
        let det_q = params.det_va1vt() * params.det_a0();
        let det_s = {
            let m = QMat::zeros(2, 2);
            super::bordered_det(&params, &m)
        };
        let mut expected = Rat::zero();
        for c in 0..=(kl / 2) {
            for b in 0..=(kl / 2 - c) {
                if 2 * b + 2 * c != kl {
                    continue;
                }
                let base = rat_int(16 + c as i64) - rat(3, 2);
                let poch = pochhammer(&base, b + c);
                let mut coeff = poch / Rat::from_integer(factorial(b) * factorial(c));
                if b % 2 == 1 {
                    coeff = -coeff;
                }
                expected += coeff * rat_pow_nonneg(&det_q, b) * rat_pow_nonneg(&det_s, c);
            }
        }
        expected *= Rat::from_integer(factorial(kl));
        assert_eq!(got, expected);
    }
}
