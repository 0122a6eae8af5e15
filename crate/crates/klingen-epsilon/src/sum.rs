//! Assembly of the full ε-sum: one exact rational per admissible R, added
//! over the whole enumeration.  Each term factors as
//!
//!   2^{⌊(r+1)/2⌋} · 𝒵(A₀, A₁, R, l) · P(B_R)(V) · Π_p F*_p(B_R; p^{l−r−1})
//!
//! where r is the rank of the 6×6 block B_R.  The local product is finite:
//! at an odd prime not dividing det(2T′) of the nondegenerate part the
//! star series is the constant 1.  Every run audits that claim at the
//! smallest prime outside the support before trusting it.

use crate::params::{EpsilonParams, RTerm};
use crate::rterm::enumerate_r;
use crate::values::{bordered_p, zcal};
use crate::{EpsilonError, Result};
use exact_arith::rational::rat_pow;
use exact_arith::{factorize, is_prime_int, Int, Rat};
use num::{One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use siegel_series::{radical_split, siegel_series_star, HalfIntegralMatrix};
use std::collections::{BTreeMap, BTreeSet};

/// Everything a run learns beyond the value itself: term counts by rank,
/// how many rank-4 terms vanished through their L-factor, which primes
/// carried nontrivial local factors, and the distinct nondegenerate blocks
/// (with their primes) whose star series entered the product.
#[derive(Clone, Debug, Default)]
pub struct EpsilonStats {
    /// Number of R-terms in the full (unmirrored) enumeration.
    pub terms: usize,
    /// Full term counts keyed by block rank.
    pub rank_counts: BTreeMap<usize, usize>,
    /// Terms whose 𝒵-factor vanished (all rank-4 terms, by parity).
    pub zero_zcal: usize,
    /// Primes that contributed a star factor in at least one term.
    pub support_primes: BTreeSet<Int>,
    /// Distinct (nondegenerate block, prime) pairs, keyed canonically.
    pub blocks: BTreeMap<String, (HalfIntegralMatrix, Int)>,
}

impl EpsilonStats {
    fn absorb_term(&mut self, stat: &TermStat, multiplicity: usize) {
        self.terms += multiplicity;
        *self.rank_counts.entry(stat.rank).or_insert(0) += multiplicity;
        if stat.zero_zcal {
            self.zero_zcal += multiplicity;
        }
        for (key, tprime, p) in &stat.blocks {
            self.support_primes.insert(p.clone());
            self.blocks
                .entry(key.clone())
                .or_insert_with(|| (tprime.clone(), p.clone()));
        }
    }
}

struct TermStat {
    rank: usize,
    zero_zcal: bool,
    blocks: Vec<(String, HalfIntegralMatrix, Int)>,
}

/// ε(A₀, A₁, V; k, l) over the full admissible R-enumeration.
pub fn epsilon_one(params: &EpsilonParams) -> Result<Rat> {
    Ok(epsilon_one_with_stats(params)?.0)
}

/// The ε-value together with run statistics.
pub fn epsilon_one_with_stats(params: &EpsilonParams) -> Result<(Rat, EpsilonStats)> {
    let terms = enumerate_r(params)?;
    epsilon_sum(params, &terms, true)
}

/// The value of a single R-term (without any mirror doubling).
pub fn r_term_value(params: &EpsilonParams, term: &RTerm) -> Result<Rat> {
    Ok(term_value(params, term)?.0)
}

/// Sum the given terms.  With `mirror_doubling` the terms R and −R are
/// assumed to contribute equally — the determinants in 𝒵, P, and the local
/// factors all survive R ↦ −R — so only the lexicographically positive
/// representative is evaluated and its value counted twice.  Both routes
/// must give the same total; tests compare them.
pub(crate) fn epsilon_sum(
    params: &EpsilonParams,
    terms: &[RTerm],
    mirror_doubling: bool,
) -> Result<(Rat, EpsilonStats)> {
    let work: Vec<(&RTerm, usize)> = if mirror_doubling {
        terms
            .iter()
            .filter_map(|t| match mirror_class(t) {
                MirrorClass::Zero => Some((t, 1)),
                MirrorClass::Positive => Some((t, 2)),
                MirrorClass::Negative => None,
            })
            .collect()
    } else {
        terms.iter().map(|t| (t, 1)).collect()
    };

    #[cfg(feature = "parallel")]
    let evaluated: Vec<(Rat, TermStat, usize)> = work
        .par_iter()
        .map(|(t, mult)| term_value(params, t).map(|(v, s)| (v, s, *mult)))
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let evaluated: Vec<(Rat, TermStat, usize)> = work
        .iter()
        .map(|(t, mult)| term_value(params, t).map(|(v, s)| (v, s, *mult)))
        .collect::<Result<_>>()?;

    let mut total = Rat::zero();
    let mut stats = EpsilonStats::default();
    for (value, stat, mult) in &evaluated {
        total += value * Rat::from_integer(Int::from(*mult as i64));
        stats.absorb_term(stat, *mult);
    }
    Ok((total, stats))
}

enum MirrorClass {
    Zero,
    Positive,
    Negative,
}

/// Classify R against −R by the first nonzero entry in row-major order.
fn mirror_class(term: &RTerm) -> MirrorClass {
    for row in term.r() {
        for entry in row {
            if entry.is_zero() {
                continue;
            }
            return if *entry > Int::zero() {
                MirrorClass::Positive
            } else {
                MirrorClass::Negative
            };
        }
    }
    MirrorClass::Zero
}

fn term_value(params: &EpsilonParams, term: &RTerm) -> Result<(Rat, TermStat)> {
    let rank = term.rank();
    let z = zcal(params, term)?;
    if z.is_zero() {
        return Ok((
            Rat::zero(),
            TermStat {
                rank,
                zero_zcal: true,
                blocks: Vec::new(),
            },
        ));
    }

    let poly = bordered_p(params, term)?;
    let two_pow = Rat::from_integer(Int::one() << ((rank as u32 + 1) / 2));
    let mut value = two_pow * z * poly;

    // Local star factors at X = p^{l − r − 1} (a negative exponent is fine:
    // the evaluation is exact rational arithmetic).
    let (tprime, _) = radical_split(term.block())?;
    let exponent = params.l() as i64 - rank as i64 - 1;
    let support = support_primes(&tprime)?;
    audit_extra_prime(term.block(), &support)?;
    let mut blocks = Vec::with_capacity(support.len());
    for p in &support {
        let star = siegel_series_star(term.block(), p)?;
        let x = rat_pow(&Rat::from_integer(p.clone()), exponent);
        value *= star.eval(&x);
        blocks.push((
            format!("{}|{}", tprime.canonical_key(), p),
            tprime.clone(),
            p.clone(),
        ));
    }

    Ok((
        value,
        TermStat {
            rank,
            zero_zcal: false,
            blocks,
        },
    ))
}

/// {2} ∪ {odd p dividing det(2T′)}: outside this set the star series of
/// T′ is the constant polynomial 1.
fn support_primes(tprime: &HalfIntegralMatrix) -> Result<BTreeSet<Int>> {
    let det = tprime.det_two_t();
    let fac = factorize(&det);
    if !fac.is_complete() {
        return Err(EpsilonError::Domain(format!(
            "cannot completely factor det(2T') = {det}"
        )));
    }
    let mut support = BTreeSet::new();
    support.insert(Int::from(2));
    for (p, _) in &fac.primes {
        support.insert(p.clone());
    }
    Ok(support)
}

/// Evaluate the star series at the smallest prime outside the support and
/// insist it is the constant 1.  This guards the finiteness claim the local
/// product rests on; it runs on every term and is nearly free, since the
/// series at such a prime terminates immediately.
fn audit_extra_prime(block: &HalfIntegralMatrix, support: &BTreeSet<Int>) -> Result<()> {
    let mut q = Int::from(2);
    loop {
        if is_prime_int(&q) && !support.contains(&q) {
            break;
        }
        q += 1;
    }
    let star = siegel_series_star(block, &q)?;
    if star.coeffs() != [Int::one()] {
        return Err(EpsilonError::Internal(format!(
            "star series at audit prime {q} is {:?}, expected the constant 1",
            star.coeffs()
        )));
    }
    Ok(())
}
