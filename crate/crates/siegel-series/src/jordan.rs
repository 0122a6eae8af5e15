//! Z_p Jordan canonical forms for odd p.
//!
//! Over Z_p with p odd, every nondegenerate half-integral matrix is
//! GL_n(Z_p)-congruent to a diagonal form diag(u_1 p^{a_1}, …, u_n p^{a_n}),
//! and the congruence class is completely determined by the multiset of
//! scales a_i together with, for each scale, the square class of the product
//! of its units (O'Meara 92:2).  We exploit this to send every input to a
//! canonical integer diagonal representative: scale blocks in increasing
//! order, units all 1 except at most one smallest quadratic non-residue per
//! scale.  The Siegel series only depends on the Z_p-class, so the canonical
//! form is both a perfect memo key and a cheaper input for the overlattice
//! walk.
//!
//! p = 2 is excluded: dyadic classes need trains/compartments and are not
//! diagonalizable in general, so callers fall back to the literal matrix.

use crate::half_integral::HalfIntegralMatrix;
use crate::{Result, SiegelError};
use exact_arith::rational::{int_pow, rat_ord_p};
use exact_arith::{kronecker, Int, Rat};
use num::{One, Signed, Zero};

/// Scale decomposition of the Z_p-class of a nondegenerate form, odd p:
/// (scale, multiplicity, unit-product is a non-residue) triples with
/// strictly increasing scales.
pub fn jordan_profile(t: &HalfIntegralMatrix, p: &Int) -> Result<Vec<(u32, usize, bool)>> {
    if p.abs() <= Int::from(2) {
        return Err(SiegelError::InvalidPrime(format!(
            "jordan_profile needs an odd prime, got {p}"
        )));
    }
    if !t.is_nondegenerate() {
        return Err(SiegelError::Degenerate);
    }
    let diag = diagonalize_zp(t.matrix().clone(), p);
    let mut scaled: Vec<(u32, bool)> = diag
        .iter()
        .map(|d| {
            let a = rat_ord_p(d, p);
            debug_assert!(a >= 0, "half-integral forms are p-integral at odd p");
            let unit = d / rat_pow_int(p, a);
            (a as u32, unit_is_nonresidue(&unit, p))
        })
        .collect();
    scaled.sort();
    let mut profile: Vec<(u32, usize, bool)> = Vec::new();
    for (a, nonres) in scaled {
        match profile.last_mut() {
            Some((pa, mult, class)) if *pa == a => {
                *mult += 1;
                *class ^= nonres;
            }
            _ => profile.push((a, 1, nonres)),
        }
    }
    Ok(profile)
}

/// The canonical diagonal representative of the Z_p-class of `t`, odd p:
/// entries p^a for each scale, except that a scale whose unit product is a
/// non-residue carries one factor of the least non-residue mod p.
pub fn zp_canonical_form(t: &HalfIntegralMatrix, p: &Int) -> Result<HalfIntegralMatrix> {
    let profile = jordan_profile(t, p)?;
    let nr = least_nonresidue(p);
    let mut entries: Vec<Int> = Vec::with_capacity(t.n());
    for (a, mult, nonres) in profile {
        let pa = int_pow(p, a);
        for i in 0..mult {
            // Put the non-residue on the last slot of the scale block.
            if nonres && i == mult - 1 {
                entries.push(&pa * &nr);
            } else {
                entries.push(pa.clone());
            }
        }
    }
    let two_t: Vec<Vec<Int>> = (0..entries.len())
        .map(|i| {
            let mut row = vec![Int::zero(); entries.len()];
            row[i] = &entries[i] * Int::from(2);
            row
        })
        .collect();
    HalfIntegralMatrix::from_two_t(&two_t)
}

/// Symmetric Gram elimination over Z_(p): returns the diagonal of a
/// congruent diagonal form.  Requires p odd (2 must be a unit so that an
/// off-diagonal minimum can be folded into the diagonal).
fn diagonalize_zp(mut a: exact_arith::QMat, p: &Int) -> Vec<Rat> {
    let mut diag: Vec<Rat> = Vec::new();
    let mut n = a.nrows();
    while n > 0 {
        // Locate a minimal-valuation entry, preferring the diagonal.
        let mut best: Option<(i64, usize, usize)> = None;
        for i in 0..n {
            for j in i..n {
                let v = a.at(i, j);
                if v.is_zero() {
                    continue;
                }
                let val = rat_ord_p(v, p);
                let better = match best {
                    None => true,
                    // Strict improvement, or a tie broken toward the diagonal.
                    Some((bv, bi, bj)) => val < bv || (val == bv && bi != bj && i == j),
                };
                if better {
                    best = Some((val, i, j));
                }
            }
        }
        let (_, bi, bj) = best.expect("nondegenerate form has a nonzero entry");
        if bi != bj {
            // x_bi += x_bj brings the minimal entry onto the diagonal:
            // new a_bi,bi = a_bi,bi + 2 a_bi,bj + a_bj,bj, and 2 is a unit.
            for k in 0..n {
                let v = a.at(k, bi).clone() + a.at(k, bj).clone();
                a.set(k, bi, v);
            }
            for k in 0..n {
                let v = a.at(bi, k).clone() + a.at(bj, k).clone();
                a.set(bi, k, v);
            }
        }
        let pivot_idx = bi;
        let pivot = a.at(pivot_idx, pivot_idx).clone();
        debug_assert!(!pivot.is_zero());
        diag.push(pivot.clone());
        // Clear the pivot row/column symmetrically, then drop them.
        let mut next = exact_arith::QMat::zeros(n - 1, n - 1);
        let keep: Vec<usize> = (0..n).filter(|&i| i != pivot_idx).collect();
        for (ri, &i) in keep.iter().enumerate() {
            let ci = a.at(i, pivot_idx).clone() / pivot.clone();
            for (rj, &j) in keep.iter().enumerate() {
                let v = a.at(i, j).clone() - ci.clone() * a.at(pivot_idx, j).clone();
                next.set(ri, rj, v);
            }
        }
        a = next;
        n -= 1;
    }
    diag
}

fn rat_pow_int(p: &Int, e: i64) -> Rat {
    debug_assert!(e >= 0);
    Rat::from_integer(int_pow(p, e as u32))
}

/// Whether a p-adic unit (rational prime to p) is a quadratic non-residue.
fn unit_is_nonresidue(u: &Rat, p: &Int) -> bool {
    // kronecker is multiplicative: (a/b | p) = (a|p)(b|p) for b prime to p.
    let num = kronecker(u.numer(), p);
    let den = kronecker(u.denom(), p);
    debug_assert!(num != 0 && den != 0, "unit must be prime to p");
    num * den == -1
}

/// Smallest positive quadratic non-residue mod p.
fn least_nonresidue(p: &Int) -> Int {
    let mut n = Int::from(2);
    while kronecker(&n, p) != -1 {
        n += Int::one();
    }
    n
}
