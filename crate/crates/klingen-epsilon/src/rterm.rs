//! Enumeration of the admissible 2×4 matrices R.
//!
//! The block [[A₀, R/2], [ᵗR/2, A₁]] is positive semidefinite iff the Schur
//! complement A₀ − (R/2)·A₁⁻¹·ᵗ(R/2) is (A₁ is positive definite), so each
//! row ρ of R obeys the ellipsoid bound ρ·A₁⁻¹·ᵗρ ≤ 4·(A₀)_{ii}.  Rows are
//! generated by the Fincke–Pohst interval recursion on the quadratic
//! supplement of A₁⁻¹ — entirely in exact arithmetic, with integer square
//! roots supplying the interval endpoints — and pairs of rows are then kept
//! when the 2×2 Schur complement is positive semidefinite.

use crate::params::{EpsilonParams, RTerm};
use crate::{EpsilonError, Result};
use exact_arith::rational::rat_int;
use exact_arith::{Int, QMat, Rat};
use num::{Integer, One, Signed, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The complete list of admissible R, ordered lexicographically by the
/// flattened integer entries.
pub fn enumerate_r(params: &EpsilonParams) -> Result<Vec<RTerm>> {
    let bounds: Vec<Rat> = (0..2)
        .map(|i| params.a0().matrix().at(i, i).clone() * rat_int(4))
        .collect();
    let max_bound = bounds.iter().max().expect("two rows").clone();
    let mut all_rows = rows_in_ellipsoid(params.a1_inv(), &max_bound);
    all_rows.sort();

    // Cache ρ·A₁⁻¹ per candidate row once; every Schur entry is then a short
    // dot product.
    let images: Vec<Vec<Rat>> = all_rows
        .iter()
        .map(|row| {
            let v: Vec<Rat> = row.iter().map(|e| Rat::from_integer(e.clone())).collect();
            params.a1_inv().mul_vec(&v)
        })
        .collect();
    let norms: Vec<Rat> = all_rows
        .iter()
        .zip(&images)
        .map(|(row, im)| dot(row, im))
        .collect();

    let a00 = params.a0().matrix().at(0, 0).clone();
    let a01 = params.a0().matrix().at(0, 1).clone();
    let a11 = params.a0().matrix().at(1, 1).clone();
    let quarter = Rat::new(Int::one(), Int::from(4));

    let first: Vec<usize> = (0..all_rows.len())
        .filter(|&i| norms[i] <= bounds[0])
        .collect();
    let second: Vec<usize> = (0..all_rows.len())
        .filter(|&i| norms[i] <= bounds[1])
        .collect();

    let pair_worker = |&i: &usize| -> Result<Vec<RTerm>> {
        let mut found = Vec::new();
        let s00 = &a00 - &norms[i] * &quarter;
        for &j in &second {
            // 2×2 Schur complement of A₁ in the block: psd iff the block is.
            let s01 = &a01 - dot(&all_rows[j], &images[i]) * &quarter;
            let s11 = &a11 - &norms[j] * &quarter;
            if s00 < Rat::zero() || s11 < Rat::zero() || &s00 * &s11 < &s01 * &s01 {
                continue;
            }
            let r = vec![all_rows[i].clone(), all_rows[j].clone()];
            match RTerm::new(params, r)? {
                Some(term) => found.push(term),
                None => {
                    return Err(EpsilonError::Internal(
                        "Schur-admissible pair produced a non-psd block".into(),
                    ))
                }
            }
        }
        Ok(found)
    };

    #[cfg(feature = "parallel")]
    let chunks: Vec<Vec<RTerm>> = first.par_iter().map(pair_worker).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Vec<RTerm>> = first.iter().map(pair_worker).collect::<Result<_>>()?;

    Ok(chunks.into_iter().flatten().collect())
}

fn dot(row: &[Int], image: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (a, b) in row.iter().zip(image) {
        acc += Rat::from_integer(a.clone()) * b;
    }
    acc
}

/// All x ∈ Z⁴ with x·Q·ᵗx ≤ bound, Q positive definite.
///
/// Fincke–Pohst: write Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)² via the
/// quadratic supplement, then walk coordinates from the last to the first;
/// at each level the residual budget confines x_i to an explicit integer
/// interval.
pub(crate) fn rows_in_ellipsoid(q: &QMat, bound: &Rat) -> Vec<Vec<Int>> {
    let n = q.nrows();
    debug_assert_eq!(n, q.ncols());
    if bound < &Rat::zero() {
        return Vec::new();
    }
    // Quadratic supplement (Cohen, Alg. 2.7.7): diagonal weights on q_ii,
    // mixing coefficients on q_ij for j > i.
    let mut s: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| q.at(i, j).clone()).collect())
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let saved = s[i][j].clone();
            s[j][i] = saved.clone();
            s[i][j] = saved / s[i][i].clone();
        }
        for k in (i + 1)..n {
            for l in k..n {
                let v = s[k][l].clone() - s[k][i].clone() * s[i][l].clone();
                s[k][l] = v;
            }
        }
    }

    let mut out = Vec::new();
    let mut x = vec![Int::zero(); n];
    descend(&s, n - 1, bound.clone(), &mut x, &mut out);
    out
}

/// Recursive level of the interval walk: budget t remains for coordinates
/// 0..=i, the tail of x is already fixed.
fn descend(s: &[Vec<Rat>], i: usize, t: Rat, x: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
    // u = Σ_{j>i} q_ij x_j — the affine shift of this coordinate.
    let mut u = Rat::zero();
    for j in (i + 1)..x.len() {
        u += s[i][j].clone() * Rat::from_integer(x[j].clone());
    }
    let (lo, hi) = match integer_interval(&t, &s[i][i], &u) {
        Some(iv) => iv,
        None => return,
    };
    let mut xi = lo;
    while xi <= hi {
        let shifted = Rat::from_integer(xi.clone()) + &u;
        let spent = s[i][i].clone() * &shifted * &shifted;
        let rem = t.clone() - spent;
        debug_assert!(rem >= Rat::zero());
        x[i] = xi.clone();
        if i == 0 {
            out.push(x.clone());
        } else {
            descend(s, i - 1, rem, x, out);
        }
        xi += Int::one();
    }
}

/// Integer solutions of q·(x + u)² ≤ t: the interval
/// [⌈(−s − nu)/du⌉, ⌊(s − nu)/du⌋] with s = ⌊√(⌊t·du²/q⌋)⌋, u = nu/du.
fn integer_interval(t: &Rat, q: &Rat, u: &Rat) -> Option<(Int, Int)> {
    if t < &Rat::zero() {
        return None;
    }
    let b = t / q; // (x + u)² ≤ b
    let nu = u.numer().clone();
    let du = u.denom().clone();
    debug_assert!(du.is_positive());
    // y = x·du + nu must satisfy y² ≤ b·du², an integer bound.
    let scaled = &b * Rat::from_integer(&du * &du);
    let cap = scaled.numer().div_floor(scaled.denom());
    debug_assert!(!cap.is_negative());
    let root = cap.sqrt();
    let lo = (-&root - &nu).div_ceil(&du);
    let hi = (root - nu).div_floor(&du);
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

/// Independent admissibility count: scan the a-priori coordinate box
/// |r_ij| ≤ 2√((A₀)_ii (A₁)_jj) — forced entrywise by the psd of the 2×2
/// principal minors pairing (A₀)_ii with (A₁)_jj — and test the full block
/// directly.  Exponential in the box, so only for test-sized instances.
pub fn brute_force_r_count(params: &EpsilonParams) -> Result<usize> {
    let mut limit = vec![vec![Int::zero(); 4]; 2];
    for (i, row) in limit.iter_mut().enumerate() {
        for (j, cap) in row.iter_mut().enumerate() {
            // ⌊√(4·a·b)⌋ computed on the floor of the rational product.
            let prod = params.a0().matrix().at(i, i).clone()
                * params.a1().matrix().at(j, j).clone()
                * rat_int(4);
            let floor = prod.numer().div_floor(prod.denom());
            *cap = floor.sqrt();
        }
    }

    let axis = |cap: &Int| -> Vec<Int> {
        let mut vals = Vec::new();
        let mut v = -cap.clone();
        while &v <= cap {
            vals.push(v.clone());
            v += Int::one();
        }
        vals
    };

    // Fix the first coordinate per worker; everything below is a plain
    // odometer over the remaining seven.
    let first_axis = axis(&limit[0][0]);
    let body = |v0: &Int| -> Result<usize> {
        let mut count = 0usize;
        let axes: Vec<Vec<Int>> = vec![
            axis(&limit[0][1]),
            axis(&limit[0][2]),
            axis(&limit[0][3]),
            axis(&limit[1][0]),
            axis(&limit[1][1]),
            axis(&limit[1][2]),
            axis(&limit[1][3]),
        ];
        let mut idx = vec![0usize; 7];
        loop {
            let entries: Vec<&Int> = idx.iter().zip(&axes).map(|(&i, ax)| &ax[i]).collect();
            let r = vec![
                vec![v0.clone(), entries[0].clone(), entries[1].clone(), entries[2].clone()],
                vec![
                    entries[3].clone(),
                    entries[4].clone(),
                    entries[5].clone(),
                    entries[6].clone(),
                ],
            ];
            if RTerm::new(params, r)?.is_some() {
                count += 1;
            }
            // Advance the odometer.
            let mut pos = 7;
            while pos > 0 {
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < axes[pos].len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    return Ok(count);
                }
            }
        }
    };

    #[cfg(feature = "parallel")]
    let counts: Vec<usize> = first_axis.par_iter().map(body).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let counts: Vec<usize> = first_axis.iter().map(body).collect::<Result<_>>()?;

    Ok(counts.into_iter().sum())
}
