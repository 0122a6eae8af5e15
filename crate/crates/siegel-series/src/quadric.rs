//! Point counts on quadrics over 𝔽_p.
//!
//! The degree-1 coefficient of the overlattice sum behind a Siegel series is
//! p · #{lines ℓ ⊂ 𝔽_pⁿ : T[ℓ] ≡ 0 mod p}, so we need the number of
//! projective zeros of a quadratic form mod p.  For odd p the classical
//! closed form applies after diagonalizing mod p: a nondegenerate form of
//! rank r has p^{r-1} affine zeros for r odd, and p^{r-1} + (p-1)p^{r/2-1}·η
//! for r even, where η is the Legendre symbol of (-1)^{r/2} times the
//! discriminant.  Each kernel variable multiplies the count by p.  For p = 2
//! the form T[x] mod 2 is not determined by a symmetric 𝔽₂-Gram matrix, so we
//! enumerate the (at most 2⁶ - 1) lines directly.

use crate::half_integral::HalfIntegralMatrix;
use exact_arith::{kronecker, Int};
use num::{Integer, One, Zero};

/// #{x ∈ ℙⁿ⁻¹(𝔽_p) : T[x] ≡ 0 mod p}.
pub fn projective_zero_count(t: &HalfIntegralMatrix, p: &Int) -> Int {
    if p == &Int::from(2) {
        return projective_zero_count_brute(t, p);
    }
    let n = t.n();
    let (rank, diag) = diagonalize_mod_p(t, p);
    let affine = if rank == 0 {
        pow_int(p, n as u32)
    } else {
        let mut prod = Int::one();
        for d in &diag {
            prod = (&prod * d).mod_floor(p);
        }
        if rank % 2 == 1 {
            pow_int(p, (n - 1) as u32)
        } else {
            // η = χ((-1)^{r/2} · det of the nondegenerate part).
            let mut arg = prod;
            if (rank / 2) % 2 == 1 {
                arg = -arg;
            }
            let eta = kronecker(&arg, p);
            let main = pow_int(p, (n - 1) as u32);
            let osc = (p - Int::one()) * pow_int(p, (n - rank / 2 - 1) as u32);
            match eta {
                1 => main + osc,
                -1 => main - osc,
                _ => unreachable!("diagonal entries are units mod p"),
            }
        }
    };
    let den = p - Int::one();
    let num = affine - Int::one();
    debug_assert!(num.mod_floor(&den).is_zero());
    num / den
}

/// Direct enumeration over projective representatives; exact for every p,
/// feasible only for small pⁿ.  Serves as the p = 2 path and as the oracle
/// for the closed form.
pub fn projective_zero_count_brute(t: &HalfIntegralMatrix, p: &Int) -> Int {
    let n = t.n();
    let mut count = Int::zero();
    for_each_projective_rep(n, p, |x| {
        if t.quad_value(x).mod_floor(p).is_zero() {
            count += 1;
        }
    });
    count
}

/// Visit one representative of every point of ℙⁿ⁻¹(𝔽_p): vectors whose first
/// nonzero coordinate is 1.
pub fn for_each_projective_rep<F: FnMut(&[Int])>(n: usize, p: &Int, mut f: F) {
    let mut x = vec![Int::zero(); n];
    for lead in 0..n {
        for v in &mut x {
            *v = Int::zero();
        }
        x[lead] = Int::one();
        // Odometer over the coordinates after `lead`.
        loop {
            f(&x);
            let mut pos = n;
            for j in (lead + 1..n).rev() {
                x[j] += 1;
                if x[j] < *p {
                    pos = j;
                    break;
                }
                x[j] = Int::zero();
            }
            if pos == n {
                break;
            }
        }
    }
}

/// Congruence-diagonalize the Gram matrix of T over 𝔽_p (p odd): returns the
/// rank and the unit diagonal entries.
fn diagonalize_mod_p(t: &HalfIntegralMatrix, p: &Int) -> (usize, Vec<Int>) {
    let n = t.n();
    let inv2 = mod_inverse(&Int::from(2), p);
    // g_ij = (2T)_ij / 2 mod p — the true Gram matrix of the form mod p.
    let two_t = t.two_t();
    let mut g: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| (&two_t[i][j] * &inv2).mod_floor(p)).collect())
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut diag = Vec::new();
    while !live.is_empty() {
        // Prefer a live index with nonzero diagonal.
        let pivot = live.iter().copied().find(|&i| !g[i][i].is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                // All live diagonals vanish: find a nonzero off-diagonal pair
                // and merge (row/col j into i) to create 2·g_ij ≠ 0 on it.
                let mut found = None;
                'outer: for (a, &i) in live.iter().enumerate() {
                    for &j in &live[a + 1..] {
                        if !g[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    None => break, // the live block is identically zero
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = (&g[i][k] + &g[j][k]).mod_floor(p);
                            g[i][k] = v;
                        }
                        for row in g.iter_mut() {
                            let v = (&row[i] + &row[j]).mod_floor(p);
                            row[i] = v;
                        }
                        i
                    }
                }
            }
        };
        let d = g[pivot][pivot].clone();
        let dinv = mod_inverse(&d, p);
        let others: Vec<usize> = live.iter().copied().filter(|&i| i != pivot).collect();
        for &r in &others {
            let lam = (&g[r][pivot] * &dinv).mod_floor(p);
            if lam.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = (&g[r][c] - &lam * &g[pivot][c]).mod_floor(p);
                g[r][c] = v;
            }
            for row in g.iter_mut() {
                let v = (&row[r] - &lam * &row[pivot]).mod_floor(p);
                row[r] = v;
            }
        }
        diag.push(d);
        live.retain(|&i| i != pivot);
    }
    (diag.len(), diag)
}

fn mod_inverse(a: &Int, p: &Int) -> Int {
    let a = a.mod_floor(p);
    let e = Int::extended_gcd(&a, p);
    debug_assert!(e.gcd.is_one(), "inverse of a non-unit mod p");
    e.x.mod_floor(p)
}

pub(crate) fn pow_int(p: &Int, k: u32) -> Int {
    num::pow::pow(p.clone(), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::QMat;
    use exact_arith::Rat;

    fn half(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    fn family() -> Vec<HalfIntegralMatrix> {
        vec![
            HalfIntegralMatrix::diagonal(&[1]),
            HalfIntegralMatrix::diagonal(&[3]),
            HalfIntegralMatrix::diagonal(&[1, 1]),
            HalfIntegralMatrix::diagonal(&[1, -1]),
            HalfIntegralMatrix::diagonal(&[2, 3]),
            HalfIntegralMatrix::diagonal(&[5, 15]),
            // Hyperbolic plane in half-integral coordinates.
            HalfIntegralMatrix::new(QMat::from_rows(vec![
                vec![half(0, 1), half(1, 2)],
                vec![half(1, 2), half(0, 1)],
            ]))
            .unwrap(),
            HalfIntegralMatrix::diagonal(&[1, 1, 1]),
            HalfIntegralMatrix::diagonal(&[1, 2, 15]),
            HalfIntegralMatrix::diagonal(&[0, 1, 3]),
            HalfIntegralMatrix::new(QMat::from_rows(vec![
                vec![half(1, 1), half(1, 2), half(0, 1)],
                vec![half(1, 2), half(1, 1), half(1, 2)],
                vec![half(0, 1), half(1, 2), half(2, 1)],
            ]))
            .unwrap(),
            HalfIntegralMatrix::diagonal(&[1, 1, 1, 1]),
            HalfIntegralMatrix::diagonal(&[1, -1, 2, -2]),
            HalfIntegralMatrix::diagonal(&[1, 3, 5, 7, 9]),
        ]
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for p in [3i64, 5, 7, 11, 13] {
            let p = Int::from(p);
            for t in family() {
                assert_eq!(
                    projective_zero_count(&t, &p),
                    projective_zero_count_brute(&t, &p),
                    "count mismatch for {:?} at p = {}",
                    t.matrix(),
                    p
                );
            }
        }
    }

    #[test]
    fn known_counts() {
        // x² + y² over 𝔽₃ is anisotropic: no projective zeros.
        let t = HalfIntegralMatrix::diagonal(&[1, 1]);
        assert_eq!(projective_zero_count(&t, &Int::from(3)), Int::zero());
        // Over 𝔽₅, -1 is a square: two isotropic lines.
        assert_eq!(projective_zero_count(&t, &Int::from(5)), Int::from(2));
        // A hyperbolic plane always has exactly two isotropic lines.
        let h = HalfIntegralMatrix::new(QMat::from_rows(vec![
            vec![half(0, 1), half(1, 2)],
            vec![half(1, 2), half(0, 1)],
        ]))
        .unwrap();
        for p in [3i64, 5, 7, 11] {
            assert_eq!(projective_zero_count(&h, &Int::from(p)), Int::from(2));
        }
        // Sum of three unit squares mod 2: lines of even weight.
        let i3 = HalfIntegralMatrix::identity(3);
        assert_eq!(projective_zero_count(&i3, &Int::from(2)), Int::from(3));
        // Zero form: the whole projective space.
        let z = HalfIntegralMatrix::diagonal(&[0, 0]);
        assert_eq!(projective_zero_count(&z, &Int::from(7)), Int::from(8));
    }

    #[test]
    fn projective_enumeration_has_the_right_size() {
        for (n, p, expect) in [(1usize, 5i64, 1i64), (2, 3, 4), (3, 2, 7), (2, 7, 8)] {
            let mut seen = 0i64;
            for_each_projective_rep(n, &Int::from(p), |_| seen += 1);
            assert_eq!(seen, expect);
        }
    }
}
