//! Radical reduction and the star-normalized series used by Eisenstein
//! Fourier-coefficient sums.
//!
//! Those sums evaluate a normalized Siegel series on positive semidefinite
//! blocks that are frequently singular.  `radical_split` peels the radical
//! off exactly: it produces U ∈ GL_n(ℤ) with B[U] = T' ⊥ 0 and T' positive
//! definite of size rank(B).  The star series of B is then a normalization
//! of F_p(T', ·).
//!
//! Two normalizations are compatible with the functional-equation constraint:
//! the classical polynomial itself, and its reflection under
//! X → 1/(p^{r+1}X) — which by the functional equation is the same
//! polynomial scaled by the sign η.  Exactly one choice reproduces the
//! known end-to-end Eisenstein coefficient values; that choice (the
//! identity) is pinned here and asserted again by the consumers.

use crate::half_integral::{HalfIntegralMatrix, MAX_SIZE};
use crate::series::{siegel_series, Normalization, SiegelSeriesPoly};
use crate::{Result, SiegelError};
use exact_arith::{is_prime_int, kernel_saturated, smith_with_transforms, Int, QMat, Rat};
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// The admissible classical → star maps (see the module docs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarNormalization {
    /// Star equals the classical polynomial of the nondegenerate part.
    Identity,
    /// Star is the functional-equation reflection, i.e. η times the
    /// classical polynomial.
    FeReflected,
}

/// The normalization pinned by matching the known Eisenstein coefficient
/// values end to end; `Identity` is the unique admissible setting.
pub const PINNED_STAR: StarNormalization = StarNormalization::Identity;

/// Split off the radical of a positive semidefinite half-integral B:
/// returns (T', U) with U ∈ GL_n(ℤ), B[U] = T' ⊥ 0_{n-r}, and T' positive
/// definite of size r = rank(B).  The kernel is saturated, so the splitting
/// is exact over ℤ, not merely over ℚ.
pub fn radical_split(b: &HalfIntegralMatrix) -> Result<(HalfIntegralMatrix, QMat)> {
    let n = b.n();
    if !b.is_positive_semidefinite() {
        return Err(SiegelError::NotPsd);
    }
    let kernel = kernel_saturated(b.matrix());
    let corank = kernel.len();
    if corank == 0 {
        return Ok((b.clone(), QMat::identity(n)));
    }
    if corank == n {
        return Err(SiegelError::Degenerate);
    }
    let r = n - corank;
    // Smith form of the kernel rows: saturation means every elementary
    // divisor is 1, so the first `corank` rows of v⁻¹ span the kernel
    // lattice and the remaining rows complete them to a basis of ℤⁿ.
    let (_u, d, v) = smith_with_transforms(&kernel);
    for (i, row) in d.iter().enumerate().take(corank) {
        if !row[i].is_one() {
            return Err(SiegelError::Internal(
                "saturated kernel with a nontrivial elementary divisor".into(),
            ));
        }
    }
    let vq = QMat::from_int_rows(&v);
    let vinv = vq
        .inverse()
        .map_err(|_| SiegelError::Internal("Smith transform not invertible".into()))?;
    // Columns of U: the r completion vectors first, then the kernel basis.
    let mut u = QMat::zeros(n, n);
    for j in 0..n {
        let src = if j < r { corank + j } else { j - r };
        for i in 0..n {
            u.set(i, j, vinv.at(src, i).clone());
        }
    }
    if !u.det().abs().is_one() {
        return Err(SiegelError::Internal("radical completion is not unimodular".into()));
    }
    let split = b.matrix().congruence(&u);
    // The congruence must be exactly T' ⊥ 0.
    for i in 0..n {
        for j in 0..n {
            if (i >= r || j >= r) && !split.at(i, j).is_zero() {
                return Err(SiegelError::Internal(
                    "radical block failed to vanish exactly".into(),
                ));
            }
        }
    }
    let tprime = QMat::from_rows(
        (0..r).map(|i| (0..r).map(|j| split.at(i, j).clone()).collect()).collect(),
    );
    if !tprime.is_positive_definite() {
        return Err(SiegelError::Internal(
            "nondegenerate part of a psd form is not positive definite".into(),
        ));
    }
    Ok((HalfIntegralMatrix::new(tprime)?, u))
}

/// Star series under the pinned normalization.
pub fn siegel_series_star(b: &HalfIntegralMatrix, p: &Int) -> Result<SiegelSeriesPoly> {
    siegel_series_star_with(b, p, PINNED_STAR)
}

/// Star series under an explicit normalization choice.  Results are memoized
/// per (form, prime, normalization); the table is safe to share across
/// threads.
pub fn siegel_series_star_with(
    b: &HalfIntegralMatrix,
    p: &Int,
    norm: StarNormalization,
) -> Result<SiegelSeriesPoly> {
    let n = b.n();
    if n == 0 || n > MAX_SIZE {
        return Err(SiegelError::UnsupportedSize(n));
    }
    if !is_prime_int(p) {
        return Err(SiegelError::InvalidPrime(p.to_string()));
    }
    let key = format!("{}|{}|{:?}", b.canonical_key(), p, norm);
    if let Some(hit) = memo().lock().expect("star memo poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let poly = if b.matrix().rank() == 0 {
        // The zero block: every character is trivial and the series is 1.
        SiegelSeriesPoly::one(p.clone(), Normalization::Star, 0)
    } else {
        let (tprime, _u) = radical_split(b)?;
        // At odd p, collapse the whole Z_p-congruence class to its Jordan
        // representative: distinct blocks with the same local structure then
        // share one cache entry and the walk runs on a diagonal form.
        let reduced = if *p == Int::from(2) {
            tprime
        } else {
            crate::jordan::zp_canonical_form(&tprime, p)?
        };
        let rkey = format!("{}|{}|{:?}", reduced.canonical_key(), p, norm);
        let cached = memo().lock().expect("star memo poisoned").get(&rkey).cloned();
        match cached {
            Some(hit) => hit,
            None => {
                let f = siegel_series(&reduced, p)?;
                let scale = match norm {
                    StarNormalization::Identity => Int::one(),
                    StarNormalization::FeReflected => Int::from(f.fe_sign()),
                };
                let coeffs = f.coeffs().iter().map(|c| c * &scale).collect();
                let poly = SiegelSeriesPoly::new_raw(
                    p.clone(),
                    coeffs,
                    Normalization::Star,
                    f.rank(),
                    f.fe_sign(),
                );
                memo()
                    .lock()
                    .expect("star memo poisoned")
                    .insert(rkey, poly.clone());
                poly
            }
        }
    };
    memo().lock().expect("star memo poisoned").insert(key, poly.clone());
    Ok(poly)
}

fn memo() -> &'static Mutex<HashMap<String, SiegelSeriesPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<String, SiegelSeriesPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Evaluate the star series at the rational point x (the shape consumers
/// need: x = p^m for integer m ≥ 0).
pub fn star_value(b: &HalfIntegralMatrix, p: &Int, x: &Rat) -> Result<Rat> {
    Ok(siegel_series_star(b, p)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nondegenerate_forms_split_trivially() {
        let b = HalfIntegralMatrix::diagonal(&[1, 3]);
        let (t, u) = radical_split(&b).unwrap();
        assert_eq!(t, b);
        assert_eq!(u, QMat::identity(2));
    }

    #[test]
    fn corank_one_examples() {
        let b = HalfIntegralMatrix::diagonal(&[1, 0]);
        let (t, _) = radical_split(&b).unwrap();
        assert_eq!(t.matrix(), &QMat::from_i64_rows(&[&[1]]));

        // [[2,2],[2,2]] has kernel (1,-1) and nondegenerate part (2).
        let b = HalfIntegralMatrix::from_i64_rows(&[&[2, 2], &[2, 2]]).unwrap();
        let (t, u) = radical_split(&b).unwrap();
        assert_eq!(t.matrix(), &QMat::from_i64_rows(&[&[2]]));
        // And the congruence relation holds exactly.
        let split = b.matrix().congruence(&u);
        assert_eq!(split, QMat::from_i64_rows(&[&[2, 0], &[0, 0]]));
    }

    #[test]
    fn higher_corank_split() {
        // diag(1) ⊥ [[2,2],[2,2]] ⊥ 0 inside a 4×4 block.
        let b = HalfIntegralMatrix::from_i64_rows(&[
            &[1, 0, 0, 0],
            &[0, 2, 2, 0],
            &[0, 2, 2, 0],
            &[0, 0, 0, 0],
        ])
        .unwrap();
        let (t, u) = radical_split(&b).unwrap();
        assert_eq!(t.n(), 2);
        assert!(t.is_positive_definite());
        // det(2T') is invariant: the form is equivalent to diag(1, 2).
        assert_eq!(t.det_two_t(), Int::from(8));
        assert!(u.det().abs().is_one());
    }

    #[test]
    fn zero_and_indefinite_blocks_are_rejected() {
        let z = HalfIntegralMatrix::diagonal(&[0, 0]);
        assert!(matches!(radical_split(&z), Err(SiegelError::Degenerate)));
        let ind = HalfIntegralMatrix::diagonal(&[1, -1]);
        assert!(matches!(radical_split(&ind), Err(SiegelError::NotPsd)));
    }

    #[test]
    fn star_of_identity_blocks() {
        // Odd p: the identity form is unimodular at p, so the series is 1
        // for every size.
        for n in 1..=6usize {
            for p in [3i64, 5, 7] {
                let f = siegel_series_star(&HalfIntegralMatrix::identity(n), &Int::from(p))
                    .unwrap();
                assert_eq!(f.coeffs(), &[Int::one()], "I_{n} at p = {p}");
                assert_eq!(f.rank(), n);
            }
        }
        // p = 2: sizes 1 and 2 are still trivial…
        for n in [1usize, 2] {
            let f =
                siegel_series_star(&HalfIntegralMatrix::identity(n), &Int::from(2)).unwrap();
            assert_eq!(f.coeffs(), &[Int::one()]);
        }
        // …but det(2·I₃) = 8 is not a dyadic unit, and the dyadic series of
        // the identity form genuinely has degree 2.
        let f = siegel_series_star(&HalfIntegralMatrix::identity(3), &Int::from(2)).unwrap();
        assert_eq!(f.coeffs(), &[Int::from(1), Int::from(0), Int::from(-16)]);
    }

    #[test]
    fn star_routes_singular_blocks_through_the_split() {
        let b = HalfIntegralMatrix::diagonal(&[1, 0]);
        let f = siegel_series_star(&b, &Int::from(5)).unwrap();
        assert_eq!(f.coeffs(), &[Int::one()]);
        assert_eq!(f.rank(), 1);

        let z = HalfIntegralMatrix::diagonal(&[0, 0, 0]);
        let f = siegel_series_star(&z, &Int::from(3)).unwrap();
        assert_eq!(f.coeffs(), &[Int::one()]);
        assert_eq!(f.rank(), 0);

        let b = HalfIntegralMatrix::from_i64_rows(&[&[2, 2, 0], &[2, 2, 0], &[0, 0, 9]])
            .unwrap();
        let f = siegel_series_star(&b, &Int::from(3)).unwrap();
        // Nondegenerate part diag(2, 9): det(2T') = 72, 𝔡 = 𝔡(-72) = -8,
        // so e = 2 at p = 3.
        assert_eq!(f.degree(), 2);
        assert_eq!(f.rank(), 2);
        assert!(f.functional_equation_holds());
    }

    #[test]
    fn reflected_normalization_differs_exactly_by_the_sign() {
        let i3 = HalfIntegralMatrix::identity(3);
        let p = Int::from(2);
        let id = siegel_series_star_with(&i3, &p, StarNormalization::Identity).unwrap();
        let re = siegel_series_star_with(&i3, &p, StarNormalization::FeReflected).unwrap();
        assert_eq!(id.fe_sign(), -1);
        let flipped: Vec<Int> = id.coeffs().iter().map(|c| -c).collect();
        assert_eq!(re.coeffs(), &flipped[..]);

        // With sign +1 the two normalizations coincide.
        let t = HalfIntegralMatrix::diagonal(&[3]);
        let p = Int::from(3);
        let id = siegel_series_star_with(&t, &p, StarNormalization::Identity).unwrap();
        let re = siegel_series_star_with(&t, &p, StarNormalization::FeReflected).unwrap();
        assert_eq!(id.coeffs(), re.coeffs());
    }

    #[test]
    fn star_functional_equation_is_a_laurent_identity() {
        let blocks = vec![
            HalfIntegralMatrix::identity(3),
            HalfIntegralMatrix::diagonal(&[1, 4]),
            HalfIntegralMatrix::diagonal(&[1, 0, 4]),
            HalfIntegralMatrix::diagonal(&[2, 18, 0]),
        ];
        for p in [2i64, 3] {
            for b in &blocks {
                let f = siegel_series_star(b, &Int::from(p)).unwrap();
                assert!(f.functional_equation_holds(), "{:?} at p = {p}", b.matrix());
            }
        }
    }

    #[test]
    fn memo_is_consistent_across_threads() {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                std::thread::spawn(|| {
                    let b = HalfIntegralMatrix::diagonal(&[1, 4, 9]);
                    siegel_series_star(&b, &Int::from(2)).unwrap()
                })
            })
            .collect();
        let mut results = handles.into_iter().map(|h| h.join().unwrap());
        let first = results.next().unwrap();
        assert!(results.all(|r| r == first));
        assert!(first.functional_equation_holds());
    }
}
