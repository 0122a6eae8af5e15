//! Half-integral symmetric matrices.
//!
//! A symmetric n×n rational matrix T is *half-integral* when 2T is integral
//! and the diagonal of T is integral; equivalently T[x] = ᵗxTx ∈ ℤ for every
//! integer vector x.  These are the Gram matrices (in the ½-convention) of
//! integral quadratic forms, and the natural domain of the local Siegel
//! series: b_p(T, s) and its polynomial F_p(T, X) depend on T exactly through
//! this data.

use crate::{Result, SiegelError};
use exact_arith::{Int, QMat, Rat};
use num::{One, Signed, Zero};

/// Largest matrix size the series routines accept.
pub const MAX_SIZE: usize = 6;

/// A symmetric rational matrix T with 2T integral and integral diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfIntegralMatrix {
    mat: QMat,
}

impl HalfIntegralMatrix {
    /// Wrap a symmetric matrix after checking half-integrality.
    pub fn new(mat: QMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(SiegelError::NotHalfIntegral("matrix is not square".into()));
        }
        if !mat.is_symmetric() {
            return Err(SiegelError::NotHalfIntegral("matrix is not symmetric".into()));
        }
        let n = mat.nrows();
        for i in 0..n {
            if !mat.at(i, i).is_integer() {
                return Err(SiegelError::NotHalfIntegral(format!(
                    "diagonal entry ({i},{i}) = {} is not an integer",
                    mat.at(i, i)
                )));
            }
            for j in 0..n {
                if !(mat.at(i, j) * Rat::from_integer(Int::from(2))).is_integer() {
                    return Err(SiegelError::NotHalfIntegral(format!(
                        "entry ({i},{j}) = {} is not half-integral",
                        mat.at(i, j)
                    )));
                }
            }
        }
        Ok(HalfIntegralMatrix { mat })
    }

    /// Build from the integer matrix 2T (must be symmetric with even diagonal).
    pub fn from_two_t(rows: &[Vec<Int>]) -> Result<Self> {
        let half = Rat::new(Int::one(), Int::from(2));
        let q = QMat::from_int_rows(rows).scale(&half);
        Self::new(q)
    }

    /// Convenience constructor from integer entries of T itself.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(QMat::from_i64_rows(rows))
    }

    /// The n×n identity matrix.
    pub fn identity(n: usize) -> Self {
        HalfIntegralMatrix { mat: QMat::identity(n) }
    }

    /// Diagonal matrix with the given integer entries.
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = QMat::zeros(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, Rat::from_integer(Int::from(d)));
        }
        HalfIntegralMatrix { mat: m }
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &QMat {
        &self.mat
    }

    /// The integer matrix 2T, row by row.
    pub fn two_t(&self) -> Vec<Vec<Int>> {
        let two = Rat::from_integer(Int::from(2));
        self.mat
            .scale(&two)
            .to_int_rows()
            .expect("2T is integral by the type invariant")
    }

    /// det(2T), the determinant invariant entering degree formulas.
    pub fn det_two_t(&self) -> Int {
        let two = Rat::from_integer(Int::from(2));
        self.mat.scale(&two).det().to_integer()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.mat.det().is_zero()
    }

    /// Positive semidefiniteness via exact pivoted LDL.
    pub fn is_positive_semidefinite(&self) -> bool {
        self.mat.is_positive_semidefinite()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.mat.is_positive_definite()
    }

    /// T[v] = ᵗvTv for an integer vector; always an integer.
    pub fn quad_value(&self, v: &[Int]) -> Int {
        assert_eq!(v.len(), self.n(), "vector length mismatch");
        let vr: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let mut acc = Rat::zero();
        for i in 0..self.n() {
            let mut row = Rat::zero();
            for j in 0..self.n() {
                row += self.mat.at(i, j) * &vr[j];
            }
            acc += &vr[i] * row;
        }
        debug_assert!(acc.is_integer(), "T[v] must be integral for integral v");
        acc.to_integer()
    }

    /// T[U] = ᵗUTU for an integral U; half-integrality is preserved.
    pub fn transform(&self, u: &QMat) -> Result<Self> {
        if !u.is_integral() {
            return Err(SiegelError::NotHalfIntegral("transform matrix must be integral".into()));
        }
        Self::new(self.mat.congruence(u))
    }

    /// T[U] for unimodular U (det = ±1): an equivalence of forms.
    pub fn unimodular_transform(&self, u: &QMat) -> Result<Self> {
        if !u.is_integral() || !u.det().abs().is_one() {
            return Err(SiegelError::NotHalfIntegral(
                "equivalence requires an integral matrix of determinant ±1".into(),
            ));
        }
        self.transform(u)
    }

    /// Canonical memo key: the size followed by the entries of 2T.
    pub fn canonical_key(&self) -> String {
        let mut s = format!("{}x{}:", self.n(), self.n());
        for row in self.two_t() {
            for e in row {
                s.push_str(&e.to_string());
                s.push(',');
            }
            s.push(';');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_half_integral_and_rejects_others() {
        // Off-diagonal halves are allowed.
        let t = HalfIntegralMatrix::new(QMat::from_rows(vec![
            vec![Rat::from_integer(1.into()), Rat::new(1.into(), 2.into())],
            vec![Rat::new(1.into(), 2.into()), Rat::from_integer(3.into())],
        ]))
        .unwrap();
        assert_eq!(t.det_two_t(), Int::from(11));

        // Half-integral diagonal is not.
        let bad = QMat::from_rows(vec![
            vec![Rat::new(1.into(), 2.into()), Rat::zero()],
            vec![Rat::zero(), Rat::from_integer(1.into())],
        ]);
        assert!(HalfIntegralMatrix::new(bad).is_err());

        // Quarter entries are not.
        let bad = QMat::from_rows(vec![
            vec![Rat::from_integer(1.into()), Rat::new(1.into(), 4.into())],
            vec![Rat::new(1.into(), 4.into()), Rat::from_integer(1.into())],
        ]);
        assert!(HalfIntegralMatrix::new(bad).is_err());

        // Asymmetric is not.
        let bad = QMat::from_rows(vec![
            vec![Rat::from_integer(1.into()), Rat::zero()],
            vec![Rat::from_integer(1.into()), Rat::from_integer(1.into())],
        ]);
        assert!(HalfIntegralMatrix::new(bad).is_err());
    }

    #[test]
    fn quad_value_is_the_quadratic_form() {
        // T = [[1, 1/2], [1/2, 1]]: T[(x,y)] = x² + xy + y².
        let t = HalfIntegralMatrix::from_two_t(&[
            vec![Int::from(2), Int::from(1)],
            vec![Int::from(1), Int::from(2)],
        ])
        .unwrap();
        assert_eq!(t.quad_value(&[Int::from(2), Int::from(3)]), Int::from(4 + 6 + 9));
    }

    #[test]
    fn transform_matches_congruence() {
        let t = HalfIntegralMatrix::diagonal(&[1, 2]);
        let u = QMat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let tu = t.unimodular_transform(&u).unwrap();
        // ᵗU diag(1,2) U with U = [[1,1],[0,1]]: [[1,1],[1,3]].
        assert_eq!(tu.matrix(), &QMat::from_i64_rows(&[&[1, 1], &[1, 3]]));
        assert_eq!(tu.det_two_t(), t.det_two_t());
    }

    #[test]
    fn canonical_key_separates_forms() {
        let a = HalfIntegralMatrix::diagonal(&[1, 2]);
        let b = HalfIntegralMatrix::diagonal(&[2, 1]);
        assert_ne!(a.canonical_key(), b.canonical_key());
        assert_eq!(a.canonical_key(), HalfIntegralMatrix::diagonal(&[1, 2]).canonical_key());
    }
}
