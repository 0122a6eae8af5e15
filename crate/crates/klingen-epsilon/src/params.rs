//! Input data for the ε sums: weights (k, l), the outer 2×2 form A₀, the
//! inner 4×4 form A₁, and the integer evaluation matrix V.

use crate::{EpsilonError, Result};
use exact_arith::{Int, QMat, Rat};
use num::Zero;
use siegel_series::HalfIntegralMatrix;

/// Parameters of one ε_{k,(k,k,l,l)}(A₀, A₁)(V) evaluation.
///
/// Invariants enforced at construction: k, l even with k ≥ l ≥ 6 (the parity
/// makes the sum a class function of A₀, which the Hecke recursion relies
/// on), A₀ and A₁ positive definite of sizes 2 and 4, and V a 2×4 integer
/// matrix.
#[derive(Clone, Debug)]
pub struct EpsilonParams {
    k: u64,
    l: u64,
    a0: HalfIntegralMatrix,
    a1: HalfIntegralMatrix,
    v: QMat,
    // Cached derived data, all exact: A₁⁻¹ for the row ellipsoids, V·A₁·ᵗV
    // and the two determinants for the bordered polynomial.
    a1_inv: QMat,
    va1vt: QMat,
    det_va1vt: Rat,
    det_a0: Rat,
}

impl EpsilonParams {
    pub fn new(
        k: u64,
        l: u64,
        a0: HalfIntegralMatrix,
        a1: HalfIntegralMatrix,
        v: QMat,
    ) -> Result<Self> {
        if k % 2 != 0 || l % 2 != 0 || k < l || l < 6 {
            return Err(EpsilonError::Domain(format!(
                "weights must be even with k >= l >= 6, got k = {k}, l = {l}"
            )));
        }
        if a0.n() != 2 || a1.n() != 4 {
            return Err(EpsilonError::Domain(format!(
                "need a 2x2 outer form and a 4x4 inner form, got {}x{} and {}x{}",
                a0.n(),
                a0.n(),
                a1.n(),
                a1.n()
            )));
        }
        if !a0.is_positive_definite() || !a1.is_positive_definite() {
            return Err(EpsilonError::Domain(
                "both forms must be positive definite".into(),
            ));
        }
        if v.nrows() != 2 || v.ncols() != 4 || !v.is_integral() {
            return Err(EpsilonError::Domain(
                "the evaluation matrix must be 2x4 with integer entries".into(),
            ));
        }
        let a1_inv = a1
            .matrix()
            .inverse()
            .map_err(|_| EpsilonError::Internal("positive definite form not invertible".into()))?;
        let va1vt = v.mul(&a1.matrix().mul(&v.transpose()));
        let det_va1vt = va1vt.det();
        let det_a0 = a0.matrix().det();
        Ok(EpsilonParams { k, l, a0, a1, v, a1_inv, va1vt, det_va1vt, det_a0 })
    }

    /// The bundled evaluation instance: A₀ = 1₂, A₁ the quaternary form with
    /// det(2A₁) = 5, and a fixed full-rank V.
    pub fn with_default_matrices(k: u64, l: u64) -> Result<Self> {
        Self::new(
            k,
            l,
            default_a0(),
            default_a1(),
            default_v(),
        )
    }

    /// Same weights and inner data, different outer form (the shape the
    /// Hecke recursion produces).
    pub fn with_a0(&self, a0: HalfIntegralMatrix) -> Result<Self> {
        Self::new(self.k, self.l, a0, self.a1.clone(), self.v.clone())
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn a0(&self) -> &HalfIntegralMatrix {
        &self.a0
    }

    pub fn a1(&self) -> &HalfIntegralMatrix {
        &self.a1
    }

    pub fn v(&self) -> &QMat {
        &self.v
    }

    pub(crate) fn a1_inv(&self) -> &QMat {
        &self.a1_inv
    }

    pub(crate) fn va1vt(&self) -> &QMat {
        &self.va1vt
    }

    pub(crate) fn det_va1vt(&self) -> &Rat {
        &self.det_va1vt
    }

    pub(crate) fn det_a0(&self) -> &Rat {
        &self.det_a0
    }
}

/// Default outer form 1₂.
pub fn default_a0() -> HalfIntegralMatrix {
    HalfIntegralMatrix::identity(2)
}

/// Default inner form: doubled Gram matrix
/// [[2,1,0,1],[1,2,0,0],[0,0,2,1],[1,0,1,2]], determinant 5.
pub fn default_a1() -> HalfIntegralMatrix {
    let rows: Vec<Vec<Int>> = [
        [2i64, 1, 0, 1],
        [1, 2, 0, 0],
        [0, 0, 2, 1],
        [1, 0, 1, 2],
    ]
    .iter()
    .map(|r| r.iter().map(|&e| Int::from(e)).collect())
    .collect();
    HalfIntegralMatrix::from_two_t(&rows).expect("built-in form is half-integral")
}

/// Default evaluation matrix.
pub fn default_v() -> QMat {
    QMat::from_i64_rows(&[&[1, 0, 1, 0], &[1, 1, 0, 3]])
}

/// One admissible term of the R-sum: the integer matrix, the 6×6 block
/// B_R = [[A₀, R/2], [ᵗR/2, A₁]], and its rank r(R) ∈ {4, 5, 6}.
#[derive(Clone, Debug)]
pub struct RTerm {
    r: Vec<Vec<Int>>,
    block: HalfIntegralMatrix,
    rank: usize,
}

impl RTerm {
    /// Assemble the block and keep the term iff it is positive semidefinite.
    pub fn new(params: &EpsilonParams, r: Vec<Vec<Int>>) -> Result<Option<RTerm>> {
        if r.len() != 2 || r.iter().any(|row| row.len() != 4) {
            return Err(EpsilonError::Domain("R must be 2x4".into()));
        }
        let block = block_of(params, &r)?;
        if !block.is_positive_semidefinite() {
            return Ok(None);
        }
        let rank = block.matrix().rank();
        debug_assert!((4..=6).contains(&rank), "A1 > 0 forces rank >= 4");
        Ok(Some(RTerm { r, block, rank }))
    }

    pub fn r(&self) -> &[Vec<Int>] {
        &self.r
    }

    pub fn block(&self) -> &HalfIntegralMatrix {
        &self.block
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// R·ᵗV, the 2×2 coupling matrix of the bordered polynomial.
    pub(crate) fn r_vt(&self, params: &EpsilonParams) -> QMat {
        let mut m = QMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Rat::zero();
                for s in 0..4 {
                    acc += Rat::from_integer(self.r[i][s].clone()) * params.v().at(j, s).clone();
                }
                m.set(i, j, acc);
            }
        }
        m
    }
}

/// The 6×6 block [[A₀, R/2], [ᵗR/2, A₁]] as a half-integral matrix.
pub(crate) fn block_of(params: &EpsilonParams, r: &[Vec<Int>]) -> Result<HalfIntegralMatrix> {
    let a0 = params.a0().two_t();
    let a1 = params.a1().two_t();
    let mut rows: Vec<Vec<Int>> = vec![vec![Int::zero(); 6]; 6];
    for i in 0..2 {
        for j in 0..2 {
            rows[i][j] = a0[i][j].clone();
        }
        for j in 0..4 {
            rows[i][2 + j] = r[i][j].clone();
            rows[2 + j][i] = r[i][j].clone();
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            rows[2 + i][2 + j] = a1[i][j].clone();
        }
    }
    Ok(HalfIntegralMatrix::from_two_t(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::rat_int;

    #[test]
    fn default_instance_has_the_advertised_invariants() {
        let params = EpsilonParams::with_default_matrices(16, 8).unwrap();
        assert_eq!(params.a1().det_two_t(), Int::from(5));
        assert!(params.a1().is_positive_definite());
        assert_eq!(params.det_a0(), &rat_int(1));
        // V has full rank, so V·A₁·ᵗV is a positive definite 2×2 block.
        assert!(params.det_va1vt() > &rat_int(0));
    }

    #[test]
    fn weight_and_shape_violations_are_rejected() {
        assert!(EpsilonParams::with_default_matrices(16, 7).is_err());
        assert!(EpsilonParams::with_default_matrices(8, 16).is_err());
        assert!(EpsilonParams::with_default_matrices(16, 4).is_err());
        let bad_v = QMat::from_i64_rows(&[&[1, 0], &[0, 1]]);
        assert!(
            EpsilonParams::new(16, 8, default_a0(), default_a1(), bad_v).is_err()
        );
    }

    #[test]
    fn zero_r_always_yields_an_admissible_block() {
        let params = EpsilonParams::with_default_matrices(16, 8).unwrap();
        let zero = vec![vec![Int::zero(); 4], vec![Int::zero(); 4]];
        let term = RTerm::new(&params, zero).unwrap().unwrap();
        assert_eq!(term.rank(), 6);
        assert_eq!(
            term.block().det_two_t(),
            &params.a0().det_two_t() * &params.a1().det_two_t()
        );
    }
}
