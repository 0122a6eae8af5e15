//! Hecke operators on period polynomials via Merel's universal family.
//!
//! For each n ≥ 1 the integer-matrix family
//!   X_n = { [a b; c d] : ad − bc = n, a > b ≥ 0, d > c ≥ 0 }
//! satisfies r_{T_n f} = Σ_{γ ∈ X_n} r_f | γ′ on period polynomials, where γ′
//! is a fixed orientation (transpose/adjugate) of γ determined once and for
//! all by the eigenvalue normalization below. With the plain substitution
//! action on V_w (no determinant twist) the resulting operator restricted to
//! W_w has the Hecke eigenvalues a(n) of weight w + 2 eigenforms directly.

use crate::space::action_matrix;
use crate::{PeriodError, Result};
use exact_arith::QMat;

/// Merel's family X_n: all [a b; c d] with ad − bc = n, a > b ≥ 0, d > c ≥ 0.
pub fn merel_family(n: i64) -> Vec<[[i64; 2]; 2]> {
    assert!(n >= 1);
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 0..a {
            // d > c ≥ 0 and ad = n + bc force c(a − b) < n.
            let mut c = 0;
            while c * (a - b) < n {
                if (n + b * c) % a == 0 {
                    let d = (n + b * c) / a;
                    if d > c {
                        out.push([[a, b], [c, d]]);
                    }
                }
                c += 1;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(dead_code)]
pub(crate) enum Variant {
    Plain,
    Transpose,
    Adjugate,
    AdjugateTranspose,
}

pub(crate) fn hecke_matrix_with(n: i64, w: usize, variant: Variant) -> QMat {
    let mut acc = QMat::zeros(w + 1, w + 1);
    for g in merel_family(n) {
        let [[a, b], [c, d]] = g;
        let h = match variant {
            Variant::Plain => [[a, b], [c, d]],
            Variant::Transpose => [[a, c], [b, d]],
            Variant::Adjugate => [[d, -b], [-c, a]],
            Variant::AdjugateTranspose => [[d, -c], [-b, a]],
        };
        acc = acc.add(&action_matrix(&h, w));
    }
    acc
}

/// Matrix of T_n on V_w in monomial coordinates; maps W_w into W_w and acts
/// there with the eigenvalues a(n) of the weight-(w+2) Hecke eigenforms.
pub fn hecke_matrix(n: i64, w: usize) -> Result<QMat> {
    if n < 1 {
        return Err(PeriodError::Domain(format!("Hecke index must be ≥ 1, got {n}")));
    }
    Ok(hecke_matrix_with(n, w, Variant::Transpose))
}
