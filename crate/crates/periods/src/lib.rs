//! Period polynomials of level-one cusp forms and exact critical L-value
//! ratios.
//!
//! For an eigenform f of weight k, set w = k − 2. The period polynomial
//! r_f(X, Y) = Σ_{n=0}^{w} (−1)^n C(w,n) i^{n+1} r_n(f) X^{w−n} Y^n, with
//! r_n(f) = n!/(2π)^{n+1}·L(f, n+1) = Λ(f, n+1), lies in the subspace
//! W_w = ker(1 + S) ∩ ker(1 + U + U²) of V_w = Sym^w(Q²), and splits into
//! parity pieces r^± under (X, Y) ↦ (X, −Y). Hecke operators act on W_w
//! through Merel's family X_n, so r^±(f) can be recovered *exactly* — up to
//! one transcendental scalar ω± per parity — as a(2)-eigenvectors over the
//! Hecke field. Ratios of critical values with matching parity, and the
//! doubly-normalized products 𝐋(l₁)·𝐋(l₂)/⟨r⁺, r⁻⟩, are therefore exact
//! elements of the Hecke field; this crate computes them and cross-checks
//! against a rigorous interval-arithmetic evaluation of Λ(s).

pub mod eigenper;
pub mod hecke;
pub mod numeric;
pub mod space;

pub use eigenper::{
    bold_l_pair, critical_ratio, eigen_periods, haberland_pair, period_pairing, BoldL,
    PeriodVectors,
};
pub use hecke::{hecke_matrix, merel_family};
pub use numeric::LSeriesNumeric;
pub use space::{action_matrix, PeriodSpace};

use exact_arith::ArithError;
use qmodforms::QmfError;

#[derive(thiserror::Error, Debug)]
pub enum PeriodError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Forms(#[from] QmfError),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, PeriodError>;
