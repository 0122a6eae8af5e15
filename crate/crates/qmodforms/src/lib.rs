//! Exact q-expansions of level-one modular forms.
//!
//! Everything here is classical: Eisenstein series E₄, E₆ (and general E_k),
//! the discriminant cusp form Δ, the echelonized (Victor Miller) basis of
//! S_k(SL₂(Z)) built from monomials E₄^a E₆^b Δ^c, Hecke operators on
//! q-expansions, and the decomposition of S_k into Hecke eigenforms. For the
//! weights in scope the eigenvalue field has degree ≤ 2, so eigen-coefficients
//! live in `NumberFieldElem` over Q or a real quadratic field Q(θ).
//!
//! On top of the degree-1 theory sit the degree-2 eigenvalue systems used by
//! the Klingen–Eisenstein machinery: Saito–Kurokawa lifts, the Siegel
//! Eisenstein series, and Klingen–Eisenstein series, each determined by its
//! spinor Euler factor via Σ_δ λ(T(p^δ))X^δ = (1 − p^{2k−4}X²)/L_p(X).
//!
//! All coefficient arithmetic is exact; there is no floating point anywhere
//! in this crate.

pub mod basis;
pub mod criteria;
pub mod degree2;
pub mod eigen;
pub mod qexp;

pub use basis::{cusp_basis, delta, dim_cusp_forms, dim_modular_forms, eisenstein, hecke_ts};
pub use criteria::{dfp_indivisibility, ribet_criterion, DfpOutcome};
pub use degree2::{
    dim_cusp_forms_degree2, dim_modular_forms_degree2, sk_eigenvalue, Degree2Form,
};
pub use eigen::{
    eigenform_from_cache, eigenform_to_cache, eigenforms, verify_phi_pm, verify_phi_with,
    EigenLabel, Eigenform,
};
pub use qexp::QExpansion;

use exact_arith::ArithError;

#[derive(thiserror::Error, Debug)]
pub enum QmfError {
    /// A Hecke operator or eigenvalue was requested past the stored
    /// truncation; computing it would silently read zeros, so it is an error.
    #[error("insufficient q-expansion precision: need {needed} coefficients, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, QmfError>;
