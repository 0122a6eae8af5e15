//! Local Siegel series of half-integral quadratic forms, computed exactly.
//!
//! For a nondegenerate half-integral symmetric matrix T of size n and a
//! prime p, the local Siegel series is the power series
//!
//! ```text
//!   b_p(T, s) = Σ_{A ∈ Sym_n(ℚ_p)/Sym_n(ℤ_p)} e_p(tr(TA)) · ν(A)^{-s},
//! ```
//!
//! where ν(A) is the denominator index of A.  After dividing by the
//! explicit rational factor γ_p(T; X) (with X = p^{-s}) the remainder
//! F_p(T, X) is a polynomial in X with integer coefficients, constant
//! term 1, and a functional equation under X → 1/(p^{n+1}X).
//!
//! This crate computes F_p three independent ways and cross-checks them:
//!
//! * [`siegel_series`] — the production path.  It expands the series over
//!   the finitely many overlattices of ℤⁿ on which the form stays integral,
//!   enumerated by a breadth-first search through index-p extensions, and
//!   then divides by the explicit Euler factors.  Every result is verified
//!   against the functional equation before it is returned.
//! * [`local_density_oracle`] — a definition-level evaluation for n ≤ 2
//!   that sums exponential sums over Sym_n(ℤ/p^M) directly and certifies
//!   stabilization by recomputing at level M+1.  It shares nothing with
//!   the production path beyond polynomial division.
//! * Frozen hand computations for small dyadic and odd-p forms appear in
//!   the unit tests.
//!
//! Singular but positive semidefinite blocks — the inputs that arise in
//! Eisenstein Fourier coefficient formulas — are handled by
//! [`radical_split`] and the star-normalized entry point
//! [`siegel_series_star`].

pub mod half_integral;
pub mod jordan;
pub mod lattice;
pub mod oracle;
pub mod quadric;
pub mod series;
pub mod star;

pub use half_integral::{HalfIntegralMatrix, MAX_SIZE};
pub use jordan::{jordan_profile, zp_canonical_form};
pub use oracle::{local_density_oracle, local_density_oracle_with, DEFAULT_ORACLE_BUDGET};
pub use series::{siegel_series, Normalization, SiegelSeriesPoly};
pub use star::{
    radical_split, siegel_series_star, siegel_series_star_with, star_value, StarNormalization,
    PINNED_STAR,
};

use thiserror::Error;

/// Errors shared by every entry point in this crate.
#[derive(Debug, Error)]
pub enum SiegelError {
    /// A lower-level exact-arithmetic failure.
    #[error("arithmetic error: {0}")]
    Arith(#[from] exact_arith::ArithError),
    /// The matrix size is outside the supported range 1..=6.
    #[error("matrices of size {0} are not supported (sizes 1..=6 only)")]
    UnsupportedSize(usize),
    /// The input is not a half-integral symmetric matrix.
    #[error("not half-integral: {0}")]
    NotHalfIntegral(String),
    /// The operation needs a nondegenerate (or nonzero) form.
    #[error("the form is degenerate")]
    Degenerate,
    /// The operation needs a positive semidefinite form.
    #[error("the form is not positive semidefinite")]
    NotPsd,
    /// The modulus passed as a prime is not prime.
    #[error("not a prime: {0}")]
    InvalidPrime(String),
    /// The definition-level oracle would enumerate more states than allowed.
    #[error("oracle needs {needed} states but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    /// The oracle's truncation did not stabilize at the requested level.
    #[error("oracle did not stabilize at level {0}; raise the level bound")]
    Unstable(u32),
    /// An internal cross-check failed; indicates a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SiegelError>;
