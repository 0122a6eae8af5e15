//! Fourier-coefficient sums for Klingen–Eisenstein series of weight
//! (k, k, l, l) on Sp₈, specialized to a 2×4 evaluation matrix V.
//!
//! The central object is the finite sum
//!
//!   ε_{k,(k,k,l,l)}(A₀, A₁)(V)
//!     = Σ_R 2^{⌊(r(R)+1)/2⌋} · 𝒵(A₀,A₁,R,l) · P(B_R)(V) · Π_p F*_p(B_R, p^{l−r(R)−1}),
//!
//! where R runs over the 2×4 integer matrices making the 6×6 block
//! B_R = [[A₀, R/2], [ᵗR/2, A₁]] positive semidefinite, r(R) = rank B_R,
//! 𝒵 is a zeta/Dirichlet-L product determined by r(R), P is a bordered
//! determinant polynomial, and F*_p is the Siegel-series polynomial of the
//! block.  Every value is an exact rational.
//!
//! On top of ε sits the Hecke-type recursion ε(m, T, N) in the first matrix
//! argument, and the determinant test combining ε values with degree-two
//! spinor eigenvalues: a degree-one prime dividing neither ζ(9−2l) nor that
//! determinant cannot divide the standard-L-value–Fourier-coefficient product
//! obstructing the Klingen–Eisenstein congruence.
//!
//! No floating point appears anywhere in this crate.

pub mod certificate;
pub mod params;
pub mod recursion;
pub mod rterm;
pub mod sum;
pub mod values;

pub use certificate::{alpha_det, c3_certificate, C3Certificate, C3Options, C3Status};
pub use params::{EpsilonParams, RTerm};
pub use recursion::{
    epsilon_m, epsilon_m_with, epsilon_m_with_leaf, gauss_reduce, LeafEval, PeelOrder,
    RecursionConfig, Transversal,
};
pub use rterm::{brute_force_r_count, enumerate_r};
pub use sum::{epsilon_one, epsilon_one_with_stats, r_term_value, EpsilonStats};
pub use values::{bordered_p, zcal};

use exact_arith::ArithError;
use siegel_series::SiegelError;

#[derive(Debug, thiserror::Error)]
pub enum EpsilonError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
    #[error("modular-forms layer: {0}")]
    Forms(String),
    #[error("{0}")]
    Domain(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<qmodforms::QmfError> for EpsilonError {
    fn from(e: qmodforms::QmfError) -> Self {
        EpsilonError::Forms(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, EpsilonError>;
