//! Arithmetic substrate: arbitrary-precision rationals, small totally real
//! number fields Q(θ), degree-one prime valuations, Bernoulli machinery
//! (exact, mod-p, and χ-twisted), Kronecker symbols, and exact linear algebra
//! over Z and Q.
//!
//! Everything here is immutable after construction and safe to share across
//! threads. The only internal parallelism is the mod-p Bernoulli sweep, which
//! is deterministic in both execution modes.

pub mod bernoulli;
pub mod bigfloat;
pub mod chars;
pub mod factor;
pub mod matrix;
pub mod nf;
pub mod padic;
pub mod poly;
pub mod rational;

pub use bernoulli::{bernoulli, bernoulli_mod_p, bernoulli_mod_p_with, bernoulli_poly, is_regular_prime, rat_mod_p, zeta_negative};
pub use chars::{dirichlet_L_negative, fundamental_discriminant, generalized_bernoulli, kronecker, QuadCharacter};
pub use factor::{factorize, is_prime_int, Factorization};
pub use matrix::{hnf_rows, kernel_saturated, smith_with_transforms, FieldOps, LdlCert, Mat, QMat};
pub use nf::{nf_norm, NumberField, NumberFieldElem};
pub use padic::{degree_one_primes_above, nf_ord, DegreeOnePrime};
pub use rational::{Int, Rat};

/// Execution mode for the few operations with a data-parallel core.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and silently
/// degrades to sequential execution otherwise, so the public API and all
/// results are identical in both builds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Errors surfaced by the arithmetic layer.
#[derive(Debug, thiserror::Error)]
pub enum ArithError {
    #[error("zeta vanishes at negative even integers; not usable as a divisibility witness: s = {0}")]
    ZetaTrivialZero(i64),
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("p = {p} divides the discriminant of the minimal polynomial; ramified or inseparable reduction is unsupported")]
    RamifiedPrime { p: Int },
    #[error("valuation of a nonzero element exceeded Hensel precision p^{max_e}")]
    HenselPrecisionExceeded { max_e: u32 },
    #[error("ord of zero requested")]
    OrdOfZero,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("could not certify a complete factorization: composite cofactor {0} remains")]
    IncompleteFactorization(Int),
    #[error("root finding mod p unsupported for degree {degree} at p = {p}")]
    RootFindingUnsupported { degree: usize, p: Int },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, ArithError>;
