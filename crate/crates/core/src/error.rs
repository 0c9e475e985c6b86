//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input mixes total degrees where a single homogeneous degree is required.
    #[error("polynomial is not homogeneous (degrees {0} and {1} both present)")]
    NotHomogeneous(u32, u32),

    /// Input is not a joint parity eigenvector of the two axis reflections.
    #[error("polynomial is not an eigenvector of the axis reflections")]
    NotEigenvector,

    /// A basis norm vanishes, so kernel normalization by 1/nu is undefined.
    #[error("norm of basis entry (n={n}, i={i}) vanishes at these parameters")]
    ZeroNorm { n: u32, i: u8 },

    /// Evaluation point lies on a reflection mirror.
    #[error("point ({0}, {1}) lies on a reflection mirror")]
    OnMirror(f64, f64),

    /// Parameters outside the open square |k0 + k1| < 1/2, |k1 - k0| < 1/2.
    #[error("parameters (k0={0}, k1={1}) lie outside the open validity square")]
    OutsideValiditySquare(f64, f64),

    /// Gamma function evaluated at a nonpositive integer.
    #[error("gamma function pole at {0}")]
    GammaPole(f64),

    /// Argument outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Hypergeometric series did not converge within the term cap.
    #[error("hypergeometric series did not converge: {0}")]
    Hypergeometric(String),

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
