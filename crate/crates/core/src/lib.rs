//! Vector-valued Dunkl calculus for the rank-2 hyperoctahedral group.
//!
//! The layers build on each other, exact arithmetic at the bottom:
//!
//! * [`algebra`]: rational-coefficient vector polynomials, the group action,
//!   and the Dunkl operators.
//! * [`harmonic`]: the recursively built harmonic basis, its eigenvalue
//!   structure, norms, and the harmonic projection.
//! * [`forms`]: the two bilinear pairings (differential and Gaussian-shifted)
//!   and the Laguerre-type radial extension of the basis.
//! * [`kernel`]: reproducing kernels for the pairings, exact and as floating
//!   point truncated sums, plus growth-rate helpers.
//! * [`weight`]: the 2x2 matrix weight on the circle built from Gauss
//!   hypergeometric functions, its closed-form degenerate cases, and the
//!   normalization constants.
//! * [`quad`]: tanh-sinh quadrature on the circle, Gaussian radial moments,
//!   the numeric check that quadrature against the weight reproduces the
//!   Gaussian pairing, and the Fourier eigenfunction check.

pub mod algebra;
pub mod error;
pub mod forms;
pub mod harmonic;
pub mod kernel;
pub mod quad;
pub mod weight;

pub use algebra::{GroupElement, Mono, Params, Q, ScalarPoly, VPoly};
pub use error::Error;
