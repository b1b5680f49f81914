//! Numerical laboratory for classical summation identities.
//!
//! Every identity in scope — Poisson's cosine summation, the ζ- and
//! ζ²-weighted Müntz formulas, the Berndt-type restricted-divisor formula,
//! Davenport's fractional-part expansion, Voronoi's divisor summation, the
//! Koshlyakov-function representations, and the Parseval-based
//! divisor-series rearrangement — is evaluated through two independent
//! computational routes (series/quadrature vs. Mellin contour), and each
//! verifier emits a [`report::VerificationReport`] with the residual and
//! convergence diagnostics.

pub mod arith;
pub mod quad;
pub mod report;
pub mod special;
pub mod testfn;
pub mod transform;
pub mod koshlyakov;
pub mod verify;

pub use arith::{ArithmeticSequence, DivisorSet, Sieve};
pub use num_complex::Complex64;
pub use quad::QuadSpec;
pub use report::VerificationReport;
pub use testfn::TestFunction;
pub use transform::{ContourSpec, SeriesSpec, Smoothing};
