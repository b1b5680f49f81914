//! Self-contained complex special functions for the contour integrands:
//! Γ(s), ζ(s) on and around the critical strip, K₀ for Re z > 0, Y₀ on the
//! positive axis, and the Euler–Mascheroni constant.

mod bessel;
mod gamma;
mod zeta;

pub use bessel::{bessel_j0, bessel_k0, bessel_k0_real, bessel_y0};
pub use gamma::gamma;
pub use zeta::zeta;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecialFnError {
    #[error("gamma pole at non-positive integer {0}")]
    GammaPole(f64),
    #[error("zeta pole at s = 1")]
    ZetaPole,
    #[error("argument outside supported domain: {0}")]
    Domain(String),
    #[error("accuracy not attainable at this argument: {0}")]
    AccuracyLoss(String),
}

/// Euler–Mascheroni constant γ to full f64 precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// γ as a function, matching the shape of the other evaluators.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_gamma_value() {
        assert!((euler_gamma() - 0.577215664901533).abs() < 1e-15);
        assert_eq!(2.0 * euler_gamma(), EULER_GAMMA + EULER_GAMMA);
    }

    #[test]
    fn euler_gamma_harmonic_oracle() {
        // H_n - ln n -> gamma; at n = 10^6 the gap is 1/(2n) + O(1/n^2) ~ 5e-7
        let n = 1_000_000u64;
        let mut h = 0.0f64;
        let mut comp = 0.0f64;
        for k in 1..=n {
            // Kahan accumulation: a million reciprocals lose digits otherwise
            let y = 1.0 / k as f64 - comp;
            let t = h + y;
            comp = (t - h) - y;
            h = t;
        }
        let approx = h - (n as f64).ln();
        assert!(
            (approx - EULER_GAMMA).abs() < 5e-7,
            "H_n - ln n = {approx}, gamma = {EULER_GAMMA}"
        );
    }
}
