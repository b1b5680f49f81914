//! Test functions fed to the transforms and verifiers, with decay metadata
//! and, where known, closed-form Mellin / Fourier-cosine transforms.

use crate::special::{gamma, zeta};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type MellinFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type CosineFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function f on (0, ∞) with the metadata the identity machinery needs.
///
/// `decay_exponent` is an m with f(x) = O(x^−m) at infinity; entries that
/// decay faster than any power carry `f64::INFINITY`. The Müntz- and
/// Poisson-type operations require m > 1 and reject slower entries at the
/// call site; the registry intentionally ships two m = 1 kernels whose
/// transforms are handled by the oscillatory tail machinery instead.
#[derive(Clone)]
pub struct TestFunction {
    label: String,
    eval: EvalFn,
    pub value_at_zero: f64,
    pub decay_exponent: f64,
    mellin: Option<MellinFn>,
    cosine: Option<CosineFn>,
    /// Interior points where f is not smooth; quadrature panels break here.
    pub breakpoints: Vec<f64>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("value_at_zero", &self.value_at_zero)
            .field("decay_exponent", &self.decay_exponent)
            .finish()
    }
}

impl TestFunction {
    pub fn new(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        value_at_zero: f64,
        decay_exponent: f64,
    ) -> Self {
        TestFunction {
            label: label.into(),
            eval: Arc::new(eval),
            value_at_zero,
            decay_exponent,
            mellin: None,
            cosine: None,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_mellin(
        mut self,
        m: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.mellin = Some(Arc::new(m));
        self
    }

    pub fn with_cosine(mut self, c: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.cosine = Some(Arc::new(c));
        self
    }

    pub fn with_breakpoints(mut self, pts: Vec<f64>) -> Self {
        self.breakpoints = pts;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn mellin_closed(&self, s: Complex64) -> Option<Complex64> {
        self.mellin.as_ref().map(|m| m(s))
    }

    pub fn cosine_closed(&self, w: f64) -> Option<f64> {
        self.cosine.as_ref().map(|c| c(w))
    }

    /// e^{−πx²}: self-reciprocal under the cosine transform.
    pub fn gaussian() -> Self {
        Self::scaled_gaussian_with_label("gaussian", PI)
    }

    /// e^{−αx²} for α > 0.
    pub fn scaled_gaussian(alpha: f64) -> Self {
        Self::scaled_gaussian_with_label(format!("gaussian-alpha{alpha}"), alpha)
    }

    fn scaled_gaussian_with_label(label: impl Into<String>, alpha: f64) -> Self {
        assert!(alpha > 0.0, "gaussian width must be positive");
        TestFunction::new(label, move |x| (-alpha * x * x).exp(), 1.0, f64::INFINITY)
            .with_mellin(move |s| {
                // int x^{s-1} e^{-a x^2} dx = Gamma(s/2) a^{-s/2} / 2
                0.5 * gamma(s / 2.0).expect("gamma pole inside Mellin strip")
                    * (-s / 2.0 * alpha.ln()).exp()
            })
            .with_cosine(move |w| {
                0.5 * (PI / alpha).sqrt() * (-PI * PI * w * w / alpha).exp()
            })
    }

    /// The step kernel ∫₀^∞ cos(2πyw) sin(2πx₀y)/y dy resolved in closed form:
    /// π/2 on [0, x₀), π/4 at the jump, 0 beyond. Only its closed-form
    /// transforms are used; the defining double integral is not absolutely
    /// convergent and is never evaluated numerically.
    pub fn davenport_kernel(x0: f64) -> Self {
        assert!(x0 > 0.0);
        TestFunction::new(
            format!("davenport-kernel-x{x0}"),
            move |w| {
                if w < x0 {
                    PI / 2.0
                } else if w == x0 {
                    PI / 4.0
                } else {
                    0.0
                }
            },
            PI / 2.0,
            f64::INFINITY, // compact support
        )
        .with_mellin(move |s| {
            // (pi/2) int_0^{x0} w^{s-1} dw = pi x0^s / (2 s)
            PI * (s * x0.ln()).exp() / (2.0 * s)
        })
        .with_cosine(move |w| {
            if w == 0.0 {
                PI * x0 / 2.0
            } else {
                (2.0 * PI * x0 * w).sin() / (4.0 * w)
            }
        })
        .with_breakpoints(vec![x0])
    }

    /// The smoothing function used by the Koshlyakov-identity machinery,
    /// resummed in closed form: f(w) = (π/4zw)(coth(πz/w) − 1) − 1/(4z²).
    /// Mellin transform πζ(s) z^{s−2} / (4 sin(πs/2)) on 0 < Re s < 1,
    /// f(0⁺) = −1/(4z²), decay −π/(4zw) + O(w⁻²).
    pub fn koshlyakov_f(z: f64) -> Self {
        assert!(z > 0.0);
        TestFunction::new(
            format!("koshlyakov-f-z{z}"),
            move |w| koshlyakov_f_closed(w, z),
            -1.0 / (4.0 * z * z),
            1.0,
        )
        .with_mellin(move |s| {
            let zr = zeta(s).expect("zeta pole inside Mellin strip");
            PI * zr * ((s - 2.0) * z.ln()).exp() / (4.0 * (PI * s / 2.0).sin())
        })
    }

    /// h(y) = (y(y+1))^{−1/2} ℱ(f)(log(1+1/y)) for f = e^{−y²/A}.
    /// Decays like ℱ(f)(0)/y; h(0⁺) = 0 faster than any power.
    pub fn motohashi_h(a_width: f64) -> Self {
        assert!(a_width > 0.0);
        TestFunction::new(
            format!("motohashi-h-a{a_width}"),
            move |y| motohashi_h_closed(y, a_width),
            0.0,
            1.0,
        )
    }
}

/// Closed form of the Koshlyakov smoothing function (see
/// [`TestFunction::koshlyakov_f`]); exposed for the route comparisons.
pub fn koshlyakov_f_closed(w: f64, z: f64) -> f64 {
    if w <= 0.0 {
        return -1.0 / (4.0 * z * z);
    }
    let x = PI * z / w;
    // coth(x) - 1 = 2 e^{-2x} / (1 - e^{-2x}); stable for large x
    let e = (-2.0 * x).exp();
    let coth_m1 = 2.0 * e / (1.0 - e);
    (PI / (4.0 * z * w)) * coth_m1 - 1.0 / (4.0 * z * z)
}

/// h(y) for the Gaussian f = e^{−y²/A}, using the closed-form cosine
/// transform ℱ(f)(w) = √(πA)/2 · e^{−π²Aw²}.
pub fn motohashi_h_closed(y: f64, a_width: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let l = (1.0 / y).ln_1p();
    let fc = 0.5 * (PI * a_width).sqrt() * (-PI * PI * a_width * l * l).exp();
    fc / (y * (y + 1.0)).sqrt()
}

/// The functions the CLI can address by label.
pub fn registry() -> Vec<TestFunction> {
    vec![
        named(TestFunction::gaussian(), "gaussian"),
        named(TestFunction::scaled_gaussian(0.25), "gaussian-wide"),
        named(TestFunction::davenport_kernel(2f64.sqrt()), "davenport-kernel"),
        named(TestFunction::koshlyakov_f(1.0), "koshlyakov-f"),
        named(TestFunction::motohashi_h(1.0), "motohashi-h"),
    ]
}

fn named(mut f: TestFunction, label: &str) -> TestFunction {
    f.label = label.to_string();
    f
}

/// Registry lookup by label.
pub fn lookup(label: &str) -> Option<TestFunction> {
    registry().into_iter().find(|f| f.label() == label)
}

/// Empirical tail estimate for Σ_{n>N} f(n/x): last-term magnitude with a
/// geometric extrapolation from the final ratio.
pub fn series_tail_estimate(f: &TestFunction, x: f64, n: u64) -> f64 {
    let t_last = f.eval(n as f64 / x).abs();
    if t_last == 0.0 {
        return 0.0;
    }
    let t_prev = f.eval((n - 1).max(1) as f64 / x).abs();
    let ratio = if t_prev > 0.0 { (t_last / t_prev).min(0.99) } else { 0.5 };
    t_last * ratio / (1.0 - ratio)
}
