//! Two-sided evaluation of the restricted-divisor (Berndt-type) formula, the
//! ζ-weighted cosine-transform theorem, Davenport's fractional-part series,
//! Voronoi's divisor summation, and its ζ² composite variant.

use crate::arith::{compose_c, restricted_sum, ArithError, ArithmeticSequence, DivisorSet, Sieve};
use crate::quad::{KahanSum, QuadSpec};
use crate::report::{params, ParamValue, VerificationReport};
use crate::special::EULER_GAMMA;
use crate::testfn::TestFunction;
use crate::transform::{
    fourier_cosine_auto, half_line_integral, log_weighted_integral, voronoi_kernel,
    zeta_mellin_line, ContourSpec, SeriesSpec, Smoothing, TransformError,
};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("davenport evaluation point rejected: {0}")]
    RationalPoint(String),
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Default per-identity tolerances; the CLI reads these, the acceptance
/// suite pins its own values.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("muntz", 1e-7),
    ("muntz2", 1e-7),
    ("poisson", 1e-9),
    ("theorem_1_1", 1e-5),
    ("berndt", 1e-6),
    ("davenport", 5e-3),
    ("voronoi_sigma", 1e-4),
    ("theorem_1_3", 1e-3),
    ("koshlyakov_2_5", 1e-6),
    ("theorem_2_1", 1e-4),
    ("parseval_3_5", 1e-6),
    ("rearrangement_3", 1e-3),
];

pub fn default_tolerance(identity: &str) -> f64 {
    DEFAULT_TOLERANCES
        .iter()
        .find(|(id, _)| *id == identity)
        .map(|(_, t)| *t)
        .unwrap_or(1e-6)
}

/// Σ_{n≤N} a(n) ℱ(f)(n)  vs  ½ Σ_{m≤N} (b(m)/m)(𝔐⁻¹(ζ𝔐f)(1/m) + f(0)/2).
pub fn verify_theorem_1_1(
    a: &ArithmeticSequence,
    f: &TestFunction,
    series: &SeriesSpec,
    contour: &ContourSpec,
    quad: &QuadSpec,
    tolerance: f64,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    contour.require_strip()?;
    let n = series.cutoff.min(a.cutoff());

    let lhs_at = |terms: u64| -> Result<Complex64, VerifyError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=terms.min(a.cutoff()) {
            let w = a.a(k)?;
            if w.norm_sqr() == 0.0 {
                continue;
            }
            acc += w * fourier_cosine_auto(f, k as f64, quad)?;
        }
        Ok(acc)
    };

    let line = zeta_mellin_line(f, contour, 1, quad)?;
    let rhs_with_line =
        |line: &crate::transform::ContourLine, terms: u64| -> Result<Complex64, VerifyError> {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 1..=terms.min(a.cutoff()) {
                let bm = a.b(m)?;
                if bm.norm_sqr() == 0.0 {
                    continue;
                }
                let inner = line.inverse_at(1.0 / m as f64).value
                    + real(f.value_at_zero / 2.0);
                acc += bm / m as f64 * inner;
            }
            Ok(0.5 * acc)
        };

    let lhs = lhs_at(n)?;
    let rhs = rhs_with_line(&line, n)?;
    // convergence diagnostics: doubled truncation and doubled height
    let lhs_2n = lhs_at((2 * n).min(a.cutoff()))?;
    let tall = ContourSpec::new(contour.abscissa, 2.0 * contour.height, contour.step)?;
    let tall_line = zeta_mellin_line(f, &tall, 1, quad)?;
    let rhs_2t = rhs_with_line(&tall_line, n)?;

    Ok(VerificationReport::new(
        "theorem_1_1",
        params(&[
            ("a", a.label().into()),
            ("fn", f.label().into()),
            ("N", n.into()),
            ("c", contour.abscissa.into()),
            ("height", contour.height.into()),
            ("step", contour.step.into()),
        ]),
        lhs,
        rhs,
        tolerance,
        vec![
            ("lhs_at_2N".into(), lhs_2n.re),
            ("lhs_shift_2N".into(), (lhs_2n - lhs).norm()),
            ("rhs_at_2T".into(), rhs_2t.re),
            ("rhs_shift_2T".into(), (rhs_2t - rhs).norm()),
        ],
        started,
    ))
}

/// Bilateral restricted-divisor summation for an even test function:
/// 2 Σ_{n≥1} a(n,S) f(n)  vs  Σ_{k∈S} (a(k)/k)(Σ_{|m|≤M} ∫ e^{2πimx/k} f dx − f(0)k).
///
/// The ∫ e^{2πimx/k} f dx factors through the cosine transform as 2ℱ(f)(|m|/k).
/// The series weight on the right is a(k); the b(k)-weighted reading is
/// recorded in the diagnostics for comparison.
pub fn verify_berndt(
    a: &ArithmeticSequence,
    s: &DivisorSet,
    f: &TestFunction,
    series: &SeriesSpec,
    quad: &QuadSpec,
    tolerance: f64,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let n = series.cutoff.min(a.cutoff());

    let mut lhs = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let w = restricted_sum(a, k, s)?;
        if w.norm_sqr() > 0.0 {
            lhs += 2.0 * w * f.eval(k as f64);
        }
    }

    let mut rhs = Complex64::new(0.0, 0.0);
    let mut rhs_printed = Complex64::new(0.0, 0.0);
    let mut m_tail = 0.0f64;
    for &k in s.members() {
        if k > n {
            break;
        }
        let kf = k as f64;
        // inner bilateral Fourier sum: m = 0 gives 2 F(f)(0) = int_R f
        let mut inner = KahanSum::default();
        inner.add(2.0 * fourier_cosine_auto(f, 0.0, quad)?);
        let mut m = 1u64;
        loop {
            let term = 4.0 * fourier_cosine_auto(f, m as f64 / kf, quad)?;
            inner.add(term);
            if term.abs() < quad.abs_tol && m >= 2 * k {
                m_tail = m_tail.max(term.abs());
                break;
            }
            if m > 10_000 {
                m_tail = m_tail.max(term.abs());
                break;
            }
            m += 1;
        }
        let bracket = real(inner.value() - f.value_at_zero * kf);
        rhs += a.a(k)? / kf * bracket;
        rhs_printed += a.b(k)? / kf * bracket;
    }

    Ok(VerificationReport::new(
        "berndt",
        params(&[
            ("a", a.label().into()),
            (
                "S",
                format!(
                    "{{{}}}",
                    s.members()
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
                .as_str()
                .into(),
            ),
            ("fn", f.label().into()),
            ("N", n.into()),
        ]),
        lhs,
        rhs,
        tolerance,
        vec![
            ("rhs_printed_b_weights".into(), rhs_printed.re),
            ("printed_residual".into(), (lhs - rhs_printed).norm()),
            ("m_tail_estimate".into(), m_tail),
        ],
        started,
    ))
}

/// Which weights drive the fractional-part series.
#[derive(Clone, Debug)]
pub enum DavenportWeights {
    /// b = μ (equivalently a = e): the flagship case with RHS −sin(2πx)/π.
    Mobius,
    /// A caller-supplied b; the conjugate side uses a = b ∗ 1.
    Custom(ArithmeticSequence),
}

/// Evaluation points accepted by the fractional-part verifier.
#[derive(Clone, Copy, Debug)]
pub enum IrrationalArg {
    Sqrt2,
    GoldenRatio,
    /// Trusted to be irrational; exactly representable rationals p/q with
    /// q ≤ 10⁴ are rejected.
    Value(f64),
}

impl IrrationalArg {
    pub fn value(self) -> Result<f64, VerifyError> {
        match self {
            IrrationalArg::Sqrt2 => Ok(2f64.sqrt()),
            IrrationalArg::GoldenRatio => Ok((1.0 + 5f64.sqrt()) / 2.0),
            IrrationalArg::Value(x) => {
                if !x.is_finite() {
                    return Err(VerifyError::RationalPoint("non-finite".into()));
                }
                for q in 1..=10_000u64 {
                    if (x * q as f64).fract() == 0.0 {
                        return Err(VerifyError::RationalPoint(format!(
                            "{x} is exactly {}/{q}",
                            x * q as f64
                        )));
                    }
                }
                Ok(x)
            }
        }
    }
}

/// Σ (b(n)/n)({nx} − ½)  vs  −(1/π) Σ (a(n)/n) sin(2πnx).
///
/// The left side converges conditionally at best; it is evaluated with Abel
/// damping e^{−δn} at δ and δ/2 and the linearly extrapolated value is
/// reported as the LHS.
pub fn verify_davenport(
    weights: &DavenportWeights,
    x: IrrationalArg,
    series: &SeriesSpec,
    tolerance: f64,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let xv = x.value()?;
    let xr = xv - xv.floor(); // reduce mod 1; both sides are 1-periodic
    let n = series.cutoff;

    let delta = match series.smoothing {
        Smoothing::Abel { delta } => delta,
        _ => 10.0 / n as f64,
    };
    let smoothed = |d: f64| -> Result<f64, VerifyError> {
        let mut acc = KahanSum::default();
        match weights {
            DavenportWeights::Mobius => {
                let sieve = Sieve::up_to(n);
                for k in 1..=n {
                    let mu = sieve.mobius(k)?;
                    if mu == 0 {
                        continue;
                    }
                    let fr = (k as f64 * xr).fract();
                    acc.add(mu as f64 / k as f64 * (fr - 0.5) * (-d * k as f64).exp());
                }
            }
            DavenportWeights::Custom(b) => {
                for k in 1..=n.min(b.cutoff()) {
                    let w = b.a(k)?.re;
                    if w == 0.0 {
                        continue;
                    }
                    let fr = (k as f64 * xr).fract();
                    acc.add(w / k as f64 * (fr - 0.5) * (-d * k as f64).exp());
                }
            }
        }
        Ok(acc.value())
    };

    let (s_d, s_d2, lhs, raw_spread) = match series.smoothing {
        Smoothing::None => {
            // unsmoothed: report the raw partial sum and its oscillation over
            // the last decade of terms as a conditional-convergence flag
            let raw = smoothed(0.0)?;
            let at_90 = {
                let keep = (0.9 * n as f64) as u64;
                let shorter = SeriesSpec::plain(keep.max(1));
                let mut acc = KahanSum::default();
                match weights {
                    DavenportWeights::Mobius => {
                        let sieve = Sieve::up_to(shorter.cutoff);
                        for k in 1..=shorter.cutoff {
                            let mu = sieve.mobius(k)?;
                            if mu != 0 {
                                let fr = (k as f64 * xr).fract();
                                acc.add(mu as f64 / k as f64 * (fr - 0.5));
                            }
                        }
                    }
                    DavenportWeights::Custom(b) => {
                        for k in 1..=shorter.cutoff.min(b.cutoff()) {
                            let w = b.a(k)?.re;
                            let fr = (k as f64 * xr).fract();
                            acc.add(w / k as f64 * (fr - 0.5));
                        }
                    }
                }
                acc.value()
            };
            (raw, raw, raw, (raw - at_90).abs())
        }
        _ => {
            let s1 = smoothed(delta)?;
            let s2 = smoothed(delta / 2.0)?;
            (s1, s2, 2.0 * s2 - s1, 0.0)
        }
    };

    // RHS: for Mobius weights a = e, a single sine term; otherwise a = b * 1
    let rhs = match weights {
        DavenportWeights::Mobius => -(2.0 * PI * xr).sin() / PI,
        DavenportWeights::Custom(b) => {
            let mut acc = KahanSum::default();
            for k in 1..=n.min(b.cutoff()) {
                let ak = b.resum(k)?.re; // a(k) = sum_{d|k} b(d)
                if ak != 0.0 {
                    acc.add(ak / k as f64 * (2.0 * PI * k as f64 * xr).sin() * (-delta * k as f64).exp());
                }
            }
            -acc.value() / PI
        }
    };

    Ok(VerificationReport::new(
        "davenport",
        params(&[
            (
                "weights",
                match weights {
                    DavenportWeights::Mobius => "mobius".into(),
                    DavenportWeights::Custom(b) => b.label().into(),
                },
            ),
            ("x", xv.into()),
            ("N", n.into()),
            ("delta", delta.into()),
        ]),
        real(lhs),
        real(rhs),
        tolerance,
        vec![
            ("smoothed_at_delta".into(), s_d),
            ("smoothed_at_half_delta".into(), s_d2),
            ("unsmoothed_tail_spread".into(), raw_spread),
        ],
        started,
    ))
}

/// Voronoi summation for the divisor count:
/// f(0)/2 + Σ σ(n)f(n)  vs  ∫f(log+2γ) + 3f(0)/4 + Σ σ(n)𝒦(f)(n).
///
/// The 3f(0)/4 carries the boundary constant of the identity (the ζ²(0)f(0)
/// residue plus the f(0)/2 moved across); the classical text quoted alongside
/// the formula omits it, and that reading is recorded in the diagnostics.
pub fn verify_voronoi_sigma(
    f: &TestFunction,
    series: &SeriesSpec,
    quad: &QuadSpec,
    tolerance: f64,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let n = series.cutoff;
    let sieve = Sieve::up_to(n.max(2));

    let mut lhs = KahanSum::default();
    lhs.add(f.value_at_zero / 2.0);
    for k in 1..=n {
        lhs.add(sieve.divisor_count(k)? as f64 * f.eval(k as f64));
    }

    let main_term = log_weighted_integral(f, quad)?
        + 2.0 * EULER_GAMMA * half_line_integral(f, quad)?;
    let mut kernel_sum = KahanSum::default();
    let mut last_kernel = 0.0;
    for k in 1..=n {
        let kv = voronoi_kernel(f, k as f64, quad)?;
        last_kernel = kv;
        kernel_sum.add(sieve.divisor_count(k)? as f64 * kv);
    }
    let rhs = main_term + 0.75 * f.value_at_zero + kernel_sum.value();
    let rhs_printed = main_term + kernel_sum.value();

    Ok(VerificationReport::new(
        "voronoi_sigma",
        params(&[("fn", f.label().into()), ("N", n.into())]),
        real(lhs.value()),
        real(rhs),
        tolerance,
        vec![
            ("rhs_without_boundary_term".into(), rhs_printed),
            (
                "printed_residual".into(),
                (lhs.value() - rhs_printed).abs(),
            ),
            ("last_kernel_term".into(), last_kernel),
            ("log_main_term".into(), main_term),
        ],
        started,
    ))
}

/// ζ² composite: Σ c(n)𝒦(f)(n) vs Σ (b(m)/m)(𝔐⁻¹(ζ²𝔐f)(1/m) − f(0)/4),
/// with c = σ ∗ b and b the primary values of the given sequence.
pub fn verify_theorem_1_3(
    b: &ArithmeticSequence,
    f: &TestFunction,
    series: &SeriesSpec,
    contour: &ContourSpec,
    quad: &QuadSpec,
    tolerance: f64,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    contour.require_strip()?;
    let n = series.cutoff.min(b.cutoff());
    let c_vals = compose_c(b);

    let mut lhs = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let cv = c_vals[(k - 1) as usize];
        if cv.norm_sqr() > 0.0 {
            lhs += cv * voronoi_kernel(f, k as f64, quad)?;
        }
    }

    let line = zeta_mellin_line(f, contour, 2, quad)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut rhs_printed = Complex64::new(0.0, 0.0);
    for m in 1..=b.cutoff() {
        let bm = b.a(m)?;
        if bm.norm_sqr() == 0.0 {
            continue;
        }
        let inv = line.inverse_at(1.0 / m as f64).value;
        rhs += bm / m as f64 * (inv - real(f.value_at_zero / 4.0));
        rhs_printed += bm / m as f64 * (inv + real(f.value_at_zero / 2.0));
    }

    Ok(VerificationReport::new(
        "theorem_1_3",
        params(&[
            ("b", b.label().into()),
            ("fn", f.label().into()),
            ("N", n.into()),
            ("c", contour.abscissa.into()),
        ]),
        lhs,
        rhs,
        tolerance,
        vec![
            ("rhs_printed_constant".into(), rhs_printed.re),
            ("printed_residual".into(), (lhs - rhs_printed).norm()),
        ],
        started,
    ))
}
