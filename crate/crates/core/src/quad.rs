//! Quadrature building blocks shared by the transform layer: adaptive
//! Simpson panels, composite half-line integration with a Cauchy stopping
//! rule, and half-period panel summation for oscillatory cosine-type
//! integrals with an averaging transform for slowly decaying tails.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadError {
    #[error("quadrature failed to converge: {context} (partial {partial:e}, tail estimate {tail:e})")]
    NonConvergence {
        context: String,
        partial: f64,
        tail: f64,
    },
    #[error("invalid quadrature request: {0}")]
    BadRequest(String),
}

/// Tolerances and effort caps for one integral evaluation.
#[derive(Clone, Copy, Debug)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub max_panels: u32,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_depth: 45,
            max_panels: 20_000,
        }
    }
}

impl QuadSpec {
    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }
}

/// Value types the panel rules can accumulate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn scale(self, k: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Compensated accumulator (Kahan–Neumaier) so long panel sums stay
/// deterministic to ~1 ulp regardless of length.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn simpson<T: QuadValue>(fa: T, fm: T, fb: T, h: f64) -> T {
    fa.add(fm.scale(4.0)).add(fb).scale(h / 6.0)
}

/// Adaptive Simpson on [a, b] with Richardson correction.
pub fn adaptive_simpson<T: QuadValue>(
    f: &dyn Fn(f64) -> T,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<T, QuadError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(QuadError::BadRequest("non-finite interval".into()));
    }
    if a == b {
        return Ok(T::zero());
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    Ok(simpson_rec(
        f, a, b, fa, fm, fb, whole, abs_tol, max_depth,
    ))
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<T: QuadValue>(
    f: &dyn Fn(f64) -> T,
    a: f64,
    b: f64,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: f64,
    depth: u32,
) -> T {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let both = left.add(right);
    let err = both.sub(whole).magnitude();
    if depth == 0 || err < 15.0 * tol {
        return both.add(both.sub(whole).scale(1.0 / 15.0));
    }
    let half = 0.5 * tol;
    simpson_rec(f, a, m, fa, flm, fm, left, half, depth - 1).add(simpson_rec(
        f,
        m,
        b,
        fm,
        frm,
        fb,
        right,
        half,
        depth - 1,
    ))
}

/// ∫_a^∞ f, for integrands that eventually decay: dyadically growing panels,
/// stopping when two consecutive panel magnitudes fall below tolerance.
pub fn integrate_to_infinity<T: QuadValue>(
    f: &dyn Fn(f64) -> T,
    a: f64,
    first_len: f64,
    spec: &QuadSpec,
) -> Result<T, QuadError> {
    if !(first_len > 0.0) {
        return Err(QuadError::BadRequest("panel length must be positive".into()));
    }
    let mut acc = T::zero();
    let mut lo = a;
    let mut len = first_len;
    let mut quiet = 0u32;
    let mut scale = 0.0f64;
    for k in 0..spec.max_panels {
        let hi = lo + len;
        let panel = adaptive_simpson(f, lo, hi, spec.abs_tol / 4.0, spec.max_depth)?;
        acc = acc.add(panel);
        scale = scale.max(acc.magnitude());
        let small = panel.magnitude() < spec.abs_tol + spec.rel_tol * scale;
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 2 && k >= 2 {
            return Ok(acc);
        }
        lo = hi;
        if len < 1e9 {
            len *= 1.25;
        }
    }
    Err(QuadError::NonConvergence {
        context: format!("half-line integral from {a}"),
        partial: acc.magnitude(),
        tail: f64::NAN,
    })
}

/// ∫_start^∞ g(x) cos(2πwx) dx by half-period panels of length 1/(2w).
///
/// Panels are summed with a Cauchy stop; if the envelope decays too slowly to
/// meet tolerance inside the panel budget, the alternating panel tail is
/// resummed by iterated averaging (accurate for eventually monotone g).
pub fn oscillatory_cosine(
    g: &dyn Fn(f64) -> f64,
    w: f64,
    start: f64,
    spec: &QuadSpec,
) -> Result<f64, QuadError> {
    if w <= 0.0 {
        return Err(QuadError::BadRequest("oscillation frequency must be > 0".into()));
    }
    let half = 1.0 / (2.0 * w);
    let integrand = |x: f64| g(x) * (2.0 * std::f64::consts::PI * w * x).cos();
    let mut head = KahanSum::default();
    let mut panels: Vec<f64> = Vec::new();
    let mut lo = start;
    // align the first panel end on a half-period boundary of cos(2*pi*w*x)
    let k0 = (start / half).floor() + 1.0;
    let mut hi = (k0 * half).max(start + 1e-3 * half);
    let max_direct = 512usize;
    let mut scale = 0.0f64;
    for _ in 0..max_direct {
        let p = adaptive_simpson(&integrand, lo, hi, spec.abs_tol / 8.0, spec.max_depth)?;
        panels.push(p);
        head.add(p);
        scale = scale.max(head.value().abs());
        let n = panels.len();
        if n >= 3
            && panels[n - 1].abs() < spec.abs_tol + spec.rel_tol * scale
            && panels[n - 2].abs() < spec.abs_tol + spec.rel_tol * scale
        {
            return Ok(head.value());
        }
        lo = hi;
        hi += half;
    }
    // Slow decay: re-sum the alternating tail by iterated averaging.
    let tail_len = 128.min(panels.len() / 2);
    let split = panels.len() - tail_len;
    let mut prefix = KahanSum::default();
    for p in &panels[..split] {
        prefix.add(*p);
    }
    let mut row: Vec<f64> = {
        let mut acc = prefix.value();
        panels[split..]
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    };
    let mut prev_diag = row[row.len() - 1];
    let mut diag = prev_diag;
    while row.len() > 1 {
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        prev_diag = diag;
        diag = row[row.len() - 1];
    }
    let err = (diag - prev_diag).abs();
    if err > 100.0 * (spec.abs_tol + spec.rel_tol * diag.abs()) {
        return Err(QuadError::NonConvergence {
            context: format!("oscillatory tail at frequency {w}"),
            partial: diag,
            tail: err,
        });
    }
    Ok(diag)
}
