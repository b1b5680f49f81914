//! Exact integer-indexed arithmetic functions: Möbius μ, divisor count σ,
//! Dirichlet convolution, Möbius-inversion pairs, restricted divisor sums and
//! the signed fractional part.
//!
//! σ(n) throughout this crate is the *number* of divisors of n (often written
//! d(n) or τ(n) elsewhere).

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ArithError {
    #[error("argument must be a positive integer (got 0)")]
    ZeroArgument,
    #[error("index {index} exceeds sequence cutoff {cutoff}")]
    CutoffExceeded { index: u64, cutoff: u64 },
    #[error("fractional part of a non-finite value")]
    NonFinite,
}

/// Linear sieve holding μ(n) and σ(n) for all n up to a cutoff.
///
/// Built in O(N); lookups are O(1). Read-only after construction, so a single
/// instance can be shared freely across threads.
#[derive(Clone, Debug)]
pub struct Sieve {
    mobius: Vec<i8>,
    divisor_count: Vec<u32>,
}

impl Sieve {
    pub fn up_to(n: u64) -> Self {
        let n = n.max(1) as usize;
        let mut mobius = vec![0i8; n + 1];
        let mut tau = vec![0u32; n + 1];
        // exponent of the smallest prime factor, needed for the τ recurrence
        let mut spf_exp = vec![0u32; n + 1];
        let mut primes: Vec<usize> = Vec::new();
        let mut composite = vec![false; n + 1];
        mobius[1] = 1;
        tau[1] = 1;
        for i in 2..=n {
            if !composite[i] {
                primes.push(i);
                mobius[i] = -1;
                tau[i] = 2;
                spf_exp[i] = 1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > n {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    mobius[ip] = 0;
                    spf_exp[ip] = spf_exp[i] + 1;
                    tau[ip] = tau[i] / (spf_exp[i] + 1) * (spf_exp[i] + 2);
                    break;
                }
                mobius[ip] = -mobius[i];
                spf_exp[ip] = 1;
                tau[ip] = tau[i] * 2;
            }
        }
        Sieve {
            mobius,
            divisor_count: tau,
        }
    }

    pub fn cutoff(&self) -> u64 {
        (self.mobius.len() - 1) as u64
    }

    /// μ(n): 0 if n has a squared prime factor, otherwise (−1)^(number of prime factors).
    pub fn mobius(&self, n: u64) -> Result<i64, ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroArgument);
        }
        if n > self.cutoff() {
            return Err(ArithError::CutoffExceeded {
                index: n,
                cutoff: self.cutoff(),
            });
        }
        Ok(i64::from(self.mobius[n as usize]))
    }

    /// σ(n): the number of divisors of n.
    pub fn divisor_count(&self, n: u64) -> Result<u64, ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroArgument);
        }
        if n > self.cutoff() {
            return Err(ArithError::CutoffExceeded {
                index: n,
                cutoff: self.cutoff(),
            });
        }
        Ok(u64::from(self.divisor_count[n as usize]))
    }
}

/// One-shot μ(n) backed by a sieve up to n. Build a [`Sieve`] for bulk use.
pub fn mobius(n: u64) -> Result<i64, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    Sieve::up_to(n).mobius(n)
}

/// One-shot σ(n) backed by a sieve up to n. Build a [`Sieve`] for bulk use.
pub fn divisor_count(n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    Sieve::up_to(n).divisor_count(n)
}

/// A finite ascending set S ⊂ ℕ of allowed divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSet {
    members: Vec<u64>,
}

impl DivisorSet {
    /// Builds the set from arbitrary positive integers; duplicates collapse,
    /// members come out strictly ascending. Rejects 0.
    pub fn new(members: impl IntoIterator<Item = u64>) -> Result<Self, ArithError> {
        let mut v: Vec<u64> = members.into_iter().collect();
        if v.iter().any(|&m| m == 0) {
            return Err(ArithError::ZeroArgument);
        }
        v.sort_unstable();
        v.dedup();
        Ok(DivisorSet { members: v })
    }

    /// S = {1, 2, …, n}.
    pub fn full_range(n: u64) -> Self {
        DivisorSet {
            members: (1..=n).collect(),
        }
    }

    pub fn contains(&self, d: u64) -> bool {
        self.members.binary_search(&d).is_ok()
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }
}

/// Cutoff-indexed values a(1..=N) together with the Möbius inverse
/// b = a ∗ μ, so that a(n) = Σ_{d|n} b(d) for every n ≤ N.
///
/// b is computed eagerly at construction: every verifier that consumes a
/// sequence iterates b in full.
#[derive(Clone, Debug)]
pub struct ArithmeticSequence {
    label: String,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl ArithmeticSequence {
    /// Builds the sequence from a(n) for n in 1..=cutoff and inverts it.
    pub fn from_fn(
        label: impl Into<String>,
        cutoff: u64,
        mut a_of: impl FnMut(u64) -> Complex64,
    ) -> Self {
        let n = cutoff.max(1) as usize;
        let a: Vec<Complex64> = (1..=n as u64).map(&mut a_of).collect();
        let b = mobius_invert(&a);
        ArithmeticSequence {
            label: label.into(),
            a,
            b,
        }
    }

    pub fn from_values(label: impl Into<String>, values: Vec<Complex64>) -> Self {
        let b = mobius_invert(&values);
        ArithmeticSequence {
            label: label.into(),
            a: values,
            b,
        }
    }

    /// e(n) = [n = 1], the Dirichlet identity.
    pub fn unit(cutoff: u64) -> Self {
        Self::from_fn("e", cutoff, |n| {
            Complex64::new(if n == 1 { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// a(n) = 1 for all n.
    pub fn ones(cutoff: u64) -> Self {
        Self::from_fn("1", cutoff, |_| Complex64::new(1.0, 0.0))
    }

    /// a(n) = n.
    pub fn identity(cutoff: u64) -> Self {
        Self::from_fn("n", cutoff, |n| Complex64::new(n as f64, 0.0))
    }

    /// a(n) = σ(n), the divisor count; its inverse is b ≡ 1 since σ = 1 ∗ 1.
    pub fn sigma(cutoff: u64) -> Self {
        let sieve = Sieve::up_to(cutoff.max(1));
        Self::from_fn("sigma", cutoff, |n| {
            Complex64::new(sieve.divisor_count(n).unwrap() as f64, 0.0)
        })
    }

    pub fn zero(cutoff: u64) -> Self {
        Self::from_fn("0", cutoff, |_| Complex64::new(0.0, 0.0))
    }

    /// A sequence supported on the given (index, value) pairs, zero elsewhere.
    pub fn supported_on(
        label: impl Into<String>,
        cutoff: u64,
        support: &[(u64, Complex64)],
    ) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); cutoff.max(1) as usize];
        for &(n, val) in support {
            assert!(n >= 1 && n <= cutoff, "support index out of range");
            v[(n - 1) as usize] = val;
        }
        Self::from_values(label, v)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cutoff(&self) -> u64 {
        self.a.len() as u64
    }

    pub fn a(&self, n: u64) -> Result<Complex64, ArithError> {
        self.check(n)?;
        Ok(self.a[(n - 1) as usize])
    }

    /// b(n) = Σ_{d|n} a(d) μ(n/d).
    pub fn b(&self, n: u64) -> Result<Complex64, ArithError> {
        self.check(n)?;
        Ok(self.b[(n - 1) as usize])
    }

    /// Σ_{d|n} b(d); equals a(n) exactly up to floating-point roundoff.
    pub fn resum(&self, n: u64) -> Result<Complex64, ArithError> {
        self.check(n)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for d in divisors(n) {
            acc += self.b[(d - 1) as usize];
        }
        Ok(acc)
    }

    fn check(&self, n: u64) -> Result<(), ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroArgument);
        }
        if n > self.cutoff() {
            return Err(ArithError::CutoffExceeded {
                index: n,
                cutoff: self.cutoff(),
            });
        }
        Ok(())
    }
}

/// b = a ∗ μ on 1..=N, computed in O(N log N) from a sieved μ table.
pub fn mobius_invert(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let sieve = Sieve::up_to(n as u64);
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    for d in 1..=n {
        let ad = a[d - 1];
        if ad.norm_sqr() == 0.0 {
            continue;
        }
        let mut k = 1;
        while d * k <= n {
            let mu = sieve.mobius(k as u64).unwrap();
            if mu != 0 {
                b[d * k - 1] += ad * mu as f64;
            }
            k += 1;
        }
    }
    b
}

/// Dirichlet convolution (a ∗ b)(n) = Σ_{d|n} a(d) b(n/d) on the common cutoff.
pub fn dirichlet_convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    for d in 1..=n {
        let ad = a[d - 1];
        if ad.norm_sqr() == 0.0 {
            continue;
        }
        let mut k = 1;
        while d * k <= n {
            c[d * k - 1] += ad * b[k - 1];
            k += 1;
        }
    }
    c
}

/// c(n) = Σ_{d|n} σ(n/d) b(d), with b the primary values of `seq`.
pub fn compose_c(seq: &ArithmeticSequence) -> Vec<Complex64> {
    let n = seq.cutoff() as usize;
    let sieve = Sieve::up_to(n as u64);
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    for d in 1..=n {
        let bd = seq.a[d - 1];
        if bd.norm_sqr() == 0.0 {
            continue;
        }
        let mut k = 1;
        while d * k <= n {
            c[d * k - 1] += bd * sieve.divisor_count(k as u64).unwrap() as f64;
            k += 1;
        }
    }
    c
}

/// a(n, S) = Σ_{d|n, d∈S} a(d).
pub fn restricted_sum(
    a: &ArithmeticSequence,
    n: u64,
    s: &DivisorSet,
) -> Result<Complex64, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    if n > a.cutoff() {
        return Err(ArithError::CutoffExceeded {
            index: n,
            cutoff: a.cutoff(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for d in divisors(n) {
        if s.contains(d) {
            acc += a.a(d)?;
        }
    }
    Ok(acc)
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// {x} = x − [x] with [x] = ⌊x⌋ for x ≥ 0 and ⌈x⌉ for x < 0.
///
/// For negative x this lies in (−1, 0], unlike the usual fractional part;
/// e.g. frac(−2.75) = −0.75.
pub fn frac(x: f64) -> Result<f64, ArithError> {
    if !x.is_finite() {
        return Err(ArithError::NonFinite);
    }
    Ok(x - x.trunc())
}
