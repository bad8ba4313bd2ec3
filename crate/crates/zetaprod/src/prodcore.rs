//! Corrected-product machinery: per-term logs, partial products, tail
//! corrections, and the convergence trichotomy in the correction base.
//!
//! The factors under study are `(1 - 1/(x n^2))^(x n^2) * a` for a scale
//! `x > 1/4` and a per-term correction base `a`. Each uncorrected factor
//! tends to `1/e`, so the base decides everything: `a < e` drives the
//! product to zero, `a > e` blows it up, and exactly `a = e` leaves a finite
//! nonzero limit. The corrected (`a = e`) family at `x = 1` is the route to
//! pi.
//!
//! Numerically the whole module lives in log space. The per-term log
//!
//! ```text
//! log_term(x, n) = x n^2 log(1 - 1/(x n^2)) + 1
//! ```
//!
//! is the difference of two O(1) quantities that agree to ~1/n^2, so direct
//! evaluation throws away half the mantissa already at n ~ 10^3. Below the
//! switch-over threshold the expansion
//!
//! ```text
//! log_term(x, n) = -sum_{k >= 1} 1/((k+1) x^k n^(2k))
//! ```
//!
//! is used instead; it is the same series that powers the tail corrections
//! and the A-function, which is what makes the identities in this crate
//! testable to 1e-12 and beyond.

use std::fmt;

use crate::kahan::KahanSum;
use crate::specfun;

/// Use the series expansion of `log_term` once `1/(x n^2)` drops below this.
/// At the boundary the direct form still carries ~4e-13 relative error;
/// below it the series is exact to ~1e-16 within five terms.
const SERIES_SWITCH: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub enum ProdCoreError {
    /// Scale parameter outside `x > 1/4`.
    ScaleDomain(f64),
    /// Product index below the first factor n = 2.
    IndexDomain(u64),
}

impl fmt::Display for ProdCoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProdCoreError::ScaleDomain(x) => {
                write!(f, "product scale must satisfy x > 1/4, got x = {x}")
            }
            ProdCoreError::IndexDomain(n) => {
                write!(f, "product terms start at n = 2, got n = {n}")
            }
        }
    }
}

impl std::error::Error for ProdCoreError {}

/// How a partial evaluation was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Naive,
    TailCorrected,
    Extrapolated,
    Series,
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EvalMethod::Naive => "naive",
            EvalMethod::TailCorrected => "tail_corrected",
            EvalMethod::Extrapolated => "extrapolated",
            EvalMethod::Series => "series",
        };
        f.write_str(name)
    }
}

/// A partial product in log space.
#[derive(Debug, Clone, Copy)]
pub struct PartialEvaluation {
    /// Upper product index N (factors run n = 2..=N).
    pub n_terms: u64,
    /// Sum of per-term logs.
    pub log_value: f64,
    /// `exp(log_value)`, materialized for convenience.
    pub value: f64,
    /// Estimated log of the omitted tail; 0 when not computed.
    pub tail_estimate: f64,
    pub method: EvalMethod,
}

impl PartialEvaluation {
    fn from_log(n_terms: u64, log_value: f64, tail_estimate: f64, method: EvalMethod) -> Self {
        Self {
            n_terms,
            log_value,
            value: log_value.exp(),
            tail_estimate,
            method,
        }
    }
}

/// One product family: scale `x` and per-term correction base `a`.
#[derive(Debug, Clone, Copy)]
pub struct ProductFamily {
    /// Scale parameter; `x > 1/4` keeps every factor base `1 - 1/(x n^2)`
    /// strictly positive from n = 2 on.
    pub x: f64,
    /// Per-term multiplier; `e` for the convergent corrected products.
    pub correction_base: f64,
}

impl ProductFamily {
    pub fn new(x: f64, correction_base: f64) -> Result<Self, ProdCoreError> {
        if !(x > 0.25) {
            return Err(ProdCoreError::ScaleDomain(x));
        }
        assert!(correction_base > 0.0, "correction base must be positive");
        Ok(Self { x, correction_base })
    }

    /// The `a = e` family whose partial products converge to a nonzero limit.
    pub fn corrected(x: f64) -> Result<Self, ProdCoreError> {
        Self::new(x, std::f64::consts::E)
    }

    /// Log of the partial product of `(1 - 1/(x n^2))^(x n^2) * a` over
    /// n = 2..=N. The per-term log is `(log_term(x, n) - 1) + log a`, which
    /// keeps the `a = e` case free of any `log(e)` rounding.
    pub fn log_partial(&self, n_terms: u64) -> Result<f64, ProdCoreError> {
        if n_terms < 2 {
            return Err(ProdCoreError::IndexDomain(n_terms));
        }
        let log_a_minus_1 = if self.correction_base == std::f64::consts::E {
            0.0
        } else {
            self.correction_base.ln() - 1.0
        };
        let mut sum = KahanSum::new();
        for n in 2..=n_terms {
            sum.add(log_term(self.x, n)? + log_a_minus_1);
        }
        Ok(sum.value())
    }
}

/// Cancellation-safe `x n^2 log(1 - 1/(x n^2)) + 1`.
///
/// The value is small and strictly negative; the leading term of its
/// expansion is `-1/(2 x n^2)`.
pub fn log_term(x: f64, n: u64) -> Result<f64, ProdCoreError> {
    if !(x > 0.25) {
        return Err(ProdCoreError::ScaleDomain(x));
    }
    if n < 2 {
        return Err(ProdCoreError::IndexDomain(n));
    }
    let nf = n as f64;
    let u = x * nf * nf;
    let t = 1.0 / u;
    if t < SERIES_SWITCH {
        // -sum_{k>=1} t^k / (k+1); geometric decay makes five or six terms
        // enough anywhere below the switch-over.
        let mut sum = 0.0;
        let mut t_pow = t;
        for k in 1..=12u32 {
            let term = t_pow / (k as f64 + 1.0);
            sum -= term;
            if term < sum.abs() * 1e-17 {
                break;
            }
            t_pow *= t;
        }
        Ok(sum)
    } else {
        Ok(u * (-t).ln_1p() + 1.0)
    }
}

/// Partial product of the corrected (`a = e`) family at scale `x`:
/// `log_value = sum_{n=2}^{N} log_term(x, n)`.
pub fn corrected_partial(x: f64, n_terms: u64) -> Result<PartialEvaluation, ProdCoreError> {
    let family = ProductFamily::corrected(x)?;
    let log_value = family.log_partial(n_terms)?;
    Ok(PartialEvaluation::from_log(
        n_terms,
        log_value,
        0.0,
        EvalMethod::Naive,
    ))
}

/// `Q_N = prod_{n=2}^{N} (1 - 1/n^2)^(n^2)`, without the e-correction.
/// `log Q_N ~ -N`, which is why only the log form is ever accumulated.
pub fn q_partial(n_terms: u64) -> Result<PartialEvaluation, ProdCoreError> {
    uncorrected_partial(1.0, n_terms)
}

/// `U_N = prod_{n=2}^{N} (1 - 1/(4 n^2))^(4 n^2)`, without the e-correction.
pub fn u_partial(n_terms: u64) -> Result<PartialEvaluation, ProdCoreError> {
    uncorrected_partial(4.0, n_terms)
}

fn uncorrected_partial(x: f64, n_terms: u64) -> Result<PartialEvaluation, ProdCoreError> {
    if n_terms < 2 {
        return Err(ProdCoreError::IndexDomain(n_terms));
    }
    let mut sum = KahanSum::new();
    for n in 2..=n_terms {
        // x n^2 log(1 - 1/(x n^2)) = log_term - 1.
        sum.add(log_term(x, n)? - 1.0);
    }
    Ok(PartialEvaluation::from_log(
        n_terms,
        sum.value(),
        0.0,
        EvalMethod::Naive,
    ))
}

/// `P_N = Q_N / U_N`, evaluated as `exp(log Q_N - log U_N)`. Both factors
/// underflow on their own for N beyond a few hundred; the log difference
/// stays O(1) for all N.
pub fn p_partial(n_terms: u64) -> Result<PartialEvaluation, ProdCoreError> {
    let q = q_partial(n_terms)?;
    let u = u_partial(n_terms)?;
    Ok(PartialEvaluation::from_log(
        n_terms,
        q.log_value - u.log_value,
        0.0,
        EvalMethod::Naive,
    ))
}

/// Log-space tail correction for the corrected family:
/// `-sum_{k=1}^{K} zeta_{>N}(2k) / ((k+1) x^k)`.
///
/// Adding this to `corrected_partial(x, N).log_value` replaces the O(1/N)
/// truncation error with O(N^-(2K+1)).
pub fn tail_correction(x: f64, n_terms: u64, order: u32) -> f64 {
    debug_assert!(x > 0.25 && order >= 1);
    let mut sum = KahanSum::new();
    let mut x_pow = x;
    for k in 1..=order {
        sum.add(-specfun::zeta_tail(2.0 * k as f64, n_terms) / ((k as f64 + 1.0) * x_pow));
        x_pow *= x;
    }
    sum.value()
}

/// A tail-corrected partial: `corrected_partial` plus [`tail_correction`],
/// with the correction recorded in `tail_estimate`.
pub fn tail_corrected_partial(
    x: f64,
    n_terms: u64,
    order: u32,
) -> Result<PartialEvaluation, ProdCoreError> {
    let naive = corrected_partial(x, n_terms)?;
    let tail = tail_correction(x, n_terms, order);
    Ok(PartialEvaluation::from_log(
        n_terms,
        naive.log_value + tail,
        tail,
        EvalMethod::TailCorrected,
    ))
}

/// Limit behaviour of the product with per-term base `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    ConvergesToZero,
    ConvergesNonzero,
    Diverges,
}

/// The trichotomy in the correction base: below `e` the product dies, above
/// `e` it diverges, and at `e` (within one ulp — the finest distinction a
/// double can express) it converges to a nonzero limit.
pub fn classify(a: f64, x: f64) -> Convergence {
    debug_assert!(a > 0.0 && x > 0.25);
    let e = std::f64::consts::E;
    let ulp = e - f64::from_bits(e.to_bits() - 1);
    if (a - e).abs() <= ulp {
        Convergence::ConvergesNonzero
    } else if a < e {
        Convergence::ConvergesToZero
    } else {
        Convergence::Diverges
    }
}
