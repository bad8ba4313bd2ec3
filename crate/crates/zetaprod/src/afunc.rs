//! The A-function in both of its faces, the product ratio P(x, y), the
//! x -> 1 limit, and the extraction of pi from the corrected product.
//!
//! `log A(y) = sum_{k>=1} (zeta(2k) - 1) / ((k+1) y^k)` converges
//! geometrically with ratio 1/(4y); the same quantity also has the closed
//! form `-log sin(pi/sqrt(y)) + y log(1 - 1/y) + 3/2 + R(y)` built from the
//! remainder integral in [`crate::quad`]. Having both routes is the point:
//! they share no machinery, so their agreement is a real check on every
//! layer underneath (zeta tails on one side, quadrature on the other).
//!
//! Two consequences of the function get their own entry points: the limit
//! `(1 - 1/x)^{-x} sin(pi/sqrt(x)) -> pi/2` as x -> 1, verified by
//! Richardson extrapolation, and `pi = e^{3/2} prod_{n>=2} (1 - 1/n^2)^{n^2} e`,
//! evaluated by four methods of very different convergence quality.

use std::fmt;

use crate::accel::{self, AccelError};
use crate::kahan::KahanSum;
use crate::prodcore::{self, EvalMethod, ProdCoreError};
use crate::quad::{self, QuadError};
use crate::specfun::{self, ZetaCache};

/// Series truncation defaults: the geometric ratio is 1/(4y), so arguments
/// below 1 get extra depth.
const DEFAULT_K_LARGE: usize = 40;
const DEFAULT_K_SMALL: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub enum AFuncError {
    /// Argument outside `y > 1/4`, where the series diverges.
    YDomain(f64),
    /// Closed form needs `y > 1` strictly; y = 1 is its 0/0 point.
    ClosedDomain(f64),
    /// Requested truncation exceeds the cache depth.
    TruncationDepth { k: usize, max_k: usize },
    /// Product-based methods need at least the first factor.
    TermsDomain(u64),
    /// The Richardson table failed its own error contract.
    ExtrapolationUnstable { est_error: f64 },
    Quadrature(QuadError),
    Extrapolation(AccelError),
    Product(ProdCoreError),
}

impl fmt::Display for AFuncError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AFuncError::YDomain(y) => {
                write!(f, "A-function series needs y > 1/4, got y = {y}")
            }
            AFuncError::ClosedDomain(y) => {
                write!(f, "closed form needs y > 1 strictly, got y = {y}")
            }
            AFuncError::TruncationDepth { k, max_k } => {
                write!(f, "truncation K = {k} exceeds cache depth {max_k}")
            }
            AFuncError::TermsDomain(terms) => {
                write!(f, "product evaluation needs terms >= 2, got {terms}")
            }
            AFuncError::ExtrapolationUnstable { est_error } => write!(
                f,
                "extrapolation self-estimate {est_error:.3e} exceeds the 1e-8 contract"
            ),
            AFuncError::Quadrature(e) => write!(f, "quadrature failure: {e}"),
            AFuncError::Extrapolation(e) => write!(f, "extrapolation failure: {e}"),
            AFuncError::Product(e) => write!(f, "product evaluation failure: {e}"),
        }
    }
}

impl std::error::Error for AFuncError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            AFuncError::Quadrature(e) => Some(e),
            AFuncError::Extrapolation(e) => Some(e),
            AFuncError::Product(e) => Some(e),
            _ => None,
        }
    }
}

impl From<QuadError> for AFuncError {
    fn from(e: QuadError) -> Self {
        AFuncError::Quadrature(e)
    }
}

impl From<AccelError> for AFuncError {
    fn from(e: AccelError) -> Self {
        AFuncError::Extrapolation(e)
    }
}

impl From<ProdCoreError> for AFuncError {
    fn from(e: ProdCoreError) -> Self {
        AFuncError::Product(e)
    }
}

/// Which route produced an A-function value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AMethod {
    Series,
    Closed,
}

impl fmt::Display for AMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AMethod::Series => "series",
            AMethod::Closed => "closed",
        })
    }
}

/// `log A(y)` together with the method that produced it and an error bound
/// that is reported, not implied. `log_A` is strictly positive for every
/// valid y: each series coefficient is positive.
#[derive(Debug, Clone, Copy)]
pub struct AFunctionValue {
    pub y: f64,
    pub log_a: f64,
    pub method: AMethod,
    /// Series truncation depth; 0 for the closed form.
    pub truncation_k: u32,
    pub est_error: f64,
}

/// `log A(y) = sum_{k=1}^{K} (zeta(2k) - 1) / ((k+1) y^k)`.
///
/// The reported `est_error` is the first omitted term inflated by the
/// geometric majorant `1/(1 - 1/(4y))`; since the coefficients decay like
/// 4^{-k}, that bound is rigorous up to a constant within a few percent
/// of 1.
pub fn log_a_series(cache: &ZetaCache, y: f64, k: usize) -> Result<AFunctionValue, AFuncError> {
    if !(y > 0.25) {
        return Err(AFuncError::YDomain(y));
    }
    if k < 1 || k > cache.max_k() {
        return Err(AFuncError::TruncationDepth {
            k,
            max_k: cache.max_k(),
        });
    }
    let mut sum = KahanSum::new();
    let mut y_pow = y;
    for j in 1..=k {
        sum.add(cache.zeta2k_minus_1(j) / ((j as f64 + 1.0) * y_pow));
        y_pow *= y;
    }
    // First omitted term, from the standalone tail evaluator so the bound
    // exists even when K equals the cache depth.
    let omitted = specfun::zeta_even_minus_1((k + 1) as u32) / ((k as f64 + 2.0) * y_pow);
    let est_error = omitted / (1.0 - 1.0 / (4.0 * y));
    Ok(AFunctionValue {
        y,
        log_a: sum.value(),
        method: AMethod::Series,
        truncation_k: k as u32,
        est_error,
    })
}

/// Closed form `log A(y) = -log sin(pi/sqrt(y)) + y log(1 - 1/y) + 3/2 + R(y)`
/// for `y > 1` strictly. At y = 1 both `sin(pi/sqrt(y))` and
/// `(1 - 1/y)^y` vanish; that 0/0 point belongs to [`limit_at_one`], and the
/// series is the only evaluation route there.
pub fn a_closed(y: f64) -> Result<AFunctionValue, AFuncError> {
    if !(y > 1.0) {
        return Err(AFuncError::ClosedDomain(y));
    }
    let t = 1.0 / y.sqrt();
    let r = quad::r_of_y(y)?;
    let log_a = -quad::log_sin_pi(t) + y * (-1.0 / y).ln_1p() + 1.5 + r;
    Ok(AFunctionValue {
        y,
        log_a,
        method: AMethod::Closed,
        truncation_k: 0,
        // Quadrature is accurate to ~1e-12; the log sin and log1p pieces
        // contribute only rounding.
        est_error: 1e-10,
    })
}

/// `P(x, y) = A(y)/A(x)`, via the series form on both sides with the
/// depth defaults (K = 40 for arguments >= 1, K = 60 below).
pub fn p_ratio(cache: &ZetaCache, x: f64, y: f64) -> Result<f64, AFuncError> {
    let k_for = |arg: f64| {
        if arg >= 1.0 {
            DEFAULT_K_LARGE
        } else {
            DEFAULT_K_SMALL
        }
    };
    let num = log_a_series(cache, y, k_for(y))?;
    let den = log_a_series(cache, x, k_for(x))?;
    Ok((num.log_a - den.log_a).exp())
}

/// The h -> 0 samples behind [`limit_at_one`]: pairs `(h, g(h))` with
/// `g(h) = (1 - 1/x)^{-x} sin(pi/sqrt(x)) * h^h` at `x = 1 + h`,
/// `h = 2^{-j}` for j = 4..=20.
///
/// The raw limit function carries a non-polynomial `h^{-h}` factor that
/// defeats power-law extrapolation (it stalls near 1e-6); multiplying it
/// out leaves a plain power series in h, which Richardson then collapses to
/// machine accuracy. `h^h -> 1`, so the limit is unchanged.
fn limit_samples() -> Vec<(f64, f64)> {
    (4..=20)
        .map(|j| {
            let h = 2f64.powi(-j);
            // x = 1 + h; 1 - 1/x = h/(1+h), and
            // sin(pi/sqrt(x)) = sin(pi*delta) with delta = 1 - 1/sqrt(1+h)
            // computed without cancellation.
            let delta = -(-0.5 * h.ln_1p()).exp_m1();
            let log_sin = if delta < 1e-2 {
                (std::f64::consts::PI * delta).ln() + quad::log_sinc_pi(delta)
            } else {
                (std::f64::consts::PI * delta).sin().ln()
            };
            let log_f = -(1.0 + h) * (h.ln() - h.ln_1p()) + log_sin;
            (h, (log_f + h * h.ln()).exp())
        })
        .collect()
}

/// Richardson table for the x -> 1 limit of `(1 - 1/x)^{-x} sin(pi/sqrt(x))`,
/// sampled at `x_j = 1 + 2^{-j}`, j = 4..=20. The table's `best` is the
/// extrapolated limit (= pi/2 to well below 1e-8).
pub fn limit_at_one_table() -> Result<accel::ExtrapolationTable, AFuncError> {
    let table = accel::richardson(&limit_samples(), 8, 1.0)?;
    if !(table.est_error <= 1e-8) {
        return Err(AFuncError::ExtrapolationUnstable {
            est_error: table.est_error,
        });
    }
    Ok(table)
}

/// Extrapolated value of the x -> 1 limit; within 1e-8 of pi/2 by contract
/// (in practice it lands within a few ulp).
pub fn limit_at_one() -> Result<f64, AFuncError> {
    Ok(limit_at_one_table()?.best)
}

/// `pi = e^{3/2} * lim prod_{n=2}^{N} (1 - 1/n^2)^{n^2} e`, by the chosen
/// method:
///
/// * `Naive` — the bare partial product at N = `terms` (O(1/N) error);
/// * `TailCorrected` — plus the K = 6 zeta-tail correction (O(N^-13));
/// * `Extrapolated` — Wynn's rho-algorithm over ten partial products spaced
///   up to N = `terms`;
/// * `Series` — `e^{3/2} exp(-log A(1))` truncated at K = `terms`, since
///   the product limit is exactly 1/A(1).
pub fn pi_from_product(
    cache: &ZetaCache,
    method: EvalMethod,
    terms: u64,
) -> Result<f64, AFuncError> {
    match method {
        EvalMethod::Naive => {
            let p = prodcore::corrected_partial(1.0, terms)?;
            Ok((1.5 + p.log_value).exp())
        }
        EvalMethod::TailCorrected => {
            let p = prodcore::tail_corrected_partial(1.0, terms, 6)?;
            Ok((1.5 + p.log_value).exp())
        }
        EvalMethod::Extrapolated => {
            if terms < 2 {
                return Err(AFuncError::TermsDomain(terms));
            }
            let schedule = accel::arithmetic_schedule(10, terms);
            let mut base = Vec::with_capacity(schedule.len());
            for n in schedule {
                let p = prodcore::corrected_partial(1.0, n)?;
                base.push((n as f64, (1.5 + p.log_value).exp()));
            }
            let max_order = (base.len() - 1) / 2;
            let table = accel::wynn_rho(&base, max_order.max(1))?;
            Ok(table.best)
        }
        EvalMethod::Series => {
            let a1 = log_a_series(cache, 1.0, terms as usize)?;
            Ok((1.5 - a1.log_a).exp())
        }
    }
}
