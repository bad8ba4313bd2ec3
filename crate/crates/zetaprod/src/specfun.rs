//! Special-function kernels: zeta values, cancellation-safe `zeta(2k) - 1`,
//! zeta tail sums, and `log Gamma`.
//!
//! Everything downstream leans on two facts about these kernels:
//!
//! 1. `zeta(2k) - 1` is computed as the sum `sum_{n >= 2} n^(-2k)` directly,
//!    never as `zeta(2k) - 1.0`. For k beyond ~25 the difference is smaller
//!    than the spacing of doubles near 1, so the subtraction would return
//!    exactly 0 and every series built on the coefficients would silently
//!    truncate early.
//! 2. Tail sums `sum_{n > N} n^(-s)` come from the Euler–Maclaurin formula
//!    rather than brute-force summation, so tail corrections cost O(1) and
//!    carry ~1e-15 relative error even at N = 10^6.
//!
//! The Euler–Maclaurin expansions here use Bernoulli numbers through B16
//! (order 8), truncated earlier if the asymptotic terms stop shrinking.

use std::fmt;

use crate::kahan::KahanSum;

/// Bernoulli numbers B2, B4, ..., B16 as (numerator, denominator).
const BERNOULLI_2K: [(f64, f64); 8] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
];

/// Stirling-series coefficients B2k / ((2k-1)(2k)) for k = 1..7.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// Arguments at or above this evaluate the Stirling series directly; smaller
/// ones are promoted by the recurrence first. At x = 12 the first omitted
/// Stirling term is below 1e-14, which keeps the finite gamma-product
/// identities meaningful out to N ~ 100.
const STIRLING_THRESHOLD: f64 = 12.0;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    /// `zeta` was called with s < 2.
    ZetaDomain(f64),
    /// `log_gamma` was called with x <= 0.
    LogGammaDomain(f64),
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::ZetaDomain(s) => {
                write!(f, "zeta(s) requires s >= 2, got s = {s}")
            }
            SpecFunError::LogGammaDomain(x) => {
                write!(f, "log_gamma(x) requires x > 0, got x = {x}")
            }
        }
    }
}

impl std::error::Error for SpecFunError {}

/// Euler–Maclaurin tail `sum_{n > base} n^(-s)` for `base` already deep
/// enough (>= 16) that the order-8 expansion has converged.
fn em_tail_beyond(s: f64, base: f64) -> f64 {
    let mut tail = base.powf(1.0 - s) / (s - 1.0) - 0.5 * base.powf(-s);
    // Correction terms B2k/(2k)! * s(s+1)...(s+2k-2) * base^(-s-2k+1).
    let mut factorial = 1.0; // (2k)!
    let mut rising = s; // s (s+1) ... (s+2k-2)
    let mut power = base.powf(-s - 1.0); // base^(-s-2k+1)
    let inv_base_sq = 1.0 / (base * base);
    let mut prev_mag = f64::INFINITY;
    for (k, (num, den)) in BERNOULLI_2K.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        factorial *= (two_k - 1.0) * two_k;
        let term = num / den / factorial * rising * power;
        // The expansion is asymptotic: once terms grow, adding more only
        // hurts. With base >= 16 this never triggers for s >= 2, but it
        // keeps the kernel safe if tuning ever changes.
        if term.abs() >= prev_mag {
            break;
        }
        tail += term;
        prev_mag = term.abs();
        rising *= (s + two_k - 1.0) * (s + two_k);
        power *= inv_base_sq;
    }
    tail
}

/// Riemann zeta for real s >= 2: direct sum to n = 32 plus the
/// Euler–Maclaurin tail. Absolute error is a few 1e-16 across the domain.
pub fn zeta(s: f64) -> Result<f64, SpecFunError> {
    if !(s >= 2.0) {
        return Err(SpecFunError::ZetaDomain(s));
    }
    let mut sum = KahanSum::new();
    for n in 1..=32u32 {
        sum.add((n as f64).powf(-s));
    }
    Ok(sum.value() + em_tail_beyond(s, 32.0))
}

/// Tail sum `zeta_{>N}(s) = sum_{n > N} n^(-s)` for s >= 2, N >= 1.
///
/// Terms up to n = 16 are summed explicitly; beyond that the
/// Euler–Maclaurin expansion takes over. Relative error stays below 1e-14
/// for all s >= 2.
pub fn zeta_tail(s: f64, n: u64) -> f64 {
    debug_assert!(s >= 2.0, "zeta_tail needs s >= 2");
    debug_assert!(n >= 1, "zeta_tail needs N >= 1");
    let base = n.max(16);
    let mut explicit = KahanSum::new();
    for m in (n + 1)..=base {
        explicit.add((m as f64).powf(-s));
    }
    explicit.value() + em_tail_beyond(s, base as f64)
}

/// Tail sum over odd integers, `sum_{odd m > N} m^(-s)`, for s >= 2.
///
/// Same strategy as [`zeta_tail`]: explicit odd terms while the argument is
/// small, then Euler–Maclaurin applied to f(j) = (2j+1)^(-s), whose
/// derivatives pick up a factor 2^(2k-1) relative to the plain tail.
pub fn zeta_odd_tail(s: f64, n: u64) -> f64 {
    debug_assert!(s >= 2.0, "zeta_odd_tail needs s >= 2");
    // First odd integer strictly above n.
    let mut q = if n.is_multiple_of(2) { n + 1 } else { n + 2 };
    let mut explicit = KahanSum::new();
    while q < 33 {
        explicit.add((q as f64).powf(-s));
        q += 2;
    }
    let base = q as f64; // first odd term not yet summed; base >= 33
    let mut tail = base.powf(1.0 - s) / (2.0 * (s - 1.0)) + 0.5 * base.powf(-s);
    let mut factorial = 1.0;
    let mut rising = s;
    let mut two_pow = 2.0; // 2^(2k-1)
    let mut power = base.powf(-s - 1.0);
    let inv_base_sq = 1.0 / (base * base);
    let mut prev_mag = f64::INFINITY;
    for (k, (num, den)) in BERNOULLI_2K.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        factorial *= (two_k - 1.0) * two_k;
        let term = num / den / factorial * two_pow * rising * power;
        if term.abs() >= prev_mag {
            break;
        }
        tail += term;
        prev_mag = term.abs();
        rising *= (s + two_k - 1.0) * (s + two_k);
        two_pow *= 4.0;
        power *= inv_base_sq;
    }
    explicit.value() + tail
}

/// `zeta(2k) - 1` computed as `sum_{n >= 2} n^(-2k)` — never by subtracting
/// 1 from `zeta`, which would cancel catastrophically once the value drops
/// toward the double spacing near 1 (k ~ 25).
pub fn zeta_even_minus_1(k: u32) -> f64 {
    assert!(k >= 1, "zeta_even_minus_1 needs k >= 1");
    zeta_tail(2.0 * k as f64, 1)
}

/// `log Gamma(x)` for x > 0 via the Stirling series with argument promotion:
/// below the asymptotic threshold, `Gamma(x) = Gamma(x+m) / (x (x+1) ... (x+m-1))`
/// lifts the argument, and the shift logs are subtracted afterwards.
pub fn log_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::LogGammaDomain(x));
    }
    let mut shift = KahanSum::new();
    let mut z = x;
    while z < STIRLING_THRESHOLD {
        shift.add(z.ln());
        z += 1.0;
    }
    let half_log_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut series = KahanSum::new();
    let inv_z_sq = 1.0 / (z * z);
    let mut power = 1.0 / z; // z^(-(2k-1))
    for c in STIRLING {
        series.add(c * power);
        power *= inv_z_sq;
    }
    Ok((z - 0.5) * z.ln() - z + half_log_two_pi + series.value() - shift.value())
}

/// Precomputed `zeta(2k) - 1` values and Apery's constant.
///
/// The cache is immutable after construction and shared by reference through
/// every series evaluation, so the coefficient values used across a whole
/// verification run are computed exactly once.
#[derive(Debug, Clone)]
pub struct ZetaCache {
    zeta2k_minus_1: Vec<f64>,
    zeta3: f64,
}

/// Default cache depth. The series coefficients `(zeta(2k)-1)/((k+1) y^k)`
/// at y = 1 fall below 1e-38 well before k = 60, so every series in this
/// crate truncates inside the cache.
pub const DEFAULT_MAX_K: usize = 60;

impl ZetaCache {
    pub fn new(max_k: usize) -> Self {
        assert!(max_k >= 1, "ZetaCache needs max_k >= 1");
        let zeta2k_minus_1 = (1..=max_k as u32).map(zeta_even_minus_1).collect();
        let zeta3 = zeta(3.0).expect("3 >= 2");
        Self {
            zeta2k_minus_1,
            zeta3,
        }
    }

    pub fn with_default_depth() -> Self {
        Self::new(DEFAULT_MAX_K)
    }

    pub fn max_k(&self) -> usize {
        self.zeta2k_minus_1.len()
    }

    /// Stored `zeta(2k) - 1` for 1 <= k <= max_k.
    pub fn zeta2k_minus_1(&self, k: usize) -> f64 {
        assert!(
            k >= 1 && k <= self.zeta2k_minus_1.len(),
            "ZetaCache holds k in 1..={}, asked for {k}",
            self.zeta2k_minus_1.len()
        );
        self.zeta2k_minus_1[k - 1]
    }

    /// Apery's constant zeta(3).
    pub fn zeta3(&self) -> f64 {
        self.zeta3
    }
}

impl Default for ZetaCache {
    fn default() -> Self {
        Self::with_default_depth()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn zeta_matches_closed_forms() {
        assert_abs_diff_eq!(zeta(2.0).unwrap(), PI * PI / 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(zeta(4.0).unwrap(), PI.powi(4) / 90.0, epsilon = 1e-13);
        assert_abs_diff_eq!(zeta(6.0).unwrap(), PI.powi(6) / 945.0, epsilon = 1e-13);
    }

    #[test]
    fn zeta_three_matches_reference() {
        // Reference: direct summation of n^-3 to 10^6 with integral tail
        // bound, carried out in extended precision.
        assert_abs_diff_eq!(zeta(3.0).unwrap(), 1.2020569031595942854, epsilon = 1e-13);
    }

    #[test]
    fn zeta_rejects_s_below_two() {
        assert!(zeta(1.999).is_err());
        assert!(zeta(f64::NAN).is_err());
    }

    #[test]
    fn zeta_even_minus_1_matches_reference_values() {
        assert_relative_eq!(
            zeta_even_minus_1(1),
            0.64493406684822643647,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            zeta_even_minus_1(2),
            0.082323233711138191516,
            max_relative = 1e-12
        );
        // At k = 10 the first two terms 2^-20 + 3^-20 dominate the whole sum
        // to within a factor 1.000001.
        let two_terms = 2.0_f64.powi(-20) + 3.0_f64.powi(-20);
        let ratio = zeta_even_minus_1(10) / two_terms;
        assert!(ratio > 1.0 && ratio < 1.001, "ratio = {ratio}");
    }

    #[test]
    fn zeta_even_minus_1_avoids_cancellation_at_depth() {
        // Far beyond the point where zeta(2k) rounds to exactly 1.0, the
        // direct sum still resolves the leading 2^(-2k).
        let v = zeta_even_minus_1(40);
        assert!(v > 0.0);
        assert_relative_eq!(v, 2.0_f64.powi(-80), max_relative = 1e-6);
        assert_eq!(zeta(80.0).unwrap(), 1.0); // the subtraction would give 0
    }

    #[test]
    fn zeta_even_minus_1_agrees_with_zeta_where_benign() {
        for k in 1..=8u32 {
            let direct = zeta(2.0 * k as f64).unwrap();
            assert_abs_diff_eq!(direct, 1.0 + zeta_even_minus_1(k), epsilon = 1e-12);
        }
    }

    #[test]
    fn zeta_tail_complements_partial_sum() {
        for &(s, n) in &[(2.0, 1u64), (2.0, 10), (3.0, 7), (6.0, 100), (12.0, 3)] {
            let mut partial = KahanSum::new();
            for m in 1..=n {
                partial.add((m as f64).powf(-s));
            }
            assert_relative_eq!(
                partial.value() + zeta_tail(s, n),
                zeta(s).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn odd_tail_reproduces_odd_zeta_sum() {
        // sum over odd n of n^-3 is (1 - 2^-3) zeta(3) = (7/8) zeta(3).
        let odd_sum = 1.0 + zeta_odd_tail(3.0, 1);
        assert_relative_eq!(
            odd_sum,
            0.875 * zeta(3.0).unwrap(),
            max_relative = 1e-14
        );
        // Deep tail agrees with brute force at s = 3, N = 101. The brute sum
        // stops at 2e6, leaving a remainder of about 1/(4M^2) that must be
        // added back before comparing.
        let mut brute = KahanSum::new();
        let mut m = 103u64;
        while m < 2_000_000 {
            brute.add((m as f64).powf(-3.0));
            m += 2;
        }
        let cutoff_remainder = 0.25 / (2.0e6 * 2.0e6);
        assert_relative_eq!(
            zeta_odd_tail(3.0, 101),
            brute.value() + cutoff_remainder,
            max_relative = 1e-10
        );
    }

    #[test]
    fn log_gamma_matches_classical_values() {
        assert_abs_diff_eq!(log_gamma(1.0).unwrap(), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(log_gamma(2.0).unwrap(), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(
            log_gamma(0.5).unwrap(),
            0.5 * PI.ln(),
            epsilon = 1e-12
        );
        // Gamma(11) = 10!
        assert_abs_diff_eq!(
            log_gamma(11.0).unwrap(),
            3_628_800.0_f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn log_gamma_satisfies_recurrence() {
        for &x in &[0.5, 1.3, 7.0, 40.25] {
            let gap = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap() - x.ln();
            assert!(gap.abs() <= 1e-11, "recurrence gap {gap} at x = {x}");
        }
    }

    #[test]
    fn log_gamma_rejects_nonpositive_arguments() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-3.5).is_err());
    }

    #[test]
    fn cache_values_decay_geometrically_and_stay_positive() {
        let cache = ZetaCache::with_default_depth();
        assert_eq!(cache.max_k(), DEFAULT_MAX_K);
        for k in 1..=cache.max_k() {
            let v = cache.zeta2k_minus_1(k);
            assert!(v > 0.0, "zeta(2k)-1 must stay positive, k = {k}");
            // zeta(2)-1 = 0.6449 is the loosest point of the 4^-k envelope.
            assert!(
                v <= 2.6 * 4.0_f64.powi(-(k as i32)),
                "bound 2.6*4^-k violated at k = {k}"
            );
            if k > 1 {
                assert!(
                    v < cache.zeta2k_minus_1(k - 1) / 3.9,
                    "decay slower than 3.9x at k = {k}"
                );
            }
        }
        assert!(cache.zeta3() > 1.2020569 && cache.zeta3() < 1.2020570);
    }
}
