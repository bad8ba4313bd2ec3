//! Sequence extrapolation: Richardson for known power-law error models,
//! Wynn's ε-algorithm for sums with unknown error structure, and Wynn's
//! ρ-algorithm for sequences whose error is rational in the sample index.
//!
//! All three build an [`ExtrapolationTable`] that keeps the raw samples, the
//! triangular array of accelerated values, a single `best` estimate, and an
//! honest `est_error` derived from the agreement of the deepest stable
//! column — never from wishful thinking. The selection rule is deliberately
//! simple and deterministic: walk the estimate columns in order and adopt a
//! column's last entry whenever its successive-difference agreement is no
//! worse than the current one.
//!
//! The nonlinear transforms guard their reciprocal-difference denominators
//! at 1e-14 relative to local scale; entries past an underflowing
//! denominator are poisoned (stored as NaN) and skipped by the selection.

use std::fmt;

/// Relative denominator guard for the ε and ρ recursions.
const WYNN_GUARD: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub enum AccelError {
    /// Fewer samples than the transform needs.
    TooFewSamples { needed: usize, got: usize },
    /// Requested order cannot be formed from the supplied samples.
    OrderTooHigh { order: usize, samples: usize },
    /// Richardson requires a positive error-exponent step.
    NonPositiveStep(f64),
    /// Abscissae must be strictly monotone (decreasing h for Richardson,
    /// increasing index for ρ).
    AbscissaOrder { previous: f64, current: f64 },
    /// Every estimate column was lost to the denominator guard.
    AllUnstable,
}

impl fmt::Display for AccelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AccelError::TooFewSamples { needed, got } => {
                write!(f, "extrapolation needs at least {needed} samples, got {got}")
            }
            AccelError::OrderTooHigh { order, samples } => {
                write!(f, "order {order} is not reachable from {samples} samples")
            }
            AccelError::NonPositiveStep(step) => {
                write!(f, "error-exponent step must be positive, got {step}")
            }
            AccelError::AbscissaOrder { previous, current } => write!(
                f,
                "abscissae must be strictly monotone, got {previous} then {current}"
            ),
            AccelError::AllUnstable => {
                f.write_str("all extrapolation columns hit the denominator guard")
            }
        }
    }
}

impl std::error::Error for AccelError {}

/// Which transform produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Richardson,
    WynnEpsilon,
    WynnRho,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Richardson => "richardson",
            Method::WynnEpsilon => "wynn_epsilon",
            Method::WynnRho => "wynn_rho",
        };
        f.write_str(name)
    }
}

/// Result of one extrapolation run.
#[derive(Debug, Clone)]
pub struct ExtrapolationTable {
    /// The samples as (abscissa, value) pairs, in the order supplied:
    /// strictly increasing index for ε/ρ, strictly decreasing h for
    /// Richardson.
    pub base: Vec<(f64, f64)>,
    /// Triangular array of accelerated values: Neville columns 1..=order
    /// for Richardson, even ε/ρ columns otherwise. Guard-poisoned entries
    /// are NaN.
    pub estimates: Vec<Vec<f64>>,
    /// Selected estimate (deepest column whose tail self-agrees).
    pub best: f64,
    /// Successive-difference agreement of the selected column; reported,
    /// never hidden.
    pub est_error: f64,
    pub method: Method,
}

/// Richardson extrapolation in `z = h^exponent_step`.
///
/// Assumes `value(h) = L + c1 h^p + c2 h^(p+step) + ...` with leading
/// exponent `p = exponent_step`; Neville's scheme evaluated at `z = 0`
/// eliminates the first `order` error terms. `order = 0` degenerates to the
/// last sample, by design.
pub fn richardson(
    base: &[(f64, f64)],
    order: usize,
    exponent_step: f64,
) -> Result<ExtrapolationTable, AccelError> {
    if base.len() < 3 {
        return Err(AccelError::TooFewSamples {
            needed: 3,
            got: base.len(),
        });
    }
    if order > base.len() - 1 {
        return Err(AccelError::OrderTooHigh {
            order,
            samples: base.len(),
        });
    }
    if !(exponent_step > 0.0) || !exponent_step.is_finite() {
        return Err(AccelError::NonPositiveStep(exponent_step));
    }
    for w in base.windows(2) {
        if !(w[0].0 > w[1].0 && w[1].0 > 0.0) {
            return Err(AccelError::AbscissaOrder {
                previous: w[0].0,
                current: w[1].0,
            });
        }
    }
    let z: Vec<f64> = base.iter().map(|&(h, _)| h.powf(exponent_step)).collect();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(order);
    let mut prev: Vec<f64> = base.iter().map(|&(_, v)| v).collect();
    for k in 1..=order {
        let mut col = Vec::with_capacity(prev.len() - 1);
        for i in 0..prev.len() - 1 {
            // Neville at z = 0 over the points z_i .. z_{i+k}.
            let (zi, zik) = (z[i], z[i + k]);
            col.push((zi * prev[i + 1] - zik * prev[i]) / (zi - zik));
        }
        columns.push(col.clone());
        prev = col;
    }
    let best_col: &[f64] = columns.last().map_or(&[], |c| c.as_slice());
    let (best, est_error) = if order == 0 {
        let n = base.len();
        (base[n - 1].1, (base[n - 1].1 - base[n - 2].1).abs())
    } else if best_col.len() >= 2 {
        let n = best_col.len();
        (best_col[n - 1], (best_col[n - 1] - best_col[n - 2]).abs())
    } else {
        // Full-order corner: compare against the previous column's corner.
        let neighbour = if order >= 2 {
            *columns[order - 2].last().unwrap()
        } else {
            base.last().unwrap().1
        };
        (best_col[0], (best_col[0] - neighbour).abs())
    };
    Ok(ExtrapolationTable {
        base: base.to_vec(),
        estimates: columns,
        best,
        est_error,
        method: Method::Richardson,
    })
}

/// Wynn's ε-algorithm on a list of partial sums/products.
///
/// Even columns of the ε table are the estimates; odd columns are
/// auxiliary. An entry whose reciprocal-difference denominator falls under
/// the guard is poisoned, along with everything computed from it.
pub fn wynn_epsilon(
    base_values: &[f64],
    max_order: usize,
) -> Result<ExtrapolationTable, AccelError> {
    let needed = (2 * max_order + 1).max(3);
    if base_values.len() < needed {
        return Err(AccelError::TooFewSamples {
            needed,
            got: base_values.len(),
        });
    }
    if max_order == 0 {
        return Err(AccelError::OrderTooHigh {
            order: 0,
            samples: base_values.len(),
        });
    }
    let base: Vec<(f64, f64)> = base_values
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as f64, v))
        .collect();
    // eps[k] holds column k; eps[k+1] is one entry shorter.
    let mut prev_prev = vec![0.0f64; base_values.len() + 1]; // column -1
    let mut prev = base_values.to_vec(); // column 0
    let mut even_columns: Vec<Vec<f64>> = Vec::with_capacity(max_order);
    for k in 1..=2 * max_order {
        let mut col = Vec::with_capacity(prev.len() - 1);
        for n in 0..prev.len() - 1 {
            col.push(wynn_step(prev_prev[n + 1], prev[n], prev[n + 1], 1.0));
        }
        if k % 2 == 0 {
            even_columns.push(col.clone());
        }
        prev_prev = prev;
        prev = col;
    }
    let (best, est_error) = select_estimate(&base, &even_columns)?;
    Ok(ExtrapolationTable {
        base,
        estimates: even_columns,
        best,
        est_error,
        method: Method::WynnEpsilon,
    })
}

/// Wynn's ρ-algorithm on (index, value) samples.
///
/// The reciprocal differences are weighted by true index gaps, which makes
/// the transform exact for limits approached with an error rational in the
/// index — the shape produced by Euler–Maclaurin tails. This is the engine
/// behind the accelerated product evaluations.
pub fn wynn_rho(
    base: &[(f64, f64)],
    max_order: usize,
) -> Result<ExtrapolationTable, AccelError> {
    let needed = (2 * max_order + 1).max(3);
    if base.len() < needed {
        return Err(AccelError::TooFewSamples {
            needed,
            got: base.len(),
        });
    }
    if max_order == 0 {
        return Err(AccelError::OrderTooHigh {
            order: 0,
            samples: base.len(),
        });
    }
    for w in base.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(AccelError::AbscissaOrder {
                previous: w[0].0,
                current: w[1].0,
            });
        }
    }
    let x: Vec<f64> = base.iter().map(|&(xi, _)| xi).collect();
    let mut prev_prev = vec![0.0f64; base.len() + 1]; // column -1
    let mut prev: Vec<f64> = base.iter().map(|&(_, v)| v).collect(); // column 0
    let mut even_columns: Vec<Vec<f64>> = Vec::with_capacity(max_order);
    for k in 1..=2 * max_order {
        let mut col = Vec::with_capacity(prev.len() - 1);
        for n in 0..prev.len() - 1 {
            col.push(wynn_step(
                prev_prev[n + 1],
                prev[n],
                prev[n + 1],
                x[n + k] - x[n],
            ));
        }
        if k % 2 == 0 {
            even_columns.push(col.clone());
        }
        prev_prev = prev;
        prev = col;
    }
    let (best, est_error) = select_estimate(base, &even_columns)?;
    Ok(ExtrapolationTable {
        base: base.to_vec(),
        estimates: even_columns,
        best,
        est_error,
        method: Method::WynnRho,
    })
}

/// One ε/ρ update `left + numerator / (upper - lower)` with the guard.
/// NaN inputs and guarded denominators both yield NaN, so instability
/// propagates instead of masquerading as convergence.
fn wynn_step(left: f64, lower: f64, upper: f64, numerator: f64) -> f64 {
    if !left.is_finite() || !lower.is_finite() || !upper.is_finite() {
        return f64::NAN;
    }
    let denom = upper - lower;
    let scale = lower.abs().max(upper.abs()).max(1e-300);
    if denom.abs() <= WYNN_GUARD * scale {
        return f64::NAN;
    }
    left + numerator / denom
}

/// Walk the even columns in order, adopting a column's last valid entry
/// whenever its successive-difference agreement is at least as tight as the
/// running one. Starts from the raw sequence so a fully guarded table is
/// detectable as an error rather than a silent fallback.
fn select_estimate(
    base: &[(f64, f64)],
    even_columns: &[Vec<f64>],
) -> Result<(f64, f64), AccelError> {
    let n = base.len();
    let mut best = base[n - 1].1;
    let mut est = (base[n - 1].1 - base[n - 2].1).abs();
    let mut any_stable = false;
    for col in even_columns {
        let valid: Vec<f64> = col.iter().copied().filter(|v| v.is_finite()).collect();
        if valid.len() < 2 {
            continue;
        }
        any_stable = true;
        let cand = valid[valid.len() - 1];
        let cand_est = (valid[valid.len() - 1] - valid[valid.len() - 2]).abs();
        if cand_est <= est {
            best = cand;
            est = cand_est;
        }
    }
    if !any_stable {
        return Err(AccelError::AllUnstable);
    }
    Ok((best, est))
}

/// Benchmark metric: decimal digits of accuracy gained over the naive
/// value. Positive means the acceleration helped.
pub fn digits_gained(target: f64, naive_value: f64, accelerated_value: f64) -> f64 {
    debug_assert!(target != 0.0, "digits_gained needs a nonzero target");
    let naive_err = (naive_value - target).abs();
    let accel_err = (accelerated_value - target).abs().max(1e-300);
    (naive_err / accel_err).log10()
}

/// Sample indices `seed_a * 2^k` and `seed_b * 2^k` up to `cap`, merged
/// ascending: e.g. 2, 3, 4, 6, 8, 12, ... Geometric spacing with two
/// interleaved strands — a good default diet for the ε-algorithm.
pub fn interleaved_doubling_schedule(seed_a: u64, seed_b: u64, cap: u64) -> Vec<u64> {
    assert!(seed_a >= 2 && seed_b > seed_a && cap >= seed_b);
    let mut out = Vec::new();
    let mut strand = seed_a;
    while strand <= cap {
        out.push(strand);
        strand *= 2;
    }
    strand = seed_b;
    while strand <= cap {
        out.push(strand);
        strand *= 2;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `count` roughly equally spaced indices ending exactly at `cap`, each at
/// least 2, duplicates collapsed. Evenly spaced indices suit the
/// ρ-algorithm's rational error model.
pub fn arithmetic_schedule(count: u64, cap: u64) -> Vec<u64> {
    assert!(count >= 1 && cap >= 2);
    let mut out: Vec<u64> = (1..=count)
        .map(|i| (((cap as u128 * i as u128) + (count as u128 / 2)) / count as u128) as u64)
        .map(|n| n.max(2))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains;
    use crate::prodcore;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn geometric_h(start: f64, n: usize) -> Vec<f64> {
        (0..n).map(|j| start / 2f64.powi(j as i32)).collect()
    }

    #[test]
    fn richardson_removes_a_pure_linear_error() {
        let base: Vec<(f64, f64)> = [1.0, 0.5, 0.25]
            .iter()
            .map(|&h| (h, 7.0 + 3.0 * h))
            .collect();
        let table = richardson(&base, 1, 1.0).unwrap();
        assert_abs_diff_eq!(table.best, 7.0, epsilon = 1e-13);
        assert_eq!(table.method, Method::Richardson);
    }

    #[test]
    fn richardson_removes_a_quadratic_error_tail() {
        let base: Vec<(f64, f64)> = geometric_h(1.0, 6)
            .into_iter()
            .map(|h| (h, PI / 2.0 + 2.0 * h - 5.0 * h * h))
            .collect();
        let table = richardson(&base, 2, 1.0).unwrap();
        assert_abs_diff_eq!(table.best, PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn richardson_honours_the_exponent_step() {
        // Error purely in h^2: declaring step 2 removes it at order 1.
        let base: Vec<(f64, f64)> = [0.4, 0.2, 0.1]
            .iter()
            .map(|&h| (h, 3.0 - h * h))
            .collect();
        let table = richardson(&base, 1, 2.0).unwrap();
        assert_abs_diff_eq!(table.best, 3.0, epsilon = 1e-14);
    }

    #[test]
    fn richardson_order_zero_returns_the_last_sample() {
        let base: Vec<(f64, f64)> = [0.4, 0.2, 0.1]
            .iter()
            .map(|&h| (h, 3.0 - h * h))
            .collect();
        let table = richardson(&base, 0, 1.0).unwrap();
        assert_eq!(table.best.to_bits(), (3.0f64 - 0.01).to_bits());
        assert!(table.estimates.is_empty());
    }

    #[test]
    fn richardson_rejects_degenerate_input() {
        let repeated = [(0.5, 1.0), (0.5, 1.1), (0.25, 1.2)];
        assert!(matches!(
            richardson(&repeated, 1, 1.0),
            Err(AccelError::AbscissaOrder { .. })
        ));
        let fine = [(1.0, 1.0), (0.5, 1.1), (0.25, 1.2)];
        assert!(matches!(
            richardson(&fine, 3, 1.0),
            Err(AccelError::OrderTooHigh { .. })
        ));
        assert!(matches!(
            richardson(&fine, 1, 0.0),
            Err(AccelError::NonPositiveStep(_))
        ));
        assert!(matches!(
            richardson(&fine[..2], 1, 1.0),
            Err(AccelError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn epsilon_sums_the_alternating_harmonic_series() {
        // Partial sums of sum (-1)^k/(k+1) for k = 0..=20.
        let mut partials = Vec::new();
        let mut s = 0.0f64;
        for k in 0..=20u32 {
            s += (-1.0f64).powi(k as i32) / (k as f64 + 1.0);
            partials.push(s);
        }
        let table = wynn_epsilon(&partials, 10).unwrap();
        assert_abs_diff_eq!(table.best, 2.0f64.ln(), epsilon = 1e-10);
        assert!(table.est_error <= 1e-8);
    }

    #[test]
    fn epsilon_is_exact_on_a_geometric_approach() {
        let partials: Vec<f64> = (0..7).map(|n| 5.0 + 0.3 * 0.7f64.powi(n)).collect();
        let table = wynn_epsilon(&partials, 1).unwrap();
        assert_relative_eq!(table.best, 5.0, max_relative = 1e-14);
    }

    #[test]
    fn epsilon_flags_a_constant_sequence_as_unstable() {
        // All differences vanish: every column is guarded away.
        let flat = [4.0f64; 9];
        assert!(matches!(
            wynn_epsilon(&flat, 2),
            Err(AccelError::AllUnstable)
        ));
    }

    #[test]
    fn epsilon_on_the_corrected_product_plateaus_short_of_eight_digits() {
        // Honest measurement, kept as a regression anchor: ε on these
        // slowly thinning logarithmic tails stalls in the 1e-6..1e-2 band
        // regardless of schedule, far from the 1e-8 one might hope for.
        let limit = PI * (-1.5f64).exp();
        let values: Vec<f64> = arithmetic_schedule(20, 200)
            .into_iter()
            .map(|n| prodcore::corrected_partial(1.0, n).unwrap().value)
            .collect();
        let table = wynn_epsilon(&values, 6).unwrap();
        let err = (table.best - limit).abs();
        assert!(err < 1e-2, "arithmetic-schedule ε error {err} out of band");
        assert!(err > 1e-6, "arithmetic-schedule ε error {err} out of band");

        let interleaved: Vec<f64> = interleaved_doubling_schedule(2, 3, 200)
            .into_iter()
            .map(|n| prodcore::corrected_partial(1.0, n).unwrap().value)
            .collect();
        let table = wynn_epsilon(&interleaved, 6).unwrap();
        let err = (table.best - limit).abs();
        assert!(err < 1e-5, "doubling-schedule ε error {err} out of band");
        assert!(err > 1e-8, "doubling-schedule ε error {err} out of band");
    }

    #[test]
    fn epsilon_error_estimate_is_honest_on_the_corrected_product() {
        // The claimed est_error must bracket the true error within a factor
        // of 100 on the slowly converging product at a 200-term budget.
        let limit = PI * (-1.5f64).exp();
        let values: Vec<f64> = interleaved_doubling_schedule(2, 3, 200)
            .into_iter()
            .map(|n| prodcore::corrected_partial(1.0, n).unwrap().value)
            .collect();
        let table = wynn_epsilon(&values, 6).unwrap();
        let true_err = (table.best - limit).abs();
        assert!(true_err <= 100.0 * table.est_error);
        assert!(table.est_error <= 100.0 * true_err);
    }

    #[test]
    fn epsilon_on_euler_partials_stalls_below_the_rho_algorithm() {
        // Regression anchor for the measured ε ceiling on this sequence.
        let samples: Vec<f64> = interleaved_doubling_schedule(2, 3, 200)
            .into_iter()
            .map(|n| chains::euler_92_product(n).unwrap())
            .collect();
        let table = wynn_epsilon(&samples, 6).unwrap();
        let err = (table.best - PI).abs();
        assert!(err > 1e-8, "ε error {err} unexpectedly beat 1e-8");
        assert!(err < 1e-5, "ε error {err} out of its measured band");
    }

    #[test]
    fn rho_extrapolates_euler_partials_to_pi() {
        let base: Vec<(f64, f64)> = arithmetic_schedule(10, 200)
            .into_iter()
            .map(|n| (n as f64, chains::euler_92_product(n).unwrap()))
            .collect();
        let table = wynn_rho(&base, 4).unwrap();
        assert_abs_diff_eq!(table.best, PI, epsilon = 1e-10);
        assert!(table.est_error <= 1e-9);
    }

    #[test]
    fn rho_extrapolates_the_corrected_product() {
        let limit = PI * (-1.5f64).exp();
        let base: Vec<(f64, f64)> = arithmetic_schedule(10, 200)
            .into_iter()
            .map(|n| (n as f64, prodcore::corrected_partial(1.0, n).unwrap().value))
            .collect();
        let table = wynn_rho(&base, 4).unwrap();
        assert_abs_diff_eq!(table.best, limit, epsilon = 1e-11);
        assert_eq!(table.method, Method::WynnRho);
    }

    #[test]
    fn rho_requires_increasing_abscissae() {
        let bad = [(10.0, 1.0), (10.0, 1.1), (30.0, 1.2)];
        assert!(matches!(
            wynn_rho(&bad, 1),
            Err(AccelError::AbscissaOrder { .. })
        ));
    }

    #[test]
    fn digits_gained_matches_hand_arithmetic() {
        // 1 + 1e-4 and 1 + 1e-8 are not exactly representable, so the ratio
        // of recovered errors sits a few 1e-9 off the ideal 4.0.
        assert_abs_diff_eq!(digits_gained(1.0, 1.0 + 1e-4, 1.0 + 1e-8), 4.0, epsilon = 1e-7);
        assert_abs_diff_eq!(digits_gained(2.0, 2.5, 1.5), 0.0, epsilon = 1e-12);
        // Exact hit: floored denominator keeps the metric finite.
        let dg = digits_gained(1.0, 2.0, 1.0);
        assert!(dg > 250.0 && dg.is_finite());
    }

    #[test]
    fn schedules_have_the_documented_shape() {
        assert_eq!(
            interleaved_doubling_schedule(2, 3, 200),
            vec![2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192]
        );
        assert_eq!(
            arithmetic_schedule(10, 200),
            vec![20, 40, 60, 80, 100, 120, 140, 160, 180, 200]
        );
        let cramped = arithmetic_schedule(300, 10);
        assert!(cramped.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*cramped.first().unwrap(), 2);
        assert_eq!(*cramped.last().unwrap(), 10);
    }
}
