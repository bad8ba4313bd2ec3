//! Randomized invariants over the numeric core: monotone approach of the
//! corrected partial products, cancellation safety of the per-term log,
//! additivity and sign of the weighted sine integral, the algebraic
//! collapse of the bracketed summand, and bit-identical verify reruns.

use proptest::prelude::*;

use zetaprod::chains;
use zetaprod::prodcore;
use zetaprod::quad;
use zetaprod::specfun::ZetaCache;
use zetaprod::verify;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corrected_partials_decrease_strictly_toward_their_limit(
        x in 0.26f64..32.0,
        n in 2u64..1500,
        extra in 1u64..500,
    ) {
        let shorter = prodcore::corrected_partial(x, n).unwrap();
        let longer = prodcore::corrected_partial(x, n + extra).unwrap();
        // Every factor multiplies in a strictly negative log term.
        prop_assert!(longer.log_value < shorter.log_value);
        prop_assert!(longer.value < shorter.value);
    }

    #[test]
    fn log_term_is_negative_and_cancellation_free(
        x in 0.5f64..16.0,
        n in 1_000u64..1_000_000,
    ) {
        // Reference: the first six terms of -sum t^k/(k+1), t = 1/(x n^2).
        // Direct x n^2 log(1 - t) + 1 would lose half its digits here; the
        // implementation must track the expansion to ~1e-12 relative.
        let u = x * (n as f64) * (n as f64);
        let mut reference = 0.0;
        let mut t_pow = 1.0 / u;
        for k in 1..=6u32 {
            reference -= t_pow / (k as f64 + 1.0);
            t_pow /= u;
        }
        let got = prodcore::log_term(x, n).unwrap();
        prop_assert!(got < 0.0);
        prop_assert!(
            ((got - reference) / reference).abs() < 1e-12,
            "log_term({x}, {n}) = {got} vs expansion {reference}"
        );
    }

    #[test]
    fn weighted_sine_integral_is_additive_and_negative(
        upper in 0.05f64..1.0,
        split in 0.1f64..0.9,
    ) {
        let mid = upper * split;
        let whole = quad::integrate_t_logsin(upper).unwrap();
        let left = quad::integrate_t_logsin(mid).unwrap();
        let right = quad::integrate_t_logsin_segment(mid, upper).unwrap();
        prop_assert!(whole.value < 0.0);
        prop_assert!(left.value < 0.0);
        let budget = whole.abs_error_estimate
            + left.abs_error_estimate
            + right.abs_error_estimate
            + 1e-13;
        prop_assert!(
            (left.value + right.value - whole.value).abs() <= budget,
            "split at {mid} of [0, {upper}] disagrees beyond {budget}"
        );
    }

    #[test]
    fn log_sin_pi_is_reflection_symmetric(t in 1e-4f64..0.5) {
        let gap = quad::log_sin_pi(t) - quad::log_sin_pi(1.0 - t);
        prop_assert!(
            gap.abs() <= 1e-12 * quad::log_sin_pi(t).abs().max(1.0),
            "asymmetry {gap} at t = {t}"
        );
    }

    #[test]
    fn bracket_collapse_holds_at_every_tested_n(n in 2u64..1_000_000) {
        let bracket = chains::term_1_3_n2_bracket(n).unwrap();
        let collapsed = chains::term_1_4(n).unwrap();
        prop_assert!(
            (bracket - collapsed).abs() <= 1e-12,
            "collapse gap {} at n = {n}",
            bracket - collapsed
        );
    }
}

#[test]
fn verify_reruns_are_bit_identical() {
    let cache = ZetaCache::with_default_depth();
    let first = verify::run_all(&cache, 1.0);
    let second = verify::run_all(&cache, 1.0);
    assert_eq!(first.len(), second.len());
    for (a, b) in first.iter().zip(second.iter()) {
        assert_eq!(a.lhs.to_bits(), b.lhs.to_bits(), "{}", a.id);
        assert_eq!(a.rhs.to_bits(), b.rhs.to_bits(), "{}", a.id);
        assert_eq!(a.abs_err.to_bits(), b.abs_err.to_bits(), "{}", a.id);
        assert_eq!(a.rel_err.to_bits(), b.rel_err.to_bits(), "{}", a.id);
        assert_eq!(a.pass, b.pass, "{}", a.id);
        assert_eq!(a.terms, b.terms, "{}", a.id);
        assert_eq!(a.method, b.method, "{}", a.id);
    }
}
