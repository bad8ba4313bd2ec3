//! The identity chain that threads the odd cubic series through telescoping
//! gamma products down to pi.
//!
//! The pieces, in the order they lock together:
//!
//! * `s_direct` — the series `S = sum ((-1)^n - 1)^2 / n^3`, which picks out
//!   odd n with weight 4 and converges to `(7/2) zeta(3)`;
//! * `term_1_3` / `term_1_4` — the three-bracket summand produced by
//!   rearranging S into product form, and its algebraic collapse
//!   `n^2 log((1 - 1/n^2)/(1 - 1/(4n^2))^4)`;
//! * the finite gamma-product and superfactorial identities used in that
//!   rearrangement, each checkable at every N;
//! * `euler_92_product` — the telescoped remainder
//!   `pi = (9/2) prod (n-1)^n (2n+1)^{2n} / ((n+1)^n (2n-1)^{2n})`;
//! * the closure `exp(sum term_1_4) = (81/512) pi exp(7 zeta(3)/(2 pi^2))`.
//!
//! Every log argument here is a ratio of nearby integers, so each factor is
//! assembled with `ln_1p` of an exactly-computed rational offset rather than
//! as a difference of large logarithms; the bracket algebra below keeps the
//! collapse identity testable at 1e-12 even at n = 10^3.

use std::fmt;

use crate::kahan::KahanSum;
use crate::prodcore;
use crate::specfun;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainsError {
    pub n: u64,
    pub min: u64,
}

impl fmt::Display for ChainsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "index {} is below the first valid index {} for this identity",
            self.n, self.min
        )
    }
}

impl std::error::Error for ChainsError {}

fn require(n: u64, min: u64) -> Result<(), ChainsError> {
    if n < min {
        Err(ChainsError { n, min })
    } else {
        Ok(())
    }
}

/// `sum_{n=1}^{N} ((-1)^n - 1)^2 / n^3`: the even terms vanish and the odd
/// ones carry weight `((-1)^n - 1)^2 = 4`, so this is `4 sum_{odd n <= N} n^-3`.
pub fn s_direct(n_terms: u64) -> f64 {
    assert!(n_terms >= 1, "the series starts at n = 1");
    let mut sum = KahanSum::new();
    let mut n = 1u64;
    while n <= n_terms {
        let nf = n as f64;
        sum.add(4.0 / (nf * nf * nf));
        n += 2;
    }
    sum.value()
}

/// Euler–Maclaurin tail of [`s_direct`]: `4 sum_{odd n > N} n^-3`. Adding it
/// to the partial sum reproduces `(7/2) zeta(3)` to ~1e-14 already at
/// moderate N.
pub fn s_tail(n_terms: u64) -> f64 {
    4.0 * specfun::zeta_odd_tail(3.0, n_terms)
}

/// One summand of the three-bracket series, kept with its index.
#[derive(Debug, Clone, Copy)]
pub struct SeriesTerm13 {
    pub n: u64,
    /// `n^2 log((n^2-1) 2^8 n^6/(4n^2-1)^4)
    ///  + 2n log((1+n)(2n-1)^2/((n-1)(1+2n)^2))
    ///  + log(1 - 3/(4n^2-1))`.
    pub value: f64,
}

/// The n^2-bracket of [`term_1_3`], evaluated from the printed integer form.
///
/// The argument of the log satisfies
/// `(n^2-1) 2^8 n^6 - (4n^2-1)^4 = -(96 n^4 - 16 n^2 + 1)` exactly, so the
/// bracket is `n^2 ln_1p(-(96 n^4 - 16 n^2 + 1)/(4n^2-1)^4)`. Assembling the
/// log from quotients of the two ~2^90 integer products instead would leave
/// ~1e-10 of rounding at n = 10^3 — a hundred times the collapse tolerance.
pub fn term_1_3_n2_bracket(n: u64) -> Result<f64, ChainsError> {
    require(n, 2)?;
    let nf = n as f64;
    let n2 = nf * nf;
    let d = 4.0 * n2 - 1.0;
    let d2 = d * d;
    let offset = -(96.0 * n2 * n2 - 16.0 * n2 + 1.0);
    Ok(n2 * (offset / (d2 * d2)).ln_1p())
}

/// The full three-bracket summand. Each bracket is a log of a ratio of
/// nearby quantities and is evaluated through `ln_1p` of its exact rational
/// offset; all three vanish as n grows, the whole summand like -3/(8 n^2).
pub fn term_1_3(n: u64) -> Result<SeriesTerm13, ChainsError> {
    require(n, 2)?;
    let nf = n as f64;
    let bracket_n2 = term_1_3_n2_bracket(n)?;
    let bracket_2n = gamma_factor_log(n);
    let bracket_last = (-3.0 / (4.0 * nf * nf - 1.0)).ln_1p();
    Ok(SeriesTerm13 {
        n,
        value: bracket_n2 + bracket_2n + bracket_last,
    })
}

/// `2n log((1+n)(2n-1)^2/((n-1)(1+2n)^2))`: the middle bracket of
/// [`term_1_3`], which is also the per-factor log of the gamma-product
/// identity below.
fn gamma_factor_log(n: u64) -> f64 {
    let nf = n as f64;
    2.0 * nf * ((2.0 / (nf - 1.0)).ln_1p() + 2.0 * (-2.0 / (2.0 * nf + 1.0)).ln_1p())
}

/// The collapsed summand `n^2 log(1 - 1/n^2) - 4 n^2 log(1 - 1/(4 n^2))`.
///
/// Composition: `log_term(x, n) = x n^2 log(1 - 1/(x n^2)) + 1`, so the two
/// `+1` corrections cancel in `log_term(1, n) - log_term(4, n)` and the
/// difference is exactly this summand, inheriting prodcore's series-switched
/// cancellation safety. The small-n test below checks the composition
/// against direct two-log arithmetic.
pub fn term_1_4(n: u64) -> Result<f64, ChainsError> {
    require(n, 2)?;
    let one = prodcore::log_term(1.0, n).expect("x = 1 is inside the product domain");
    let four = prodcore::log_term(4.0, n).expect("x = 4 is inside the product domain");
    Ok(one - four)
}

/// `sum_{n=2}^{N} term_1_4(n)` plus the zeta-expansion of the omitted tail
/// (the x = 1 and x = 4 tail corrections combine linearly because the
/// summand is exactly the difference of the two per-term logs).
pub fn sum_term_1_4_corrected(n_terms: u64, order: u32) -> Result<f64, ChainsError> {
    require(n_terms, 2)?;
    let mut sum = KahanSum::new();
    for n in 2..=n_terms {
        sum.add(term_1_4(n)?);
    }
    sum.add(prodcore::tail_correction(1.0, n_terms, order));
    sum.add(-prodcore::tail_correction(4.0, n_terms, order));
    Ok(sum.value())
}

/// Log of the partial product
/// `prod_{n=2}^{N} (1+n)^{2n} (2n-1)^{4n} / ((n-1)^{2n} (1+2n)^{4n})`,
/// accumulated factor by factor in log space.
pub fn gamma_product_lhs(n_terms: u64) -> Result<f64, ChainsError> {
    require(n_terms, 2)?;
    let mut sum = KahanSum::new();
    for n in 2..=n_terms {
        sum.add(gamma_factor_log(n));
    }
    Ok(sum.value())
}

/// Log of the gamma-function closed form of the same partial product:
///
/// `log(81/(4 pi^2)) + 2N log(N+1) + 2N log N - 4N log(N+1/2)
///  + 4 log Gamma(N+1/2) - 2 log Gamma(N) - 2 log Gamma(N+1)`.
///
/// The power offsets N, N+1, N+1/2 are the ones forced by telescoping each
/// factor through Gamma(z+1) = z Gamma(z); the identity test against
/// [`gamma_product_lhs`] over all of N = 2..50 is the guard on both this
/// derivation and the Stirling evaluator behind it.
pub fn gamma_product_rhs(n_terms: u64) -> Result<f64, ChainsError> {
    require(n_terms, 2)?;
    let nf = n_terms as f64;
    let lg = |x: f64| specfun::log_gamma(x).expect("arguments are positive here");
    Ok((81.0 / (4.0 * std::f64::consts::PI * std::f64::consts::PI)).ln()
        + 2.0 * nf * (nf + 1.0).ln()
        + 2.0 * nf * nf.ln()
        - 4.0 * nf * (nf + 0.5).ln()
        + 4.0 * lg(nf + 0.5)
        - 2.0 * lg(nf)
        - 2.0 * lg(nf + 1.0))
}

/// Both sides of `prod_{n=1}^{N} (1+n)^n = Gamma^N(N+2) / prod_{n=1}^{N} Gamma(n+1)`
/// as logs: the left accumulated directly, the right through `log_gamma`.
pub fn superfactorial_identity(n_terms: u64) -> (f64, f64) {
    assert!(n_terms >= 1, "the product starts at n = 1");
    let mut lhs = KahanSum::new();
    let mut rhs_sum = KahanSum::new();
    let lg = |x: f64| specfun::log_gamma(x).expect("arguments are positive here");
    for n in 1..=n_terms {
        let nf = n as f64;
        lhs.add(nf * (1.0 + nf).ln());
        rhs_sum.add(lg(nf + 1.0));
    }
    let rhs = n_terms as f64 * lg(n_terms as f64 + 2.0) - rhs_sum.value();
    (lhs.value(), rhs)
}

/// Log of `prod_{n=2}^{N} (n-1)^n (2n+1)^{2n} / ((n+1)^n (2n-1)^{2n})`.
/// Per-term: `n ln_1p(-2/(n+1)) + 2n ln_1p(2/(2n-1))`, which expands as
/// `sum_k 2(4^{-k} - 1)/((2k+1) n^{2k})` — the error model behind both the
/// tail correction and the rho-extrapolation of this product.
pub fn euler_92_log_partial(n_terms: u64) -> Result<f64, ChainsError> {
    require(n_terms, 2)?;
    let mut sum = KahanSum::new();
    for n in 2..=n_terms {
        let nf = n as f64;
        sum.add(nf * (-2.0 / (nf + 1.0)).ln_1p() + 2.0 * nf * (2.0 / (2.0 * nf - 1.0)).ln_1p());
    }
    Ok(sum.value())
}

/// `(9/2) prod_{n=2}^{N} (n-1)^n (2n+1)^{2n} / ((n+1)^n (2n-1)^{2n})`,
/// which decreases monotonically to pi with O(1/N) error.
pub fn euler_92_product(n_terms: u64) -> Result<f64, ChainsError> {
    Ok(4.5 * euler_92_log_partial(n_terms)?.exp())
}

/// Zeta-expansion of the omitted log-tail of the 9/2-product:
/// `sum_{k=1}^{K} 2 (4^{-k} - 1)/(2k+1) * zeta_{>N}(2k)`.
pub fn euler_92_tail(n_terms: u64, order: u32) -> f64 {
    let mut sum = KahanSum::new();
    let mut four_pow = 4.0;
    for k in 1..=order {
        let c = 2.0 * (1.0 / four_pow - 1.0) / (2.0 * k as f64 + 1.0);
        sum.add(c * specfun::zeta_tail(2.0 * k as f64, n_terms));
        four_pow *= 4.0;
    }
    sum.value()
}

/// Tail-corrected 9/2-product: truncation error drops from O(1/N) to
/// O(N^-(2K+1)).
pub fn euler_92_tail_corrected(n_terms: u64, order: u32) -> Result<f64, ChainsError> {
    Ok(4.5 * (euler_92_log_partial(n_terms)? + euler_92_tail(n_terms, order)).exp())
}
