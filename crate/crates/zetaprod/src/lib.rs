//! Numerical evaluation and verification of corrected infinite products.
//!
//! The central object is the family of products with factors
//! `(1 - 1/(x n^2))^(x n^2) * e` for a scale parameter `x > 1/4`. Each factor
//! tends to 1 from below fast enough that the product converges to a nonzero
//! limit, and at `x = 1` the limit ties the product to pi:
//!
//! ```text
//! pi = e^(3/2) * prod_{n >= 2} (1 - 1/n^2)^(n^2) * e
//! ```
//!
//! Everything here works in log space with compensated summation so that
//! partial products never underflow and terms never lose digits to
//! cancellation. The crate is organized as a stack:
//!
//! - [`kahan`] — compensated accumulation used by every summation loop.
//! - [`specfun`] — zeta values, cancellation-safe `zeta(2k) - 1`, zeta tail
//!   sums via Euler–Maclaurin, and `log Gamma`.
//! - [`prodcore`] — per-term log evaluation, partial products, tail
//!   corrections, and the convergence trichotomy in the correction base.
//! - [`quad`] — adaptive quadrature for `t * log(sin(pi t))` with its
//!   logarithmic endpoint singularities, and the scaled integral `R(y)`.
//! - [`accel`] — Richardson extrapolation and the Wynn epsilon/rho
//!   transformations, plus the sampling schedules they work best on.
//! - [`afunc`] — the normalizing function `A(y)` in series and closed form,
//!   the ratio `P(x,y)`, the `x -> 1` limit, and pi extraction.
//! - [`chains`] — finite product identities: the odd-cube series, the
//!   gamma-product and superfactorial identities, and the 9/2-product for pi.
//! - [`verify`] — the registry of named identity checks behind the CLI.
//! - [`cli`] — the `zetaprod` command-line surface (verify / pi / table /
//!   bench).
//!
//! All library computation is pure and deterministic: repeated runs produce
//! bit-identical values, and nothing reads configuration from the
//! environment.

// Domain guards are written `!(x > bound)` on purpose: the negation rejects
// NaN along with out-of-range values. Reference constants carry more digits
// than f64 resolves so the intended nearest double is unambiguous.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod accel;
pub mod afunc;
pub mod chains;
pub mod cli;
pub mod kahan;
pub mod prodcore;
pub mod quad;
pub mod specfun;
pub mod verify;
