//! The identity-verification registry: every computable identity in the
//! crate, each as a named check with two independently computed sides, a
//! tolerance, and a recorded pass/fail.
//!
//! Checks never throw: a component failure (quadrature stall, unstable
//! extrapolation) is recorded as `pass = false` with `method =
//! "failed:<reason>"` so the report always covers the full registry. The
//! registry order is fixed and public; two consecutive runs produce
//! bit-identical numeric fields (timing aside), which the test suite
//! enforces.

use std::fmt;
use std::time::Instant;

use crate::accel;
use crate::afunc;
use crate::chains;
use crate::prodcore::{self, EvalMethod};
use crate::quad;
use crate::specfun::{self, ZetaCache};

/// Fixed registry order; `run_all` reports in exactly this sequence.
pub const REGISTRY_IDS: [&str; 15] = [
    "eq_1_1",
    "eq_1_3_collapse",
    "eq_1_4_chain",
    "eq_1_5",
    "superfactorial",
    "gamma_product",
    "euler_92",
    "eq_2_4_vs_2_8",
    "eq_2_5_consistency",
    "r_at_1",
    "r_at_4_euler",
    "eq_2_6",
    "eq_2_7",
    "eq_2_11",
    "eq_2_12",
];

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    UnknownId(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::UnknownId(id) => {
                write!(f, "unknown check id '{id}'; known ids: ")?;
                for (i, known) in REGISTRY_IDS.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(known)?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for VerifyError {}

/// One verified identity: both sides, both error measures, and the verdict.
///
/// `pass` is exactly `abs_err <= tolerance || rel_err <= tolerance`; the
/// `method` string records which measure is the natural one for the check
/// alongside how the sides were computed.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub terms: u64,
    pub method: String,
    pub elapsed_ms: f64,
}

struct Outcome {
    lhs: f64,
    rhs: f64,
    terms: u64,
    method: String,
}

/// Run one registry check at its stated tolerance.
pub fn run_check(cache: &ZetaCache, id: &str) -> Result<IdentityCheck, VerifyError> {
    run_check_scaled(cache, id, 1.0)
}

/// Run every check in registry order, tolerances multiplied by
/// `tolerance_scale`. Failures are recorded in the report, never thrown.
pub fn run_all(cache: &ZetaCache, tolerance_scale: f64) -> Vec<IdentityCheck> {
    assert!(tolerance_scale > 0.0, "tolerance scale must be positive");
    REGISTRY_IDS
        .iter()
        .map(|id| {
            run_check_scaled(cache, id, tolerance_scale)
                .expect("registry ids are valid by construction")
        })
        .collect()
}

/// Run one registry check with its tolerance multiplied by
/// `tolerance_scale`; `run_check` is the scale-1 case.
pub fn run_check_scaled(
    cache: &ZetaCache,
    id: &str,
    tolerance_scale: f64,
) -> Result<IdentityCheck, VerifyError> {
    let Some(&id) = REGISTRY_IDS.iter().find(|&&known| known == id) else {
        return Err(VerifyError::UnknownId(id.to_string()));
    };
    let tolerance = base_tolerance(id) * tolerance_scale;
    let started = Instant::now();
    let computed = compute(cache, id);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let check = match computed {
        Ok(o) => {
            let abs_err = (o.lhs - o.rhs).abs();
            let rel_err = abs_err / o.lhs.abs().max(o.rhs.abs()).max(1e-300);
            IdentityCheck {
                id,
                description: description(id).to_string(),
                lhs: o.lhs,
                rhs: o.rhs,
                abs_err,
                rel_err,
                tolerance,
                pass: abs_err <= tolerance || rel_err <= tolerance,
                terms: o.terms,
                method: o.method,
                elapsed_ms,
            }
        }
        Err(reason) => IdentityCheck {
            id,
            description: description(id).to_string(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tolerance,
            pass: false,
            terms: 0,
            method: format!("failed:{reason}"),
            elapsed_ms,
        },
    };
    Ok(check)
}

fn base_tolerance(id: &str) -> f64 {
    match id {
        "eq_1_1" => 1e-10,
        "eq_1_3_collapse" => 1e-12,
        "eq_1_4_chain" => 1e-9,
        "eq_1_5" => 1e-9,
        "superfactorial" => 1e-10,
        "gamma_product" => 1e-10,
        "euler_92" => 1e-8,
        "eq_2_4_vs_2_8" => 1e-9,
        "eq_2_5_consistency" => 1e-10,
        "r_at_1" => 1e-10,
        "r_at_4_euler" => 1e-9,
        "eq_2_6" => 1e-12,
        "eq_2_7" => 1e-9,
        "eq_2_11" => 1e-8,
        "eq_2_12" => 1e-11,
        _ => unreachable!("tolerance table covers the registry"),
    }
}

fn description(id: &str) -> &'static str {
    match id {
        "eq_1_1" => "odd cubic series 4*sum(1/n^3) over odd n equals (7/2) zeta(3)",
        "eq_1_3_collapse" => {
            "the n^2-bracket of the three-bracket summand collapses to the two-product summand"
        }
        "eq_1_4_chain" => {
            "15 log 2 - 9 log 3 - log(64 pi/243) + sum of collapsed summands equals (7/(2 pi^2)) zeta(3)"
        }
        "eq_1_5" => "exp(sum of collapsed summands) equals (81/512) pi exp(7 zeta(3)/(2 pi^2))",
        "superfactorial" => "prod (1+n)^n equals Gamma^N(N+2) / prod Gamma(n+1) at finite N",
        "gamma_product" => "telescoped power product equals its gamma-function closed form at finite N",
        "euler_92" => "accelerated 9/2-product of integer-shift ratios converges to pi",
        "eq_2_4_vs_2_8" => "series form of log A(y) agrees with its sine/remainder closed form",
        "eq_2_5_consistency" => "exp(-log A(x)) equals the tail-corrected corrected-product limit",
        "r_at_1" => "remainder integral R(1) equals -log 2",
        "r_at_4_euler" => "remainder integral R(4) equals -log 2 + 7 zeta(3)/(2 pi^2)",
        "eq_2_6" => "log sin(pi x) equals log(pi x) - sum x^(2k) zeta(2k)/k",
        "eq_2_7" => {
            "sum x^(2k) zeta(2k)/(k+1) equals 1/2 - log sin(pi x) + (2/x^2) integral of t log sin(pi t)"
        }
        "eq_2_11" => "(1 - 1/x)^(-x) sin(pi/sqrt(x)) tends to pi/2 as x tends to 1",
        "eq_2_12" => "pi equals e^(3/2) times the corrected square-power product",
        _ => unreachable!("description table covers the registry"),
    }
}

/// Worst (largest absolute gap) of a list of (lhs, rhs) pairs; multi-point
/// checks report that point so the recorded error is the binding one.
fn worst_pair(pairs: &[(f64, f64)]) -> (f64, f64) {
    let mut worst = pairs[0];
    for &(l, r) in pairs.iter().skip(1) {
        if (l - r).abs() > (worst.0 - worst.1).abs() {
            worst = (l, r);
        }
    }
    worst
}

/// `sum_{k=1}^{200} x^{2k} zeta(2k) / (k + offset)` with offset 0 or 1.
fn zeta_power_sum(x: f64, offset: f64) -> f64 {
    let mut sum = crate::kahan::KahanSum::new();
    let x2 = x * x;
    let mut x_pow = x2;
    for k in 1..=200u32 {
        if x_pow == 0.0 {
            break;
        }
        let z = specfun::zeta(2.0 * k as f64).expect("zeta argument is >= 2 here");
        sum.add(x_pow * z / (k as f64 + offset));
        x_pow *= x2;
    }
    sum.value()
}

fn compute(cache: &ZetaCache, id: &str) -> Result<Outcome, String> {
    let err = |e: &dyn fmt::Display| e.to_string();
    match id {
        "eq_1_1" => {
            let lhs = chains::s_direct(10_000) + chains::s_tail(10_000);
            let rhs = 3.5 * specfun::zeta(3.0).map_err(|e| err(&e))?;
            Ok(Outcome {
                lhs,
                rhs,
                terms: 10_000,
                method: "odd-tail-corrected partial sum to N=10000; abs".into(),
            })
        }
        "eq_1_3_collapse" => {
            let mut pairs = Vec::new();
            for &n in &[2u64, 3, 10, 1000] {
                pairs.push((
                    chains::term_1_3_n2_bracket(n).map_err(|e| err(&e))?,
                    chains::term_1_4(n).map_err(|e| err(&e))?,
                ));
            }
            let (lhs, rhs) = worst_pair(&pairs);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 1000,
                method: "worst of n in {2; 3; 10; 1000}; abs".into(),
            })
        }
        "eq_1_4_chain" => {
            let pi = std::f64::consts::PI;
            let lhs = 15.0 * 2.0f64.ln() - 9.0 * 3.0f64.ln() - (64.0 * pi / 243.0).ln()
                + chains::sum_term_1_4_corrected(2000, 6).map_err(|e| err(&e))?;
            let rhs = 3.5 * specfun::zeta(3.0).map_err(|e| err(&e))? / (pi * pi);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 2000,
                method: "tail-corrected sum to N=2000 (K=6); abs".into(),
            })
        }
        "eq_1_5" => {
            let pi = std::f64::consts::PI;
            let lhs = chains::sum_term_1_4_corrected(2000, 6)
                .map_err(|e| err(&e))?
                .exp();
            let rhs = (81.0 / 512.0)
                * pi
                * (3.5 * specfun::zeta(3.0).map_err(|e| err(&e))? / (pi * pi)).exp();
            Ok(Outcome {
                lhs,
                rhs,
                terms: 2000,
                method: "exp of tail-corrected sum to N=2000 (K=6); rel".into(),
            })
        }
        "superfactorial" => {
            let pairs: Vec<(f64, f64)> = [1u64, 2, 10, 40]
                .iter()
                .map(|&n| chains::superfactorial_identity(n))
                .collect();
            let (lhs, rhs) = worst_pair(&pairs);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 40,
                method: "worst of N in {1; 2; 10; 40}; abs on logs".into(),
            })
        }
        "gamma_product" => {
            let mut pairs = Vec::new();
            for n in 2..=50u64 {
                pairs.push((
                    chains::gamma_product_lhs(n).map_err(|e| err(&e))?,
                    chains::gamma_product_rhs(n).map_err(|e| err(&e))?,
                ));
            }
            let (lhs, rhs) = worst_pair(&pairs);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 50,
                method: "worst of N in 2..50; abs on logs".into(),
            })
        }
        "euler_92" => {
            let mut base = Vec::new();
            for n in accel::arithmetic_schedule(10, 200) {
                base.push((n as f64, chains::euler_92_product(n).map_err(|e| err(&e))?));
            }
            let table = accel::wynn_rho(&base, 4).map_err(|e| err(&e))?;
            Ok(Outcome {
                lhs: table.best,
                rhs: std::f64::consts::PI,
                terms: 200,
                method: "wynn_rho over partials at N = 20..200 step 20; abs vs built-in pi".into(),
            })
        }
        "eq_2_4_vs_2_8" => {
            let mut pairs = Vec::new();
            for &y in &[1.5, 2.0, 4.0, 9.0, 25.0] {
                pairs.push((
                    afunc::log_a_series(cache, y, 60).map_err(|e| err(&e))?.log_a,
                    afunc::a_closed(y).map_err(|e| err(&e))?.log_a,
                ));
            }
            let (lhs, rhs) = worst_pair(&pairs);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 60,
                method: "worst of y in {1.5; 2; 4; 9; 25}; series K=60 vs closed form; abs".into(),
            })
        }
        "eq_2_5_consistency" => {
            let mut pairs = Vec::new();
            for &x in &[1.0, 4.0] {
                let series = (-afunc::log_a_series(cache, x, 60).map_err(|e| err(&e))?.log_a).exp();
                let product = prodcore::tail_corrected_partial(x, 1000, 6)
                    .map_err(|e| err(&e))?
                    .value;
                pairs.push((series, product));
            }
            let (lhs, rhs) = worst_pair(&pairs);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 1000,
                method: "worst of x in {1; 4}; series K=60 vs tail-corrected product N=1000; abs"
                    .into(),
            })
        }
        "r_at_1" => {
            let res = quad::integrate_t_logsin(1.0).map_err(|e| err(&e))?;
            if !res.converged {
                return Err("quadrature did not converge".into());
            }
            Ok(Outcome {
                lhs: 2.0 * res.value,
                rhs: -std::f64::consts::LN_2,
                terms: res.panels as u64,
                method: "adaptive G7-K15 with endpoint closed forms; abs".into(),
            })
        }
        "r_at_4_euler" => {
            let res = quad::integrate_t_logsin(0.5).map_err(|e| err(&e))?;
            if !res.converged {
                return Err("quadrature did not converge".into());
            }
            let pi = std::f64::consts::PI;
            let rhs = -std::f64::consts::LN_2
                + 3.5 * specfun::zeta(3.0).map_err(|e| err(&e))? / (pi * pi);
            Ok(Outcome {
                lhs: 8.0 * res.value,
                rhs,
                terms: res.panels as u64,
                method: "adaptive G7-K15 with endpoint closed forms; abs".into(),
            })
        }
        "eq_2_6" => {
            let pi = std::f64::consts::PI;
            let mut pairs = Vec::new();
            for &x in &[0.1, 0.25, 0.5] {
                let lhs = (pi * x).sin().ln();
                let rhs = (pi * x).ln() - zeta_power_sum(x, 0.0);
                pairs.push((lhs, rhs));
            }
            let (lhs, rhs) = worst_pair(&pairs);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 200,
                method: "worst of x in {0.1; 0.25; 0.5}; direct log sin vs zeta series K=200; abs"
                    .into(),
            })
        }
        "eq_2_7" => {
            let pi = std::f64::consts::PI;
            let mut pairs = Vec::new();
            for &x in &[0.3, 0.5] {
                let lhs = zeta_power_sum(x, 1.0);
                let integral = quad::integrate_t_logsin(x).map_err(|e| err(&e))?;
                if !integral.converged {
                    return Err("quadrature did not converge".into());
                }
                let rhs = 0.5 - (pi * x).sin().ln() + (2.0 / (x * x)) * integral.value;
                pairs.push((lhs, rhs));
            }
            let (lhs, rhs) = worst_pair(&pairs);
            Ok(Outcome {
                lhs,
                rhs,
                terms: 200,
                method: "worst of x in {0.3; 0.5}; zeta series K=200 vs quadrature; abs".into(),
            })
        }
        "eq_2_11" => {
            let lhs = afunc::limit_at_one().map_err(|e| err(&e))?;
            Ok(Outcome {
                lhs,
                rhs: std::f64::consts::PI / 2.0,
                terms: 17,
                method: "rescaled Richardson over x_j = 1 + 2^-j for j = 4..20; abs".into(),
            })
        }
        "eq_2_12" => {
            let pi = std::f64::consts::PI;
            let series =
                afunc::pi_from_product(cache, EvalMethod::Series, 40).map_err(|e| err(&e))?;
            let tail =
                afunc::pi_from_product(cache, EvalMethod::TailCorrected, 1000).map_err(|e| err(&e))?;
            let lhs = if (series - pi).abs() >= (tail - pi).abs() {
                series
            } else {
                tail
            };
            Ok(Outcome {
                lhs,
                rhs: pi,
                terms: 1000,
                method: "worst of series K=40 and tail-corrected N=1000; rel vs built-in pi".into(),
            })
        }
        _ => unreachable!("compute covers the registry"),
    }
}
