//! Command-line surface: `verify` runs the identity registry, `pi` computes
//! the constant by a chosen strategy, `table` prints convergence tables, and
//! `bench` compares acceleration strategies at a fixed term budget.
//!
//! All output is assembled in memory and written in one deterministic pass;
//! numbers serialize with 17 significant digits (lowercase scientific) so
//! reports round-trip through a double without loss. Exit codes: 0 success /
//! all checks pass, 1 at least one check failed, 2 usage error, 3 a
//! numerical failure prevented a value from being produced.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::accel;
use crate::afunc;
use crate::chains;
use crate::prodcore::{self, EvalMethod};
use crate::specfun::{self, ZetaCache};
use crate::verify::{self, IdentityCheck, REGISTRY_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "zetaprod",
    version,
    about = "Compute and verify corrected-product identities for pi",
    subcommand_required = true,
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run identity checks and write a report (text, JSON, or CSV).
    Verify(VerifyArgs),
    /// Compute pi from the corrected square-power product.
    Pi(PiArgs),
    /// Print a convergence table over a geometric schedule of sizes.
    Table(TableArgs),
    /// Compare acceleration strategies at a fixed term budget.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated check ids; omit to run the full registry.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Multiply every tolerance by this factor (must be positive).
    #[arg(long = "tol-scale", default_value_t = 1.0)]
    pub tol_scale: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Write the report to this path instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct PiArgs {
    #[arg(long, value_enum, default_value_t = PiMethod::Series)]
    pub method: PiMethod,
    /// Product terms (or series depth for --method series).
    #[arg(long, default_value_t = 40)]
    pub terms: u64,
    /// Significant digits to print (1..=17).
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub digits: u32,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub target: TableTarget,
    #[arg(long = "n-start")]
    pub n_start: u64,
    #[arg(long = "n-stop")]
    pub n_stop: u64,
    /// Geometric step between rows (must exceed 1).
    #[arg(long = "n-factor", default_value_t = 2.0)]
    pub n_factor: f64,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    pub format: TableFormat,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub target: BenchTarget,
    #[arg(long = "budget-terms", default_value_t = 200, value_parser = clap::value_parser!(u64).range(20..))]
    pub budget_terms: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiMethod {
    Naive,
    Tail,
    Extrapolate,
    Series,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum TableTarget {
    #[value(name = "pi_product")]
    PiProduct,
    #[value(name = "euler_product")]
    EulerProduct,
    #[value(name = "s_series")]
    SSeries,
    #[value(name = "a_series")]
    ASeries,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchTarget {
    #[value(name = "pi_product")]
    PiProduct,
    #[value(name = "euler_product")]
    EulerProduct,
}

/// Dispatch a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Pi(args) => cmd_pi(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Bench(args) => cmd_bench(&args),
    }
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn numerical_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_NUMERICAL
}

fn emit(out: &Option<String>, body: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| format!("cannot write report: {e}"))
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    if !(args.tol_scale > 0.0) {
        return usage_error("--tol-scale must be positive");
    }
    for id in &args.only {
        if !REGISTRY_IDS.contains(&id.as_str()) {
            return usage_error(&format!("unknown check id '{id}'"));
        }
    }
    let selected: Vec<&str> = REGISTRY_IDS
        .iter()
        .copied()
        .filter(|id| args.only.is_empty() || args.only.iter().any(|want| want == id))
        .collect();

    let cache = ZetaCache::with_default_depth();
    let mut results = Vec::with_capacity(selected.len());
    for id in selected {
        match verify::run_check_scaled(&cache, id, args.tol_scale) {
            Ok(check) => results.push(check),
            Err(e) => return usage_error(&e.to_string()),
        }
    }

    let body = match args.format {
        ReportFormat::Json => report_json(&results),
        ReportFormat::Csv => report_csv(&results),
        ReportFormat::Text => report_text(&results),
    };
    if let Err(e) = emit(&args.out, &body) {
        return numerical_error(&e);
    }
    if results.iter().any(|c| c.method.starts_with("failed:")) {
        EXIT_NUMERICAL
    } else if results.iter().all(|c| c.pass) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_pi(args: &PiArgs) -> i32 {
    let minimum = if args.method == PiMethod::Series { 1 } else { 2 };
    if args.terms < minimum {
        return usage_error(&format!(
            "--terms must be at least {minimum} for this method"
        ));
    }
    let method = match args.method {
        PiMethod::Naive => EvalMethod::Naive,
        PiMethod::Tail => EvalMethod::TailCorrected,
        PiMethod::Extrapolate => EvalMethod::Extrapolated,
        PiMethod::Series => EvalMethod::Series,
    };
    let cache = ZetaCache::with_default_depth();
    let estimate = match afunc::pi_from_product(&cache, method, args.terms) {
        Ok(v) => v,
        Err(e) => return numerical_error(&e.to_string()),
    };
    let abs_err = (estimate - std::f64::consts::PI).abs();
    let mut body = String::new();
    let _ = writeln!(body, "{}", significant_digits(estimate, args.digits));
    let _ = writeln!(
        body,
        "abs error vs built-in pi: {:e} ({} terms, method {})",
        abs_err, args.terms, method
    );
    if emit(&None, &body).is_err() {
        return EXIT_NUMERICAL;
    }
    EXIT_OK
}

struct TableRow {
    n: u64,
    estimate: f64,
    abs_err: f64,
    observed_order: f64,
}

fn cmd_table(args: &TableArgs) -> i32 {
    if args.n_start < 2 || args.n_start >= args.n_stop {
        return usage_error("require 2 <= n-start < n-stop");
    }
    if !(args.n_factor > 1.0) {
        return usage_error("--n-factor must exceed 1");
    }
    let schedule = geometric_schedule(args.n_start, args.n_stop, args.n_factor);
    // The a_series target reads zeta(2k) up to k = n, so its cache must be
    // at least that deep; terms underflow long before k = 2048, making that
    // a safe ceiling for any desk-scale schedule.
    let cache = match args.target {
        TableTarget::ASeries => ZetaCache::new((args.n_stop as usize).clamp(60, 2048)),
        _ => ZetaCache::with_default_depth(),
    };

    let mut rows: Vec<TableRow> = Vec::with_capacity(schedule.len());
    for &n in &schedule {
        let (estimate, reference) = match table_point(&cache, args.target, n) {
            Ok(pair) => pair,
            Err(e) => return numerical_error(&e),
        };
        let abs_err = (estimate - reference).abs();
        let observed_order = match rows.last() {
            Some(prev) if prev.abs_err > 0.0 && abs_err > 0.0 => match args.target {
                // Geometric series: digits gained per extra term.
                TableTarget::ASeries => {
                    (prev.abs_err / abs_err).log10() / (n - prev.n) as f64
                }
                // Power-law targets: slope of log(err) against log(N).
                _ => (prev.abs_err / abs_err).ln() / (n as f64 / prev.n as f64).ln(),
            },
            _ => f64::NAN,
        };
        rows.push(TableRow {
            n,
            estimate,
            abs_err,
            observed_order,
        });
    }

    let mut body = String::new();
    match args.format {
        TableFormat::Csv => {
            body.push_str("n,estimate,abs_err,observed_order\n");
            for row in &rows {
                let _ = writeln!(
                    body,
                    "{},{},{},{}",
                    row.n,
                    fmt17(row.estimate),
                    fmt17(row.abs_err),
                    fmt17(row.observed_order)
                );
            }
        }
        TableFormat::Text => {
            let order_label = match args.target {
                TableTarget::ASeries => "digits/term",
                _ => "order",
            };
            let _ = writeln!(
                body,
                "{:>10}  {:>24}  {:>13}  {:>12}",
                "n", "estimate", "abs_err", order_label
            );
            for row in &rows {
                let _ = writeln!(
                    body,
                    "{:>10}  {:>24.17e}  {:>13.6e}  {:>12.4}",
                    row.n, row.estimate, row.abs_err, row.observed_order
                );
            }
        }
    }
    if let Err(e) = emit(&None, &body) {
        return numerical_error(&e);
    }
    EXIT_OK
}

/// One table row's (estimate, reference) pair for the chosen target.
fn table_point(cache: &ZetaCache, target: TableTarget, n: u64) -> Result<(f64, f64), String> {
    let pi = std::f64::consts::PI;
    match target {
        TableTarget::PiProduct => {
            let partial = prodcore::corrected_partial(1.0, n).map_err(|e| e.to_string())?;
            Ok(((1.5 + partial.log_value).exp(), pi))
        }
        TableTarget::EulerProduct => Ok((
            chains::euler_92_product(n).map_err(|e| e.to_string())?,
            pi,
        )),
        TableTarget::SSeries => {
            let reference = 3.5 * specfun::zeta(3.0).map_err(|e| e.to_string())?;
            Ok((chains::s_direct(n), reference))
        }
        TableTarget::ASeries => {
            let k = usize::try_from(n).map_err(|_| "a_series depth exceeds usize".to_string())?;
            let value = afunc::log_a_series(cache, 1.0, k)
                .map_err(|e| e.to_string())?
                .log_a;
            Ok((value, 1.5 - pi.ln()))
        }
    }
}

struct BenchRow {
    label: &'static str,
    abs_err: f64,
    digits_gained: Option<f64>,
    est_error: Option<f64>,
}

fn cmd_bench(args: &BenchArgs) -> i32 {
    let pi = std::f64::consts::PI;
    let budget = args.budget_terms;

    let sample: &dyn Fn(u64) -> Result<f64, String> = match args.target {
        BenchTarget::PiProduct => &|n| {
            prodcore::corrected_partial(1.0, n)
                .map(|p| (1.5 + p.log_value).exp())
                .map_err(|e| e.to_string())
        },
        BenchTarget::EulerProduct => &|n| chains::euler_92_product(n).map_err(|e| e.to_string()),
    };
    let tail: &dyn Fn(u64) -> Result<f64, String> = match args.target {
        BenchTarget::PiProduct => &|n| {
            prodcore::tail_corrected_partial(1.0, n, 6)
                .map(|p| (1.5 + p.log_value).exp())
                .map_err(|e| e.to_string())
        },
        BenchTarget::EulerProduct => {
            &|n| chains::euler_92_tail_corrected(n, 6).map_err(|e| e.to_string())
        }
    };

    let naive = match sample(budget) {
        Ok(v) => v,
        Err(e) => return numerical_error(&e),
    };
    let naive_err = (naive - pi).abs();
    let mut rows = vec![BenchRow {
        label: "naive",
        abs_err: naive_err,
        digits_gained: None,
        est_error: None,
    }];

    let eps_schedule = accel::interleaved_doubling_schedule(2, 3, budget);
    let mut eps_values = Vec::with_capacity(eps_schedule.len());
    for &n in &eps_schedule {
        match sample(n) {
            Ok(v) => eps_values.push(v),
            Err(e) => return numerical_error(&e),
        }
    }
    let eps_order = ((eps_values.len() - 1) / 2).max(1);
    match accel::wynn_epsilon(&eps_values, eps_order) {
        Ok(table) => rows.push(BenchRow {
            label: "wynn_epsilon",
            abs_err: (table.best - pi).abs(),
            digits_gained: Some(accel::digits_gained(pi, naive, table.best)),
            est_error: Some(table.est_error),
        }),
        Err(e) => return numerical_error(&e.to_string()),
    }

    let rho_schedule = accel::arithmetic_schedule(10, budget);
    let mut rho_base = Vec::with_capacity(rho_schedule.len());
    for &n in &rho_schedule {
        match sample(n) {
            Ok(v) => rho_base.push((n as f64, v)),
            Err(e) => return numerical_error(&e),
        }
    }
    let rho_order = ((rho_base.len() - 1) / 2).clamp(1, 4);
    match accel::wynn_rho(&rho_base, rho_order) {
        Ok(table) => rows.push(BenchRow {
            label: "wynn_rho",
            abs_err: (table.best - pi).abs(),
            digits_gained: Some(accel::digits_gained(pi, naive, table.best)),
            est_error: Some(table.est_error),
        }),
        Err(e) => return numerical_error(&e.to_string()),
    }

    match tail(budget) {
        Ok(v) => rows.push(BenchRow {
            label: "tail_corrected_k6",
            abs_err: (v - pi).abs(),
            digits_gained: Some(accel::digits_gained(pi, naive, v)),
            est_error: None,
        }),
        Err(e) => return numerical_error(&e),
    }

    let target_name = match args.target {
        BenchTarget::PiProduct => "pi_product",
        BenchTarget::EulerProduct => "euler_product",
    };
    let mut body = String::new();
    let _ = writeln!(
        body,
        "target {target_name}; budget {budget} terms; reference built-in pi"
    );
    for row in &rows {
        let _ = write!(body, "{:<18} abs_err {:>13.6e}", row.label, row.abs_err);
        if let Some(d) = row.digits_gained {
            let _ = write!(body, "  digits_gained {d:>7.3}");
        }
        if let Some(est) = row.est_error {
            let _ = write!(body, "  est_error {est:>13.6e}");
        }
        body.push('\n');
    }
    if let Err(e) = emit(&None, &body) {
        return numerical_error(&e);
    }
    EXIT_OK
}

/// Geometric size schedule: start, then round(n * factor) (always advancing
/// by at least 1), while the value stays within `stop`.
pub fn geometric_schedule(start: u64, stop: u64, factor: f64) -> Vec<u64> {
    let mut schedule = Vec::new();
    let mut n = start;
    while n <= stop {
        schedule.push(n);
        let next = ((n as f64) * factor).round() as u64;
        n = next.max(n + 1);
    }
    schedule
}

/// Format with `digits` significant digits in plain decimal notation.
fn significant_digits(value: f64, digits: u32) -> String {
    if !value.is_finite() || value == 0.0 {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let excess = magnitude + 1 - digits as i32;
    if excess > 0 {
        // More integer digits than requested: round away the excess places.
        let scale = 10f64.powi(excess);
        let rounded = (value / scale).round() * scale;
        return format!("{rounded:.0}");
    }
    let decimals = (-excess) as usize;
    format!("{value:.decimals$}")
}

/// 17-significant-digit serialization used in JSON and CSV output.
fn fmt17(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        // CSV/JSON have no float NaN literal; an empty-ish sentinel would be
        // worse than spelling it out where JSON permits (null) and CSV gets
        // the bare token.
        format!("{value}")
    }
}

fn json_number(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut escaped = String::with_capacity(s.len() + 2);
    escaped.push('"');
    for c in s.chars() {
        match c {
            '"' => escaped.push_str("\\\""),
            '\\' => escaped.push_str("\\\\"),
            '\n' => escaped.push_str("\\n"),
            '\r' => escaped.push_str("\\r"),
            '\t' => escaped.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(escaped, "\\u{:04x}", c as u32);
            }
            c => escaped.push(c),
        }
    }
    escaped.push('"');
    escaped
}

/// Report JSON: {"version":"1","results":[...],"all_pass":bool}.
pub fn report_json(results: &[IdentityCheck]) -> String {
    let mut body = String::from("{\"version\":\"1\",\"results\":[");
    for (i, c) in results.iter().enumerate() {
        if i > 0 {
            body.push(',');
        }
        let _ = write!(
            body,
            "{{\"id\":{},\"description\":{},\"lhs\":{},\"rhs\":{},\"abs_err\":{},\"rel_err\":{},\"tolerance\":{},\"pass\":{},\"terms\":{},\"method\":{},\"elapsed_ms\":{}}}",
            json_string(c.id),
            json_string(&c.description),
            json_number(c.lhs),
            json_number(c.rhs),
            json_number(c.abs_err),
            json_number(c.rel_err),
            json_number(c.tolerance),
            c.pass,
            c.terms,
            json_string(&c.method),
            json_number(c.elapsed_ms),
        );
    }
    let all_pass = results.iter().all(|c| c.pass);
    let _ = write!(body, "],\"all_pass\":{all_pass}}}");
    body.push('\n');
    body
}

pub fn report_csv(results: &[IdentityCheck]) -> String {
    let mut body = String::from("id,lhs,rhs,abs_err,rel_err,tolerance,pass,terms,method,elapsed_ms\n");
    for c in results {
        debug_assert!(!c.method.contains(','), "method strings stay comma-free");
        let _ = writeln!(
            body,
            "{},{},{},{},{},{},{},{},{},{}",
            c.id,
            fmt17(c.lhs),
            fmt17(c.rhs),
            fmt17(c.abs_err),
            fmt17(c.rel_err),
            fmt17(c.tolerance),
            c.pass,
            c.terms,
            c.method,
            fmt17(c.elapsed_ms),
        );
    }
    body
}

pub fn report_text(results: &[IdentityCheck]) -> String {
    let mut body = String::new();
    for c in results {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            body,
            "{verdict}  {:<18} abs_err {:>13.6e}  rel_err {:>13.6e}  tol {:>9.1e}  terms {:>6}  {}",
            c.id, c.abs_err, c.rel_err, c.tolerance, c.terms, c.method
        );
    }
    let passed = results.iter().filter(|c| c.pass).count();
    let _ = writeln!(body, "{passed}/{} checks passed", results.len());
    body
}
