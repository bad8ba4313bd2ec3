//! Black-box tests of the command-line contract: output formats, flag
//! handling, exit codes, and file output, all through the real binary.

use std::process::Command;

use zetaprod::verify::REGISTRY_IDS;

fn zetaprod_bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zetaprod"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn json_report_round_trips_field_order_insensitively() {
    let (code, stdout, _) = zetaprod_bin(&["verify", "--format", "json"]);
    assert_eq!(code, 0);
    let first: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let reserialized = serde_json::to_string(&first).unwrap();
    let second: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(first, second);
    assert_eq!(first["all_pass"], true);
    let results = first["results"].as_array().unwrap();
    assert_eq!(results.len(), REGISTRY_IDS.len());
    let ids: Vec<&str> = results.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, REGISTRY_IDS);
}

#[test]
fn verify_csv_has_the_documented_header_and_registry_rows() {
    let (code, stdout, _) = zetaprod_bin(&["verify", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "id,lhs,rhs,abs_err,rel_err,tolerance,pass,terms,method,elapsed_ms"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), REGISTRY_IDS.len());
    for row in rows {
        assert_eq!(row.split(',').count(), 10, "{row}");
        assert!(!row.contains('E'), "uppercase exponent in {row}");
        assert!(!row.contains(" ,") && !row.contains(", "), "padding in {row}");
    }
}

#[test]
fn only_selection_keeps_registry_order_and_subsets() {
    // Passed in reverse order on purpose; the report stays in registry order.
    let (code, stdout, _) = zetaprod_bin(&[
        "verify",
        "--only",
        "eq_2_6,r_at_1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let ids: Vec<&str> = parsed["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, vec!["r_at_1", "eq_2_6"]);
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let path_str = path.to_str().unwrap();
    let (code, stdout, _) = zetaprod_bin(&[
        "verify",
        "--only",
        "eq_1_1",
        "--format",
        "json",
        "--out",
        path_str,
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "report must go to the file, not stdout");
    let written = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(parsed["results"][0]["id"], "eq_1_1");
}

#[test]
fn tolerance_scale_drives_the_exit_code() {
    let (code, stdout, _) = zetaprod_bin(&["verify", "--tol-scale", "1e-6"]);
    assert_eq!(code, 1, "squeezed tolerances must report check failure");
    assert!(stdout.contains("FAIL"));
    let (code, _, _) = zetaprod_bin(&["verify", "--tol-scale", "1000"]);
    assert_eq!(code, 0);
    let (code, _, stderr) = zetaprod_bin(&["verify", "--tol-scale", "0"]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn usage_errors_exit_with_code_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--only", "bogus"],
        &["verify", "--format", "yaml"],
        &["pi", "--method", "magic"],
        &["pi", "--method", "naive", "--terms", "1"],
        &["pi", "--digits", "0"],
        &["table", "--target", "pi_product", "--n-start", "50", "--n-stop", "10"],
        &["table", "--target", "pi_product", "--n-start", "1", "--n-stop", "10"],
        &["table", "--target", "pi_product", "--n-start", "10", "--n-stop", "100", "--n-factor", "1.0"],
        &["table", "--target", "nothing", "--n-start", "10", "--n-stop", "100"],
        &["bench", "--target", "pi_product", "--budget-terms", "10"],
        &["frobnicate"],
    ];
    for args in cases {
        let (code, _, _) = zetaprod_bin(args);
        assert_eq!(code, 2, "expected usage error for {args:?}");
    }
}

#[test]
fn series_pi_needs_only_one_term() {
    let (code, stdout, _) = zetaprod_bin(&["pi", "--method", "series", "--terms", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1 terms"));
}

#[test]
fn table_csv_contract_holds_for_every_target() {
    for target in ["pi_product", "euler_product", "s_series", "a_series"] {
        let (code, stdout, _) = zetaprod_bin(&[
            "table",
            "--target",
            target,
            "--n-start",
            "4",
            "--n-stop",
            "64",
            "--n-factor",
            "2",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0, "{target}");
        let mut lines = stdout.lines();
        assert_eq!(lines.next().unwrap(), "n,estimate,abs_err,observed_order");
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 5, "{target}: 4, 8, 16, 32, 64");
        for (i, row) in rows.iter().enumerate() {
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields.len(), 4, "{target}: {row}");
            assert_eq!(fields[0].parse::<u64>().unwrap(), 4 << i);
            assert!(fields[1].parse::<f64>().is_ok());
            assert!(fields[2].parse::<f64>().is_ok());
            // First row has no predecessor: its order column is NaN.
            let order = fields[3].parse::<f64>().unwrap();
            assert_eq!(order.is_nan(), i == 0 || fields[2].parse::<f64>().unwrap() == 0.0);
        }
    }
}

#[test]
fn naive_pi_table_shows_first_order_convergence() {
    let (code, stdout, _) = zetaprod_bin(&[
        "table",
        "--target",
        "pi_product",
        "--n-start",
        "100",
        "--n-stop",
        "100000",
        "--n-factor",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    for row in stdout.lines().skip(2) {
        let order: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
        assert!((order - 1.0).abs() <= 0.1, "order {order} drifts from 1");
    }
}

#[test]
fn bench_reports_every_strategy_row() {
    for target in ["pi_product", "euler_product"] {
        let (code, stdout, _) = zetaprod_bin(&["bench", "--target", target]);
        assert_eq!(code, 0, "{target}");
        for label in ["naive", "wynn_epsilon", "wynn_rho", "tail_corrected_k6"] {
            assert!(
                stdout.lines().any(|l| l.starts_with(label)),
                "{target} output is missing the {label} row"
            );
        }
        assert!(stdout.contains("digits_gained"));
    }
}

#[test]
fn text_report_is_the_default_format() {
    let (code, stdout, _) = zetaprod_bin(&["verify", "--only", "eq_1_1"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("PASS"));
    assert!(stdout.contains("1/1 checks passed"));
}
