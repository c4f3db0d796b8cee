//! End-to-end runs of the `wmds` binary: exit codes and output formats.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wmds"))
}

#[test]
fn verify_preset_exits_zero() {
    let out = bin()
        .args(["verify", "--preset", "rank1-n2", "--cap", "4"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["pass"], serde_json::Value::Bool(true));
}

#[test]
fn malformed_cartan_exits_two_with_error_json() {
    let dir = std::env::temp_dir().join("wmds_bin_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"A": [[3]], "n": 2}"#).unwrap();
    let out = bin()
        .args(["roots", "--cartan", path.to_str().unwrap(), "--depth", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    let json: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert!(json["error"].is_string());
}

#[test]
fn roots_csv_shape() {
    let out = bin()
        .args(["roots", "--preset", "affine-n2", "--depth", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "coords,depth,mult,is_real,m_alpha");
    // depth 3 affine table: 4 real + 1 imaginary root.
    assert_eq!(lines.count(), 5);
    assert!(text.contains("\"1,1\",2,1,false,2"));
}

#[test]
fn nseries_emits_table_and_report() {
    let out = bin()
        .args(["nseries", "--preset", "rank1-n2", "--cap", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("coords,depth,coefficient"));
    assert!(text.contains("q*g1"));
    let last = text.lines().last().unwrap();
    let json: serde_json::Value = serde_json::from_str(last).unwrap();
    for key in ["involution", "braid", "cocycle", "invariance", "fe_checks"] {
        assert_eq!(json[key], serde_json::Value::Bool(true), "{key}");
    }
}

#[test]
fn zsum_json_roundtrip() {
    let dir = std::env::temp_dir().join("wmds_bin_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zsum.json");
    std::fs::write(
        &path,
        r#"{"preset": "rank1-n2", "n_max": 1, "s_re": ["3"]}"#,
    )
    .unwrap();
    let out = bin().args(["zsum", path.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let json: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert!(json["partial_sum_re"].is_number());
    assert_eq!(json["shells"].as_array().unwrap().len(), 2);
}

#[test]
fn regions_reports_the_paper_point() {
    let out = bin()
        .args([
            "regions",
            "--preset",
            "hyperbolic-n2",
            "--point",
            "3/2,3/2",
            "--length",
            "6",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("in_tits,true"));
    assert!(text.contains("in_X0_approx,false"));
    assert!(text.contains("tits_inequality_plus,true"));
    assert!(text.contains("s1,\"0,5\""));
}

#[test]
fn gauss_subcommand_prints_values() {
    let out = bin()
        .args(["gauss", "--p", "5", "--n", "2", "--a", "1", "--c", "0,1", "--t", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("gauss_sum"));
    assert!(text.contains("2.236067977500"));
}

#[test]
fn char_and_weyl_and_hcoeff_run() {
    for args in [
        vec!["char", "--preset", "a2-n1", "--lambda", "1,1", "--cap", "3"],
        vec!["weyl", "--preset", "hyperbolic-n2", "--length", "3"],
        vec!["hcoeff", "--preset", "rank1-n2", "--degree-bound", "1"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn cartan_json_with_user_symmetrization() {
    // The rank-one b = 1 convention, supplied through the file interface.
    let dir = std::env::temp_dir().join("wmds_bin_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rank1.json");
    std::fs::write(
        &path,
        r#"{"A": [[2]], "n": 2, "epsilon": ["2"], "B": [["1"]]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["nseries", "--cartan", path.to_str().unwrap(), "--cap", "4"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    // b = 1 makes m(alpha) = 2 and N = 1 + q g1 x.
    assert!(text.contains("1,1,\"q*g1\""), "{text}");
    // An inconsistent decomposition is rejected.
    std::fs::write(
        &path,
        r#"{"A": [[2]], "n": 2, "epsilon": ["1"], "B": [["1"]]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["nseries", "--cartan", path.to_str().unwrap(), "--cap", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hcoeff_table_contains_gauss_sum_values() {
    let out = bin()
        .args(["hcoeff", "--preset", "rank1-n2", "--degree-bound", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // H(1; 1) = 1 and H(t; 1) = g(1, t; 1) = 1 + 2 z^2 - 2 z^3 in Q(zeta_10).
    assert!(text.contains("\"1\",\"1\""));
    assert!(text.contains("\"t\",\"1 + 2*z^2 - 2*z^3\""), "{text}");
}

#[test]
fn outputs_identical_across_thread_counts() {
    let dir = std::env::temp_dir().join("wmds_bin_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zsum_det.json");
    std::fs::write(
        &path,
        r#"{"preset": "a2-n2", "n_max": 1, "s_re": ["3", "3"]}"#,
    )
    .unwrap();
    let run_with = |threads: &str| {
        let out = bin()
            .env("RAYON_NUM_THREADS", threads)
            .args(["zsum", path.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let single = run_with("1");
    let multi = run_with("4");
    assert_eq!(single, multi, "zsum output depends on the thread count");
    assert_eq!(single, run_with("1"), "zsum output differs across runs");
}

#[test]
fn out_flag_writes_table_to_file() {
    let dir = std::env::temp_dir().join("wmds_bin_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.csv");
    let out = bin()
        .args([
            "roots",
            "--preset",
            "a2-n1",
            "--depth",
            "3",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("coords,depth,mult,is_real,m_alpha"));
}
