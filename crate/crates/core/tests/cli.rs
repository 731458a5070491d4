use std::process::Command;

fn arcgeom(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arcgeom"))
        .args(args)
        .env_remove("ARCGEOM_CACHE")
        .output()
        .unwrap();
    (
        out.status.code(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn curve_count_q3() {
    let (code, out, _) = arcgeom(&["curve", "--q", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(json(&out)["count"], 892);
}

#[test]
fn p_and_h_match_q() {
    let (_, a, _) = arcgeom(&["field", "--q", "4"]);
    let (_, b, _) = arcgeom(&["field", "--p", "2", "--h", "2"]);
    assert_eq!(a, b);
    assert_eq!(json(&a)["degree"], 12);
}

#[test]
fn bounds_threshold_reports_q_star() {
    let (code, out, _) = arcgeom(&["bounds", "--threshold"]);
    assert_eq!(code, Some(0));
    let golden = json(arcgeom::verify::GOLDEN_JSON);
    assert_eq!(json(&out)["q_star"], golden["q_star"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(arcgeom(&["curve", "--q", "6"]).0, Some(2));
    assert_eq!(arcgeom(&["nosuch"]).0, Some(2));
    assert_eq!(arcgeom(&["verify", "--q", "2", "--suite", "nosuch"]).0, Some(2));
    assert_eq!(arcgeom(&["field", "--q", "2", "--modulus", "1,1,1"]).0, Some(2));
    assert_eq!(arcgeom(&["curve", "--q", "4", "--budget", "100"]).0, Some(2));
    let (code, _, err) = arcgeom(&["field", "--q", "3", "--p", "2"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("error"));
}

#[test]
fn modulus_override_changes_encoding_not_counts() {
    // t^6 + t^4 + t^3 + t + 1 is irreducible over F_2
    let (code, out, _) = arcgeom(&["field", "--q", "2", "--modulus", "1,1,0,1,1,0,1"]);
    assert_eq!(code, Some(0));
    assert_eq!(json(&out)["modulus"], serde_json::json!([1, 1, 0, 1, 1, 0, 1]));
    let (code, out, _) = arcgeom(&["curve", "--q", "2", "--modulus", "1,1,0,1,1,0,1"]);
    assert_eq!(code, Some(0));
    assert_eq!(json(&out)["count"], 81);
}

#[test]
fn csv_output_has_header_and_rows() {
    let (code, out, _) = arcgeom(&["spectrum", "--q", "2", "--format", "csv"]);
    assert_eq!(code, Some(0));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "character,lines");
    assert_eq!(lines.len(), 5);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["secants", "--q", "2", "--trials", "40", "--seed", "9"];
    let (_, one, _) = arcgeom(&[&args[..], &["--threads", "1"]].concat());
    let (_, four, _) = arcgeom(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
    let v = json(&one);
    assert!(v["points"].as_array().unwrap().iter().all(|p| p["agreement"] == true));
}

#[test]
fn single_point_secants() {
    let (code, out, _) = arcgeom(&["secants", "--q", "2", "--a", "2", "--b", "10"]);
    assert_eq!(code, Some(0));
    let v = json(&out);
    assert_eq!(v["points"].as_array().unwrap().len(), 1);
    assert_eq!(arcgeom(&["secants", "--q", "2", "--a", "zz", "--b", "1"]).0, Some(2));
}

#[test]
fn verify_selected_suites() {
    let (code, out, _) = arcgeom(&[
        "verify",
        "--q",
        "3",
        "--suite",
        "curve,detnorm,eskew",
        "--trials",
        "500",
    ]);
    assert_eq!(code, Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 3);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_arcgeom"))
        .args(["curve", "--q", "2"])
        .env("ARCGEOM_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    // second run reads the cache
    let again = Command::new(env!("CARGO_BIN_EXE_arcgeom"))
        .args(["curve", "--q", "2"])
        .env("ARCGEOM_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn complete_reports_verdict() {
    let (code, out, _) = arcgeom(&["complete", "--q", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(json(&out)["complete"], true);
    assert_eq!(arcgeom(&["complete", "--q", "4"]).0, Some(2));
}
