use std::path::Path;
use std::process::Command;

use gwzeta_cli::report::JsonReport;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn gwzeta(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gwzeta")).args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn elliptic_curve_series() {
    let r = gwzeta(&["zeta", "--q", "7", "ell(2,3)", "--order", "6"]);
    assert_eq!(r.code, 0);
    let coeffs: Vec<&str> =
        r.stdout.lines().filter_map(|l| l.split_once(": ").filter(|(k, _)| k.starts_with("t^")).map(|x| x.1)).collect();
    assert_eq!(coeffs, ["6⟨1⟩", "59⟨1⟩ + 1⟨u⟩", "378⟨1⟩", "2400⟨1⟩", "16566⟨1⟩", "117179⟨1⟩ + 1⟨u⟩"]);
    assert!(r.stdout.contains("rank: 6, 60, 378, 2400, 16566, 117180"));
    assert!(r.stdout.contains("disc: 0, 1, 0, 0, 0, 1"));
}

#[test]
fn projective_line_series() {
    let r = gwzeta(&["zeta", "--q", "3", "Pn(1)", "--order", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("t^0: 4⟨1⟩\n"));
    assert!(r.stdout.contains("t^1: 9⟨1⟩ + 1⟨u⟩\n"));
}

#[test]
fn parse_and_validation_errors_exit_2() {
    assert_eq!(gwzeta(&["zeta", "--q", "3", "Pn(-1)"]).code, 2);
    let r = gwzeta(&["zeta", "--q", "3", "Pn(x)"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("position 4"), "{}", r.stderr);
    assert!(r.stderr.contains("expected integer"));
    assert_eq!(gwzeta(&["zeta", "--q", "6", "Pn(1)"]).code, 2);
    assert_eq!(gwzeta(&["zeta", "Pn(1)"]).code, 2);
    assert_eq!(gwzeta(&["zeta", "--q", "3,5", "Pn(1)"]).code, 2);
    assert_eq!(gwzeta(&["zeta", "--q", "3", "Gr(3,3)"]).code, 2);
    assert_eq!(gwzeta(&["zeta", "--q", "7", "ell(0,0)"]).code, 2);
    assert_eq!(gwzeta(&["check", "bogus"]).code, 2);
}

#[test]
fn cellular_examples() {
    let r = gwzeta(&["cellular", "--q", "3", "prod(Pn(1),Pn(1))"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("d/dt log 1/(1 − t) + ⟨−1⟩ d/dt log 1/(1 − q_ε t)² + d/dt log 1/(1 − q_ε² t)"));
    assert!(r.stdout.contains("pipeline: MATCH"));
    let r = gwzeta(&["cellular", "--q", "5", "Gr(1,3)"]);
    assert_eq!(r.code, 0);
    let form = r.stdout.lines().nth(1).unwrap();
    assert_eq!(form.matches("d/dt log").count(), 5);
    assert!(r.stdout.contains("pipeline: MATCH"));
    assert_eq!(gwzeta(&["cellular", "--q", "3", "ell(2,3)"]).code, 4);
    assert_eq!(gwzeta(&["cellular", "--q", "9", "resP1"]).code, 0);
    assert_eq!(gwzeta(&["cellular", "--q", "4", "resP1"]).code, 4);
}

#[test]
fn fit_examples() {
    let r = gwzeta(&["fit", "--q", "3", "resP1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains(": 4 factors"));
    let r = gwzeta(&["fit", "--q", "5", "Pn(2)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains(": 3 factors"));
    assert_eq!(gwzeta(&["fit", "--q", "7", "ell(2,3)"]).code, 5);
}

#[test]
fn table_files() {
    let dir = tempfile::tempdir().unwrap();
    let perturbed: Vec<String> = gwzeta_cli::suites::perturbed_p1_counts(3, 12).iter().map(|c| c.to_string()).collect();
    let path = write(dir.path(), "perturbed.json", &format!("{{\"q\": 3, \"counts\": [{}]}}", perturbed.join(", ")));
    let spec = format!("table({path})");
    assert_eq!(gwzeta(&["zeta", &spec]).code, 0);
    assert_eq!(gwzeta(&["fit", &spec]).code, 5);
    assert_eq!(gwzeta(&["zeta", "--q", "5", &spec]).code, 2);

    let path = write(dir.path(), "bad.json", "{\"q\": 3, \"counts\": [2, 3, 5, 7]}");
    let r = gwzeta(&["zeta", &format!("table({path})"), "--order", "4"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("alpha(2)"), "{}", r.stderr);

    let path = write(dir.path(), "short.json", "{\"q\": 3, \"counts\": [4, 10]}");
    assert_eq!(gwzeta(&["zeta", &format!("table({path})")]).code, 2);
    assert_eq!(gwzeta(&["zeta", &format!("table({path})"), "--order", "2"]).code, 0);

    let path = write(dir.path(), "affine.json", "{\"q\": 3, \"counts\": [3, 9], \"proper\": false}");
    assert_eq!(gwzeta(&["zeta", &format!("table({path})"), "--order", "2"]).code, 4);

    let path = write(dir.path(), "float.json", "{\"q\": 3, \"counts\": [4.0]}");
    assert_eq!(gwzeta(&["zeta", &format!("table({path})")]).code, 2);
    assert_eq!(gwzeta(&["zeta", "table(/nonexistent/x.json)"]).code, 1);
}

#[test]
fn weil_file_matches_curve() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "e.json", "{\"q\": 7, \"weil\": [[1, -1], [1, -2, 7], [1, -7]]}");
    let from_file = gwzeta(&["zeta", &format!("weil({path})"), "--order", "8"]);
    let from_curve = gwzeta(&["zeta", "--q", "7", "ell(2,3)", "--order", "8"]);
    assert_eq!(from_file.code, 0);
    let body = |s: &str| s.lines().skip(1).filter(|l| !l.starts_with("sign")).map(str::to_string).collect::<Vec<_>>();
    assert_eq!(body(&from_file.stdout), body(&from_curve.stdout));

    let path = write(
        dir.path(),
        "neg.json",
        "{\"q\": 2, \"weil\": [[1, -1], [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1000], [1, -2]]}",
    );
    assert_eq!(gwzeta(&["zeta", &format!("weil({path})")]).code, 3);
}

#[test]
fn json_round_trip_and_big_integers() {
    let r = gwzeta(&["zeta", "--q", "7", "Pn(5)", "--format", "json"]);
    assert_eq!(r.code, 0);
    let report = JsonReport::from_json(&r.stdout).unwrap();
    assert_eq!(report.to_json() + "\n", r.stdout);
    assert_eq!(report.coefficients.len(), 12);
    assert!(report.closed_form.as_ref().unwrap().len() == 6);
    assert!(report.checks.values().all(|&ok| ok));
    assert!(r.stdout.contains("\"rank\": \""), "large ranks are strings");
    let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(value["coefficients"][0]["rank"], 19608);

    let r = gwzeta(&["cellular", "--q", "3", "P1xP1", "--format", "json"]);
    let report = JsonReport::from_json(&r.stdout).unwrap();
    assert!(report.checks["pipeline_match"]);
    assert_eq!(report.to_json() + "\n", r.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let r = gwzeta(&["euler", "--q", "3", "Pn(3)", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("2⟨1⟩ + 2⟨−1⟩ = (4,0)\n"));
}

#[test]
fn euler_examples() {
    assert!(gwzeta(&["euler", "--q", "3", "Pn(3)"]).stdout.starts_with("2⟨1⟩ + 2⟨−1⟩ = (4,0)"));
    assert!(gwzeta(&["euler", "--q", "3", "Pn(2)"]).stdout.contains("= (3,1)"));
    assert_eq!(gwzeta(&["euler", "prod(Pn(1),Pn(1))"]).stdout, "2⟨1⟩ + 2⟨−1⟩ = 2h\n");
    assert_eq!(gwzeta(&["euler", "--q", "3", "ell(2,3)"]).code, 4);
    assert_eq!(gwzeta(&["euler", "A(2)"]).code, 4);
}

#[test]
fn check_suites() {
    let r = gwzeta(&["check", "newton"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().all(|l| l.starts_with("[PASS]") || l.ends_with("passed")));
    let r = gwzeta(&["check", "signs", "--q", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("[PASS] signs: sign series of resP1 over F_3 is identically 2"));
    let r = gwzeta(&["check", "all", "--q", "3,5,7", "--order", "12"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(!r.stdout.contains("[FAIL]"));
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "rings", "--q", "5", "--format", "json"];
    assert_eq!(gwzeta(&args).stdout, gwzeta(&args).stdout);
}
