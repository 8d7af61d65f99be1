use std::path::PathBuf;
use std::process::{Command, Output};

use pscohom::report::RunReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pscohom")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (RunReport, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report: RunReport = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (report, out.status.code().unwrap())
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn table<'a>(r: &'a RunReport, name: &str) -> &'a pscohom::report::Table {
    r.tables.iter().find(|t| t.name == name).unwrap_or_else(|| panic!("no table {name}"))
}

fn column(t: &pscohom::report::Table, col: &str) -> Vec<String> {
    let i = t.columns.iter().position(|c| c == col).unwrap();
    t.rows.iter().map(|r| r[i].clone()).collect()
}

#[test]
fn homology_matches_golden_files() {
    for n in 1..=3 {
        let (mut report, code) = json(&["homology", "--dim-v", &n.to_string()]);
        assert_eq!(code, 0);
        assert!(report.timing_ms.is_some());
        report.timing_ms = None;
        let path = golden(&format!("homology_dim_v{n}.json"));
        let expected: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(report, expected, "{}", path.display());
    }
}

#[test]
fn homology_tables() {
    let (r, _) = json(&["homology", "--dim-v", "2"]);
    assert_eq!(column(table(&r, "homology by degree"), "dim"), ["1", "2", "2", "1"]);
    assert_eq!(column(table(&r, "self-conjugate diagrams"), "partition"), ["()", "(1)", "(2,1)", "(2,2)"]);
    let (r, _) = json(&["homology", "--dim-v", "1"]);
    assert_eq!(column(table(&r, "homology by degree"), "dim"), ["1", "1"]);
    let (r, _) = json(&["homology", "--dim-v", "3"]);
    assert_eq!(column(table(&r, "homology by degree"), "dim"), ["1", "3", "8", "12", "8", "3", "1"]);
    assert_eq!(column(table(&r, "self-conjugate diagrams"), "frobenius")[3], "(1,0|1,0)");
}

#[test]
fn report_round_trips() {
    let (r, _) = json(&["transfer", "--dim-v", "3", "--op", "m3", "--args", "e1,e2,e3"]);
    let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(r.version, pscohom::report::SCHEMA_VERSION);
}

#[test]
fn transfer_examples() {
    let (r, code) = json(&["transfer", "--dim-v", "3", "--op", "m3", "--args", "e1,e2,e3"]);
    assert_eq!(code, 0);
    let t = table(&r, "result");
    assert_eq!(column(t, "class")[0], "e{1,3}^e2");
    assert_eq!(column(t, "value")[0], "-1/3*e1^e{2,3} - 2/3*e2^e{1,3} - 1/3*e3^e{1,2}");
    assert_eq!(column(t, "degree")[0], "2");
    assert_eq!(column(t, "weight")[0], "3");

    let (r, _) = json(&["transfer", "--dim-v", "3", "--op", "m2", "--args", "e1,e2"]);
    assert_eq!(column(table(&r, "result"), "value"), ["0"]);

    let (r, code) = json(&["transfer", "--dim-v", "2", "--op", "mn", "--arity", "4", "--args", "e1,e2,e1,e2"]);
    assert_eq!(code, 0);
    assert!(column(table(&r, "result"), "value").iter().all(|v| v == "0"));
    assert!(r.sign_variant.is_some());
}

#[test]
fn explicit_sign_variant_is_recorded() {
    let (r, code) = json(&["transfer", "--dim-v", "3", "--op", "mn", "--args", "e1,e2,e3", "--sign-variant", "u+1"]);
    assert_eq!(code, 0);
    assert_eq!(r.sign_variant.as_deref(), Some("(-1)^(u+1)"));
    assert_eq!(column(table(&r, "result"), "value"), ["e1^e{2,3} - e3^e{1,2}"]);
}

#[test]
fn transfer_accepts_higher_classes() {
    let (r, code) = json(&["transfer", "--dim-v", "2", "--op", "m2", "--args", "e1,e{1,2}^e2"]);
    assert_eq!(code, 0);
    let t = table(&r, "result");
    assert_eq!(column(t, "degree"), ["3"]);
    assert_eq!(column(t, "weight"), ["4"]);
}

#[test]
fn verify_examples() {
    let (r, code) = json(&["verify", "--suite", "duality", "--dim-v", "3"]);
    assert_eq!(code, 0);
    assert!(r.verdicts[0].detail.starts_with("d = 6"));
    let (_, code) = json(&["verify", "--suite", "hilbert", "--dim-v", "2", "--max-deg", "8"]);
    assert_eq!(code, 0);
    let (r, code) = json(&["verify", "--suite", "stasheff", "--dim-v", "2", "--up-to", "4"]);
    assert_eq!(code, 0);
    assert!(r.passed());
    for suite in ["retract", "cinfty", "generation", "jw"] {
        let (r, code) = json(&["verify", "--suite", suite, "--dim-v", "2"]);
        assert_eq!(code, 0, "{suite}: {:?}", r.verdicts);
    }
}

#[test]
fn littlewood_command() {
    let (r, code) = json(&["littlewood", "--vars", "3", "--max-deg", "10"]);
    assert_eq!(code, 0);
    assert!(r.passed());
}

#[test]
fn failing_verdict_sets_exit_code_one() {
    // calibration is ambiguous, so the signs suite reports a failed verdict
    let (r, code) = json(&["verify", "--suite", "signs", "--dim-v", "2"]);
    assert!(!r.passed());
    assert_eq!(code, 1);
}

#[test]
fn errors_exit_with_two() {
    let out = run(&["transfer", "--dim-v", "3", "--op", "m2", "--args", "e1,e5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("e5"));
    let out = run(&["homology", "--dim-v", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--suite", "nonsense", "--dim-v", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_file_holds_the_json_report() {
    let dir = std::env::temp_dir().join(format!("pscohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["homology", "--dim-v", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let r: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.command, "homology");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_output_lists_verdicts() {
    let out = run(&["homology", "--dim-v", "2"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("[PASS] total: dims (1,2,2,1)"));
}
