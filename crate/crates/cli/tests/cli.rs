use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn algcsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algcsp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn solve(file: &str, strategy: &str) -> Output {
    algcsp(&["solve", fixture(file).to_str().unwrap(), "--strategy", strategy])
}

#[test]
fn xor_instance_is_unsat() {
    let o = solve("xor-instance.json", "auto");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("unsat"));
}

#[test]
fn mass_product_instance_has_witness_zero_zero() {
    let o = solve("masspt-instance.json", "auto");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness: 0 0\n"), "{}", stdout(&o));
}

#[test]
fn oracle_and_auto_agree() {
    for file in ["xor-instance.json", "masspt-instance.json", "sum-instance.json"] {
        let a = solve(file, "oracle");
        let b = solve(file, "auto");
        assert_eq!(a.status.code(), b.status.code(), "{file}");
        assert_eq!(stdout(&a).lines().next(), stdout(&b).lines().next(), "{file}");
    }
}

#[test]
fn json_solve_output() {
    let o = algcsp(&["solve", fixture("sum-instance.json").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["decision"], "sat");
    assert_eq!(v["witness"], serde_json::json!([0, 1, 2]));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(solve("malformed.json", "auto").status.code(), Some(2));
    assert_eq!(solve("unknown-algebra.json", "auto").status.code(), Some(2));
    assert_eq!(solve("masspt-instance.json", "fastest").status.code(), Some(2));
    // The strategy does not apply to this algebra.
    assert_eq!(solve("masspt-instance.json", "simple4").status.code(), Some(2));
    assert_eq!(algcsp(&["analyze", fixture("malformed.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(algcsp(&["analyze", "nonesuch"]).status.code(), Some(2));
}

#[test]
fn analyze_sq3() {
    let o = algcsp(&["analyze", "sq3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["abelian: true", "simple: true", "masses: [{0,1,2}]"] {
        assert!(out.lines().any(|l| l == line), "missing `{line}` in\n{out}");
    }
}

#[test]
fn analyze_a0_file() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/a0.json");
    let o = algcsp(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["masses"], serde_json::json!([[0]]));
    assert_eq!(v["abelian"], false);
    assert_eq!(v["ctb"]["d"], serde_json::json!([0]));
}

#[test]
fn fixture_directory_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_algcsp"))
        .args(["analyze", "masspt-instance"])
        .env("ALGCSP_FIXTURES", fixture(""))
        .output()
        .unwrap();
    // An instance is not an algebra.
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_lists_seven() {
    let o = algcsp(&["classify-cibs", "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("size 4: 192 cibs, 64 simple, 7 simple with an sq3 subalgebra"));
    let listed: Vec<&str> = out
        .lines()
        .skip_while(|l| !l.starts_with("size 4"))
        .skip(1)
        .take_while(|l| l.starts_with("  a"))
        .collect();
    assert_eq!(listed.len(), 7);
}

#[test]
fn verify_xor_suite() {
    let o = algcsp(&["verify-paper", "--suite", "xor"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite xor: 14/14 passed"));
}

#[test]
fn verify_all_suites() {
    let o = algcsp(&["verify-paper", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), algcsp::verify::SUITES.len());
}

#[test]
fn output_is_deterministic() {
    let a = algcsp(&["verify-paper", "--allow-subpower", "--suite", "fry-pan", "--seed", "5"]);
    let b = algcsp(&["verify-paper", "--allow-subpower", "--suite", "fry-pan", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("(sampled)"));
}
