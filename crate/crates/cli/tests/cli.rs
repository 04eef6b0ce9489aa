use std::io::Write;
use std::process::{Command, Output, Stdio};

use fbpaths::pathmodel::PathJson;
use fbpaths::QPolynomial;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");

fn fbpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fbpath")).args(args).output().unwrap()
}

fn fbpath_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fbpath"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

#[test]
fn enumerate_trivial_model() {
    let o = fbpath(&["enumerate", "1", "3", "1", "1", "2", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2 1 2 1  wt=4\n");
}

#[test]
fn enumerate_contains_golden_path() {
    let o = fbpath(&["enumerate", "3", "11", "5", "3", "4", "28", "--wt", "90"]);
    assert!(o.status.success());
    let golden = "5 6 7 8 7 8 9 10 9 8 7 6 5 6 7 6 5 6 5 4 3 2 1 2 1 2 3 4 3  wt=90";
    assert!(stdout(&o).lines().any(|l| l == golden));
}

#[test]
fn enumerate_jsonl_reparses() {
    let o = fbpath(&["enumerate", "2", "5", "2", "2", "3", "6", "--format", "jsonl", "--sectors"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.is_empty());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let pj: PathJson = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(pj.to_path().unwrap().wt(), v["wt"].as_i64().unwrap());
        assert!(v["sector"]["n"].is_array());
    }
}

#[test]
fn invalid_model_exits_two() {
    let o = fbpath(&["enumerate", "2", "4", "1", "1", "2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(fbpath(&["char", "2", "5", "1", "1", "3", "2"]).status.code(), Some(2));
    assert_eq!(fbpath(&["verify", "--only", "nonsense"]).status.code(), Some(2));
    assert_eq!(fbpath(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn char_methods_agree_and_reparse() {
    let brute = stdout(&fbpath(&["char", "2", "5", "2", "2", "3", "6", "--method", "bruteforce"]));
    for method in ["recurrence", "bosonic", "fermionic-m", "fermionic-lambda"] {
        let o = fbpath(&["char", "2", "5", "2", "2", "3", "6", "--method", method]);
        assert!(o.status.success(), "{method}");
        assert_eq!(stdout(&o), brute, "{method}");
    }
    let poly: QPolynomial = brute.trim().parse().unwrap();
    assert_eq!(poly.to_string(), brute.trim());
    let json = stdout(&fbpath(&["char", "2", "5", "2", "2", "3", "6", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(QPolynomial::from_json(&v["polynomial"]).unwrap(), poly);
}

#[test]
fn char_dki_matches_recurrence() {
    let rec = stdout(&fbpath(&["char", "3", "8", "4", "3", "2", "15"]));
    let dki = stdout(&fbpath(&["char", "3", "8", "4", "3", "2", "15", "--method", "dki"]));
    assert_eq!(rec, dki);
}

#[test]
fn fermionic_methods_need_ground_state() {
    let o = fbpath(&["char", "2", "5", "2", "2", "3", "6", "--method", "fermionic-m"]);
    assert!(o.status.success());
    let o = fbpath(&["char", "2", "5", "1", "1", "2", "6", "--method", "fermionic-m"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mnsystem_matches_fixture() {
    let o = fbpath(&["mnsystem", "9", "31"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("mnsystem_9_31.txt")).unwrap());
}

#[test]
fn limits_agree() {
    let rocha = fbpath(&["limit", "3", "8", "--method", "rocha", "--degree", "20"]);
    let ferm = fbpath(&["limit", "3", "8", "--method", "fermionic", "--degree", "20"]);
    assert!(rocha.status.success() && ferm.status.success());
    assert_eq!(stdout(&rocha), stdout(&ferm));
    let rr = fbpath(&["limit", "2", "5", "--method", "rocha", "--degree", "20"]);
    let gordon = fbpath(&["limit", "2", "5", "--method", "gordon", "--degree", "20"]);
    assert_eq!(stdout(&rr), stdout(&gordon));
    assert_eq!(fbpath(&["limit", "1", "4", "--method", "fermionic"]).status.code(), Some(2));
}

#[test]
fn bijection_roundtrip() {
    let path = fixture("bijection_3_8.json");
    let o = fbpath(&["bijection", &path]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["parts"], serde_json::json!([6, 6, 6, 6, 3, 2, 1, 1]));
    assert_eq!((v["N"].as_i64(), v["M"].as_i64(), v["wt"].as_i64()), (Some(7), Some(8), Some(31)));
    assert_eq!((v["alpha"].as_i64(), v["beta"].as_i64()), (Some(2), Some(1)));

    let back = fbpath_stdin(&["bijection", "-", "--reverse", "--labels", "3,8,4,3,2,15"], &stdout(&o));
    assert!(back.status.success());
    let pj: PathJson = serde_json::from_str(&stdout(&back)).unwrap();
    assert_eq!(pj.heights, vec![4, 5, 6, 5, 6, 7, 6, 5, 4, 5, 4, 3, 2, 1, 2, 3]);
}

#[test]
fn transform_script_roundtrip() {
    let start = r#"{"p":2,"p'":5,"a":2,"b":2,"c":3,"L":4,"heights":[2,1,2,3,2]}"#;
    let up = fbpath_stdin(&["transform", "-", "--script", "b:2:[3,1]"], start);
    assert!(up.status.success(), "{}", String::from_utf8_lossy(&up.stderr));
    let raised: PathJson = serde_json::from_str(&stdout(&up)).unwrap();
    assert_eq!((raised.p, raised.p_prime), (2, 7));

    let down = fbpath_stdin(&["transform", "-", "--script", "content"], &stdout(&up));
    assert!(down.status.success());
    assert_eq!(String::from_utf8_lossy(&down.stderr).trim(), "k=2 lambda=[3, 1]");
    let back: PathJson = serde_json::from_str(&stdout(&down)).unwrap();
    let original: PathJson = serde_json::from_str(start).unwrap();
    assert_eq!(back, original);

    let dd = fbpath_stdin(&["transform", "-", "--script", "d;d"], start);
    assert_eq!(serde_json::from_str::<PathJson>(&stdout(&dd)).unwrap(), original);
    let bad = fbpath_stdin(&["transform", "-", "--script", "twist"], start);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_subset() {
    let o = fbpath(&["verify", "--only", "gordon"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("gordon") && text.contains("PASS"));
}

#[test]
fn verify_reports_injected_fault() {
    let o = fbpath(&["verify", "--only", "characters", "--inject-fault", "--max-p-prime", "5", "--max-len", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL") && text.contains("counterexample"), "{text}");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--only", "golden,mnsystem,characters,sectors,gordon,cf", "--max-p-prime", "7", "--max-len", "8"];
    let first = fbpath(&args);
    let second = Command::new(env!("CARGO_BIN_EXE_fbpath")).args(args).env("FBPATH_THREADS", "1").output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let mut json_args = args.to_vec();
    json_args.push("--json");
    let a = fbpath(&json_args);
    let b = fbpath(&json_args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}
