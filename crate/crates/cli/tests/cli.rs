use std::fs;
use std::process::{Command, Output};

fn ajf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ajf")).args(args).output().expect("run ajf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_trivial_label() {
    let o = ajf(&["eval", "--jmq", "0,0,0", "--x", "0.3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn eval_exact_accepts_fractions() {
    let o = ajf(&["eval", "--jmq", "1,0,0", "--x", "1/2", "--exact"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/2"), "{}", stdout(&o));
    let f = ajf(&["eval", "--jmq", "1,0,0", "--x", "1/2"]);
    assert_eq!(stdout(&f).trim(), "0.5");
}

#[test]
fn eval_json_carries_label_and_body() {
    let o = ajf(&["eval", "--jmq", "j=1/2,m=1/2,q=-1/2", "--x", "-0.2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["label"]["two_j"], 1);
    assert!(v["body"].is_object());
    assert!(v["value"].is_number());
}

#[test]
fn bad_label_exits_two() {
    let o = ajf(&["eval", "--jmq", "1,2,0", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid label"));
    let o = ajf(&["eval", "--jmq", "1/2,0,0", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dmat_identity_csv() {
    let o = ajf(&["dmat", "--two-j", "2", "--beta", "0", "--csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "two_q,2,0,-2\n2,1,0,0\n0,0,1,0\n-2,0,0,1\n");
}

#[test]
fn dmat_json_is_orthogonal() {
    let o = ajf(&["dmat", "--two-j", "3", "--beta", "-1.1", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows: Vec<Vec<f64>> = serde_json::from_value(v["entries"].clone()).unwrap();
    for r in &rows {
        let n: f64 = r.iter().map(|x| x * x).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
}

#[test]
fn verify_casimirs_passes() {
    let o = ajf(&["verify", "--suite", "casimirs", "--window", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn verify_json_report() {
    let o = ajf(&["verify", "--suite", "boundary", "--window", "4", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suite"], "boundary");
}

#[test]
fn unknown_suite_exits_two() {
    let o = ajf(&["verify", "--suite", "nope", "--window", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn transform_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let c = dir.path().join("c.json");
    // x^2 in the m = q = 0 column
    fs::write(&f, r#"{"e_minus":0,"e_plus":0,"poly":["0","0","1"]}"#).unwrap();
    let o = ajf(&["transform", "analyze", "--m", "0", "--q", "0", "--window", "4", "--input", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::write(&c, stdout(&o)).unwrap();
    let o = ajf(&["transform", "synthesize", "--m", "0", "--q", "0", "--window", "4", "--input", c.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let back: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: serde_json::Value = serde_json::from_str(&fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(back, want);
}

#[test]
fn table_lists_generator_action() {
    let o = ajf(&["table", "--op", "A+", "--window", "2"]);
    assert!(o.status.success());
    assert!(!stdout(&o).trim().is_empty());
}
