use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsion-genus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    (
        serde_json::from_str(&stdout(&o)).unwrap(),
        o.status.code().unwrap(),
    )
}

fn euler_coefficients(v: &Value) -> Vec<i64> {
    v["config"]["euler_coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect()
}

#[test]
fn dmvv_point() {
    let point = data("point.tsv");
    let point = point.to_str().unwrap();
    let (v, code) = json(&["dmvv", "--table", point, "--twisted", "--pmax", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "MATCH");
    assert_eq!(euler_coefficients(&v), [1, 1, 2, 3, 4]);
    let blocks: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["series"].as_str().unwrap())
        .collect();
    assert!(blocks.contains(&"Z--"));

    let (v, code) = json(&["dmvv", "--table", point, "--pmax", "4"]);
    assert_eq!(code, 0);
    assert_eq!(euler_coefficients(&v), [1, 1, 2, 3, 5]);
}

#[test]
fn dmvv_wreath_labels_only() {
    let point = data("point.tsv");
    let point = point.to_str().unwrap();
    let (plain, _) = json(&["dmvv", "--table", point, "--twisted", "--pmax", "4"]);
    let (wreath, code) = json(&[
        "dmvv",
        "--table",
        point,
        "--twisted",
        "--pmax",
        "4",
        "--wreath",
    ]);
    assert_eq!(code, 0);
    assert_eq!(wreath["config"]["coefficients"], "c_G");
    assert_eq!(plain["rows"], wreath["rows"]);
    assert_eq!(euler_coefficients(&wreath), [1, 1, 2, 3, 4]);
}

#[test]
fn delta_witness_row() {
    let o = run(&["delta", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines().any(|l| l == "(12)\t(34)\t-1\t1\tDISAGREE"),
        "{out}"
    );
    assert!(out
        .lines()
        .any(|l| l == "(12)(34)\t(13)(24)\t-1\t-1\tAGREE"));
    assert!(out.ends_with("# verdict: DISAGREE\n"));
}

#[test]
fn delta_at_three_agrees() {
    let (v, code) = json(&["delta", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "AGREE");
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["oracle"] == 1 && r["rules"] == 1));
}

#[test]
fn euler_values() {
    let o = run(&["euler", "--n", "4", "--euler-x", "1", "--provider", "rules"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(5), Some("4\t1\trules\t4"));
    let o = run(&[
        "euler",
        "--n",
        "4",
        "--euler-x",
        "1",
        "--provider",
        "oracle",
    ]);
    assert_eq!(stdout(&o).lines().nth(5), Some("4\t1\toracle\t3"));
    let o = run(&[
        "euler",
        "--n",
        "2",
        "--euler-x",
        "-2",
        "--provider",
        "trivial",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn euler_table_crosscheck() {
    let k3 = data("k3.tsv");
    let (v, code) = json(&["euler", "--n", "4", "--table", k3.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "MATCH");
    assert_eq!(v["rows"][4]["trivial"], 25650);
}

#[test]
fn theta_check_passes() {
    let (v, code) = json(&["theta-check", "--samples", "100", "--tol", "1e-9"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn sectors_dump() {
    let k3 = data("k3.tsv");
    let (v, code) = json(&[
        "sectors",
        "--table",
        k3.to_str().unwrap(),
        "--jmax",
        "2",
        "--qmax",
        "1",
    ]);
    assert_eq!(code, 0);
    let minus: Vec<&Value> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["j"] == 2 && r["part"] == "minus")
        .collect();
    // T_2^- at q^(1/2) is the m = 1 row of the table
    assert_eq!(minus.len(), 5);
    assert!(minus.iter().all(|r| r["q"] == "1/2"));
}

#[test]
fn output_is_deterministic() {
    let k3 = data("k3.tsv");
    let args = [
        "dmvv",
        "--table",
        k3.to_str().unwrap(),
        "--twisted",
        "--pmax",
        "3",
        "--qmax",
        "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let t1 = Command::new(env!("CARGO_BIN_EXE_torsion-genus"))
        .args(["delta", "--n", "5"])
        .env("TORSION_GENUS_THREADS", "1")
        .output()
        .unwrap();
    let t4 = Command::new(env!("CARGO_BIN_EXE_torsion-genus"))
        .args(["delta", "--n", "5"])
        .env("TORSION_GENUS_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(t1.stdout, t4.stdout);
    assert_eq!(
        run(&["theta-check", "--seed", "5"]).stdout,
        run(&["theta-check", "--seed", "5"]).stdout
    );
}

#[test]
fn operational_errors_exit_two() {
    let o = run(&["dmvv", "--table", "/nonexistent/table.tsv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(run(&["delta", "--n", "11"]).status.code(), Some(2));
    assert_eq!(
        run(&["euler", "--n", "3", "--euler-x", "1", "--provider", "spin"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_torsion-genus"))
        .args(["delta", "--n", "3"])
        .env("TORSION_GENUS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn failed_verification_exits_one() {
    let o = run(&["theta-check", "--samples", "10", "--tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("# verdict: FAIL\n"));
}
