use std::fs;
use std::process::{Command, Output};

use e7forge::e7mat::E7Mat;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e7forge")).args(args).output().expect("spawn e7forge")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["build", "--construction", "g2", "--out", "x"]).status.code(), Some(2));
    assert_eq!(run(&["integral", "--a", "0", "--b", "1", "--c", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "center", "--construction", "split"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn build_writes_e7mat_files() {
    let dir = tempfile::tempdir().unwrap();
    let p56 = dir.path().join("tits56.e7mat");
    let o = run(&["build", "--construction", "tits", "--out", p56.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let text = fs::read_to_string(&p56).unwrap();
    assert!(text.starts_with("#E7MAT v1\nconstruction=tits rep=56 count=133 dim=56 scalar=exact\n"));
    assert_eq!(E7Mat::read(&text).unwrap().write(), text);

    let p133 = dir.path().join("tits133.e7mat");
    let o = run(&["build", "--construction", "tits", "--rep", "133", "--scalar", "float", "--out", p133.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let text = fs::read_to_string(&p133).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("count=133 dim=133 scalar=float"));

    let bad = dir.path().join("split133.e7mat");
    assert_eq!(run(&["build", "--construction", "split", "--rep", "133", "--out", bad.to_str().unwrap()]).status.code(), Some(2));
    assert!(!bad.exists());
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.e7mat");
    let b = dir.path().join("b.e7mat");
    for p in [&a, &b] {
        let o = run(&["sample", "--n", "3", "--seed", "9", "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{o:?}");
    }
    let ta = fs::read_to_string(&a).unwrap();
    assert_eq!(ta, fs::read_to_string(&b).unwrap());
    assert!(ta.contains("#manifest seed=9 "));
    let f = E7Mat::read(&ta).unwrap();
    assert_eq!(f.labels, ["g1", "g2", "g3"]);
    assert_eq!(run(&["sample", "--n", "0", "--out", a.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn volume_and_integral_output() {
    let o = run(&["volume", "--target", "E7modU"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2^5/(3^12·5^5·7^3·11^2·13^2·17) · π^27");
    let o = run(&["volume", "--target", "SO8"]);
    assert_eq!(stdout(&o).trim(), "2^12/(3^3·5) · π^16");
    let o = run(&["integral", "--a", "1", "--b", "1", "--c", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("I(1,1,1) = 1/(2·3)\n"), "{}", stdout(&o));
    let o = run(&["integral", "--a", "9", "--b", "9", "--c", "9"]);
    assert!(stdout(&o).contains("8·I = 2/(3^5·5·11·13^2·17)"), "{}", stdout(&o));
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("volumes.json");
    let o = run(&["verify", "--suite", "volumes", "--report", report.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["records"].as_array().unwrap().iter().any(|r| r["name"] == "covering.full" && r["detail"] == "2"));

    let o = run(&["verify", "--suite", "center"]);
    assert!(o.status.success(), "{o:?}");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "center");

    // An impossible tolerance makes the Jacobi check fail.
    let o = run(&["verify", "--suite", "jacobi", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("worst offender: tits.jacobi"));
}
