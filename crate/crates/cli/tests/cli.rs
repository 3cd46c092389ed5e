use std::process::{Command, Output};

fn a3d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a3d")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Last non-comment line of a TSV report.
fn answer(o: &Output) -> String {
    stdout(o).lines().rfind(|l| !l.starts_with('#')).unwrap_or_default().to_string()
}

#[test]
fn witness_is_nonzero() {
    let o = a3d(&["iszero", "--char", "3", "--d", "1", "--expr", "x1^2*bar(x1)^2*x1*bar(x1)"]);
    assert!(o.status.success());
    assert_eq!(answer(&o), "nonzero");
    let o = a3d(&["iszero", "--char", "3", "--expr", "x1^4"]);
    assert_eq!(answer(&o), "zero");
}

#[test]
fn nilpotency_degree() {
    let o = a3d(&["nildeg", "--char", "3", "--d", "1", "--cap", "12"]);
    assert!(o.status.success());
    assert_eq!(answer(&o), "7");
}

#[test]
fn dmax_char_7() {
    let o = a3d(&["dmax", "--char", "7", "--d", "1", "--cap", "10"]);
    assert!(o.status.success());
    assert_eq!(answer(&o), "6");
    let out = stdout(&o);
    assert!(out.contains("# seed: 1") && out.contains("# error_bound:"), "{out}");
}

#[test]
fn exit_codes() {
    let syntax = a3d(&["iszero", "--expr", "x1 + (x2"]);
    assert_eq!(syntax.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("syntax error at 8"));
    assert_eq!(a3d(&["iszero", "--char", "2", "--expr", "x1"]).status.code(), Some(2));
    assert_eq!(a3d(&["iszero", "--char", "9", "--expr", "x1"]).status.code(), Some(2));
    assert_eq!(a3d(&["nildeg", "--cap", "3"]).status.code(), Some(4));
    assert_eq!(a3d(&["iszero", "--d", "1", "--expr", "x2"]).status.code(), Some(3));
    assert_eq!(a3d(&["check", "nope"]).status.code(), Some(3));
    assert_eq!(a3d(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn hypothesis_refuses_without_force() {
    let o = a3d(&["hypothesis"]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("# multidegree: 3,3,3,3,3,3,3"), "{out}");
    assert!(out.contains("# ambient_words: 382749884106670080000"), "{out}");
}

#[test]
fn dims_table() {
    let o = a3d(&["dims", "--char", "3", "--d", "1", "--maxdeg", "3"]);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["multidegree\tambient\trank\tquotient", "1\t2\t0\t2", "2\t4\t0\t4", "3\t8\t4\t4"]);
}

#[test]
fn json_reports() {
    let o = a3d(&["sigma", "--t", "2", "--r", "1", "--decide", "--char", "0", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("valid json");
    assert_eq!(v["result"], "decomposable");
    assert_eq!(v["multidegree"], "2,1,1");
    assert!(v["error_bound"].as_f64().unwrap() < 1e-6);
    let o = a3d(&["sigma", "--expr", "s2(x1)", "--decide", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("valid json");
    assert_eq!(v["result"], "indecomposable");
}

#[test]
fn sigma_substitution() {
    let o = a3d(&["sigma", "--t", "1", "--r", "0", "--args", "x4 x5,x2,x3"]);
    assert_eq!(answer(&o), "tr(x4*x5)");
    let o = a3d(&["sigma", "--t", "1", "--r", "0", "--args", "x1 + x2,x2,x3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for args in [&["dmax", "--d", "1", "--cap", "7"][..], &["dims", "--d", "2", "--maxdeg", "5"][..]] {
        let one = a3d(&[args, &["--threads", "1"]].concat());
        let many = a3d(&[args, &["--threads", "4"]].concat());
        assert!(one.status.success());
        assert_eq!(stdout(&one), stdout(&many));
    }
}

#[test]
fn witness_expansion() {
    let o = a3d(&["witness", "--d", "2"]);
    let out = stdout(&o);
    assert!(out.contains("# degree: 8") && out.contains("# multidegree: 6,2") && out.contains("# terms: 8"), "{out}");
}

#[test]
fn check_suite_runs() {
    let o = a3d(&["check", "word", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(answer(&o), "passed");
}
