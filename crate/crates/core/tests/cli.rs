use std::fs;
use std::path::Path;

use gpsets::cli::{dispatch, RunConfig};
use serde_json::Value;

fn run<S: AsRef<str>>(args: &[S]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gpsets").chain(args.iter().map(AsRef::as_ref));
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json<S: AsRef<str>>(args: &[S]) -> Value {
    let mut v = vec!["--json"];
    v.extend(args.iter().map(AsRef::as_ref));
    let (code, out, err) = run(&v);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const FIB: [&str; 4] = ["--charpoly", "1,-1,-1", "--init", "0,1"];

fn fib<'a>(rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["linrec"];
    v.extend_from_slice(&FIB);
    v.extend_from_slice(rest);
    v
}

#[test]
fn linrec_term_and_membership() {
    let v = json(&fib(&["term", "10"]));
    assert_eq!(v["term"], "55");
    assert_eq!(v["schema"], 1);
    assert_eq!(json(&fib(&["member", "21"]))["member"], true);
    assert_eq!(json(&fib(&["member", "22"]))["member"], false);
    assert_eq!(json(&fib(&["member", "-1"]))["member"], false);
}

#[test]
fn stepping_onset_and_transfer() {
    let dir = tempfile::tempdir().unwrap();
    let lucas = write(dir.path(), "lucas.json", r#"{"schema":1,"charpoly":["1","-1","-1"],"init":["2","1"]}"#);
    let (code, out, _) = run(&fib(&["i0"]));
    assert_eq!(code, 0);
    assert!(out.contains('2'), "{out}");
    let (code, out, _) = run(&fib(&["transfer", "--to", &lucas]));
    assert_eq!(code, 0);
    assert!(out.contains("-1 * n + 2 * nint(beta * n)"), "{out}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["field", "--minpoly", "1,-1,-1"];
    let a = run(&[&["--json"], &args[..]].concat()).1;
    let b = run(&[&["--json"], &args[..]].concat()).1;
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["signature"], serde_json::json!([2, 0]));
    assert_eq!(serde_json::from_str::<Value>(&v.to_string()).unwrap(), v);
}

#[test]
fn eval_expression_text() {
    let dir = tempfile::tempdir().unwrap();
    let env = write(
        dir.path(),
        "env.json",
        r#"{"schema":1,"fields":{"K":{"minpoly":["1","0","-2"]}},"vars":{"x":{"field":"K","coords":["1","1"]},"n":"7"}}"#,
    );
    let (code, out, err) = run(&["eval", "--text", "floor(x * n)", "--env", &env]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("16"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["linrec", "--charpoly", "1,-1,-1", "--init", "0,1", "bogus"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    let (code, _, err) = run(&["salem-recover", "--charpoly", "1,-1,-1", "--init", "0,1", "--i", "3"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[NotSalem]"), "{err}");
    let (code, out, _) = run(&["--json", "eval", "--text", "1 +"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "Syntax");
}

#[test]
fn salem_recover_window() {
    let (code, out, _) = run(&["salem-recover", "--charpoly", "1,-1,-1,-1,1", "--init", "4,1,3,7", "--i", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("equals beta^10: true"), "{out}");
    let v = json(&["salem-recover", "--charpoly", "1,-1,-1,-1,1", "--init", "4,1,3,7", "--member", "15"]);
    assert_eq!(v["member"], false);
}

#[test]
fn zeros_and_complexity() {
    let (code, out, _) = run(&["linrec", "--charpoly", "1,0,-1,-1", "--init", "3,0,2", "zeros", "--bound", "50"]);
    assert_eq!(code, 0);
    assert!(out.contains("[1]"), "{out}");
    let (code, out, _) =
        run(&["complexity", "--minpoly", "1,-1,-1", "--slope", "-1,1", "--length", "500", "--n-max", "6"]);
    assert_eq!(code, 0, "{out}");
    for n in 1..=6 {
        assert!(out.contains(&format!("{}", n + 1)), "{out}");
    }
}

#[test]
fn pisot_set_queries_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.txt", "1,0\n1,1\n2,3\n3,4\n");
    let v = json(&["pisot-set", "--minpoly", "1,-1,-1", "--indices-mod", "2,0", "--queries", &q]);
    let members: Vec<i64> = v["results"].as_array().unwrap().iter().map(|r| r["member"].as_i64().unwrap()).collect();
    // 1, phi^2 = phi + 1 and phi^4 = 3 phi + 2 have even exponents; 4 phi + 3 is no power.
    assert_eq!(members, [1, 1, 1, 0]);
}

#[test]
fn run_config_validation() {
    let dir = tempfile::tempdir().unwrap();
    let bad_key = write(dir.path(), "a.json", r#"{"precision":64,"colour":"red"}"#);
    assert!(RunConfig::load(Path::new(&bad_key)).is_err());
    let low = write(dir.path(), "b.json", r#"{"precision":8}"#);
    assert!(RunConfig::load(Path::new(&low)).is_err());
    let ok = write(dir.path(), "c.json", r#"{"precision":128,"output":"json"}"#);
    let cfg = RunConfig::load(Path::new(&ok)).unwrap();
    assert_eq!(cfg.precision, 128);
    // Bad settings are usage errors.
    assert_eq!(run(&["--config", &low, "field", "--minpoly", "1,-1,-1"]).0, 2);
    assert_eq!(run(&["--config", &bad_key, "field", "--minpoly", "1,-1,-1"]).0, 2);
    assert_eq!(run(&["--precision", "8", "field", "--minpoly", "1,-1,-1"]).0, 2);
    assert_eq!(run(&["--config", &ok, "field", "--minpoly", "1,-1,-1"]).0, 0);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run(&["selftest", "--cases", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}
