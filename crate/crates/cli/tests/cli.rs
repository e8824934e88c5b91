use proptest::prelude::*;
use quiveralg::scalar::frac;
use quiveralg_cli::commands::run;
use quiveralg_cli::expr::{parse_syntax, print, Expr};
use std::io::Write;
use std::process::Command;

fn qalg(args: &[&str]) -> quiveralg_cli::commands::Output {
    run(std::iter::once("qalg").chain(args.iter().copied()))
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Scalar(frac(n, d))),
        prop::sample::select(vec!["1", "2", "v"]).prop_map(|v| Expr::Vertex(v.into())),
        prop::sample::select(vec!["a", "b", "e", "f1", "x_2"]).prop_map(|a| Expr::Arrow(a.into())),
        prop::sample::select(vec!["a", "e"]).prop_map(|a| Expr::Bar(a.into())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Sum(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Diff(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Prod(Box::new(x), Box::new(y))),
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (inner.clone(), 0u32..4).prop_map(|(x, k)| Expr::Pow(Box::new(x), k)),
            inner.prop_map(|x| Expr::Inv(Box::new(x))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn printed_expressions_parse_back(e in expr()) {
        let text = print(&e);
        prop_assert_eq!(parse_syntax(&text).unwrap(), e, "{}", text);
    }
}

#[test]
fn malformed_quiver_file_exits_with_two() {
    let cases = [
        "{ not json",
        r#"{"vertices": ["1"], "arrows": [{"name": "e", "source": "1", "range": "9"}]}"#,
        r#"{"vertices": ["1", "1"], "arrows": []}"#,
        r#"{"vertices": ["1"], "arrows": [], "extra": 1}"#,
    ];
    for text in cases {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        let path = file.path().to_str().unwrap().to_string();
        let out = qalg(&["check", &path, "--samples", "1"]);
        assert_eq!(out.code, 2, "{text}: {out:?}");
        assert!(out.stderr.starts_with("error:"), "{out:?}");
        let out = qalg(&["--json", "-q", &path, "nf", "1"]);
        assert_eq!(out.code, 2);
        let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(doc["error"].is_string());
    }
    assert_eq!(qalg(&["-q", "/nonexistent/quiver.json", "nf", "1"]).code, 2);
}

#[test]
fn quiver_file_round_trip() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(br#"{"vertices": ["1", "2"], "arrows": [{"name": "e", "source": "1", "range": "2"}]}"#)
        .unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let out = qalg(&["-q", &path, "nf", "-c", "leavitt", "e~*e"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "p_2\n"));
}

#[test]
fn normal_forms_in_each_context() {
    let out = qalg(&["-q", "loop", "nf", "-c", "salg", "e~ + inv(1 - e)"]);
    assert_eq!(out.stdout, "e~ + inv(1-e)\n");
    let out = qalg(&["-q", "loop", "--trunc", "3", "series-trunc", "inv(1-e)"]);
    assert_eq!(out.stdout, "1 + e + e^2 + e^3 + O(len>3)\n");
    let out = qalg(&["-q", "rose2", "nf", "(a + b)^2 - a*a"]);
    assert_eq!(out.stdout, "a*b + b*a + b^2\n");
    let out = qalg(&["-q", "a2", "mul", "-c", "salg", "e~", "e"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "e~*e\n"));
}

#[test]
fn verdicts_set_exit_codes() {
    let eq = qalg(&["-q", "rose2", "rat-eq", "inv(1-a-b)", "1 + (a+b)*inv(1-a-b)"]);
    assert_eq!(eq.code, 0, "{eq:?}");
    let ne = qalg(&["-q", "rose2", "rat-eq", "inv(1-a)", "inv(1-b)"]);
    assert_eq!(ne.code, 1, "{ne:?}");
    let q = qalg(&["-q", "a2", "qeq", "p_2", "e~*e"]);
    assert_eq!(q.code, 0, "{q:?}");
    let q = qalg(&["-q", "a2", "qeq", "p_2", "0"]);
    assert_eq!(q.code, 1, "{q:?}");
    let m = qalg(&["-q", "rose3", "monoid-eq", "v", "3*v"]);
    assert_eq!(m.code, 0, "{m:?}");
    let m = qalg(&["-q", "rose3", "monoid-eq", "v", "2*v", "--depth", "4"]);
    assert_eq!(m.code, 1, "{m:?}");
}

#[test]
fn syntax_errors_report_positions() {
    let out = qalg(&["-q", "loop", "nf", "e +"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains('3'), "{}", out.stderr);
    let out = qalg(&["-q", "loop", "nf", "f"]);
    assert_eq!(out.code, 2);
    let out = qalg(&["nf", "e"]);
    assert_eq!(out.code, 2);
}

#[test]
fn json_documents() {
    let out = qalg(&["--json", "-q", "loop", "nf", "1 - e"]);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["command"], "nf");
    assert!(doc.get("result").is_some());
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_qalg"))
        .args(["-q", "a2", "higman", "[[e, 1], [0, 1]]"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let out = Command::new(env!("CARGO_BIN_EXE_qalg")).args(["nf", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
