use std::path::PathBuf;
use std::process::Command;

use wscat_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn wscat(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("wscat").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn fixture(name: &str, json: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wscat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p
}

fn chain2() -> String {
    fixture("chain2.json", r#"{"points": ["a","b"], "leq": [["a","b"]]}"#)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn profile_of_fincof() {
    let (code, out) = wscat(&["algebra", "profile", "fincof"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("σ=2, semi-artinian, Spec scattered"), "{out}");
}

#[test]
fn profile_of_ratint_is_not_scattered() {
    let (code, out) = wscat(&["algebra", "profile", "ratint"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("σ=0, not semi-artinian, Spec not scattered"), "{out}");
}

#[test]
fn support_of_finset_times_ratint() {
    let (code, out) = wscat(&["stone", "support", "prod(finset:2,ratint)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("δ^1 Spec = Spec(ratint) (perfect)"), "{out}");
}

#[test]
fn refine_two_chain() {
    let file = chain2();
    let dot = std::env::temp_dir().join(format!("wscat-f-{}.dot", std::process::id()));
    let (code, out) = wscat(&[
        "refine",
        &file,
        "--topology",
        "inv",
        "--set",
        "{a,b}",
        "--cover",
        "whole",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("δ = 1"));
    assert!(out.contains("all 12 checks passed"));
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.contains("cluster_stage1"));
}

#[test]
fn refine_rejects_non_locally_closed_piece() {
    let file = fixture(
        "chain3.json",
        r#"{"points": ["a","b","c"], "leq": [["a","b"],["b","c"]]}"#,
    );
    let (code, _) = wscat(&[
        "refine",
        file.to_str().unwrap(),
        "--set",
        "{a,c}",
        "--cover",
        "{a,c}",
    ]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn poset_queries() {
    let file = chain2();
    let (code, out) = wscat(&["poset", "info", &file]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("inverse: ranks a=1 b=0"), "{out}");
    let (code, out) = wscat(&["poset", "wvisible", &file, "{a}"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Y1 = {a,b}, Y2 = {b}"), "{out}");
    let (code, _) = wscat(&["poset", "info", "/nonexistent/poset.json"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn algebra_member_and_quotient() {
    let (_, out) = wscat(&["algebra", "member", "ordint:w^2", "[w,w+3)", "--alpha", "1"]);
    assert!(out.contains("∈ s_1"), "{out}");
    let (_, out) = wscat(&["algebra", "member", "ordint:w^2", "[0,w)", "--alpha", "1"]);
    assert!(out.contains("∉ s_1"), "{out}");
    let (code, out) = wscat(&["algebra", "quotient", "ordint:w^2*2+w+3", "--alpha", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("= ordint:w*2+1"), "{out}");
}

#[test]
fn stone_commands() {
    let (code, out) = wscat(&["stone", "cbrank", "ordint:w^2", "prime@w*2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("= 1"), "{out}");
    let (code, out) = wscat(&["stone", "verify", "fincof", "--alpha", "1", "--samples", "40"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, _) = wscat(&["stone", "cbrank", "fincof", "prime@w"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn superdec_certificates() {
    let (code, out) = wscat(&["certify", "superdec", "ratint", "--depth", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("8 leaves at depth 3"), "{out}");
    let (code, out) = wscat(&["certify", "superdec", "finset:3", "--depth", "3"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("atom is reached"), "{out}");
}

#[test]
fn dcat_ltg() {
    let (code, out) = wscat(&["dcat", "ltg", "{p0: [1@0], p2: [2@-1]}", "--cover", "{p0,p1};{p2}"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("piece (0, p2): t ⊗ g({p2}) = {p2: [2@-1]}"), "{out}");
    let (code, _) = wscat(&["dcat", "ltg", "{p0: [1@0], p2: [2@-1]}", "--cover", "{p0}"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(wscat(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(wscat(&["algebra", "profile", "bogus:3"]).0, EXIT_USAGE);
    assert_eq!(wscat(&["algebra", "quotient", "fincof", "--alpha", "w+"]).0, EXIT_USAGE);
    assert_eq!(wscat(&["selftest", "--only", "12"]).0, EXIT_USAGE);
    assert_eq!(wscat(&["--help"]).0, EXIT_OK);
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--only", "4", "--only", "8", "--seed", "7", "--verbose"];
    let (code, a) = wscat(&args);
    let (_, b) = wscat(&args);
    assert_eq!(code, EXIT_OK, "{a}");
    assert_eq!(a, b);
    assert!(a.starts_with("seed 7\n"));
    let (_, d) = wscat(&["selftest", "--only", "6"]);
    assert!(d.contains("(default)"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wscat");
    let ok = Command::new(bin).args(["algebra", "profile", "fincof"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["algebra", "profile"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(!bad.stderr.is_empty());
}
