use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use paq::format::parse_any_poset;
use paq_core::iso::is_isomorphic;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn paq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paq")).args(args).env_remove("PAQ_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn member_with_two_witnesses() {
    let o = paq(&["member", "--target", path(&data("q.poset")), "--gen", path(&data("p.poset"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("ppmap").count(), 2);
}

#[test]
fn non_member_names_the_bottom() {
    let o = paq(&["member", "--target", path(&data("p.poset")), "--gen", path(&data("q.poset"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(f)"), "{}", stdout(&o));
}

#[test]
fn cover_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let o = paq(&["cover", "--m", "2", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 9);
    let printed = stdout(&o);
    let poset_part = &printed[printed.find("poset").unwrap()..];
    let realized = parse_any_poset(poset_part).unwrap();
    let r = parse_any_poset(&std::fs::read_to_string(data("r.poset")).unwrap()).unwrap();
    assert!(is_isomorphic(&realized, &r).is_some());
}

#[test]
fn certificates_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("m.cert");
    let (q, p) = (data("q.poset"), data("p.poset"));
    let o = paq(&["member", "--target", path(&q), "--gen", path(&p), "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = paq(&["check-cert", "--cert", cert.to_str().unwrap(), "--target", path(&q), "--gen", path(&p)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // The same maps do not cover the larger poset.
    let r = data("r.poset");
    let o = paq(&["check-cert", "--cert", cert.to_str().unwrap(), "--target", path(&r), "--gen", path(&p)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn written_posets_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let r = data("r.poset");
    let original = parse_any_poset(&std::fs::read_to_string(&r).unwrap()).unwrap();

    let alg = dir.path().join("r.palg");
    let o = paq(&["epsilon", path(&r)]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&alg, &o.stdout).unwrap();
    let o = paq(&["delta", alg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let back = parse_any_poset(&stdout(&o)).unwrap();
    assert!(is_isomorphic(&back, &original).is_some());

    let o = paq(&["reduce", path(&r)]);
    let text = stdout(&o);
    let reduced = parse_any_poset(&text[..text.find("ppmap").unwrap()]).unwrap();
    assert!(is_isomorphic(&reduced, &original).is_some());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poset");
    std::fs::write(&bad, "poset 2\nle 0 1\nle 1 0\n").unwrap();
    assert_eq!(paq(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
    std::fs::write(&bad, "poset 2\nle 0 nine\n").unwrap();
    assert_eq!(paq(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(paq(&["validate", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(paq(&["member", "--bogus"]).status.code(), Some(2));
    assert_eq!(paq(&["leq", path(&data("r.poset")), path(&data("q.poset"))]).status.code(), Some(0));
    assert_eq!(paq(&["leq", path(&data("q.poset")), path(&data("r.poset"))]).status.code(), Some(1));
    assert_eq!(paq(&["in-pam", path(&data("r.poset")), "--m", "3"]).status.code(), Some(0));
    assert_eq!(paq(&["contains-pam", path(&data("r.poset")), "--m", "2"]).status.code(), Some(0));
    assert_eq!(paq(&["ibm", path(&data("r.poset")), "--m", "2"]).status.code(), Some(1));
    assert_eq!(paq(&["cover", "--m", "1"]).status.code(), Some(2));
    assert_eq!(paq(&["cover", "--m", "2", "--test", path(&data("r.reduced")), "--exhaustive"]).status.code(), Some(0));
}

#[test]
fn budget_from_environment() {
    let r = data("r.poset");
    let o = Command::new(env!("CARGO_BIN_EXE_paq"))
        .args(["ibm", path(&r), "--m", "2"])
        .env("PAQ_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget") || String::from_utf8_lossy(&o.stderr).contains("exceeds"));
}

#[test]
fn records_are_json_lines() {
    let o = paq(&["--format", "records", "--jobs", "1", "verify", "m2-chain"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["name"], "m2-chain");
    }
}

#[test]
fn verify_writes_report_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let certs = dir.path().join("certs");
    let o = paq(&[
        "verify",
        "unique-cover",
        "--m",
        "2",
        "--report",
        report.to_str().unwrap(),
        "--cert-dir",
        certs.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = std::fs::read_to_string(&report).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    let cert = v["certificate_path"].as_str().unwrap();
    assert!(std::fs::read_to_string(cert).unwrap().contains("reduced 3"));
}

#[test]
fn mutation_flag_fails_the_check() {
    let o = paq(&["verify", "lemma-mplus1", "--n-max", "3", "--mutate", "corrupt-star"]);
    assert_eq!(o.status.code(), Some(1));
}
