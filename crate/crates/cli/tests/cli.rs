use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lambdacol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambdacol"))
        .args(args)
        .env_remove("LAMBDACOL_BUDGET_NODES")
        .env_remove("LAMBDACOL_BUDGET_SECS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn choosable_witness_round_trips_through_verify_cert() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k33.cert");
    let out = lambdacol(&[
        "choosable",
        "--graph",
        "K3,3",
        "--lambda",
        "2",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(10));
    let out = lambdacol(&["verify-cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = lambdacol(&["colorable", "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
}

#[test]
fn choosable_graph_exits_zero() {
    let out = lambdacol(&["choosable", "--graph", "K2,3", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("λ-choosable"));
}

#[test]
fn budget_exhaustion_has_its_own_code() {
    let out = lambdacol(&[
        "choosable",
        "--graph",
        "K3,3,3",
        "--lambda",
        "1,2",
        "--budget-nodes",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(20));
    let out = Command::new(env!("CARGO_BIN_EXE_lambdacol"))
        .args(["choosable", "--graph", "K3,3,3", "--lambda", "1,2"])
        .env("LAMBDACOL_BUDGET_NODES", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(20));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.cert");
    let out = lambdacol(&["construct", "lemma-a", "--a", "0", "--b", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    std::fs::write(&path, &text).unwrap();
    assert_eq!(
        lambdacol(&["verify-cert", path.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );

    // Drop the last list line: the assignment no longer covers every vertex.
    let mut lines: Vec<&str> = text.lines().collect();
    let last_list = lines.iter().rposition(|l| l.starts_with("list ")).unwrap();
    lines.remove(last_list);
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert_eq!(
        lambdacol(&["verify-cert", path.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );

    std::fs::write(&path, "not a certificate\n").unwrap();
    assert_eq!(
        lambdacol(&["verify-cert", path.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn paint_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("game.cert");
    let out = lambdacol(&[
        "paintable",
        "--graph",
        "K3,3",
        "--f",
        "2",
        "--cert-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(10));
    assert!(stdout(&out).contains("Lister wins"));
    assert_eq!(
        lambdacol(&["verify-cert", path.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );

    let out = lambdacol(&[
        "paintable",
        "--graph",
        "K2,2,1",
        "--lambda",
        "1,2",
        "--cert-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("paintable"));
    assert_eq!(
        lambdacol(&["verify-cert", path.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn scans_emit_table_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("records.jsonl");
    let out = lambdacol(&[
        "phi-scan",
        "--lambda",
        "2",
        "--n-max",
        "6",
        "--records",
        records.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("φ̂ = 6"), "{}", stdout(&out));
    let lines = std::fs::read_to_string(&records).unwrap();
    assert!(lines
        .lines()
        .any(|l| l.contains("\"parts\":[3,3]") && l.contains("\"verdict\":\"witness\"")));

    let out = lambdacol(&["psi-scan", "--lambda", "2", "--n-max", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.starts_with('{')));
}

#[test]
fn play_rejects_illegal_moves() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lambdacol"))
        .args(["play", "--graph", "K2", "--order", "1", "--role", "painter"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"{0,1}\n{0}\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let text = stdout(&out);
    assert!(
        text.contains("rejected: coloured set must be independent"),
        "{text}"
    );
    assert!(text.trim_end().ends_with("Lister wins"), "{text}");
}

#[test]
fn bad_arguments_fail() {
    // Usage errors keep clap's code.
    assert_eq!(
        lambdacol(&["choosable", "--graph", "K3,3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lambdacol(&["choosable", "--graph", "nonsense", "--lambda", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lambdacol(&[
            "paintable",
            "--graph",
            "K2",
            "--lambda",
            "1,2",
            "--order",
            "2,2"
        ])
        .status
        .code(),
        Some(1)
    );
}
