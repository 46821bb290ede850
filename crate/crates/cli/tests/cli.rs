use std::process::{Command, Output};

fn monodromy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodromy"))
        .args(args)
        .output()
        .expect("spawn monodromy")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_run_exits_zero_with_json_report() {
    let o = monodromy(&[
        "--n", "2", "--n", "3", "--check", "qybe", "--check", "braid", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["backend"], "exact");
        assert!(r.get("residual").is_none());
    }
    assert_eq!(rows[0]["check"], "qybe");
    assert_eq!(rows[0]["n"], 2);
    assert_eq!(rows[0]["equation"], "QYBE");
}

#[test]
fn undefined_rank_is_skipped_not_failed() {
    let o = monodromy(&["--n", "3", "--check", "dyn_identity", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "skipped");
}

#[test]
fn numeric_backend_reports_residuals() {
    let o = monodromy(&[
        "--n",
        "2",
        "--check",
        "reflection",
        "--backend",
        "numeric",
        "--h",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in v.as_array().unwrap() {
        assert!(r["residual"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["--n", "5"][..],
        &["--check", "no_such_check"],
        &["--rep-degree", "9"],
        &["--backend", "numeric", "--n", "4", "--h", "4"],
        &["--backend", "symbolic"],
    ] {
        let o = monodromy(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn list_names_every_check() {
    let o = monodromy(&["--list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["qybe", "detq_m", "dyn_identity", "vacuum_weights"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn out_file_matches_stdout_and_job_count_is_irrelevant() {
    let path = std::env::temp_dir().join(format!("monodromy-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let a = monodromy(&["--n", "2", "--format", "json", "--jobs", "1", "--out", p]);
    assert_eq!(a.status.code(), Some(0));
    assert!(a.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let b = monodromy(&["--n", "2", "--format", "json", "--jobs", "3"]);
    assert_eq!(written, b.stdout);
}

#[test]
fn text_report_has_header_row() {
    let o = monodromy(&["--n", "2", "--check", "cartan_det"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("check"));
    assert!(lines.next().unwrap().contains("pass"));
}
