use std::io::Write;
use std::process::{Command, Output, Stdio};

const PSI: &str = "0.4,0.4,0.1,0.1";

fn entcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entcat"))
        .args(args)
        .env_remove("ENTCAT_COMPONENT_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_reports_violation_and_exits_negative() {
    let o = entcat(&["check", PSI, "0.5,0.25,0.25"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("l = 2"), "{}", stdout(&o));
    assert_eq!(
        entcat(&["check", "0.5,0.25,0.25", PSI]).status.code(),
        Some(3)
    );
    assert_eq!(entcat(&["check", "0.5,0.5", "1"]).status.code(), Some(0));
}

#[test]
fn catalyze_reports_filters() {
    let ok = entcat(&[
        "catalyze",
        "--copies",
        "5",
        PSI,
        "0.5,0.25,0.22,0.03",
        "0.6,0.4",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("catalyst=yes"), "{}", stdout(&ok));

    let no = entcat(&[
        "--normalize",
        "catalyze",
        "0.4,0.4,0.1,0.1,0.01",
        "0.5,0.25,0.2,0.05,0.01",
        "0.7,0.3",
    ]);
    assert_eq!(no.status.code(), Some(3));
    let text = stdout(&no);
    assert!(text.contains("catalyst=no"), "{text}");
    assert!(text.contains("multicopy_filter=violated"), "{text}");
}

#[test]
fn tradeoff_csv_is_exact() {
    let o = entcat(&[
        "--format",
        "csv",
        "tradeoff",
        PSI,
        "0.5,0.25,0.2,0.05",
        "0.6,0.4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "source_copies,min_catalyst_copies,feasible_alone\n\
         1,11,false\n2,5,false\n3,4,false\n4,2,false\n5,1,false\n6,,true\n"
    );
}

#[test]
fn stable_json_carries_fractions_and_no_timing() {
    let o = entcat(&[
        "--stable",
        "--format",
        "json",
        "pmax",
        "0.6,0.2,0.2",
        "0.5,0.4,0.1",
        "--cat",
        "0.65,0.35",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["p_max"]["fraction"], "122/135");
    assert_eq!(v["result"]["p_max"]["decimal"], "0.9037");
    assert!(v.get("timing_ms").is_none());

    let timed = entcat(&["--format", "json", "pmax", "0.6,0.2,0.2", "0.5,0.4,0.1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(v.get("timing_ms").is_some());
}

#[test]
fn search_streams_json_lines() {
    let o = entcat(&[
        "--stable",
        "--format",
        "jsonl",
        "search",
        "--dim",
        "2",
        "--denominator",
        "10",
        PSI,
        "0.5,0.25,0.25",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 2);
    assert!(lines[..lines.len() - 1]
        .iter()
        .all(|l| l.get("hit").is_some()));
    assert!(lines.last().unwrap().get("summary").is_some());
    assert!(stdout(&o).contains("3/5,2/5"));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["check", "0.5,0.4", "1"][..],
        &["check", "abc", "1"],
        &["check", "0.5,-0.5,1", "1"],
        &["bounds", "0.6,0.2,0.2", "0.5,0.5"],
        &["search", "--dim", "2", "--denominator", "4", "0.5,0.5", "1"],
    ] {
        let o = entcat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error:"), "{}", stderr(&o));
    }
}

#[test]
fn component_cap_exits_four() {
    let o = Command::new(env!("CARGO_BIN_EXE_entcat"))
        .args(["mlocc", PSI, "0.5,0.25,0.22,0.03"])
        .env("ENTCAT_COMPONENT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));

    let bad = Command::new(env!("CARGO_BIN_EXE_entcat"))
        .args(["check", "1", "1"])
        .env("ENTCAT_COMPONENT_CAP", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dash_reads_vector_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_entcat"))
        .args(["check", "-", "0.5,0.25,0.25"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"\n0.4,0.4,0.1,0.1\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("l = 2"));
}
