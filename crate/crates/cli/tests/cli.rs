use std::process::{Command, Output};

fn statman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_statman")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn classify_prints_the_class() {
    let o = statman(&["classify", "[3,0]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "omega+3");
    assert_eq!(stdout(&statman(&["classify", "0->0->0"])), "2");
}

#[test]
fn decide_uses_exit_codes() {
    let o = statman(&["decide", "--rel", "be", "[1,1,0]", "[1,0]"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "no"));
    let o = statman(&["decide", "--rel", "h", "[1,1,1,0]", "[1,1,0]"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "yes"));
}

#[test]
fn inhabited() {
    assert_eq!(statman(&["inhabited", "[2]"]).status.code(), Some(0));
    assert_eq!(statman(&["inhabited", "2"]).status.code(), Some(1));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["classify", "[0,"][..],
        &["decide", "--rel", "xx", "0", "0"],
        &["normalize", "--type", "[1,0]", r"\x:0. x"],
        &["frobnicate"],
    ] {
        let o = statman(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn witness_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let o = statman(&["witness", "--rel", "hp", "[2]", "[1,0]", "--out", p, "--verify", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().all(|l| l.contains("pass")));
    let o = statman(&["verify", "--cert", p, "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn corrupted_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    assert_eq!(statman(&["witness", "--rel", "h", "[1,0]", "[1,1,0]", "--out", p]).status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    // Claim a different target type than the witness has.
    let bad = text.replacen("\"target\": \"[[0],[0],0]\"", "\"target\": \"[[0],0]\"", 1);
    assert_ne!(bad, text);
    std::fs::write(&path, bad).unwrap();
    let o = statman(&["verify", "--cert", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("type failure"));
    std::fs::write(&path, "{").unwrap();
    assert_eq!(statman(&["verify", "--cert", p]).status.code(), Some(2));
}

#[test]
fn missing_witness_says_no() {
    let o = statman(&["witness", "--rel", "h", "[1,0]", "[0,0]"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "no"));
}

#[test]
fn enumerate_counts_match_listing() {
    let list = statman(&["enumerate", "[1,1,0]", "--max-size", "12"]);
    let count = statman(&["enumerate", "[1,1,0]", "--max-size", "12", "--count-only"]);
    assert_eq!(stdout(&list).lines().count().to_string(), stdout(&count));
    assert_eq!(stdout(&count), "31");
    assert_eq!(stdout(&statman(&["enumerate", "0", "--max-size", "9", "--count-only"])), "0");
}

#[test]
fn normalize_prints_long_form() {
    let o = statman(&["normalize", "--type", "[1,0]", r"\f:1. f"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r"\x0:[0]. \x1:0. x0 x1");
}

#[test]
fn jobs_flag_is_accepted() {
    for jobs in ["1", "2"] {
        let o = statman(&["--jobs", jobs, "witness", "--rel", "h", "[1,0,0]", "[2]", "--verify", "40"]);
        assert_eq!(o.status.code(), Some(0));
    }
}
