use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linkage-kit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

#[test]
fn flags_produce_json_document() {
    let out = run(&["--root-system", "A1", "--weight", "2", "--command", "linkset"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out.stdout);
    assert_eq!(doc["schema"], "linkage-kit/1");
    assert_eq!(doc["result"]["kind"], "linkage_set");
    assert_eq!(doc["result"]["count"], 2);
    assert_eq!(doc["result"]["members"][0]["weight"], serde_json::json!([["-4/1"]]));
}

#[test]
fn job_from_stdin_matches_flags() {
    let text =
        r#"{"root_system":"A_2","parabolic":[1],"character":{"coordinates":[["0","0"]]},"command":"candidates"}"#;
    let mut child = bin()
        .args(["--job", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let from_job = child.wait_with_output().unwrap();
    let from_flags = run(&[
        "--root-system",
        "A_2",
        "--parabolic",
        "1",
        "--weight",
        "0,0",
        "--command",
        "candidates",
    ]);
    assert_eq!(from_job.status.code(), Some(0));
    assert_eq!(from_job.stdout, from_flags.stdout);
    assert_eq!(json(&from_job.stdout)["result"]["count"], 3);
}

#[test]
fn job_file_is_read() {
    let path = std::env::temp_dir().join(format!("linkage-kit-job-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"root_system":"B2","character":{"coordinates":[["0","0"]]},"command":"orbit"}"#,
    )
    .unwrap();
    let out = run(&["--job", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["result"]["count"], 8);
}

#[test]
fn validation_errors_exit_2_with_field() {
    let out = run(&["--root-system", "A2", "--weight", "2/0,1", "--command", "linkset"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = json(&out.stderr);
    assert_eq!(err["error"]["field"], "character.coordinates[0][0]");

    let out = run(&["--root-system", "D3", "--weight", "0,0,0", "--command", "linkset"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--root-system", "A1", "--weight", "0", "--command", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"]["field"], "command");

    let out = run(&[
        "--root-system",
        "A2",
        "--parabolic",
        "1",
        "--weight",
        "-2,0",
        "--command",
        "candidates",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"]["code"], "NotParabolicDominant");
}

#[test]
fn orbit_guard_env_exits_3() {
    let out = bin()
        .args(["--root-system", "A2", "--weight", "0,0", "--command", "linkset"])
        .env("LINKAGE_ORBIT_GUARD", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out.stderr)["error"]["code"], "OrbitGuardExceeded");

    let out = bin()
        .args(["--root-system", "A2", "--weight", "0,0", "--command", "linkset"])
        .env("LINKAGE_ORBIT_GUARD", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_format_and_oracle() {
    let out = run(&[
        "--root-system",
        "A1",
        "--embeddings",
        "2",
        "--weight",
        "1;0",
        "--command",
        "factors",
        "--oracle",
        "--witnesses",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4 members"), "{text}");
    assert!(text.contains("(-3);(-2)"), "{text}");
    assert!(text.contains("oracle: agrees"), "{text}");
}

#[test]
fn obstructions_report_central_keys() {
    let out = run(&[
        "--root-system",
        "A2",
        "--parabolic",
        "1",
        "--weight",
        "0,0",
        "--command",
        "obstructions",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out.stdout);
    assert_eq!(doc["result"]["unconditionally_noncritical"], false);
    assert_eq!(doc["result"]["count"], 2);

    let out = run(&[
        "--root-system",
        "A1",
        "--parabolic",
        "1",
        "--weight",
        "2",
        "--command",
        "obstructions",
    ]);
    assert_eq!(json(&out.stdout)["result"]["unconditionally_noncritical"], true);
}
