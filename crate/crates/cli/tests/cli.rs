//! End-to-end runs of the installed binary.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_mdtree");

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mdtree");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().expect("wait for mdtree")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("mdtree-cli-{}-{name}", std::process::id()));
    p
}

fn appendix_path() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/appendix.grf"))
}

const P4: &str = "p 4 3\ne 0 1\ne 1 2\ne 2 3\n";

#[test]
fn decomposes_a_file_to_canonical_form() {
    let path = scratch("p4.grf");
    fs::write(&path, P4).unwrap();
    let out = run(&["decompose", path.to_str().unwrap()], None);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "(prime 0 1 2 3)\n");
    let _ = fs::remove_file(&path);
}

#[test]
fn reads_stdin_and_renders_every_format() {
    let canon = run(&["decompose", "-"], Some(P4));
    assert_eq!(stdout(&canon), "(prime 0 1 2 3)\n");

    let dot = run(&["decompose", "-", "--format", "dot"], Some(P4));
    let text = stdout(&dot);
    assert!(text.starts_with("digraph mdtree {"), "{text}");
    assert!(text.contains("label=\"P\""), "prime marker missing: {text}");

    let record = run(&["decompose", "-", "--format", "record"], Some(P4));
    let text = stdout(&record);
    assert!(text.contains("{\"kind\":\"prime\",\"children\":["), "{text}");
    assert_eq!(text.matches("\"leaf\"").count(), 4);
}

#[test]
fn trace_goes_to_stderr_and_tree_to_stdout() {
    let out = run(&["decompose", "-", "--trace"], Some(P4));
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(prime 0 1 2 3)\n");
    let log = stderr(&out);
    assert!(log.contains("stage depth=0 pivot=0"), "{log}");
    assert!(log.contains("bracket"), "{log}");
}

#[test]
fn verifies_the_shipped_fixture() {
    let out = run(&["verify", appendix_path().to_str().unwrap()], None);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("ok: n=18"), "{}", stdout(&out));
}

#[test]
fn verify_runs_the_oracle_on_small_inputs() {
    let out = run(&["verify", "-"], Some(P4));
    assert!(out.status.success());
    assert!(stdout(&out).contains("matches brute force"), "{}", stdout(&out));
}

#[test]
fn generated_fixture_matches_the_shipped_file() {
    let out = run(&["gen", "fixture"], None);
    assert!(out.status.success());
    let shipped = fs::read_to_string(appendix_path()).unwrap();
    assert_eq!(stdout(&out), shipped);
}

#[test]
fn gen_verify_round_trip() {
    let path = scratch("gnp.grf");
    let gen = run(
        &["gen", "gnp", "--n", "12", "--p", "0.4", "--seed", "9", "--out", path.to_str().unwrap()],
        None,
    );
    assert!(gen.status.success(), "stderr: {}", stderr(&gen));
    let out = run(&["verify", path.to_str().unwrap()], None);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("matches brute force"));
    let _ = fs::remove_file(&path);

    let cog = run(&["gen", "cograph", "--n", "40", "--seed", "3"], None);
    assert!(cog.status.success());
    let tree = run(&["decompose", "-"], Some(&stdout(&cog)));
    assert!(tree.status.success());
    assert!(!stdout(&tree).contains("prime"), "cograph tree must be prime-free");
}

#[test]
fn bad_input_fails_with_a_diagnostic() {
    let out = run(&["decompose", "-"], Some("e 0\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));

    let missing = run(&["decompose", "/no/such/file.grf"], None);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("error:"));
}

#[test]
fn strict_mode_rejects_what_lenient_repairs() {
    let doubled = "p 2 2\ne 0 1\ne 1 0\n";
    let lenient = run(&["decompose", "-"], Some(doubled));
    assert!(lenient.status.success());
    assert_eq!(stdout(&lenient), "(series 0 1)\n");
    assert!(stderr(&lenient).contains("warning:"), "{}", stderr(&lenient));

    let strict = run(&["decompose", "-", "--strict"], Some(doubled));
    assert_eq!(strict.status.code(), Some(1));
    assert!(stderr(&strict).contains("duplicate edge"), "{}", stderr(&strict));
}

#[test]
fn bench_prints_one_row_per_size() {
    let out = run(&["bench", "--sizes", "64,128", "--avg-degree", "4", "--seed", "1"], None);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3, "header plus two rows: {text}");
    assert!(rows[0].contains("time/(n+m)"));
    assert!(rows[1].trim_start().starts_with("64"));
    assert!(rows[2].trim_start().starts_with("128"));
}
