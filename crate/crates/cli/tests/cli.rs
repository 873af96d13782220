use std::path::Path;
use std::process::{Command, Output};

use sawcantor::manifest::without_timings;

fn sawcantor(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sawcantor"));
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.args(args)
        .env_remove("SAWCANTOR_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn square_lattice_text_table() {
    let o = sawcantor(
        &[
            "--format",
            "text",
            "saw-count",
            "--group",
            "Z^2",
            "--n-max",
            "10",
        ],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("44100"));
    assert!(out.contains("mu <= 2.913693458576 (n = 10)"), "{out}");
}

#[test]
fn csv_for_the_line() {
    let o = sawcantor(
        &[
            "--format",
            "csv",
            "saw-count",
            "--group",
            "Z",
            "--n-max",
            "3",
        ],
        None,
    );
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "n,count,upper_bound,ratio");
    assert_eq!(rows[1], "0,1,,");
    assert!(rows[2].starts_with("1,2,2"));
    assert_eq!(rows.len(), 5);
}

#[test]
fn exit_codes() {
    let finite = sawcantor(&["saw-count", "--group", "Z/5", "--n-max", "4"], None);
    assert_eq!(finite.status.code(), Some(4));

    let bad_term = sawcantor(&["saw-count", "--group", "Z^^2"], None);
    assert_eq!(bad_term.status.code(), Some(2));

    let budget = sawcantor(
        &[
            "--max-steps",
            "10",
            "saw-count",
            "--group",
            "Z^3",
            "--n-max",
            "9",
        ],
        None,
    );
    assert_eq!(budget.status.code(), Some(3), "{}", stderr(&budget));
    let partial: serde_json::Value = serde_json::from_str(&stdout(&budget)).unwrap();
    assert_eq!(partial["truncated"], true);

    let too_deep = sawcantor(&["cantor-build", "--K", "1", "--depth", "2"], None);
    assert_eq!(too_deep.status.code(), Some(2));

    let no_mask = sawcantor(
        &[
            "verify-facts",
            "--group",
            "Z^2",
            "--mask",
            "0",
            "--moduli",
            "_",
        ],
        None,
    );
    assert_eq!(no_mask.status.code(), Some(2));
}

#[test]
fn modulus_search_exhaustion_reports_the_radius_two_failure() {
    let o = sawcantor(
        &[
            "cantor-build",
            "--K",
            "1",
            "--depth",
            "1",
            "--n-max",
            "6",
            "--m-limit",
            "2",
            "--diagram",
            "none",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(5));
    assert!(
        stderr(&o).contains("radius-2 condition violated at m=2"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn radius_two_failure_is_a_warning() {
    let o = sawcantor(
        &[
            "verify-facts",
            "--group",
            "Z^2",
            "--mask",
            "1",
            "--moduli",
            "2",
            "--n-max",
            "6",
        ],
        None,
    );
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["saw-count", "--group", "H3 x Z", "--n-max", "7"];
    let first = sawcantor(&args, Some(dir.path()));
    assert!(first.status.success());
    assert!(!stderr(&first).contains("cache hit"));
    let second = sawcantor(&args, Some(dir.path()));
    assert!(second.status.success());
    assert!(stderr(&second).contains("cache hit"), "{}", stderr(&second));
    assert_eq!(
        without_timings(&stdout(&first)).unwrap(),
        without_timings(&stdout(&second)).unwrap()
    );
    // a shorter request is served from the longer entry
    let shorter = sawcantor(
        &["saw-count", "--group", "H3 x Z", "--n-max", "5"],
        Some(dir.path()),
    );
    assert!(stderr(&shorter).contains("cache hit"));
}

#[test]
fn build_eval_replay() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let m = manifest.to_str().unwrap();
    let build = sawcantor(
        &[
            "-o",
            m,
            "cantor-build",
            "--K",
            "2",
            "--depth",
            "2",
            "--n-max",
            "7",
            "--diagram",
            "ascii",
        ],
        None,
    );
    assert!(build.status.success(), "{}", stderr(&build));
    assert!(
        stderr(&build).contains("S_2 for Z^2 x Z"),
        "{}",
        stderr(&build)
    );

    let replay = sawcantor(&["cantor-replay", "--manifest", m], None);
    assert_eq!(stdout(&replay).trim(), "identical");

    let eval = sawcantor(
        &[
            "cantor-eval",
            "--manifest",
            m,
            "--word",
            "1(0)",
            "--against",
            "0(1)",
        ],
        None,
    );
    assert!(eval.status.success(), "{}", stderr(&eval));

    let text = std::fs::read_to_string(&manifest).unwrap();
    let tampered = text.replacen("\"moduli\": [\n    3", "\"moduli\": [\n    5", 1);
    assert_ne!(tampered, text);
    std::fs::write(&manifest, tampered).unwrap();
    let replay = sawcantor(&["cantor-replay", "--manifest", m], None);
    assert_eq!(replay.status.code(), Some(1));
}
