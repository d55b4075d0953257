//! Binary-level contract: input sources, report shapes, witness files on
//! disk, and the documented exit codes (0 extends/verified, 1 does not
//! extend/rejected, 2 unknown or no constructive witness, 3 input error,
//! 4 evaluation budget exhausted).

use std::path::Path;
use std::process::Output;

use tempfile::TempDir;

/// Checks embedded in infinite-degree problems so window verification
/// stays fast.
const FAST_CHECKS: &str = "window 5\nbudget 16777216\nwordbudget 60\n";

fn covex(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_covex"))
        .args(args)
        .output()
        .expect("failed to spawn the executable")
}

fn covex_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_covex"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("failed to spawn the executable");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write_problem(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[track_caller]
fn assert_exit(out: &Output, want: i32) {
    assert_eq!(out.status.code(), Some(want), "stdout:\n{}", stdout_of(out));
}

#[test]
fn decide_reads_problems_from_stdin() {
    let out = covex_stdin(&["decide", "-"], "surface orientable g=0 k=2\nn 3\nclass 3\nclass 3\n");
    assert_exit(&out, 0);
    let report = stdout_of(&out);
    assert!(report.contains("verdict: extends"), "{report}");
    assert!(report.contains("count: 2"), "{report}");
}

#[test]
fn decide_saves_a_witness_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(
        &dir,
        "torus.problem",
        "surface orientable g=1 k=1\nn 4\nclass 3 1\nconnected\n",
    );
    let witness = dir.path().join("torus.witness");
    let out = covex(&["decide", &problem, "--out", witness.to_str().unwrap()]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).contains("witness-file:"));
    let verify = covex(&["verify", witness.to_str().unwrap()]);
    assert_exit(&verify, 0);
    assert!(stdout_of(&verify).contains("witness: verified"));
}

#[test]
fn malformed_problems_exit_three_with_a_coded_message() {
    let dir = tempfile::tempdir().unwrap();
    // One class line short of the declared boundary count.
    let problem =
        write_problem(&dir, "short.problem", "surface orientable g=0 k=2\nn 3\nclass 3\n");
    let out = covex(&["decide", &problem]);
    assert_exit(&out, 3);
    let report = stdout_of(&out);
    assert!(report.starts_with("error: ["), "{report}");
}

#[test]
fn missing_input_files_exit_three() {
    let out = covex(&["decide", "/definitely/not/a/problem"]);
    assert_exit(&out, 3);
    let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(stderr.starts_with("error: cannot read"), "{stderr}");
}

#[test]
fn unknown_verdicts_exit_two() {
    // Existence is certain here, but no constructive witness confirms
    // connectedness, so the connected question stays open.
    let text =
        format!("surface nonorientable g=1 k=1\nn inf\nspec inf:1\nconnected\n{FAST_CHECKS}");
    let out = covex_stdin(&["decide", "-"], &text);
    assert_exit(&out, 2);
    assert!(stdout_of(&out).contains("verdict: unknown"));
}

#[test]
fn witness_without_an_artifact_exits_two_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(
        &dir,
        "crosscap.problem",
        &format!("surface nonorientable g=1 k=1\nn inf\nspec inf:1\n{FAST_CHECKS}"),
    );
    let witness = dir.path().join("crosscap.witness");
    let out = covex(&["witness", &problem, "--out", witness.to_str().unwrap()]);
    assert_exit(&out, 2);
    assert!(stdout_of(&out).contains("witness: none constructive"));
    assert!(!witness.exists(), "no witness file should be written on exit 2");
}

#[test]
fn count_is_planar_only() {
    let ok = covex_stdin(&["count", "-"], "surface orientable g=0 k=2\nn 3\nclass 3\nclass 3\n");
    assert_exit(&ok, 0);
    assert!(stdout_of(&ok).contains("count: 2"));

    let bad = covex_stdin(&["count", "-"], "surface orientable g=1 k=1\nn 3\nclass 3\n");
    assert_exit(&bad, 3);
}

#[test]
fn ore_reports_pairs_for_both_degrees() {
    let finite = covex_stdin(&["ore", "-"], "surface orientable g=1 k=1\nn 5\nclass 5\n");
    assert_exit(&finite, 0);
    let report = stdout_of(&finite);
    assert!(report.contains("a1:") && report.contains("b1:"), "{report}");

    let odd = covex_stdin(&["ore", "-"], "surface orientable g=1 k=1\nn 4\nclass 2 1 1\n");
    assert_exit(&odd, 1);

    let infinite = covex_stdin(
        &["ore", "-"],
        &format!("surface orientable g=1 k=1\nn inf\nspec inf:inf\n{FAST_CHECKS}"),
    );
    assert_exit(&infinite, 0);
    assert!(stdout_of(&infinite).contains("a1: CONJ"));
}

#[test]
fn build_strip_reports_invariants_and_validates_input() {
    let ok = covex_stdin(
        &["build-strip", "-"],
        "surface orientable g=1 k=1\nn 3\nsigma (1 2 3)\ntau (1 2)\n",
    );
    assert_exit(&ok, 0);
    let report = stdout_of(&ok);
    assert!(report.contains("squares: 3"), "{report}");
    assert!(report.contains("euler-characteristic: -3"), "{report}");

    let bad = covex_stdin(
        &["build-strip", "-"],
        "surface orientable g=1 k=1\nn 3\nsigma (1 2 3)\ntau (1 2 3 4)\n",
    );
    assert_exit(&bad, 3);
}

#[test]
fn regular_honours_the_relaxed_flag() {
    let strict = covex_stdin(
        &["regular", "-"],
        "surface nonorientable g=1 k=1\nn 3\nclass 3\nregular\n",
    );
    assert_exit(&strict, 1);

    let relaxed = covex_stdin(
        &["regular", "-"],
        "surface nonorientable g=1 k=1\nn 3\nclass 3\nregular\nrelaxed\n",
    );
    assert_exit(&relaxed, 0);
    assert!(stdout_of(&relaxed).contains("mode: relaxed"));
}

#[test]
fn verify_distinguishes_file_damage_from_budget_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(
        &dir,
        "ore.problem",
        &format!("surface orientable g=1 k=1\nn inf\nspec inf:inf\n{FAST_CHECKS}"),
    );
    let witness = dir.path().join("ore.witness");
    let emit = covex(&["witness", &problem, "--out", witness.to_str().unwrap()]);
    assert_exit(&emit, 0);

    // Dropping the checksum line is an input error, not a failed check.
    let text = std::fs::read_to_string(&witness).unwrap();
    let truncated: String =
        text.lines().filter(|l| !l.starts_with("checksum")).map(|l| format!("{l}\n")).collect();
    let broken = dir.path().join("unsigned.witness");
    std::fs::write(&broken, truncated).unwrap();
    let out = covex(&["verify", broken.to_str().unwrap()]);
    assert_exit(&out, 3);

    // A witness honestly emitted with a starvation-level budget exhausts
    // during re-verification.
    let tiny = write_problem(
        &dir,
        "tiny.problem",
        "surface orientable g=1 k=1\nn inf\nspec inf:inf\nwindow 5\nbudget 4\nwordbudget 60\n",
    );
    let tiny_witness = dir.path().join("tiny.witness");
    let emit = covex(&["witness", &tiny, "--out", tiny_witness.to_str().unwrap()]);
    assert_exit(&emit, 0);
    let out = covex(&["verify", tiny_witness.to_str().unwrap()]);
    assert_exit(&out, 4);
    assert!(stdout_of(&out).contains("budget"), "{}", stdout_of(&out));
}

#[test]
fn witness_directory_write_failures_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(
        &dir,
        "pair.problem",
        "surface orientable g=0 k=2\nn 3\nclass 3\nclass 3\n",
    );
    let missing = Path::new("/definitely/not/a/dir/w.witness");
    let out = covex(&["witness", &problem, "--out", missing.to_str().unwrap()]);
    assert_exit(&out, 3);
}
