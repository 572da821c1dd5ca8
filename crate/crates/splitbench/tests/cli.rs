use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_splitbench");

const FEASIBLE: &str = "
kind = best_approx
z = 3.0 2.0
tol = 1e-10
known_solution = 1.0 1.0

[set.C]
type = halfspace
normal = 1.0 0.0
offset = 1.0

[set.D]
type = halfspace
normal = 0.0 1.0
offset = 1.0
";

const DISJOINT: &str = "
kind = best_approx
z = 0.0 0.0

[set.C]
type = halfspace
normal = 1.0 0.0
offset = -1.0

[set.D]
type = halfspace
normal = -1.0 0.0
offset = -1.0
";

fn write_config(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_prints_a_summary_and_writes_the_trace() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "feasible.cfg", FEASIBLE);
    let csv = dir.path().join("trace.csv");
    let out = run_cli(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("stop = converged"), "{text}");
    assert!(text.contains("final error ="), "{text}");
    assert!(text.contains("trace written to"), "{text}");

    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("k,r,residual,error,lyapunov,bound\n"));
    assert!(csv_text.lines().count() > 2);
}

#[test]
fn repeated_solves_emit_byte_identical_traces() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "pair.cfg",
        "
kind = linear_pair
z = 1.0 -0.5 2.0
seed = 9
tol = 1e-10

[operator.A]
type = random_monotone

[operator.B]
type = random_monotone
",
    );
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for out_path in [&first, &second] {
        let out = run_cli(&[
            "solve",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert_eq!(a, b);
}

#[test]
fn method_flag_overrides_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "feasible.cfg", FEASIBLE);
    let out = run_cli(&["solve", "--config", cfg.to_str().unwrap(), "--method", "dr"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("method = dr"));
}

#[test]
fn probe_flags_divergence_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "disjoint.cfg", DISJOINT);
    let out = run_cli(&["probe", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("verdict = diverging"));
}

#[test]
fn probe_reports_bounded_on_feasible_problems() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "feasible.cfg", FEASIBLE);
    let out = run_cli(&["probe", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict = bounded"));
}

#[test]
fn rate_subcommand_fits_an_emitted_trace() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "feasible.cfg", FEASIBLE);
    let csv = dir.path().join("trace.csv");
    let out = run_cli(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run_cli(&["rate", "--in", csv.to_str().unwrap(), "--from", "1", "--to", "100"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("rate ="), "{text}");
}

#[test]
fn config_errors_exit_one_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.cfg", &format!("{FEASIBLE}\nbeta = 1.2\n"));
    let out = run_cli(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"), "{err}");
    assert!(err.contains("beta"), "{err}");
}

#[test]
fn missing_config_file_exits_one() {
    let out = run_cli(&["solve", "--config", "/nonexistent/nope.cfg"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn unknown_flags_exit_one() {
    let out = run_cli(&["solve", "--conf", "x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run_cli(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("solve"));
}
