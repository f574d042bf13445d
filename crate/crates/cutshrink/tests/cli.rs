use std::path::Path;
use std::process::{Command, Output};

fn cutshrink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutshrink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const GRID: &str = "# 2x3 grid\n6 7\n1 2 1\n2 3 -1\n4 5 1\n5 6 1\n1 4 -1\n2 5 1\n3 6 1\n";

#[test]
fn oracle_prints_key_values() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "t.txt", "3 3\n1 2 1\n2 3 1\n1 3 1\n");
    let o = cutshrink(&["oracle", &file]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("max_value=2\n"));
    assert!(stdout(&o).contains("optimum_count=3\n"));
}

#[test]
fn pipeline_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "g.txt", GRID);
    let out = dir.path().join("report.txt");
    let o = cutshrink(&[
        "pipeline", &file, "--target", "4", "--subsolver", "exact", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = std::fs::read_to_string(out).unwrap();
    let get = |key: &str| {
        report
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap()
            .to_string()
    };
    assert_eq!(get("reduced_size"), "4");
    assert_eq!(get("best_cut_value"), get("c_max"));
    assert_eq!(get("approximation_ratio"), "1");
}

#[test]
fn qaoa_sim_pipeline_is_reproducible_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "g.txt", GRID);
    let run = || {
        let o = cutshrink(&["pipeline", &file, "--target", "3", "--samples", "500", "--seed", "4"]);
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .filter(|l| !l.starts_with("time_"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(run(), run());
}

#[test]
fn landscape_relax_shrink_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "g.txt", GRID);
    let csv = dir.path().join("l.csv");
    let o = cutshrink(&[
        "qaoa-landscape", &file, "--step", "0.2", "--evaluator", "statevector", "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("deviation_ratio="));
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 1 + 8 * 8);

    let o = cutshrink(&["relax", &file]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 15);

    let o = cutshrink(&["shrink", &file, "--target", "2", "--mode", "zero"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 4);

    let o = cutshrink(&["sweep", &file, "--subsolvers", "exact,coin", "--samples", "100"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 2 * 6 * 2);
}

#[test]
fn generate_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.txt");
    let o = cutshrink(&[
        "generate", "ring", "--size", "6", "--weights", "unit", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = cutshrink(&["oracle", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("max_value=6\n"));
}

#[test]
fn errors_exit_nonzero_with_context() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 2\n1 2 1\n1 9 1\n");
    let o = cutshrink(&["oracle", &bad]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let good = write(dir.path(), "g.txt", GRID);
    let o = cutshrink(&["pipeline", &good, "--target", "9"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("shrink stage"));
}
