//! End-to-end checks of the CLI contract: exit codes, output formats, and
//! file round-trips.

use std::path::Path;
use std::process::{Command, Output};

use cei::tree::Tree;

fn cei_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cei"))
}

fn run(args: &[&str]) -> Output {
    cei_bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn compute_p4() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p4.txt");
    std::fs::write(&file, "n 4\n1 2\n2 3\n3 4\n").unwrap();
    let out = run(&["compute", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("8/3 ≈ 2.66666666667"), "{}", stdout(&out));
}

#[test]
fn compute_star_with_table() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s5.txt");
    std::fs::write(&file, "n 5\n1 2\n1 3\n1 4\n1 5\n").unwrap();
    let out = run(&["compute", file.to_str().unwrap(), "--verbose"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6/1 ≈ 6.00000000000"));
    assert!(text.contains("1 4 1")); // center: degree 4, eccentricity 1
}

#[test]
fn compute_rejects_cycle_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cycle.txt");
    std::fs::write(&file, "n 4\n1 2\n2 3\n3 1\n").unwrap();
    let out = run(&["compute", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotATree"));
}

#[test]
fn compute_names_offending_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "n 3\n1 2\n2 oops\n").unwrap();
    let out = run(&["compute", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn construct_f_tree_emits_parseable_output_with_cei() {
    let out = run(&["construct", "--variant", "f", "--n", "7", "--r", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // the CEI trailer is a comment, so stdout is itself a valid tree file
    let t = Tree::parse_edge_list(&text).unwrap();
    assert_eq!(t.degree_multiset(), vec![3, 3, 2, 1, 1, 1, 1]);
    assert!(text.contains("# cei "));
}

#[test]
fn construct_b51_is_the_star() {
    let out = run(&["construct", "--variant", "b", "--n", "5", "--r", "1"]);
    assert!(out.status.success());
    let t = Tree::parse_edge_list(&stdout(&out)).unwrap();
    assert_eq!(t.degree(1), 4);
}

#[test]
fn construct_greedy_path() {
    let out = run(&["construct", "--variant", "greedy", "--degrees", "2,2,2,1,1"]);
    assert!(out.status.success());
    let t = Tree::parse_edge_list(&stdout(&out)).unwrap();
    assert_eq!(t.diameter(), 4);
}

#[test]
fn construct_rejects_bad_range_with_exit_2() {
    let out = run(&["construct", "--variant", "f", "--n", "7", "--r", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["construct", "--variant", "greedy", "--degrees", "3,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_file_round_trips_through_compute() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b83.txt");
    let out = run(&[
        "construct", "--variant", "b", "--n", "8", "--r", "3",
        "--out", file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["compute", file.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn construct_prufer_round_trips_through_compute() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f92.pru");
    let out = run(&[
        "construct", "--variant", "f", "--n", "9", "--r", "2", "--prufer",
        "--out", file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let cei_line = stdout(&out);
    let out = run(&["compute", file.to_str().unwrap(), "--format", "prufer"]);
    assert!(out.status.success());
    // same tree, same CEI
    assert_eq!(cei_line.trim_start_matches("# cei ").trim(), stdout(&out).trim());
}

#[test]
fn verify_degrees_writes_reports_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "degrees", "--n", "6", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    // header + one row per degree sequence of length 6 (5 partitions)
    assert_eq!(summary.lines().count(), 1 + 5);
    assert!(dir.path().join("degrees_3_2_2_1_1_1.json").exists());
}

#[test]
fn verify_branching_exits_0() {
    let out = run(&["verify", "branching", "--n", "8", "--r", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("branching n=8 r=2: ok"));
}

#[test]
fn verify_ordering_requires_n_at_least_6() {
    let out = run(&["verify", "ordering", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_respects_env_bound() {
    let out = cei_bin()
        .args(["verify", "degrees", "--n", "10"])
        .env("CEI_MAX_N", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = cei_bin()
        .args(["verify", "ordering", "--n", "10", "--jobs", "8"])
        .env("CEI_MAX_N", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn verify_transforms_small_run() {
    let out = run(&["verify", "transforms", "--trials", "50", "--seed", "7"]);
    assert!(out.status.success());
}

#[test]
fn verify_jobs_do_not_change_reports() {
    let d1 = tempfile::tempdir().unwrap();
    let d8 = tempfile::tempdir().unwrap();
    for (dir, jobs) in [(&d1, "1"), (&d8, "8")] {
        let out = run(&[
            "verify", "degrees", "--n", "7",
            "--jobs", jobs,
            "--out", dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let read_all = |p: &Path| -> Vec<(String, String)> {
        let mut files: Vec<_> = std::fs::read_dir(p)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .into_iter()
            .map(|f| {
                (
                    f.file_name().unwrap().to_string_lossy().to_string(),
                    std::fs::read_to_string(&f).unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(read_all(d1.path()), read_all(d8.path()));
}
