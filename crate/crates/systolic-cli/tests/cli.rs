//! End-to-end checks of the binary: exit codes, report shapes, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use systolic::{hex_plane_generator, io, ComplexGenerator};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_systolic"))
}

fn write_octahedron(dir: &Path) -> PathBuf {
    let path = dir.join("octahedron.facets");
    std::fs::write(
        &path,
        "0 1 2\n0 1 3\n0 2 4\n0 3 4\n1 2 5\n1 3 5\n2 4 5\n3 4 5\n",
    )
    .unwrap();
    path
}

fn write_hexdisk(dir: &Path, r: usize) -> PathBuf {
    let (disk, _) = hex_plane_generator().produce(r).unwrap();
    let path = dir.join(format!("hexdisk{r}.facets"));
    std::fs::write(&path, io::facets_to_text(&disk)).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn check_rejects_the_octahedron_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_octahedron(dir.path());
    let out = run(&[
        "check",
        "--k",
        "6",
        "--format",
        "json",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], false);
    assert_eq!(report["witness_cycle"].as_array().unwrap().len(), 4);
    assert_eq!(report["h1_rank"], 0);
}

#[test]
fn check_accepts_hex_disks() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_hexdisk(dir.path(), 2);
    let out = run(&["check", "--format", "json", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], true);
}

#[test]
fn collapse_emits_a_full_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_hexdisk(dir.path(), 2);
    let out = run(&["collapse", "--base", "0", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["steps"].as_array().unwrap().len(), 42);
    assert_eq!(report["final_vertex"], 0);
}

#[test]
fn geodesic_returns_vertex_id_lists() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_hexdisk(dir.path(), 3);
    let out = run(&[
        "geodesic",
        "--from",
        "0",
        "--to",
        "7",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let ray: Vec<Vec<u32>> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(ray.first(), Some(&vec![0]));
    assert_eq!(ray.last(), Some(&vec![7]));
}

#[test]
fn filtration_hex_is_clean() {
    let out = run(&["filtration", "--hex", "--radius", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["overall"], true);
}

#[test]
fn morse_fails_loudly_on_non_systolic_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_octahedron(dir.path());
    let out = run(&["morse", "--base", "0", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    let out = run(&["check", "/definitely/not/here.facets"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.facets");
    std::fs::write(&path, "0 zero\n").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_hexdisk(dir.path(), 2);
    for args in [
        vec!["morse", "--base", "3", input.to_str().unwrap()],
        vec!["collapse", "--base", "0", input.to_str().unwrap()],
        vec!["check", "--format", "json", input.to_str().unwrap()],
        vec!["export-dot", "--base", "0", input.to_str().unwrap()],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_facet_files_parse_too() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.json");
    std::fs::write(&path, r#"{"facets": [[0,1,2]]}"#).unwrap();
    let out = run(&["check", "--format", "json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}
