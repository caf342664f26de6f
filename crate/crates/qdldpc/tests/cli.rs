//! End-to-end tests of the command-line interface and the code-directory
//! format: exit codes, construct/verify round trips, meta regeneration, and
//! deterministic simulation output.

use std::path::Path;
use std::process::{Command, Output};

use qdldpc::alist;
use qdldpc::codes::{build_camel_pair, AffineRowSpec};
use qdldpc::gf2e::make_field;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdldpc")).args(args).output().expect("spawn qdldpc")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn construct_and_verify_d1() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("d1");
    let out = cli(&["construct", "--kind", "css", "--ell", "4", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("[[257,121]]"));
    for f in ["HX.alist", "HZ.alist", "meta.json"] {
        assert!(out_dir.join(f).exists(), "{f} missing");
    }

    let v = cli(&["verify", out_dir.to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    let report = stdout(&v);
    assert!(report.contains("girth(H'_X) = 6"));
    assert!(report.contains("CAMEL condition:     pass"));
    assert!(report.contains("symplectic product:  pass"));
    assert!(report.contains("[[257,121]]"));
}

#[test]
fn construct_example_with_explicit_labels_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("ex");
    let out = cli(&[
        "construct",
        "--kind",
        "css",
        "--ell",
        "3",
        "--multipliers-x",
        "2,4,6",
        "--offsets-x",
        "1,4,6",
        "--multipliers-z",
        "1,3,5",
        "--offsets-z",
        "2,5,1",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("[[65,27]]"));

    let f = make_field(3).unwrap();
    let el = |l: u32| f.element(l).unwrap();
    let rows_x =
        vec![AffineRowSpec::new(el(2), el(1)), AffineRowSpec::new(el(4), el(4)), AffineRowSpec::new(el(6), el(6))];
    let rows_z =
        vec![AffineRowSpec::new(el(1), el(2)), AffineRowSpec::new(el(3), el(5)), AffineRowSpec::new(el(5), el(1))];
    let lib_code = build_camel_pair(&f, &rows_x, &rows_z).unwrap();
    let disk_hx = std::fs::read_to_string(out_dir.join("HX.alist")).unwrap();
    assert_eq!(disk_hx, alist::to_alist(lib_code.hx()));
}

#[test]
fn construct_rejects_multiplier_collision_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("bad");
    let out = cli(&[
        "construct",
        "--kind",
        "css",
        "--ell",
        "4",
        "--multipliers-x",
        "1,2",
        "--multipliers-z",
        "2,3",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("label 2"), "stderr should name the shared label: {err}");
    assert!(!out_dir.exists(), "no partial output on failure");
}

#[test]
fn usage_errors_exit_2() {
    let out = cli(&["construct", "--kind", "css", "--out", "/tmp/never"]);
    assert_eq!(code(&out), 2, "--ell is required");
    let out = cli(&["simulate", "--code", "x", "--decoder", "nonsense", "--p", "0.1", "--out", "y"]);
    assert_eq!(code(&out), 2);
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&[
        "construct",
        "--kind",
        "css",
        "--ell",
        "3",
        "--multipliers-x",
        "9,1,2",
        "--out",
        dir.path().join("z").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2, "label out of field range is a usage error");
}

#[test]
fn verify_missing_directory_exits_3() {
    let out = cli(&["verify", "/tmp/definitely/not/a/code/dir"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_detects_single_bit_corruption_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("ex");
    let out = cli(&[
        "construct", "--kind", "css", "--ell", "3", "--multipliers-x", "2,4,6", "--offsets-x",
        "1,4,6", "--multipliers-z", "1,3,5", "--offsets-z", "2,5,1", "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    // flip one bit of H_X (move an entry one column over) and rewrite
    let hx = alist::read_file(&out_dir.join("HX.alist")).unwrap();
    let mut rows: Vec<Vec<u32>> = hx.row_supports().to_vec();
    let moved = rows[0][0] + 1;
    assert!(!rows[0].contains(&moved));
    rows[0][0] = moved;
    rows[0].sort_unstable();
    let corrupted = qdldpc::dyadic::BinaryMatrix::from_rows(hx.cols(), rows).unwrap();
    alist::write_file(&corrupted, &out_dir.join("HX.alist")).unwrap();

    let v = cli(&["verify", out_dir.to_str().unwrap()]);
    assert_eq!(code(&v), 1, "stdout: {}", stdout(&v));
    assert!(stdout(&v).contains("FAIL"));
}

#[test]
fn construct_from_meta_regenerates_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("ex");
    cli(&[
        "construct", "--kind", "css", "--ell", "3", "--multipliers-x", "2,4,6", "--offsets-x",
        "1,4,6", "--multipliers-z", "1,3,5", "--offsets-z", "2,5,1", "--out",
        out_dir.to_str().unwrap(),
    ]);
    let hx_orig = std::fs::read(out_dir.join("HX.alist")).unwrap();
    let hz_orig = std::fs::read(out_dir.join("HZ.alist")).unwrap();
    std::fs::remove_file(out_dir.join("HX.alist")).unwrap();
    std::fs::remove_file(out_dir.join("HZ.alist")).unwrap();

    let meta = out_dir.join("meta.json");
    let out = cli(&[
        "construct",
        "--from-meta",
        meta.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(out_dir.join("HX.alist")).unwrap(), hx_orig);
    assert_eq!(std::fs::read(out_dir.join("HZ.alist")).unwrap(), hz_orig);
}

#[test]
fn classical_construct_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("cls");
    let out = cli(&[
        "construct", "--kind", "classical", "--ell", "3", "--multipliers-x", "2,4,6",
        "--offsets-x", "1,4,6", "--out", out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out_dir.join("H.alist").exists());
    let v = cli(&["verify", out_dir.to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).contains("girth(H) = 6"));
}

fn example_dir(dir: &Path) -> String {
    let out_dir = dir.join("ex");
    let out = cli(&[
        "construct", "--kind", "css", "--ell", "3", "--multipliers-x", "2,4,6", "--offsets-x",
        "1,4,6", "--multipliers-z", "1,3,5", "--offsets-z", "2,5,1", "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    out_dir.to_str().unwrap().to_string()
}

#[test]
fn simulate_is_deterministic_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let code_dir = example_dir(dir.path());
    let csv1 = dir.path().join("a.csv");
    let csv2 = dir.path().join("b.csv");
    let run = |out: &Path, threads: &str| {
        let o = cli(&[
            "simulate", "--code", &code_dir, "--decoder", "camel", "--p", "0.08,0.06",
            "--target-errors", "5", "--max-trials", "4000", "--seed", "11", "--threads", threads,
            "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    };
    run(&csv1, "1");
    run(&csv2, "2");
    let a = std::fs::read(&csv1).unwrap();
    assert_eq!(a, std::fs::read(&csv2).unwrap(), "CSV must not depend on threads");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("code_id,decoder,p,trials,logical_errors,ler,ci95,seed,wall_seconds"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn simulate_censored_point_warns_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let code_dir = example_dir(dir.path());
    let csv = dir.path().join("c.csv");
    let o = cli(&[
        "simulate", "--code", &code_dir, "--decoder", "bp4", "--p", "0", "--target-errors", "5",
        "--max-trials", "300", "--seed", "1", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("warning"));
    assert!(stdout(&o).contains("censored"));
}
