use std::fs;
use std::path::{Path, PathBuf};

use ramsey_cli::control::{load_control_coloring, ControlError};
use ramsey_cli::report::{format_results, write_results, RESULTS_HEADER};
use ramsey_cli::{run_from, CONTROL_TABLE, DIAG_TABLE};
use ramsey_core::diagnostics::{Decision, DiagnosticsRecord};
use ramsey_core::graded::{has_forbidden_clique, CliqueConstraint, EdgeColoring};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> anyhow::Result<String> {
    let mut out = Vec::new();
    run_from(std::iter::once("ramsey-toolkit").chain(args.iter().copied()), &mut out)?;
    Ok(String::from_utf8(out).unwrap())
}

fn write_pair(dir: &Path, red: &str, blue: &str) {
    fs::write(dir.join("am46_red.csv"), red).unwrap();
    fs::write(dir.join("am46_blue.csv"), blue).unwrap();
}

#[test]
fn pentagon_fixture_loads_as_pentagon() {
    let c = load_control_coloring(&fixture("pentagon"), "pentagon_red.csv", "pentagon_blue.csv").unwrap();
    assert_eq!(c, EdgeColoring::pentagon());
    assert!(!has_forbidden_clique(&c, CliqueConstraint::new(3, 3).unwrap()));
}

#[test]
fn paley_fixture_is_a_good_five_five_coloring() {
    let c = load_control_coloring(&fixture("paley37"), "paley37_red.csv", "paley37_blue.csv").unwrap();
    let residues: Vec<usize> = (1..37).map(|x| x * x % 37).collect();
    let expected = EdgeColoring::from_fn(37, |i, j| residues.contains(&((j + 37 - i) % 37))).unwrap();
    assert_eq!(c, expected);
    assert!(!has_forbidden_clique(&c, CliqueConstraint::new(5, 5).unwrap()));
}

#[test]
fn control_errors_are_distinct() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let load = || load_control_coloring(dir, "am46_red.csv", "am46_blue.csv");

    write_pair(dir, "0,1,1\n1,0,0\n1,0,0\n", "0,1,0\n1,0,1\n0,1,0\n");
    assert!(matches!(load(), Err(ControlError::NotComplementary { i: 0, j: 1 })));

    write_pair(dir, "0,1,0\n0,0,0\n0,0,0\n", "0,0,1\n0,0,1\n1,1,0\n");
    assert!(matches!(load(), Err(ControlError::Asymmetric { i: 0, j: 1, .. })));

    write_pair(dir, "0,1\n1,0\n", "0,0,1\n0,0,1\n1,1,0\n");
    assert!(matches!(load(), Err(ControlError::SizeMismatch { red: 2, blue: 3 })));

    // Header row plus whitespace separators is accepted.
    write_pair(dir, "v0 v1 v2\n0 1 0\n1 0 0\n0 0 0\n", "0,0,1\n0,0,1\n1,1,0\n");
    let c = load().unwrap();
    assert!(c.is_red(0, 1) && !c.is_red(1, 2));

    assert!(matches!(
        load_control_coloring(dir, "missing.csv", "am46_blue.csv"),
        Err(ControlError::Io { .. })
    ));
}

fn synthetic(n: u32) -> DiagnosticsRecord {
    DiagnosticsRecord {
        n,
        d: 24,
        k: 100,
        alphas: vec![40.0],
        log10_tr_exp: vec![-12.5],
        tr_lin: 0.0142,
        min_re_lambda: -0.0,
        max_im_lambda: 0.0,
        slope: -0.31,
        lambda_l: 0.7138,
        rho_h: 8.4,
        survivor_rank: 0,
        decision: Decision::Critical,
    }
}

#[test]
fn results_file_layout() {
    let tmp = tempfile::tempdir().unwrap();
    let empty = tmp.path().join("empty.csv");
    write_results(&[], &empty).unwrap();
    assert_eq!(fs::read_to_string(&empty).unwrap(), format!("{RESULTS_HEADER}\n"));

    let one = tmp.path().join("one.csv");
    write_results(&[synthetic(45)], &one).unwrap();
    let text = fs::read_to_string(&one).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(!text.contains('\r'));
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "45,24,100,40.000,-12.500000,1.420000e-2,0.000000e0,0.000000e0,-0.310000,0.713800,8.400000,true"
    );
    assert_eq!(format_results(&[synthetic(45)]), text);
}

#[test]
fn diag_invocation_writes_one_row_per_n() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let args = ["diag", "--d", "24", "--k", "400", "--alpha", "0.5", "--seed", "12345", "--out_dir", out_dir.to_str().unwrap()];
    run(&args).unwrap();
    let first = fs::read(out_dir.join(DIAG_TABLE)).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let ns: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ns, ["43", "44", "45", "46"]);
    assert!(!out_dir.join(CONTROL_TABLE).exists());

    run(&args).unwrap();
    assert_eq!(fs::read(out_dir.join(DIAG_TABLE)).unwrap(), first);
}

#[test]
fn diag_with_control_writes_both_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("o");
    let ctrl = fixture("paley37");
    run(&[
        "diag", "--embedding", "constraint-restricted", "--ranks", "3,2,0,1", "--seed", "11", "23", "--alpha", "10", "40",
        "--out_dir", out_dir.to_str().unwrap(), "--am46_dir", ctrl.to_str().unwrap(), "--control_red", "paley37_red.csv",
        "--control_blue", "paley37_blue.csv",
    ])
    .unwrap();
    let table = fs::read_to_string(out_dir.join(DIAG_TABLE)).unwrap();
    assert_eq!(table.lines().count(), 1 + 4 * 2);
    let control = fs::read_to_string(out_dir.join(CONTROL_TABLE)).unwrap();
    assert!(control.lines().skip(1).all(|l| l.starts_with("37,") && l.ends_with(",false")));
}

#[test]
fn invalid_invocations_fail_before_writing() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("never");
    let o = out_dir.to_str().unwrap();
    let err = run(&["diag", "--bogus"]).unwrap_err();
    assert!(err.downcast_ref::<clap::Error>().is_some());
    assert!(run(&["diag", "--embedding", "constraint-restricted", "--ranks", "1,2", "--out_dir", o]).is_err());
    assert!(run(&["diag", "--ranks", "1,2,3,4", "--out_dir", o]).is_err());
    assert!(run(&["diag", "--alpha", "-1", "--out_dir", o]).is_err());
    assert!(run(&["diag", "--control_dir", "/nonexistent", "--out_dir", o]).is_err());
    assert!(!out_dir.exists());
    assert!(run(&["cnf", "-N", "3", "-m", "5", "-n", "5", "-o", tmp.path().join("x.cnf").to_str().unwrap()]).is_err());
}

#[test]
fn cnf_subcommand_counts_and_map() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("r55_N12.cnf");
    let msg = run(&["cnf", "-N", "12", "-m", "5", "-n", "5", "-o", path.to_str().unwrap(), "--map"]).unwrap();
    assert!(msg.contains("66 variables, 1584 clauses"));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p cnf 66 1584\n"));
    assert_eq!(text.lines().count(), 1585);
    let map = fs::read_to_string(tmp.path().join("r55_N12.cnf.map")).unwrap();
    assert_eq!(map.lines().count(), 66);
    assert_eq!(map.lines().last().unwrap(), "66 11 12");
}

#[test]
fn glue_demo_ends_empty_at_six() {
    let out = run(&["glue", "-m", "3", "-n", "3", "--vmax", "6"]).unwrap();
    let rows: Vec<&str> = out.lines().skip(1).take_while(|l| l.starts_with(|c: char| c.is_ascii_digit())).collect();
    assert!(out.ends_with("no good coloring of K_6: R(3,3) = 6\n"));
    assert_eq!(rows, ["1,1", "2,2", "3,2", "4,3", "5,1", "6,0"]);
}

#[test]
fn prime_estimate_and_qsim_subcommands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["prime", "--out_dir", tmp.path().to_str().unwrap()]).unwrap();
    assert!(out.contains("n=6 window=[102,160] persistent=115"));
    assert!(out.contains("n=7 window=[205,492] persistent=209"));
    let scan = fs::read_to_string(tmp.path().join("prime_scan.csv")).unwrap();
    assert_eq!(scan.lines().count(), 1 + 11 + 13);

    let est = run(&["estimate"]).unwrap();
    assert_eq!(est, "n,edge_qubits,total_qubits\n44,946,962\n45,990,1006\n46,1035,1051\n");

    let q = run(&["qsim", "--probes", "2000", "--seed", "7"]).unwrap();
    assert_eq!(q.lines().count(), 7);
    assert!(q.lines().skip(1).all(|l| l.ends_with(",true")));
}
