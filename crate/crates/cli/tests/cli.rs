use std::f64::consts::PI;
use std::process::{Command, Output};

use ck_tomo::ScalarGrid;
use ck_tomo_cli::commands::row_integrals;
use ck_tomo_cli::output::{from_csv, to_csv};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ck-tomo"));
    cmd.args(args).env_remove("CK_TOMO_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn grid(args: &[&str]) -> ScalarGrid {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    from_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

const GROUND_OPTICAL: [&str; 12] = [
    "tomogram",
    "--gamma",
    "0",
    "--t",
    "0",
    "--state",
    "fock:0",
    "--optical",
    "--phi-grid",
    "0:6.283:64",
    "--x-grid",
    "-5:5:200",
];

#[test]
fn frictionless_ground_is_angle_independent() {
    let g = grid(&GROUND_OPTICAL);
    let xs = &g.axis2.as_ref().unwrap().values;
    assert_eq!(g.axis1.len(), 64);
    for i in 0..g.axis1.len() {
        for (x, v) in xs.iter().zip(g.row(i)) {
            let want = (-x * x).exp() / PI.sqrt();
            assert!((v - want).abs() < 1e-14, "{x} {v} {want}");
        }
    }
    for integral in row_integrals(&g) {
        assert!((integral - 1.0).abs() < 1e-6);
    }
    assert_eq!(g.meta["state"], "fock:0");
    assert_eq!(g.meta["gamma"], "0");
}

#[test]
fn first_excited_vanishes_on_zero_column() {
    let mut args = GROUND_OPTICAL;
    args[6] = "fock:1";
    args[11] = "-5:5:201";
    let g = grid(&args);
    let zero = g
        .axis2
        .as_ref()
        .unwrap()
        .values
        .iter()
        .position(|&x| x == 0.0)
        .unwrap();
    for i in 0..g.axis1.len() {
        assert_eq!(g.get(i, zero), 0.0);
        assert!(g.row(i).iter().all(|&v| v >= 0.0));
    }
    for integral in row_integrals(&g) {
        assert!((integral - 1.0).abs() < 1e-6);
    }
}

#[test]
fn symplectic_frame_single_column() {
    let g = grid(&[
        "tomogram",
        "--gamma",
        "0.3",
        "--t",
        "2",
        "--state",
        "coherent:1,-0.5",
        "--mu",
        "-0.4",
        "--nu",
        "1.1",
        "--x-grid",
        "-16:16:1601",
    ]);
    assert!(g.axis2.is_none());
    let total = row_integrals(&g)[0];
    assert!((total - 1.0).abs() < 1e-6, "{total}");
}

#[test]
fn wigner_examples() {
    let g = grid(&[
        "wigner", "--state", "fock:0", "--q-grid", "-2:2:5", "--p-grid", "-2:2:5",
    ]);
    assert!((g.get(2, 2) - 2.0).abs() < 1e-6);
    let g = grid(&[
        "wigner", "--state", "fock:1", "--gamma", "0", "--t", "3", "--q-grid", "-2:2:9",
        "--p-grid", "-2:2:9",
    ]);
    assert!((g.get(4, 4) + 2.0).abs() < 1e-5);
    let n = g.axis1.len();
    for i in 0..n {
        for j in 0..n {
            assert!((g.get(i, j) - g.get(n - 1 - i, n - 1 - j)).abs() < 1e-8);
        }
    }
}

#[test]
fn csv_file_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let out = run(&["figure1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let g = from_csv(&text).unwrap();
    assert_eq!((g.axis1.len(), g.inner_len()), (64, 241));
    assert_eq!(to_csv(&g).unwrap(), text);
    assert_eq!(g.meta["x_range"], "-6:6:241");
}

#[test]
fn json_output_deserializes() {
    let out = run(&[
        "tomogram", "--state", "fock:2", "--format", "json", "--x-grid", "-3:3:7",
    ]);
    assert!(out.status.success());
    let g: ScalarGrid = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g.values.len(), 7);
    assert_eq!(g.meta["equation"], "fock-tomogram");
}

#[test]
fn worker_count_does_not_change_output() {
    let args = [
        "wigner",
        "--state",
        "coherent:1,1",
        "--gamma",
        "0.05",
        "--t",
        "5",
        "--q-grid",
        "-3:3:11",
        "--p-grid",
        "-3:3:11",
    ];
    let one = run_env(&args, &[("CK_TOMO_THREADS", "1")]);
    let three = run_env(&args, &[("CK_TOMO_THREADS", "3")]);
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn check_suites_and_exit_codes() {
    let out = run(&["check", "numerics", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# suite=numerics seed=7\n"));
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 5);

    // A zero tolerance on a check with a nonzero residual must fail.
    let out = run(&["check", "dynamics", "--tol", "dynamics.wronskian=0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("FAIL dynamics.wronskian"));

    let out = run(&["check", "evolution", "--seed", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("evolution.convergence_order"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("PASS evolution.convergence_order")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["tomogram", "--state", "fock:x"][..],
        &["tomogram", "--state", "fock:17"],
        &["tomogram", "--x-grid", "0:1:1"],
        &["tomogram", "--x-grid", "0:1:100001"],
        &["tomogram", "--gamma", "1.0"],
        &["tomogram", "--t", "-1"],
        &["tomogram", "--format", "xml"],
        &["wigner", "--q-grid", "-1:1:402"],
        &["check", "bogus"],
        &["check", "dynamics", "--tol", "no.such.check=1"],
        &["figure1", "--output", "/nonexistent/dir/out.csv"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(
        run_env(&["figure1"], &[("CK_TOMO_THREADS", "many")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn degenerate_frame_exits_three() {
    let out = run(&["tomogram", "--mu", "0", "--nu", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}
