//! End-to-end checks of the `rotor` binary: output shapes, exit codes,
//! and the determinism of file emission.

use std::fs;
use std::process::{Command, Output};

fn rotor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

#[test]
fn trees_text_output() {
    let out = rotor(&["trees", "--family", "thm2", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "T = [2, 1, 1], M = 1\n");

    let out = rotor(&["trees", "--family", "two_four_chain", "--n", "2"]);
    assert_eq!(stdout(&out), "T = [16, 8, 4], M = 4\n");
}

#[test]
fn trees_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle3.g");
    fs::write(&path, "3 3\n1: 2\n2: 3\n3: 1\n").unwrap();
    let out = rotor(&["trees", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "T = [1, 1, 1], M = 1\n");
}

#[test]
fn trees_json_output() {
    let out = rotor(&["trees", "--family", "thm2", "--n", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["tree_counts"][0], "2");
    assert_eq!(value["m_gcd"], "1");
}

#[test]
fn orbits_simulation_verdicts() {
    let out = rotor(&["orbits", "--family", "thm2", "--n", "3", "--simulate"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("orbit size  = 5"));
    assert!(text.contains("orbit count = 1"));
    assert!(text.contains("simulation  = MATCH"));

    let out = rotor(&[
        "orbits",
        "--family",
        "bidirected_complete",
        "--n",
        "3",
        "--simulate",
    ]);
    let text = stdout(&out);
    assert!(text.contains("orbit size  = 6"));
    assert!(text.contains("orbit count = 3"));
    assert!(text.contains("MATCH"));

    // Simulation explicitly requested but not affordable: error exit.
    let out = rotor(&[
        "orbits",
        "--family",
        "two_four_chain",
        "--n",
        "3",
        "--simulate",
        "--budget",
        "10",
    ]);
    assert!(!out.status.success());
}

#[test]
fn orbits_rejects_non_strongly_connected_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("notstrong.g");
    fs::write(&path, "2 1\n1: 2\n2:\n").unwrap();
    let out = rotor(&["orbits", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("strongly connected"));
}

#[test]
fn walk_full_period_is_exact() {
    let out = rotor(&[
        "walk", "--family", "cycle", "--n", "3", "--steps", "6", "--chip", "1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("visits = [2, 2, 2] / 6"));
    assert!(text.contains("exact  = [1/3, 1/3, 1/3]"));
    assert!(text.contains("max deviation = 0/1"));

    let out = rotor(&[
        "walk", "--family", "thm2", "--n", "3", "--steps", "5", "--chip", "1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("freq   = [2/5, 2/5, 1/5]"));
    assert!(text.contains("max deviation = 0/1"));

    let out = rotor(&[
        "walk", "--family", "thm2", "--n", "3", "--steps", "7", "--chip", "1",
    ]);
    assert!(stdout(&out).contains("(bound 5/7)"));
}

#[test]
fn walk_accepts_explicit_rotors() {
    let out = rotor(&[
        "walk", "--family", "thm2", "--n", "3", "--steps", "5", "--chip", "1",
        "--rotors", "0,1,0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("final  = chip=1; rotors=0,1,0"));

    let out = rotor(&[
        "walk", "--family", "thm2", "--n", "3", "--steps", "5", "--chip", "1",
        "--rotors", "0,9,0",
    ]);
    assert!(!out.status.success());
}

#[test]
fn stationary_reports_power_iteration_gap() {
    let out = rotor(&["stationary", "--family", "thm2", "--n", "3"]);
    let text = stdout(&out);
    assert!(text.contains("exact = [2/5, 2/5, 1/5]"));
    assert!(text.contains("max |power - exact|"));
}

#[test]
fn sweep_two_four_chain_doubles_orbit_count() {
    let out = rotor(&[
        "sweep", "--family", "two_four_chain", "--from", "1", "--to", "4",
    ]);
    let text = stdout(&out);
    let ms: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(ms, ["2", "4", "8", "16"]);

    let out = rotor(&["sweep", "--family", "thm2", "--from", "3", "--to", "8"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert_eq!(row.split(',').nth(3).unwrap(), "1");
    }

    let out = rotor(&["sweep", "--family", "random", "--from", "3", "--to", "4"]);
    assert!(!out.status.success());
}

#[test]
fn experiment_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = rotor(&[
            "experiment", "m1", "--n", "3", "--p", "0.6", "--trials", "5",
            "--seed", "9", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let bytes_a = fs::read(&a).unwrap();
    assert_eq!(bytes_a, fs::read(&b).unwrap());
    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.starts_with("experiment,n,p,seed,trials,m1_count,m_histogram_json,elapsed_s\n"));
}

#[test]
fn gen_round_trips_through_parse() {
    let out = rotor(&["gen", "--family", "thm2", "--n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text,
        "5 8\n1: 2\n2: 3 1\n3: 4 1\n4: 5 1\n5: 1\n"
    );
    let g = rotor_core::parse_digraph(&text).unwrap();
    assert_eq!(rotor_core::serialize_digraph(&g), text);
}

#[test]
fn flag_validation_exit_codes() {
    // Unknown flags are rejected by the parser (exit 2).
    let out = rotor(&["trees", "--bogus", "x"]);
    assert_eq!(out.status.code(), Some(2));

    // Contradictory graph sources fail cleanly.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g");
    fs::write(&path, "1 0\n1:\n").unwrap();
    let out = rotor(&[
        "trees", "--family", "cycle", "--n", "3", "--file", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = rotor(&["trees"]);
    assert_eq!(out.status.code(), Some(1));
}
