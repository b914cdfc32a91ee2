//! End-to-end tests of the command-line interface: exit-code contract,
//! JSON round-trips against the in-process reports, and byte-for-byte
//! determinism.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graph-ideals"))
}

fn write_graph(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("graph-ideals-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn classify_triangle_is_ci_with_exit_zero() {
    let g = write_graph("triangle.g", "3 3\n1 2\n2 3\n1 3\n");
    let out = run(&[
        "classify",
        "--family",
        "I",
        "--char",
        "0",
        g.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("status: CI"), "{stdout}");
    assert!(stdout.contains("odd cycle"), "{stdout}");
}

#[test]
fn invariants_kite_reports_pd_and_cm() {
    let g = write_graph("kite.g", "5 6\n1 2\n2 3\n3 4\n1 4\n2 4\n3 5\n");
    let out = run(&[
        "invariants",
        "--family",
        "I",
        "--char",
        "0",
        "--output",
        "json",
        g.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["homological"]["pd"], 5);
    assert_eq!(v["result"]["homological"]["is_cm"], true);
    assert_eq!(v["schema_version"], 1);
    for key in [
        "command",
        "graph",
        "family",
        "field",
        "result",
        "provenance",
    ] {
        assert!(v.get(key).is_some(), "missing top-level key {key}");
    }
}

#[test]
fn scan_small_corpus_reports_zero_violations() {
    let out = run(&["scan", "--nmax", "5", "--checks", "ci-height"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0 violations"), "{stdout}");
}

#[test]
fn json_round_trip_matches_in_process_report() {
    let text = "4 4\n1 2\n2 3\n3 4\n1 4\n";
    let g = write_graph("c4.g", text);
    let out = run(&[
        "classify",
        "--family",
        "L",
        "--char",
        "3",
        "--output",
        "json",
        g.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let graph = graph_ideals::graph::parse_graph(text).unwrap();
    let field = graph_ideals::poly::FieldSpec::prime(3).unwrap();
    let expected = graph_ideals::classify(graph_ideals::ideals::IdealFamily::Lss, &graph, field);
    assert_eq!(v["result"], serde_json::to_value(&expected).unwrap());
}

#[test]
fn output_is_deterministic() {
    let g = write_graph("net.g", "6 6\n1 2\n1 3\n2 3\n1 4\n2 5\n3 6\n");
    for cmd in [
        vec!["classify", "--family", "I", "--output", "json"],
        vec!["invariants", "--family", "L", "--output", "json"],
        vec!["primes", "--family", "I", "--output", "json"],
        vec!["syzygy", "--family", "L", "--output", "json"],
    ] {
        let mut args = cmd.clone();
        let path = g.to_str().unwrap();
        args.push(path);
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {cmd:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn exit_codes_distinguish_errors_from_uncovered_math() {
    // operational error: missing file
    let out = run(&["classify", "/nonexistent/file.g"]);
    assert_eq!(out.status.code(), Some(1));

    // operational error: malformed graph, message carries the line number
    let g = write_graph("dup.g", "3 2\n1 2\n1 2\n");
    let out = run(&["classify", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");

    // operational error: inconsistent sqrt flag
    let g = write_graph("p3.g", "3 2\n1 2\n2 3\n");
    let out = run(&[
        "classify",
        "--char",
        "3",
        "--sqrt-minus-one",
        "yes",
        g.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // uncovered mathematics: permanental classification in char 2
    let tri = write_graph("tri2.g", "4 4\n1 2\n2 3\n1 3\n1 4\n");
    let out = run(&[
        "classify",
        "--family",
        "Pi",
        "--char",
        "2",
        tri.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // uncovered mathematics: syzygies of an unsupported shape
    let c4 = write_graph("c4b.g", "4 4\n1 2\n2 3\n3 4\n1 4\n");
    let out = run(&["syzygy", "--family", "L", c4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // success path for comparison
    let out = run(&["syzygy", "--family", "L", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn golden_syzygy_text_output() {
    let g = write_graph("p3.g", "3 2\n1 2\n2 3\n");
    let out = run(&["syzygy", "--family", "L", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, "(-x2*x3 - y2*y3) e[1,2] + (x1*x2 + y1*y2) e[2,3]\n");

    let out = run(&["sym", "--family", "L", g.to_str().unwrap()]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout,
        "-x2*x3*T{1,2} - y2*y3*T{1,2} + x1*x2*T{2,3} + y1*y2*T{2,3}\n"
    );
}

#[test]
fn env_var_overrides_scan_guard() {
    let out = bin()
        .args(["scan", "--nmax", "5", "--checks", "ci-height"])
        .env("GRAPH_IDEAL_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("guard"), "{stderr}");

    // raising the guard lets a filtered sweep through
    let out = bin()
        .args(["scan", "--nmax", "9", "--checks", "syzygy-exact", "--filter", "trees"])
        .env("GRAPH_IDEAL_MAX_N", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_command_reports_all_zero() {
    let g = write_graph("star.g", "4 3\n1 2\n1 3\n1 4\n");
    let out = run(&["verify", "--family", "L", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("failures: 0"), "{stdout}");
}

#[test]
fn oracle_command_cross_checks_formula() {
    let g = write_graph("net2.g", "6 6\n1 2\n1 3\n2 3\n1 4\n2 5\n3 6\n");
    let out = run(&[
        "oracle",
        "--family",
        "L",
        "--output",
        "json",
        g.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["beta2_formula"], 18);
    for entry in v["result"]["per_prime"].as_array().unwrap() {
        assert_eq!(entry["matches_formula"], true);
        assert_eq!(entry["syzygy_complete"], true);
    }
}
