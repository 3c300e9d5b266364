//! Behavioral tests of the command-line interface: exit codes, output
//! formats, and error reporting.

use std::path::PathBuf;
use tightspan_cli::run_cli;

fn run(args: &[&str]) -> (i32, String) {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    run_cli(&owned)
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tspan-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["embed3", "1", "2"]).0, 2);
    let (code, out) = run(&["retract", "--point", "0", "0"]);
    assert_eq!(code, 2);
    assert!(out.contains("--region"), "message names the missing flag: {out}");
}

#[test]
fn missing_file_exits_2() {
    let (code, out) = run(&["validate", "--metric", "/nonexistent/m.json"]);
    assert_eq!(code, 2);
    assert!(out.contains("cannot read"));
}

#[test]
fn embed3_prints_rationals() {
    let (code, out) = run(&["embed3", "3", "2", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("legs: 1 2 1"));
    let (code, _) = run(&["embed3", "10", "1", "1"]);
    assert_eq!(code, 2, "triangle violation is an input error");
}

#[test]
fn embed4_prints_rectangle() {
    let (code, out) = run(&["embed4", "3", "3", "3", "4", "3", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("rectangle: 1 x 1/2"));
}

#[test]
fn validate_distinguishes_input_and_verification_errors() {
    let good = fixture(
        "good-metric.json",
        r#"{"labels":["a","b"],"dist":[["0","2"],["2","0"]]}"#,
    );
    let (code, out) = run(&["validate", "--metric", good.to_str().unwrap()]);
    assert_eq!((code, out.contains("valid metric")), (0, true));
    let broken = fixture(
        "broken-metric.json",
        r#"{"labels":["a","b","c"],
            "dist":[["0","1","5"],["1","0","1"],["5","1","0"]]}"#,
    );
    let (code, out) = run(&["validate", "--metric", broken.to_str().unwrap()]);
    assert_eq!(code, 1, "metric axiom violation is a verification failure");
    assert!(out.contains("triangle"), "witness names the violation: {out}");
    let garbage = fixture("garbage.json", "not json");
    assert_eq!(run(&["validate", "--metric", garbage.to_str().unwrap()]).0, 2);
}

#[test]
fn span_without_flags_prints_canonical_region() {
    let pts = fixture("tri.json", r#"{"points":[["0","0"],["0","3"],["2","3"]]}"#);
    let (code, out) = run(&["span", "--points", pts.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("3/2"));
    assert!(out.contains("segments"));
}

#[test]
fn span_verify_and_svg() {
    let pts = fixture("tri2.json", r#"{"points":[["0","0"],["0","3"],["2","3"]]}"#);
    let svg_path = fixture("out.svg", "");
    let (code, out) = run(&[
        "span",
        "--points",
        pts.to_str().unwrap(),
        "--verify",
        "25",
        "--seed",
        "9",
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("isometry: pass (25 pairs, seed 9)"));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn retract_prints_trace_and_verifies() {
    let region = fixture(
        "region.json",
        r#"{"points":[],
            "segments":[[["0","0"],["3/2","3/2"]],
                        [["0","3"],["3/2","3/2"]],
                        [["1","2"],["2","3"]]],
            "cells":[]}"#,
    );
    let (code, out) = run(&["retract", "--region", region.to_str().unwrap(), "--point", "5", "0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("target: ("));
    assert!(out.contains("nonexpansive: pass"));
    // A non-convex region is rejected as an input error.
    let bad = fixture(
        "bad-region.json",
        r#"{"points":[["0","0"],["5","5"]],"segments":[],"cells":[]}"#,
    );
    let (code, out) = run(&["retract", "--region", bad.to_str().unwrap(), "--point", "1", "0"]);
    assert_eq!(code, 2);
    assert!(out.contains("not geodesically convex"));
}

#[test]
fn helly_reports_witness_and_empty() {
    let balls = fixture(
        "balls.json",
        r#"{"balls":[{"center":["0","0"],"radius":"1"},
                     {"center":["2","0"],"radius":"1"}]}"#,
    );
    let (code, out) = run(&["helly", "--balls", balls.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("compatible: yes"));
    assert!(out.contains("intersection: (1, -1)"));
    // Compatible family, disconnected region, centers across the gap:
    // empty region intersection is a verification failure (exit 1).
    let region = fixture(
        "two-points.json",
        r#"{"points":[["0","0"],["10","0"]],"segments":[],"cells":[]}"#,
    );
    let far_balls = fixture(
        "far-balls.json",
        r#"{"balls":[{"center":["0","0"],"radius":"10"},
                     {"center":["10","0"],"radius":"10"}]}"#,
    );
    let (code, out) = run(&[
        "helly",
        "--balls",
        far_balls.to_str().unwrap(),
        "--region",
        region.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("intersection: (0, 0)"));
    let tight_balls = fixture(
        "tight-balls.json",
        r#"{"balls":[{"center":["0","0"],"radius":"4"},
                     {"center":["10","0"],"radius":"6"}]}"#,
    );
    let (code, out) = run(&[
        "helly",
        "--balls",
        tight_balls.to_str().unwrap(),
        "--region",
        region.to_str().unwrap(),
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("intersection: empty"));
}

#[test]
fn oracle_exit_codes_follow_tightness() {
    let metric = fixture(
        "m2.json",
        r#"{"labels":["x","y"],"dist":[["0","5"],["5","0"]]}"#,
    );
    let (code, out) = run(&[
        "oracle", "--metric", metric.to_str().unwrap(), "--function", "1", "4",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("tight: yes"));
    let (code, out) = run(&[
        "oracle", "--metric", metric.to_str().unwrap(), "--function", "4", "4",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("tight: no"));
    assert!(out.contains("(1, 4)"));
    // Inadmissible function: verification failure with the reason.
    let (code, out) = run(&[
        "oracle", "--metric", metric.to_str().unwrap(), "--function", "1", "1",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("not in the span"));
}

#[test]
fn counterexamples_certify() {
    let (code, out) = run(&["counterexample", "hexagons"]);
    assert_eq!(code, 0);
    assert!(out.contains("triple intersection empty: true"));
    let (code, out) = run(&["counterexample", "quad"]);
    assert_eq!(code, 0);
    assert!(out.contains("split edge lengths: 4/3 and 2/3"));
}
