//! Black-box behavior of the `farey` binary: flag handling, formats,
//! error paths and basic output shape.

use std::process::{Command, Output};

fn farey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

#[test]
fn help_works() {
    let out = farey(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for sub in ["count", "plot-arcs", "witness", "verify"] {
        assert!(text.contains(sub), "missing subcommand {sub}");
    }
}

#[test]
fn count_rational_csv() {
    let out = farey(&["count", "--regime", "q", "--grid", "1,2,10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("threshold,empirical,model_paper,model_alt,ratio_paper,ratio_alt")
    );
    assert!(text.contains("\n10,23,"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn count_symbols_json() {
    let out = farey(&[
        "count",
        "--regime",
        "symbols-rec",
        "--grid",
        "0",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(parsed[0]["empirical"], 1);
}

#[test]
fn count_level_filter() {
    let out = farey(&["count", "--regime", "q", "--level", "2", "--grid", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\n4,4,"));
}

#[test]
fn witness_counts_match_class_numbers() {
    for (f, expect) in [("-1", 1u64), ("-5", 2), ("-23", 3)] {
        let out = farey(&["witness", "--f", f]);
        assert!(out.status.success(), "witness --f {f}");
        let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
        assert_eq!(parsed["schema_version"], 1);
        assert_eq!(parsed["field"]["class_number"], expect);
        assert_eq!(parsed["witnesses"].as_array().unwrap().len() as u64, expect);
        // every witness carries iota and a stabilizer order
        for w in parsed["witnesses"].as_array().unwrap() {
            assert!(w["iota"] == 1 || w["iota"] == 2);
            assert!(w["m"].as_u64().unwrap() >= 1);
        }
    }
}

#[test]
fn witness_f_minus5_attaches_family() {
    let out = farey(&["witness", "--f", "-5"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let nonprincipal = &parsed["witnesses"][1];
    let fams = nonprincipal["families"].as_array().unwrap();
    assert!(fams.iter().any(|f| f["id"] == "ex2"));
}

/// Minimal XML well-formedness: declaration first, every tag closed,
/// properly nested.
fn assert_well_formed_xml(text: &str) {
    assert!(text.starts_with("<?xml"));
    let mut stack: Vec<String> = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find('<') {
        rest = &rest[start + 1..];
        let end = rest.find('>').expect("tag closed");
        let tag = &rest[..end];
        rest = &rest[end + 1..];
        if tag.starts_with('?') || tag.starts_with('!') || tag.ends_with('/') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            assert_eq!(stack.pop().as_deref(), Some(name), "mismatched </{name}>");
        } else {
            let name = tag.split_whitespace().next().unwrap();
            stack.push(name.to_string());
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

#[test]
fn plot_arcs_svg_shape() {
    let out = farey(&["plot-arcs", "--max-denom", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_well_formed_xml(&text);
    assert!(text.trim_end().ends_with("</svg>"));
    // coprime pairs (q, s) in [1, 5]^2: 2 * (1+1+2+2+4) - 1 = 19
    assert_eq!(text.matches("<path class=\"arc\"").count(), 19);
}

#[test]
fn rejects_bad_usage() {
    assert_eq!(
        farey(&["count", "--regime", "q", "--grid", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        farey(&["count", "--regime", "field", "--grid", "1/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        farey(&["count", "--regime", "q", "--grid", "10", "--format", "svg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(farey(&["witness", "--f", "-4"]).status.code(), Some(2));
    assert_eq!(
        farey(&["plot-arcs", "--max-denom", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        farey(&["plot-arcs", "--height", "-1/3"]).status.code(),
        Some(2)
    );
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join("farey-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pairs.csv");
    let piped = farey(&["count", "--regime", "q", "--grid", "1,10"]);
    let file_run = farey(&[
        "count",
        "--regime",
        "q",
        "--grid",
        "1,10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(file_run.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&piped));
}
