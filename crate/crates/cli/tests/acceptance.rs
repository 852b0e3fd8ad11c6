//! Acceptance suite: every verification criterion at its stated
//! tolerance, one test per criterion, plus binary-level determinism of
//! the reports and artifacts.
//!
//! The in-process report is computed once and shared; run with
//! `cargo test -p farey-cli --test acceptance -- --nocapture` to see the
//! per-criterion pass/fail lines.

use farey_core::verify::{run_verify, VerifyConfig, VerifyReport};
use std::process::{Command, Output};
use std::sync::OnceLock;

fn report() -> &'static VerifyReport {
    static REPORT: OnceLock<VerifyReport> = OnceLock::new();
    REPORT.get_or_init(|| run_verify(&VerifyConfig::default()))
}

fn check(id: u32) {
    let r = report();
    let outcome = r
        .outcomes
        .iter()
        .find(|o| o.id == id)
        .expect("criterion present");
    let measured: Vec<String> = outcome
        .measured
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    println!(
        "criterion {:02} {}: {} [{}]",
        outcome.id,
        outcome.name,
        if outcome.pass { "PASS" } else { "FAIL" },
        measured.join(", ")
    );
    assert!(outcome.pass, "criterion {id} failed: {measured:?}");
}

#[test]
fn criterion_01_figure_arc_count() {
    check(1);
}

#[test]
fn criterion_02_divisor_sum_oracle() {
    check(2);
}

#[test]
fn criterion_03_rational_asymptotic_band() {
    check(3);
}

#[test]
fn criterion_04_gcd_quadruple_adjudication() {
    check(4);
}

#[test]
fn criterion_05_primitive_circle_sum() {
    check(5);
}

#[test]
fn criterion_06_reciprocal_symbol_bridge() {
    check(6);
}

#[test]
fn criterion_07_hecke_index_oracle() {
    check(7);
}

#[test]
fn criterion_08_class_number_oracle() {
    check(8);
}

#[test]
fn criterion_09_tangency_equivalence() {
    check(9);
}

#[test]
fn criterion_10_neighbour_construction() {
    check(10);
}

#[test]
fn criterion_11_witness_families() {
    check(11);
}

#[test]
fn criterion_12_field_constant_discrimination() {
    check(12);
}

#[test]
fn criterion_13_quaternion_exactness() {
    check(13);
}

#[test]
fn criterion_14_report_determinism() {
    check(14);
}

#[test]
fn adjudications_present() {
    let r = report();
    assert!(r
        .adjudications
        .iter()
        .any(|a| a.contains("quadruple sign convention")));
    assert!(r
        .adjudications
        .iter()
        .any(|a| a.contains("volume normalization")));
    assert!(r.pass, "overall verification must pass");
}

fn farey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farey"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Criterion 14 at the binary level: two identical `verify` invocations
/// produce byte-identical reports.
#[test]
fn verify_binary_is_byte_deterministic() {
    let a = farey(&[
        "verify",
        "--format",
        "json",
        "--seed",
        "7",
        "--threads",
        "3",
    ]);
    let b = farey(&[
        "verify",
        "--format",
        "json",
        "--seed",
        "7",
        "--threads",
        "3",
    ]);
    assert_eq!(a.status.code(), Some(0), "verify must pass");
    assert_eq!(a.stdout, b.stdout);
}

/// Artifact determinism: repeated runs of every producing subcommand
/// give identical bytes, and thread count does not change counts.
#[test]
fn artifacts_are_byte_deterministic() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["count", "--regime", "q", "--grid", "1,2,10,100"],
        vec![
            "count",
            "--regime",
            "field",
            "--f",
            "-5",
            "--grid",
            "1,1/2,1/4",
            "--format",
            "json",
        ],
        vec!["count", "--regime", "quat", "--grid", "1,1/2,1/4"],
        vec!["count", "--regime", "symbols", "--grid", "0,2.5,6.9"],
        vec!["plot-arcs", "--max-denom", "19"],
        vec!["witness", "--f", "-23"],
    ];
    for args in &cases {
        let a = farey(args);
        let b = farey(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    // thread count affects wall time only
    let one = farey(&["count", "--regime", "q", "--grid", "5000", "--threads", "1"]);
    let many = farey(&["count", "--regime", "q", "--grid", "5000", "--threads", "8"]);
    assert_eq!(one.stdout, many.stdout);
}

/// The harness itself must fail loudly when a constant is corrupted.
#[test]
fn fault_injection_fails_with_named_criterion() {
    let out = farey(&["verify", "--inject-fault", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("criterion 03 rational-asymptotic-band: FAIL"));
    assert!(text.contains("overall: FAIL"));
}

/// The report names the two adjudicated normalization questions.
#[test]
fn report_carries_adjudication_lines() {
    let out = farey(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("adjudication: quadruple sign convention"));
    assert!(text.contains("adjudication: volume normalization"));
    assert!(text.contains("pi-corrected"));
}
