//! The full battery of cross-checks behind the `verify` command: every
//! formula is exercised against an independent oracle or an exact
//! identity, and the two open normalization questions (the sign
//! convention of the quadruple count, the volume factor in the
//! dimension-three constant) are adjudicated from the data and reported
//! rather than silently resolved.
//!
//! Reports are byte-deterministic for a fixed configuration: measured
//! values are integers and fixed-format floats, timing limits appear
//! only as booleans.

use crate::arith::SplitMix64;
use crate::bianchi::{
    canonical_horoball, construct_k_farey, count_k_farey_pairs, example_family,
    find_exchanging_involution, horoballs_tangent, is_k_farey, ExchangeSearch, Family,
    ProjectivePoint,
};
use crate::models::{AsymptoticModel, Variant};
use crate::oracles;
use crate::quadfield::{QuadField, QuadInt};
use crate::quaternion::{
    count_quat_farey_pairs, dieudonne_det_sq_alternate, sample_hurwitz, HurwitzQuaternion,
    QuatMatrix,
};
use crate::rat::Rat;
use crate::rational::{self, SignMode, SymbolMode};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

/// Everything a verification run depends on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub threads: usize,
    /// Test fixture: corrupt the named criterion's measurement so the
    /// harness itself can be checked to fail loudly.
    pub fault: Option<u32>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0xFA_0E1,
            threads: 4,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    /// Measured quantities, in fixed order with deterministic formatting.
    pub measured: Vec<(String, String)>,
    /// Human-readable description of the acceptance band.
    pub band: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub outcomes: Vec<CriterionOutcome>,
    /// Resolutions of the two open normalization questions.
    pub adjudications: Vec<String>,
    pub pass: bool,
}

impl VerifyReport {
    /// Canonical text rendering, one line per criterion.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let measured: Vec<String> =
                o.measured.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "criterion {:02} {}: {} [{}] [band: {}]",
                o.id,
                o.name,
                if o.pass { "PASS" } else { "FAIL" },
                measured.join(", "),
                o.band,
            );
        }
        for a in &self.adjudications {
            let _ = writeln!(out, "adjudication: {a}");
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v:.6}")
}

/// Multiplies a measured count through when this criterion is the fault
/// target, so the harness can prove it fails loudly.
fn faulted(cfg: &VerifyConfig, id: u32, v: u64) -> u64 {
    if cfg.fault == Some(id) {
        v.saturating_mul(2).saturating_add(1)
    } else {
        v
    }
}

/// Run the full suite.
pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let mut outcomes = Vec::new();
    let mut adjudications = Vec::new();

    outcomes.push(figure_arc_count(cfg));
    let shared = divisor_sum_oracle(cfg, &mut outcomes);
    rational_asymptotic_band(cfg, shared, &mut outcomes);
    outcomes.push(gcd_quadruple_adjudication(cfg, &mut adjudications));
    outcomes.push(primitive_circle_sum(cfg));
    outcomes.push(reciprocal_symbol_bridge(cfg));
    outcomes.push(hecke_index_oracle(cfg));
    outcomes.push(class_number_oracle(cfg));
    outcomes.push(tangency_equivalence(cfg));
    outcomes.push(neighbour_construction(cfg));
    outcomes.push(witness_families(cfg));
    outcomes.push(field_constant_discrimination(cfg, &mut adjudications));
    outcomes.push(quaternion_exactness(cfg));
    outcomes.push(report_determinism(cfg));

    let pass = outcomes.iter().all(|o| o.pass);
    VerifyReport {
        outcomes,
        adjudications,
        pass,
    }
}

/// 1: the unit-interval enumeration at denominator-product bound 10 has
/// exactly 23 pairs, in under a millisecond.
fn figure_arc_count(cfg: &VerifyConfig) -> CriterionOutcome {
    let t0 = Instant::now();
    let pairs = rational::enumerate_farey_pairs(10, None).expect("valid bound");
    let within_time = t0.elapsed().as_micros() < 1000;
    let n = faulted(cfg, 1, pairs.len() as u64);
    CriterionOutcome {
        id: 1,
        name: "figure-arc-count",
        measured: vec![
            ("pairs".into(), n.to_string()),
            ("within_time".into(), within_time.to_string()),
        ],
        band: "exactly 23 pairs; under 1 ms",
        pass: n == 23 && within_time,
    }
}

/// 2: the enumeration size equals `sum 2^omega` for every bound up to
/// 10^4 and at 10^6, the latter in under a minute. Returns the counts
/// reused by criterion 3.
fn divisor_sum_oracle(cfg: &VerifyConfig, outcomes: &mut Vec<CriterionOutcome>) -> (u64, u64) {
    // per-product counts give every bound below 10^4 in one pass
    let small = 10_000usize;
    let mut per_product = vec![0u64; small + 1];
    rational::for_each_farey_pair(small as u64, None, |p| {
        per_product[(p.gap_den) as usize] += 1;
    })
    .expect("valid bound");
    let sieve = oracles::cumulative_divisor_sum(small as u64);
    let mut all_small_match = true;
    let mut acc = 0u64;
    for n in 1..=small {
        acc += per_product[n];
        if acc != sieve[n] {
            all_small_match = false;
            break;
        }
    }
    let count_small = acc;

    let t0 = Instant::now();
    let count_large = rational::count_farey_pairs(1_000_000, None, cfg.threads).expect("valid");
    let within_time = t0.elapsed().as_secs_f64() < 60.0;
    let oracle_large = oracles::divisor_sum_pair_count(1_000_000);
    let count_large = faulted(cfg, 2, count_large);

    // criterion 3 needs the count at 10^3 as well
    let count_mid = rational::count_farey_pairs(1_000, None, 1).expect("valid");

    outcomes.push(CriterionOutcome {
        id: 2,
        name: "divisor-sum-oracle",
        measured: vec![
            ("all_bounds_to_1e4".into(), all_small_match.to_string()),
            ("pairs_1e6".into(), count_large.to_string()),
            ("sieve_1e6".into(), oracle_large.to_string()),
            ("within_time".into(), within_time.to_string()),
        ],
        band: "exact match at every bound; under 60 s at 1e6",
        pass: all_small_match && count_large == oracle_large && within_time,
    });
    let _ = count_small;
    (count_large, count_mid)
}

/// 3: the ratio against `(6/pi^2) N ln N` is inside the 25% band at
/// 10^6 and closer to 1 than at 10^3.
fn rational_asymptotic_band(
    cfg: &VerifyConfig,
    counts: (u64, u64),
    outcomes: &mut Vec<CriterionOutcome>,
) {
    let (count_large, count_mid) = counts;
    let count_large = faulted(cfg, 3, count_large);
    let model = AsymptoticModel::QuadrupleCount;
    // the pair model is half the quadruple model
    let m = |n: f64| model.value(n, Variant::Stated) / 2.0;
    let r_large = count_large as f64 / m(1e6);
    let r_mid = count_mid as f64 / m(1e3);
    let pass = (r_large - 1.0).abs() < 0.25 && (r_large - 1.0).abs() < (r_mid - 1.0).abs();
    outcomes.push(CriterionOutcome {
        id: 3,
        name: "rational-asymptotic-band",
        measured: vec![
            ("ratio_1e6".into(), fmt_f(r_large)),
            ("ratio_1e3".into(), fmt_f(r_mid)),
        ],
        band: "|R(1e6) - 1| < 0.25 and smaller than |R(1e3) - 1|",
        pass,
    });
}

/// 4: brute-force iteration over the quadruple box confirms the closed
/// count in both sign conventions for every bound up to 200; the report
/// states which convention matches the printed main term.
fn gcd_quadruple_adjudication(
    cfg: &VerifyConfig,
    adjudications: &mut Vec<String>,
) -> CriterionOutcome {
    let n = 200u64;
    let strict_brute = oracles::brute_force_quadruple_counts(n, SignMode::StrictPlusOne);
    let abs_brute = oracles::brute_force_quadruple_counts(n, SignMode::Absolute);
    let mut pairs_cum = vec![0u64; n as usize + 1];
    {
        let mut per_product = vec![0u64; n as usize + 1];
        rational::for_each_farey_pair(n, None, |p| {
            per_product[p.gap_den as usize] += 1;
        })
        .expect("valid");
        for m in 1..=n as usize {
            pairs_cum[m] = pairs_cum[m - 1] + per_product[m];
        }
    }
    let mut ok = true;
    for m in 1..=n as usize {
        if strict_brute[m] != pairs_cum[m] || abs_brute[m] != 2 * pairs_cum[m] {
            ok = false;
            break;
        }
    }
    let strict_200 = faulted(cfg, 4, strict_brute[n as usize]);
    let ok = ok && strict_200 == pairs_cum[n as usize];
    // the printed 12/pi^2 main term counts twice the pair census, which
    // is the absolute convention
    adjudications.push(
        "quadruple sign convention: |ps - qr| = 1 matches the 12/pi^2 N log N main term \
         (one solution per unordered pair and orientation); ps - qr = 1 is in bijection \
         with the pairs"
            .to_string(),
    );
    CriterionOutcome {
        id: 4,
        name: "gcd-quadruple-adjudication",
        measured: vec![
            ("bounds_checked".into(), n.to_string()),
            ("strict_at_200".into(), strict_200.to_string()),
            ("pairs_at_200".into(), pairs_cum[n as usize].to_string()),
            ("absolute_at_200".into(), abs_brute[n as usize].to_string()),
        ],
        band: "strict = pairs and absolute = 2 x pairs at every bound up to 200",
        pass: ok,
    }
}

/// 5: the primitive two-squares sum at 10^6 sits within half a percent
/// of `(6/pi) N`, in under 30 s.
fn primitive_circle_sum(cfg: &VerifyConfig) -> CriterionOutcome {
    let t0 = Instant::now();
    let sum = rational::sum_r_prim(1_000_000, cfg.threads);
    let within_time = t0.elapsed().as_secs_f64() < 30.0;
    let sum = faulted(cfg, 5, sum);
    let ratio = sum as f64 / (6.0 / PI * 1e6);
    CriterionOutcome {
        id: 5,
        name: "primitive-circle-sum",
        measured: vec![
            ("sum_1e6".into(), sum.to_string()),
            ("ratio".into(), fmt_f(ratio)),
            ("within_time".into(), within_time.to_string()),
        ],
        band: "ratio in [0.995, 1.005]; under 30 s",
        pass: (0.995..=1.005).contains(&ratio) && within_time,
    }
}

/// 6: the reciprocal symbol count stays within 4 of a quarter of the
/// primitive sum on a 50-point grid, and the full count at the top of
/// the grid is within 10% of `(3/pi^2) e^T`.
fn reciprocal_symbol_bridge(cfg: &VerifyConfig) -> CriterionOutcome {
    let t_max = 2.0 * 1000f64.ln();
    let mut max_gap = 0i64;
    let mut slope_points: Vec<(f64, f64)> = Vec::new();
    for i in 0..50 {
        let t = t_max * i as f64 / 49.0;
        let rec = rational::count_modular_symbols(t, SymbolMode::Reciprocal);
        let bound = rational::exp_half_floor(t);
        let srp = rational::sum_r_prim(bound, 1);
        // integer comparison of |4 count - sum| <= 16
        let gap = (4 * rec as i64 - srp as i64).abs();
        max_gap = max_gap.max(gap);
        // informational: decay slope of the relative error of the full
        // count, fitted over the upper half of the grid; the expected
        // exponent on this route is -1/2
        if i >= 25 {
            let all = rational::count_modular_symbols(t, SymbolMode::All) as f64;
            let rel =
                (all / AsymptoticModel::SymbolDistanceCount.value(t, Variant::Stated) - 1.0).abs();
            if rel > 0.0 {
                slope_points.push((t, rel.ln()));
            }
        }
    }
    let max_gap = faulted(cfg, 6, max_gap as u64);
    let all_count = rational::count_modular_symbols(t_max, SymbolMode::All);
    let ratio =
        all_count as f64 / AsymptoticModel::SymbolDistanceCount.value(t_max, Variant::Stated);
    let slope = least_squares_slope(&slope_points);
    CriterionOutcome {
        id: 6,
        name: "reciprocal-symbol-bridge",
        measured: vec![
            ("max_bridge_gap_x4".into(), max_gap.to_string()),
            ("all_count".into(), all_count.to_string()),
            ("all_ratio".into(), fmt_f(ratio)),
            ("fitted_decay_slope".into(), fmt_f(slope)),
        ],
        band:
            "|count - sum/4| <= 4 on the grid; full-count ratio in [0.9, 1.1]; slope informational",
        pass: max_gap <= 16 && (0.9..=1.1).contains(&ratio),
    }
}

/// Ordinary least squares slope; used for informational decay-rate
/// estimates only, never inside a pass band.
fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// 7: the closed index formula equals the projective-line census for
/// every level up to 50.
fn hecke_index_oracle(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut ok = true;
    for l in 1..=50u64 {
        if rational::hecke_index(l) != oracles::projective_line_size(l) {
            ok = false;
            break;
        }
    }
    let at_12 = faulted(cfg, 7, rational::hecke_index(12));
    let ok = ok && rational::hecke_index(2) == 3 && at_12 == 24;
    CriterionOutcome {
        id: 7,
        name: "hecke-index-oracle",
        measured: vec![
            ("levels_checked".into(), "50".into()),
            ("index_2".into(), rational::hecke_index(2).to_string()),
            ("index_12".into(), at_12.to_string()),
        ],
        band: "formula equals coset census for every level up to 50",
        pass: ok,
    }
}

/// 8: the ideal-arithmetic class number agrees with the reduced-form
/// census for every square-free f in [-97, -1].
fn class_number_oracle(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut ok = true;
    let mut fields = 0u64;
    for f in (-97..=-1i64).filter(|f| crate::arith::is_square_free((-f) as u64)) {
        let field = QuadField::new(f).expect("square-free");
        let h = field.class_group().expect("within bound").h;
        if h != oracles::reduced_form_class_number(field.discriminant()) {
            ok = false;
            break;
        }
        fields += 1;
    }
    let h5 = faulted(cfg, 8, QuadField::new(-5).unwrap().class_group().unwrap().h);
    let h1 = QuadField::new(-1).unwrap().class_group().unwrap().h;
    CriterionOutcome {
        id: 8,
        name: "class-number-oracle",
        measured: vec![
            ("fields_checked".into(), fields.to_string()),
            ("h_minus5".into(), h5.to_string()),
            ("h_minus1".into(), h1.to_string()),
        ],
        band: "h equals the reduced-form count on every field; h(-5) = 2, h(-1) = 1",
        pass: ok && h5 == 2 && h1 == 1,
    }
}

fn random_point(rng: &mut SplitMix64, field: QuadField) -> ProjectivePoint {
    loop {
        let num = QuadInt::new(rng.range_i64(-9, 9) as i128, rng.range_i64(-9, 9) as i128);
        let den = QuadInt::new(rng.range_i64(-9, 9) as i128, rng.range_i64(-9, 9) as i128);
        if num.is_zero() && den.is_zero() {
            continue;
        }
        return ProjectivePoint::new(field, num, den).expect("nonzero");
    }
}

/// 9: the ideal equation and exact horoball tangency agree on 1000
/// random pairs in each of eight fields, with no packing violations.
fn tangency_equivalence(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut rng = SplitMix64::new(cfg.seed ^ 0x9e37);
    let mut mismatches = 0u64;
    let mut violations = 0u64;
    let mut checked = 0u64;
    for f in [-1i64, -2, -3, -5, -6, -7, -11, -15] {
        let field = QuadField::new(f).expect("square-free");
        for _ in 0..1000 {
            let x = random_point(&mut rng, field);
            let y = random_point(&mut rng, field);
            if x.same_point(&y) {
                continue;
            }
            checked += 1;
            let farey = is_k_farey(&x, &y).expect("distinct");
            match horoballs_tangent(&canonical_horoball(&x), &canonical_horoball(&y)) {
                Ok(tangent) => {
                    if tangent != farey {
                        mismatches += 1;
                    }
                }
                Err(_) => violations += 1,
            }
        }
    }
    let mismatches = faulted(cfg, 9, mismatches);
    CriterionOutcome {
        id: 9,
        name: "tangency-equivalence",
        measured: vec![
            ("pairs_checked".into(), checked.to_string()),
            ("mismatches".into(), mismatches.to_string()),
            ("packing_violations".into(), violations.to_string()),
        ],
        band: "0 mismatches and 0 violations over 8 fields x 1000 pairs",
        pass: mismatches == 0 && violations == 0,
    }
}

/// 10: the neighbour constructor succeeds, with the ideal equation
/// verified, for every class of every square-free f in [-97, -1]; at
/// f = -5 the explicit pair is reproduced tangency-equivalently.
fn neighbour_construction(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut classes = 0u64;
    let mut failures = 0u64;
    for f in (-97..=-1i64).filter(|f| crate::arith::is_square_free((-f) as u64)) {
        let field = QuadField::new(f).expect("square-free");
        let cg = field.class_group().expect("within bound");
        for rep in &cg.representatives {
            classes += 1;
            let [b0, b1] = rep.basis();
            let target = ProjectivePoint::new(field, b1, b0).expect("nonzero");
            match construct_k_farey(field, &target) {
                Ok(w) => {
                    // the witness validates the ideal equation internally;
                    // re-check the class condition here
                    let same = field.same_class(&w.alpha.ideal(), &target.ideal());
                    if w.validate().is_err() || !same {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    // the explicit f = -5 pair, with the verified sign, is tangent and
    // lands in the same class pair as the constructed witness
    let field = QuadField::new(-5).unwrap();
    let exw = example_family(field, Family::Ex2).expect("hypotheses hold");
    let tangent = horoballs_tangent(
        &canonical_horoball(&exw.alpha),
        &canonical_horoball(&exw.beta),
    ) == Ok(true);
    let constructed = construct_k_farey(field, &exw.alpha).expect("succeeds");
    let classes_match = field.same_class(&constructed.alpha.ideal(), &exw.alpha.ideal());
    let failures = faulted(cfg, 10, failures);
    CriterionOutcome {
        id: 10,
        name: "neighbour-construction",
        measured: vec![
            ("classes".into(), classes.to_string()),
            ("failures".into(), failures.to_string()),
            ("explicit_pair_tangent".into(), tangent.to_string()),
            ("explicit_class_match".into(), classes_match.to_string()),
        ],
        band: "all classes constructible with the ideal equation verified",
        pass: failures == 0 && tangent && classes_match,
    }
}

/// 11: the witness families validate symbolically with iota = 1 and the
/// expected stabilizer orders, and the bounded search rediscovers an
/// exchanging element for each.
fn witness_families(cfg: &VerifyConfig) -> CriterionOutcome {
    let cases: &[(Family, i64, u32)] = &[
        (Family::Ex1, -6, 1),
        (Family::Ex2, -5, 1),
        (Family::Ex2, -7, 1),
        (Family::Ex2, -11, 1),
        (Family::Ex2, -1, 2),
        (Family::Ex3, -6, 1),
        (Family::Ex3, -10, 1),
    ];
    let mut failures = 0u64;
    for &(family, f, expect_m) in cases {
        let field = QuadField::new(f).expect("square-free");
        match example_family(field, family) {
            Ok(w) => {
                let rediscovered = matches!(
                    find_exchanging_involution(&w.alpha, &w.beta, 40),
                    Ok(ExchangeSearch::Found(_))
                );
                if w.validate().is_err() || w.iota != 1 || w.m != expect_m || !rediscovered {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    let failures = faulted(cfg, 11, failures);
    CriterionOutcome {
        id: 11,
        name: "witness-families",
        measured: vec![
            ("cases".into(), cases.len().to_string()),
            ("failures".into(), failures.to_string()),
        ],
        band: "all families validate with iota = 1 and the expected stabilizer order",
        pass: failures == 0,
    }
}

/// 12: at eps = 1/40 over the Gaussian integers, the fitted constant is
/// within 25% of exactly one of the two candidate normalizations; the
/// winner is named.
fn field_constant_discrimination(
    cfg: &VerifyConfig,
    adjudications: &mut Vec<String>,
) -> CriterionOutcome {
    let field = QuadField::new(-1).unwrap();
    let t0 = Instant::now();
    let eps = Rat::new(1, 40);
    let count = count_k_farey_pairs(field, eps * eps, cfg.threads).expect("valid threshold");
    let within_time = t0.elapsed().as_secs_f64() < 60.0;
    let count = faulted(cfg, 12, count);
    let e = 1.0 / 40.0;
    let fitted = count as f64 * e * e / (1.0 / e).ln();
    let zeta = field.zeta_k_2(1e-10);
    let stated = 4.0 * PI / (4.0 * 4.0 * zeta);
    let alt = stated * PI;
    let near_stated = (fitted / stated - 1.0).abs() < 0.25;
    let near_alt = (fitted / alt - 1.0).abs() < 0.25;
    let pass = near_stated != near_alt && within_time;
    let winner = if near_alt {
        "pi-corrected (4 pi^2)"
    } else {
        "stated (4 pi)"
    };
    if pass {
        adjudications.push(format!(
            "volume normalization: the fitted constant {} at eps = 1/40 matches the {} \
             variant only (candidates {} and {})",
            fmt_f(fitted),
            winner,
            fmt_f(stated),
            fmt_f(alt)
        ));
    }
    CriterionOutcome {
        id: 12,
        name: "field-constant-discrimination",
        measured: vec![
            ("count".into(), count.to_string()),
            ("fitted".into(), fmt_f(fitted)),
            ("candidate_stated".into(), fmt_f(stated)),
            ("candidate_alt".into(), fmt_f(alt)),
            ("within_time".into(), within_time.to_string()),
        ],
        band: "within 25% of exactly one candidate; under 60 s",
        pass,
    }
}

/// 13: exact determinant identities on seeded samples, the unit census,
/// the frozen counts, the growth trend and the small-height cross-check.
fn quaternion_exactness(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut rng = SplitMix64::new(cfg.seed ^ 0x4a7);
    let mut det_failures = 0u64;
    for _ in 0..1000 {
        let m = QuatMatrix {
            a: sample_hurwitz(&mut rng, 100),
            b: sample_hurwitz(&mut rng, 100),
            c: sample_hurwitz(&mut rng, 100),
            d: sample_hurwitz(&mut rng, 100),
        };
        let n = QuatMatrix {
            a: sample_hurwitz(&mut rng, 100),
            b: sample_hurwitz(&mut rng, 100),
            c: sample_hurwitz(&mut rng, 100),
            d: sample_hurwitz(&mut rng, 100),
        };
        if m.mul(&n).det_sq() != m.det_sq() * n.det_sq() {
            det_failures += 1;
        }
        if !m.c.is_zero() {
            let alt = dieudonne_det_sq_alternate(
                &m.a.to_quat(),
                &m.b.to_quat(),
                &m.c.to_quat(),
                &m.d.to_quat(),
            )
            .expect("c nonzero");
            if alt != m.det_sq() {
                det_failures += 1;
            }
        }
    }
    let units = HurwitzQuaternion::units().len() as u64;
    let c1 = count_quat_farey_pairs(Rat::ONE, cfg.threads).expect("in scale");
    let c2 = count_quat_farey_pairs(Rat::new(1, 2), cfg.threads).expect("in scale");
    let c4 = count_quat_farey_pairs(Rat::new(1, 4), cfg.threads).expect("in scale");
    let c4 = faulted(cfg, 13, c4);
    // counts grow as the threshold falls, and the eps^2-normalized count
    // grows once ln(1/eps) is positive
    let trend = c1 < c2 && c2 < c4 && (c4 as f64) / 16.0 > (c2 as f64) / 4.0;
    let cross = oracles::quat_farey_cross_check(8, 64, 150_000);
    CriterionOutcome {
        id: 13,
        name: "quaternion-exactness",
        measured: vec![
            ("det_failures".into(), det_failures.to_string()),
            ("units".into(), units.to_string()),
            ("count_1".into(), c1.to_string()),
            ("count_half".into(), c2.to_string()),
            ("count_quarter".into(), c4.to_string()),
            ("cross_pairs".into(), cross.pairs_checked.to_string()),
            ("cross_mismatches".into(), cross.mismatches.to_string()),
        ],
        band: "exact identities on 1000 samples; 24 units; counts 12/36/156 with growing trend; 0 cross-check mismatches",
        pass: det_failures == 0
            && units == 24
            && c1 == 12
            && c2 == 36
            && c4 == 156
            && trend
            && cross.mismatches == 0,
    }
}

/// 14: re-running the seeded and threaded criteria yields byte-identical
/// renderings. (The command-line harness additionally re-runs the whole
/// binary and compares entire artifacts.)
fn report_determinism(cfg: &VerifyConfig) -> CriterionOutcome {
    let render = |o: &CriterionOutcome| {
        let mut s = String::new();
        for (k, v) in &o.measured {
            let _ = write!(s, "{k}={v};");
        }
        s
    };
    let pass_a = [
        render(&figure_arc_count(cfg)),
        render(&reciprocal_symbol_bridge(cfg)),
        render(&tangency_equivalence(cfg)),
        render(&field_constant_discrimination(cfg, &mut Vec::new())),
    ];
    let pass_b = [
        render(&figure_arc_count(cfg)),
        render(&reciprocal_symbol_bridge(cfg)),
        render(&tangency_equivalence(cfg)),
        render(&field_constant_discrimination(cfg, &mut Vec::new())),
    ];
    let identical = pass_a == pass_b && cfg.fault != Some(14);
    CriterionOutcome {
        id: 14,
        name: "report-determinism",
        measured: vec![("reruns_identical".into(), identical.to_string())],
        band: "seeded and threaded criteria render identically across runs",
        pass: identical,
    }
}
