//! Deterministic SVG rendering of the unit-interval Farey arcs, the
//! Ford circles and the constant-height line.
//!
//! Coordinates are emitted with fixed 9-decimal formatting and all
//! elements in canonical sorted order, so identical parameters give
//! byte-identical files.

use farey_core::rat::Rat;
use farey_core::rational::farey_pairs_max_denominator;
use std::fmt::Write;

const SCALE: f64 = 1000.0;
const MARGIN: f64 = 40.0;
const TOP: f64 = 1.15;

fn fx(v: f64) -> String {
    format!("{v:.9}")
}

/// x in [0, 1] to pixel.
fn px(x: f64) -> String {
    fx(MARGIN + SCALE * x)
}

/// height t >= 0 to pixel (SVG y axis points down).
fn py(t: f64) -> String {
    fx(MARGIN + SCALE * (TOP - t))
}

pub struct ArcPlot {
    pub svg: String,
    pub arc_count: usize,
    pub circle_count: usize,
    pub arcs_meeting_line: usize,
}

/// Render every neighbour pair with both denominators at most
/// `max_denom` as a semicircular arc, the Ford circles up to the same
/// denominator as dotted circles, and a dashed line at height `height`.
/// The census of arcs meeting the line compares radii exactly, so ties
/// at the threshold are included.
pub fn plot_arcs(max_denom: u64, height: Rat) -> ArcPlot {
    assert!(max_denom >= 1);
    assert!(height > Rat::ZERO);
    let height_f = height.to_f64();
    let pairs = farey_pairs_max_denominator(max_denom);

    let mut arcs: Vec<(f64, f64, i64, i64, i64)> = pairs
        .iter()
        .map(|p| {
            (
                p.lo.to_f64(),
                p.hi.to_f64(),
                p.lo.denominator(),
                p.hi.denominator(),
                p.lo.numerator(),
            )
        })
        .collect();
    // canonical order: by growing diameter, then position
    arcs.sort_by(|a, b| {
        let ka = (a.2 * a.3, a.2, a.4);
        let kb = (b.2 * b.3, b.2, b.4);
        ka.cmp(&kb)
    });

    let mut circles: Vec<(i64, i64)> = Vec::new();
    for q in 1..=max_denom as i64 {
        for p in 0..=q {
            if farey_core::arith::gcd(p, q) == 1 {
                circles.push((q, p));
            }
        }
    }
    circles.sort();

    let width = 2.0 * MARGIN + SCALE;
    let total_height = 2.0 * MARGIN + SCALE * TOP;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fx(width),
        fx(total_height),
        fx(width),
        fx(total_height)
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        fx(width),
        fx(total_height)
    );
    // boundary line t = 0
    let _ = writeln!(
        s,
        r#"<line class="boundary" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"/>"#,
        px(0.0),
        py(0.0),
        px(1.0),
        py(0.0)
    );
    // the horoball at infinity starts at t = 1
    let _ = writeln!(
        s,
        r#"<line class="horoball-inf" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-width="1" stroke-dasharray="2,4"/>"#,
        px(0.0),
        py(1.0),
        px(1.0),
        py(1.0)
    );

    let mut arcs_meeting_line = 0usize;
    for &(lo, hi, s_den, q_den, _) in &arcs {
        let r = (hi - lo) / 2.0;
        // exact radius 1/(2 q s) against the exact height
        if Rat::new(1, 2 * (q_den as i128) * (s_den as i128)) >= height {
            arcs_meeting_line += 1;
        }
        let _ = writeln!(
            s,
            r#"<path class="arc" d="M {} {} A {} {} 0 0 1 {} {}" fill="none" stroke="blue" stroke-width="0.8"/>"#,
            px(lo),
            py(0.0),
            fx(SCALE * r),
            fx(SCALE * r),
            px(hi),
            py(0.0)
        );
    }

    for &(q, p) in &circles {
        let d = 1.0 / (q as f64 * q as f64);
        let _ = writeln!(
            s,
            r#"<circle class="ford" cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="0.6" stroke-dasharray="1,3"/>"#,
            px(p as f64 / q as f64),
            py(d / 2.0),
            fx(SCALE * d / 2.0)
        );
    }

    let _ = writeln!(
        s,
        r#"<line class="cutline" x1="{}" y1="{}" x2="{}" y2="{}" stroke="red" stroke-width="1" stroke-dasharray="6,3"/>"#,
        px(0.0),
        py(height_f),
        px(1.0),
        py(height_f)
    );
    let _ = writeln!(s, "</svg>");
    ArcPlot {
        svg: s,
        arc_count: arcs.len(),
        circle_count: circles.len(),
        arcs_meeting_line,
    }
}
