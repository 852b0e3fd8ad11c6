//! The counting experiments behind `farey count`: one row per grid
//! threshold, with the empirical count and both model normalizations.

use farey_core::models::{AsymptoticModel, Variant};
use farey_core::quadfield::QuadField;
use farey_core::rat::{parse_rat, Rat};
use farey_core::rational::{self, SymbolMode};
use farey_core::series::{CountRow, CountSeries};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Unit-interval rational pairs by denominator-product bound `N`.
    Rational,
    /// Imaginary quadratic pairs modulo translation, thresholds `eps`.
    Field,
    /// Hurwitz-order pairs modulo translation, thresholds `eps` on the
    /// gap norm.
    Quaternion,
    /// Modular-symbol census by distance complexity `T`.
    Symbols,
    /// The reciprocal symbols only.
    SymbolsReciprocal,
}

#[derive(Debug, Clone)]
pub struct CountRequest {
    pub regime: Regime,
    pub f: Option<i64>,
    pub level: Option<u64>,
    pub grid: Vec<String>,
    pub threads: usize,
}

pub fn run_count(req: &CountRequest) -> Result<CountSeries, String> {
    if req.grid.is_empty() {
        return Err("empty grid".to_string());
    }
    let mut series = CountSeries::new();
    for token in &req.grid {
        let row = match req.regime {
            Regime::Rational => rational_row(req, token)?,
            Regime::Field => field_row(req, token)?,
            Regime::Quaternion => quaternion_row(req, token)?,
            Regime::Symbols => symbol_row(token, SymbolMode::All)?,
            Regime::SymbolsReciprocal => symbol_row(token, SymbolMode::Reciprocal)?,
        };
        series.push(row).map_err(|e| e.to_string())?;
    }
    Ok(series)
}

fn rational_row(req: &CountRequest, token: &str) -> Result<CountRow, String> {
    let n: u64 = token
        .trim()
        .parse()
        .map_err(|_| format!("bad bound {token:?}"))?;
    if n == 0 {
        return Err("bound must be positive".into());
    }
    let empirical =
        rational::count_farey_pairs(n, req.level, req.threads).map_err(|e| e.to_string())?;
    let model = match req.level {
        // half of the quadruple main term: one row per unordered pair
        None => AsymptoticModel::QuadrupleCount.value(n as f64, Variant::Stated) / 2.0,
        Some(l) => {
            // no exchanging element survives the congruence for l >= 2,
            // so the orbit splits into two symbol classes
            let idx = rational::hecke_index(l) as f64;
            AsymptoticModel::RationalSymbolCount {
                iota: 2.0,
                cusp_index: 1.0,
                index: idx,
            }
            .value(1.0 / n as f64, Variant::Stated)
        }
    };
    Ok(CountRow {
        threshold_label: n.to_string(),
        threshold: n as f64,
        empirical,
        model_paper: model,
        model_alt: model,
    })
}

fn parse_eps(token: &str) -> Result<Rat, String> {
    let eps = parse_rat(token).ok_or_else(|| format!("bad threshold {token:?}"))?;
    if eps <= Rat::ZERO {
        return Err("threshold must be positive".into());
    }
    Ok(eps)
}

fn field_row(req: &CountRequest, token: &str) -> Result<CountRow, String> {
    let f = req.f.ok_or("--f is required for the field regime")?;
    let field = QuadField::new(f).map_err(|e| e.to_string())?;
    let eps = parse_eps(token)?;
    if eps > Rat::ONE {
        return Err("field thresholds must be at most 1".into());
    }
    let empirical = farey_core::bianchi::count_k_farey_pairs(field, eps * eps, req.threads)
        .map_err(|e| e.to_string())?;
    let model = AsymptoticModel::FieldPairCount { f };
    let e = eps.to_f64();
    Ok(CountRow {
        threshold_label: eps.to_string(),
        threshold: e,
        empirical,
        model_paper: model.value(e, Variant::Stated),
        model_alt: model.value(e, Variant::AltVolume),
    })
}

fn quaternion_row(req: &CountRequest, token: &str) -> Result<CountRow, String> {
    let eps = parse_eps(token)?;
    let empirical = farey_core::quaternion::count_quat_farey_pairs(eps, req.threads)
        .map_err(|e| e.to_string())?;
    let model = AsymptoticModel::QuatPairCount {
        discriminant: 2,
        unit_count: 24,
    };
    let e = eps.to_f64();
    Ok(CountRow {
        threshold_label: eps.to_string(),
        threshold: e,
        empirical,
        model_paper: model.value(e, Variant::Stated),
        model_alt: model.value(e, Variant::AltVolume),
    })
}

fn symbol_row(token: &str, mode: SymbolMode) -> Result<CountRow, String> {
    let t: f64 = token
        .trim()
        .parse()
        .map_err(|_| format!("bad complexity bound {token:?}"))?;
    if !t.is_finite() || t < 0.0 {
        return Err("complexity bound must be nonnegative".into());
    }
    let empirical = rational::count_modular_symbols(t, mode);
    let model = match mode {
        SymbolMode::All => AsymptoticModel::SymbolDistanceCount,
        SymbolMode::Reciprocal => AsymptoticModel::ReciprocalSymbolCount,
    }
    .value(t, Variant::Stated);
    Ok(CountRow {
        threshold_label: format!("{t:.9}"),
        threshold: t,
        empirical,
        model_paper: model,
        model_alt: model,
    })
}

/// Fixed-schema CSV: `threshold,empirical,model_paper,model_alt,ratio_paper,ratio_alt`.
pub fn render_csv(series: &CountSeries) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "threshold,empirical,model_paper,model_alt,ratio_paper,ratio_alt"
    );
    for row in series.rows() {
        let _ = writeln!(
            out,
            "{},{},{:.9},{:.9},{:.9},{:.9}",
            row.threshold_label,
            row.empirical,
            row.model_paper,
            row.model_alt,
            row.ratio_paper(),
            row.ratio_alt()
        );
    }
    out
}

#[derive(serde::Serialize)]
struct RowDto<'a> {
    threshold: &'a str,
    empirical: u64,
    model_paper: f64,
    model_alt: f64,
    ratio_paper: f64,
    ratio_alt: f64,
}

pub fn render_json(series: &CountSeries) -> String {
    let rows: Vec<RowDto> = series
        .rows()
        .iter()
        .map(|r| RowDto {
            threshold: &r.threshold_label,
            empirical: r.empirical,
            model_paper: r.model_paper,
            model_alt: r.model_alt,
            ratio_paper: r.ratio_paper(),
            ratio_alt: r.ratio_alt(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(regime: Regime, grid: &[&str]) -> CountRequest {
        CountRequest {
            regime,
            f: Some(-1),
            level: None,
            grid: grid.iter().map(|s| s.to_string()).collect(),
            threads: 1,
        }
    }

    #[test]
    fn rational_grid() {
        let s = run_count(&req(Regime::Rational, &["1", "10"])).unwrap();
        assert_eq!(s.rows()[0].empirical, 1);
        assert_eq!(s.rows()[1].empirical, 23);
        let csv = render_csv(&s);
        assert!(
            csv.starts_with("threshold,empirical,model_paper,model_alt,ratio_paper,ratio_alt\n")
        );
        assert!(csv.contains("\n10,23,"));
    }

    #[test]
    fn reciprocal_at_zero() {
        let s = run_count(&CountRequest {
            regime: Regime::SymbolsReciprocal,
            f: None,
            level: None,
            grid: vec!["0".into()],
            threads: 1,
        })
        .unwrap();
        assert_eq!(s.rows()[0].empirical, 1);
    }

    #[test]
    fn field_grid_eps() {
        let s = run_count(&req(Regime::Field, &["1", "1/2"])).unwrap();
        assert_eq!(s.rows()[0].empirical, 2);
        assert!(s.rows()[1].empirical > 2);
    }

    #[test]
    fn quaternion_unit_eps() {
        let s = run_count(&req(Regime::Quaternion, &["1"])).unwrap();
        assert_eq!(s.rows()[0].empirical, 12);
    }

    #[test]
    fn bad_grids_rejected() {
        assert!(run_count(&req(Regime::Rational, &["0"])).is_err());
        assert!(run_count(&req(Regime::Rational, &[])).is_err());
        assert!(run_count(&req(Regime::Field, &["3/2"])).is_err());
        let mut r = req(Regime::Field, &["1/2"]);
        r.f = None;
        assert!(run_count(&r).is_err());
    }
}
