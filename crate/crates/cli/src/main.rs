use clap::{Parser, Subcommand, ValueEnum};
use farey_cli::count::{render_csv, render_json, run_count, CountRequest, Regime};
use farey_cli::report::report_json;
use farey_cli::svg::plot_arcs;
use farey_cli::witness::build_witness_file;
use farey_core::rat::parse_rat;
use farey_core::verify::{run_verify, VerifyConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Farey-neighbour counting over Q, imaginary quadratic fields and the
/// Hurwitz quaternion order, with exact-arithmetic verification.
#[derive(Parser)]
#[command(name = "farey", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Counting experiment over a threshold grid; CSV or JSON rows with
    /// both model normalizations.
    Count(CountArgs),
    /// Deterministic SVG of the unit-interval Farey arcs with Ford
    /// circles and a constant-height line.
    PlotArcs(PlotArgs),
    /// Export one neighbour witness per ideal class of a field as JSON.
    Witness(WitnessArgs),
    /// Run the full verification suite; nonzero exit on any failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Q,
    Field,
    Quat,
    Symbols,
    SymbolsRec,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
    Text,
}

#[derive(Parser)]
struct CountArgs {
    /// Which counting experiment to run.
    #[arg(long, value_enum)]
    regime: RegimeArg,
    /// Square-free negative field parameter (field regime).
    #[arg(long, allow_hyphen_values = true)]
    f: Option<i64>,
    /// Congruence level filter (rational regime).
    #[arg(long)]
    level: Option<u64>,
    /// Comma-separated thresholds: bounds N, exact rationals like 1/40,
    /// or distance bounds T.
    #[arg(long, value_delimiter = ',', required = true)]
    grid: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long, default_value_t = 1024225)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    threads: usize,
}

#[derive(Parser)]
struct PlotArgs {
    /// Largest endpoint denominator drawn.
    #[arg(long, default_value_t = 19)]
    max_denom: u64,
    /// Height of the dashed cut line, as an exact rational.
    #[arg(long, default_value = "1/20")]
    height: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "svg")]
    format: FormatArg,
}

#[derive(Parser)]
struct WitnessArgs {
    /// Square-free negative field parameter.
    #[arg(long, allow_hyphen_values = true)]
    f: i64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Parser)]
struct VerifyArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long, default_value_t = 1024225)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    threads: usize,
    /// Test fixture: corrupt the named criterion to prove the harness
    /// fails loudly.
    #[arg(long, hide = true)]
    inject_fault: Option<u32>,
}

fn emit(out: &Option<PathBuf>, bytes: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes).map_err(|e| format!("writing {}: {e}", path.display()))
        }
        None => {
            print!("{bytes}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Count(args) => {
            let regime = match args.regime {
                RegimeArg::Q => Regime::Rational,
                RegimeArg::Field => Regime::Field,
                RegimeArg::Quat => Regime::Quaternion,
                RegimeArg::Symbols => Regime::Symbols,
                RegimeArg::SymbolsRec => Regime::SymbolsReciprocal,
            };
            let series = run_count(&CountRequest {
                regime,
                f: args.f,
                level: args.level,
                grid: args.grid,
                threads: args.threads.max(1),
            })?;
            let body = match args.format {
                FormatArg::Csv => render_csv(&series),
                FormatArg::Json => render_json(&series),
                _ => return Err("count supports csv or json".into()),
            };
            emit(&args.out, &body)?;
            Ok(0)
        }
        Cmd::PlotArcs(args) => {
            if args.format != FormatArg::Svg {
                return Err("plot-arcs renders svg".into());
            }
            if args.max_denom == 0 {
                return Err("--max-denom must be positive".into());
            }
            let height = parse_rat(&args.height)
                .filter(|h| h.num() > 0)
                .ok_or("--height must be a positive rational")?;
            let plot = plot_arcs(args.max_denom, height);
            emit(&args.out, &plot.svg)?;
            Ok(0)
        }
        Cmd::Witness(args) => {
            if args.format != FormatArg::Json {
                return Err("witness exports json".into());
            }
            if args.f < -97 {
                return Err("witness export supports -97 <= f <= -1".into());
            }
            let field = farey_core::quadfield::QuadField::new(args.f).map_err(|e| e.to_string())?;
            let file = build_witness_file(field)?;
            let mut body = serde_json::to_string_pretty(&file).expect("serializable");
            body.push('\n');
            emit(&args.out, &body)?;
            Ok(0)
        }
        Cmd::Verify(args) => {
            let report = run_verify(&VerifyConfig {
                seed: args.seed,
                threads: args.threads.max(1),
                fault: args.inject_fault,
            });
            let body = match args.format {
                FormatArg::Json => report_json(&report),
                FormatArg::Text => report.render_text(),
                _ => return Err("verify reports text or json".into()),
            };
            emit(&args.out, &body)?;
            if args.out.is_some() {
                // keep a terse status on stdout as well
                println!("verify: {}", if report.pass { "PASS" } else { "FAIL" });
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
