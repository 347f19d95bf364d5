//! Command-line front end: per-state measure reports, family parameter sweeps
//! as CSV, verification suites, and SPA-PT matrix emission.
//!
//! Exit codes: 0 success, 1 usage error, 2 input-validation error, 3 hard-suite
//! violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sneg::measures::{measure_report, spa_pt, MeasureError};
use sneg::qstate::{BipartiteState, Family, FamilyPoint, StateError};
use sneg::sweep::{row_satisfies_result1, run_sweep, to_csv};
use sneg::verify::{self, VerifyConfig, VerifyReport};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_HARD_SUITE: u8 = 3;

#[derive(Parser)]
#[command(name = "sneg", version, about = "Structured negativity and related entanglement measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all quantifiers for one state and print a JSON report
    Measure(MeasureArgs),
    /// Sweep a family parameter and emit per-point measures as CSV
    Sweep(SweepArgs),
    /// Run the randomized verification suites and print JSON reports
    Verify(VerifyArgs),
    /// Apply the SPA-PT map to a state file and write the result
    Spa(SpaArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Family name: werner, mems, rho_a, rho_alpha, max_entangled
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Family parameter (F, C, a, alpha, or d)
    #[arg(long, requires = "family")]
    param: Option<f64>,
    /// State file to measure instead of a built-in family
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    family: String,
    /// Start of the parameter interval, or "auto" for the family minimum
    #[arg(long, default_value = "auto")]
    start: String,
    /// End of the parameter interval, or "auto" for the family maximum
    #[arg(long, default_value = "auto")]
    stop: String,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated local dimensions
    #[arg(long, default_value = "2,3", value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// One of: all, separable, lu, convexity, lemma1, weyl, two_path,
    /// result1, coincidence, locc, conjecture
    #[arg(long, default_value = "all")]
    suite: String,
    /// Kraus operator count for the LOCC suite
    #[arg(long, default_value_t = 2)]
    kraus: usize,
    /// Output JSON path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpaArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version requests are successes, everything else is usage
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Measure(args) => cmd_measure(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Spa(args) => cmd_spa(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(classify(&err))
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

fn classify(err: &CliError) -> u8 {
    match err {
        CliError::Usage(_) => EXIT_USAGE,
        _ => EXIT_VALIDATION,
    }
}

fn parse_family(name: &str) -> Result<Family, CliError> {
    Family::parse(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown family '{name}' (expected werner, mems, rho_a, rho_alpha, max_entangled)"
        ))
    })
}

fn load_state(args: &MeasureArgs) -> Result<BipartiteState, CliError> {
    if let Some(path) = &args.input {
        return Ok(BipartiteState::load(path)?);
    }
    let family = parse_family(
        args.family
            .as_deref()
            .ok_or_else(|| CliError::Usage("either --family or --input is required".into()))?,
    )?;
    let param = args
        .param
        .ok_or_else(|| CliError::Usage("--param is required with --family".into()))?;
    Ok(FamilyPoint { family, parameter: param }.construct()?)
}

fn cmd_measure(args: MeasureArgs) -> Result<u8, CliError> {
    let state = load_state(&args)?;
    let report = measure_report(&state)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(0)
}

fn parse_endpoint(text: &str, auto_value: f64, name: &str) -> Result<f64, CliError> {
    if text == "auto" {
        Ok(auto_value)
    } else {
        text.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--{name} must be a number or 'auto'")))
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, CliError> {
    let family = parse_family(&args.family)?;
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    let (lo, hi) = family.parameter_range();
    let start = parse_endpoint(&args.start, lo, "start")?;
    let stop = parse_endpoint(&args.stop, hi, "stop")?;
    let result = run_sweep(family, start, stop, args.steps)?;

    let d = match family {
        Family::Werner | Family::Mems => 2,
        Family::RhoA | Family::RhoAlpha => 3,
        Family::MaxEntangled => start.round() as usize,
    };
    for row in &result.rows {
        if !row_satisfies_result1(d, row) {
            eprintln!(
                "error: sweep row at {} = {} violates the negativity bound",
                result.parameter_name, row.parameter_value
            );
            return Ok(EXIT_HARD_SUITE);
        }
    }

    let csv = to_csv(&result);
    match args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let cfg = VerifyConfig {
        dims: args.dims.clone(),
        trials: args.trials,
        seed: args.seed,
        kraus_count: args.kraus,
    };
    let suite_seed = |name: &str, d: usize| cfg.seed ^ sneg::rng::label_hash(name) ^ (d as u64);
    let mut reports: Vec<VerifyReport> = Vec::new();
    match args.suite.as_str() {
        "all" => reports = verify::run_all(&cfg).map_err(MeasureError::from)?,
        "separable" => {
            for &d in &cfg.dims {
                reports.push(verify::suite_separable_zero(d, cfg.trials, suite_seed("separable_zero", d))?);
            }
        }
        "lu" => {
            for &d in &cfg.dims {
                reports.push(verify::suite_lu_invariance(d, cfg.trials, suite_seed("lu_invariance", d))?);
            }
        }
        "convexity" => {
            for &d in &cfg.dims {
                reports.push(verify::suite_convexity(d, cfg.trials, suite_seed("convexity", d))?);
            }
        }
        "lemma1" => {
            for &d in &cfg.dims {
                reports.push(verify::suite_lemma1_linearity(d, cfg.trials, suite_seed("lemma1_linearity", d))?);
            }
        }
        "weyl" => {
            for &d in &cfg.dims {
                reports.push(verify::suite_weyl(d * d, cfg.trials, suite_seed("weyl", d))?);
            }
        }
        "two_path" => {
            for &d in &cfg.dims {
                reports.push(verify::suite_two_path(d, cfg.trials, suite_seed("two_path_identity", d))?);
            }
        }
        "result1" => {
            for &d in &cfg.dims {
                reports.push(verify::check_result1(d, cfg.trials, suite_seed("result1", d))?);
            }
        }
        "coincidence" => {
            reports.push(verify::suite_d2_coincidence(cfg.trials, suite_seed("d2_coincidence", 2))?);
        }
        "locc" => {
            for &d in &cfg.dims {
                if d > 3 {
                    continue;
                }
                let (records, mut report) =
                    verify::suite_locc(d, cfg.trials, cfg.kraus_count, suite_seed("locc", d))?;
                if let serde_json::Value::Object(map) = &mut report.details {
                    map.insert("records".into(), serde_json::to_value(&records)?);
                }
                reports.push(report);
            }
        }
        "conjecture" => {
            for &d in &cfg.dims {
                reports.push(verify::check_conjecture(d, cfg.trials, suite_seed("conjecture", d))?);
            }
        }
        other => {
            return Err(CliError::Usage(format!("unknown suite '{other}'")));
        }
    }
    let text = serde_json::to_string_pretty(&reports)?;
    match args.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    if verify::all_hard_suites_pass(&reports) {
        Ok(0)
    } else {
        Ok(EXIT_HARD_SUITE)
    }
}

fn cmd_spa(args: SpaArgs) -> Result<u8, CliError> {
    let state = BipartiteState::load(&args.input)?;
    let spa = spa_pt(&state)?;
    spa.save(&args.out)?;
    Ok(0)
}
