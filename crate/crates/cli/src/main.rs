mod problem;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;

use problem::load_problem_file;
use run::{run, Command, RunConfig, DEFAULT_SEED};

/// Exact local invariants of polynomial germs, computed from a problem file
/// and reported as JSON.
///
/// Exit codes: 0 success, 1 an identity check does not hold, 2 usage error or
/// unmet precondition, 3 step or time budget exhausted, 4 genericity
/// certification failed.
#[derive(Parser, Debug)]
#[command(name = "germinv", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Problem file (ring:, variety:, map:, linear:, suspension: lines)
    problem: PathBuf,

    /// Seed for every random choice (generic linear collections and targets)
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Maximum number of reduction steps over the whole run
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    step_budget: Option<u64>,

    /// Wall-clock limit in seconds
    #[arg(long, value_parser = parse_seconds)]
    time_budget: Option<Duration>,

    /// Write the report here instead of standard output
    #[arg(long)]
    json_out: Option<PathBuf>,

    /// Log progress to standard error (repeat for more detail)
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Include wall-clock time in the report (the output is then not reproducible)
    #[arg(long)]
    timings: bool,
}

fn parse_seconds(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if secs.is_nan() || secs <= 0.0 {
        return Err("the time budget must be positive".into());
    }
    Duration::try_from_secs_f64(secs).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();

    let problem = match load_problem_file(&cli.problem) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        seed: cli.seed,
        step_budget: cli.step_budget,
        time_budget: cli.time_budget,
        timings: cli.timings,
    };
    log::debug!("problem:\n{problem}");
    let report = run(cli.command, &problem, &cfg);
    let mut json = serde_json::to_string_pretty(&report).expect("reports serialize");
    json.push('\n');

    let written = match &cli.json_out {
        Some(path) => std::fs::write(path, &json),
        None => std::io::stdout().lock().write_all(json.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write the report: {e}");
        return ExitCode::from(2);
    }
    if let Some(err) = &report.error {
        eprintln!("error: {err}");
    }
    ExitCode::from(report.status.exit_code())
}
