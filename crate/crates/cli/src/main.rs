mod config;
mod reproduce;
mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypersub::exec::Exec;
use hypersub::trace_io::{self, write_atomic};
use hypersub::{run, Manifold, RunTrace, Termination};

use crate::config::{parse_complex, ExperimentConfig};

#[derive(Parser, Debug)]
#[command(
    name = "hypersub",
    version,
    about = "Subgradient method on the Poincaré disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the experiment described by a key = value config file.
    Solve {
        config: PathBuf,
        /// Output directory (overrides `output_dir` in the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: law-of-cosines, key-theorem, per-step,
    /// sublevel, gradcheck or all.
    Verify {
        suite: String,
        /// Samples per check (suite default when omitted).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for every check (check default when omitted).
        #[arg(long)]
        tol: Option<f64>,
        /// Write the reports as a JSON array to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rerun the two-Busemann example from a point on the imaginary axis.
    Reproduce {
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value = "0+0.9i")]
        x0: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Io = 1,
    Config = 2,
    Numerical = 3,
    Violation = 4,
    Reproduction = 5,
}

struct Failure(Status, String);

impl<E: std::fmt::Display> From<(Status, E)> for Failure {
    fn from((s, e): (Status, E)) -> Self {
        Failure(s, e.to_string())
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Failure + '_ {
    move |e| Failure(Status::Io, format!("{}: {e}", path.display()))
}

fn write_trace(dir: &Path, name: &str, trace: &RunTrace) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let json = trace_io::to_json(trace).map_err(|e| Failure(Status::Io, e.to_string()))?;
    let summary = serde_json::to_string_pretty(&trace.summary)
        .map_err(|e| Failure(Status::Io, e.to_string()))?;
    for (ext, body) in [
        ("trace.json", json),
        ("trace.csv", trace_io::to_csv(trace)),
        ("summary.json", summary),
    ] {
        let path = dir.join(format!("{name}.{ext}"));
        write_atomic(&path, body.as_bytes()).map_err(io_err(&path))?;
    }
    Ok(())
}

fn solve(config: &Path, out: Option<PathBuf>) -> Result<Status, Failure> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| Failure(Status::Config, format!("{}: {e}", config.display())))?;
    let cfg = ExperimentConfig::parse(&text)
        .map_err(|e| Failure(Status::Config, format!("{}: {e}", config.display())))?;
    let trace = run(&cfg.solve).map_err(|e| Failure(Status::Config, e.to_string()))?;
    let dir = out.unwrap_or(cfg.output_dir);
    write_trace(&dir, &cfg.name, &trace)?;
    let s = &trace.summary;
    println!("{}: {} after {} steps", cfg.name, s.termination, s.steps);
    if let Some(g) = s.best_gap {
        println!("  best gap        {g:e}");
    }
    if let Some(d) = s.final_dist_to_s {
        println!("  final d(x, S)   {d:e}");
    }
    println!("  sum lambda      {}", s.sum_lambda);
    println!("  sum lambda^2    {}", s.sum_lambda_sq);
    match &trace.termination {
        Termination::NumericalFailure { k, reason } => Err(Failure(
            Status::Numerical,
            format!("numerical failure at k = {k}: {reason}"),
        )),
        _ => Ok(Status::Ok),
    }
}

fn verify(suite: &str, opts: suites::Options, out: Option<PathBuf>) -> Result<Status, Failure> {
    let reports = suites::run_suite(suite, &opts).map_err(|e| match e {
        suites::SuiteError::Unknown(_) => Failure(Status::Config, e.to_string()),
        other => Failure(Status::Numerical, other.to_string()),
    })?;
    for r in &reports {
        let worst = r
            .worst_margin
            .map_or("-".to_string(), |w| format!("{w:.3e}"));
        println!(
            "{:<26} n={:<7} violations={:<4} worst_margin={worst:<11} tol={:e} hypothesis={}",
            r.check,
            r.n_samples,
            r.n_violations,
            r.tolerance,
            r.hypothesis_mode.as_str()
        );
    }
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&reports)
            .map_err(|e| Failure(Status::Io, e.to_string()))?;
        write_atomic(&path, json.as_bytes()).map_err(io_err(&path))?;
    }
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.check.as_str())
        .collect();
    if failing.is_empty() {
        Ok(Status::Ok)
    } else {
        Err(Failure(
            Status::Violation,
            format!("violations in {}", failing.join(", ")),
        ))
    }
}

fn reproduce_cmd(steps: usize, x0: &str, out: &Path) -> Result<Status, Failure> {
    let z = parse_complex(x0).ok_or_else(|| {
        Failure(
            Status::Config,
            format!("--x0: `{x0}` is not of the form a+bi"),
        )
    })?;
    let x0 = Manifold::PoincareDisk
        .point(z.re, z.im)
        .map_err(|e| Failure(Status::Config, format!("--x0: {e}")))?;
    let r = reproduce::reproduce(x0, steps).map_err(|e| Failure(Status::Config, e.to_string()))?;
    write_trace(out, "reproduce", &r.trace)?;
    let report = r.report();
    let path = out.join("reproduce.report.txt");
    write_atomic(&path, report.as_bytes()).map_err(io_err(&path))?;
    print!("{report}");
    if r.passed() {
        Ok(Status::Ok)
    } else {
        Err(Failure(
            Status::Reproduction,
            "reproduction assertions failed".into(),
        ))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HS_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure(
            Status::Config,
            format!("HS_THREADS must be a positive integer, got `{v}`"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure(Status::Config, e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Solve { config, out } => solve(&config, out),
        Command::Verify {
            suite,
            n,
            seed,
            tol,
            out,
        } => {
            let opts = suites::Options {
                n,
                seed,
                tol,
                exec: Exec::default(),
            };
            verify(&suite, opts, out)
        }
        Command::Reproduce { steps, x0, out } => reproduce_cmd(steps, &x0, &out),
    });
    match result {
        Ok(s) => ExitCode::from(s as u8),
        Err(Failure(s, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(s as u8)
        }
    }
}
