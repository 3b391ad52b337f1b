mod input;
mod report;
mod schema;
mod svg;
mod verbs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use convexa_core::sampling::DEFAULT_SEED;

use input::InputError;

/// Exact convexity spaces, straightening, factorizations and local-to-global checks.
///
/// Reports go to stdout (or --json FILE). Exit codes: 0 pass, 1 property or
/// hypothesis failure (with report), 2 input or schema error (JSON on stderr).
#[derive(Parser, Debug)]
#[command(name = "convexa", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Verb {
    /// Sample the space and check the chart axioms.
    CheckAxioms,
    /// Segment between the two breakpoints of --path.
    Segment,
    /// Straighten --path to a fixpoint of merges and slides.
    Straighten,
    /// Openness, filtered quotient and monotone-light factorization of --map.
    Factorize,
    /// Etale certificate and lifted atlas of --map.
    Etale,
    /// Local convexity and weak convexity of the image of --map.
    Lgp,
    /// Closed, connected and locally convex implies convex, for --region.
    Klee,
    /// Momentum map of the simplex lattice, end to end.
    MomentumDemo,
}

#[derive(Args, Debug, Default)]
pub struct Opts {
    /// Space file (schemas/space.schema.json).
    #[arg(long, global = true)]
    pub space: Option<PathBuf>,
    /// Map file (schemas/map.schema.json) or preset:NAME.
    #[arg(long, global = true)]
    pub map: Option<String>,
    /// Path file (schemas/path.schema.json).
    #[arg(long, global = true)]
    pub path: Option<PathBuf>,
    /// Region file (schemas/region.schema.json).
    #[arg(long, global = true)]
    pub region: Option<PathBuf>,
    /// Chart radius, a rational such as 1/4.
    #[arg(long, global = true)]
    pub atlas_granularity: Option<String>,
    /// Filter depth.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Straightening fixpoint tolerance, a rational.
    #[arg(long, global = true)]
    pub tol: Option<String>,
    /// Straightening round limit.
    #[arg(long, global = true)]
    pub max_rounds: Option<usize>,
    /// Number of class pairs joined by geodesics.
    #[arg(long, global = true)]
    pub pair_budget: Option<usize>,
    /// Write a figure here.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Simplex dimension for momentum-demo; sample count for check-axioms.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Lattice resolution for momentum-demo; size of a preset map.
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
}

fn seed() -> Result<u64, InputError> {
    match std::env::var("CONVEXA_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| InputError::new("usage", format!("CONVEXA_SEED must be an integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn write(path: &PathBuf, body: &str) -> Result<(), InputError> {
    std::fs::write(path, body).map_err(|e| InputError::new("io", format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<i32, InputError> {
    let o = &cli.opts;
    let out = match cli.verb {
        Verb::CheckAxioms => verbs::check_axioms_verb(o, seed()?),
        Verb::Segment => verbs::segment_verb(o),
        Verb::Straighten => verbs::straighten_verb(o),
        Verb::Factorize => verbs::factorize_verb(o),
        Verb::Etale => verbs::etale_verb(o),
        Verb::Lgp => verbs::lgp_verb(o),
        Verb::Klee => verbs::klee_verb(o),
        Verb::MomentumDemo => verbs::momentum_verb(o),
    }?;
    if let Some(p) = &o.svg {
        match &out.figure {
            Some(f) => write(p, &f.render())?,
            None => return Err(InputError::new("usage", "this verb draws no figure; drop --svg")),
        }
    }
    let body = out.report.render();
    if let Err(errs) = schema::check(schema::Kind::Report, &out.report.to_value()) {
        panic!("report violates its schema: {errs:?}");
    }
    match &o.json {
        Some(p) => write(p, &body)?,
        None => print!("{body}"),
    }
    Ok(out.report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = InputError::new("usage", e.render().to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
