//! `qtwirl`: build two-parameter 2⊗n states, twirl arbitrary states onto
//! the family, and emit entanglement reports and figure-grid CSVs.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 on I/O
//! failures. Stochastic commands take explicit seeds so runs reproduce
//! byte-for-byte.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qtwirl_core::{
    check_uu_invariance, class_residual, classify_region, convex_roof_search, eof_lower_bound,
    eof_upper_bound, extract_parameters, monte_carlo_twirl, negativity_closed_form, report,
    twirl_pipeline, BipartiteDims, ComplexMatrix, ConvexRoofConfig, DensityMatrix, RegionLabel,
    TwoParamState,
};

#[derive(Parser)]
#[command(name = "qtwirl", version, about = "Two-parameter 2\u{2297}n states: twirling and entanglement measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a closed-form quantity over the admissible (alpha, gamma) grid into a CSV file
    Sweep(SweepArgs),
    /// Entanglement report for one family member
    Measure(MeasureArgs),
    /// Twirl an arbitrary 2xN state onto the family (exact protocol or Monte Carlo)
    Twirl(TwirlArgs),
    /// Convex-roof estimate of the entanglement of formation
    Roof(RoofArgs),
    /// Max deviation of a state under sampled bilateral unitaries
    Invariance(InvarianceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Negativity,
    EofLower,
    EofUpper,
    Region,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegionFilter {
    Ppt,
    Npt,
    Boundary,
}

impl RegionFilter {
    fn label(self) -> RegionLabel {
        match self {
            RegionFilter::Ppt => RegionLabel::PptSeparable,
            RegionFilter::Npt => RegionLabel::NptEntangled,
            RegionFilter::Boundary => RegionLabel::Boundary,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Subsystem B dimension (n >= 3)
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    quantity: Quantity,
    /// Grid points along alpha (>= 2)
    #[arg(long, default_value_t = 41)]
    alpha_steps: usize,
    /// Grid points along gamma (>= 2)
    #[arg(long, default_value_t = 41)]
    gamma_steps: usize,
    /// Keep only rows in one region
    #[arg(long, value_enum)]
    region_filter: Option<RegionFilter>,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    gamma: f64,
    /// Run spectral and convex-roof cross-checks
    #[arg(long)]
    oracles: bool,
    /// Write JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TwirlArgs {
    /// Input matrix JSON ({"dim": d, "entries": [[re, im], ...]})
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    n: usize,
    /// Estimate the Haar twirl from this many samples instead of running
    /// the exact protocol
    #[arg(long, requires = "seed")]
    mc_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RoofArgs {
    #[arg(long)]
    input: PathBuf,
    /// Decomposition size (>= rank of the state)
    #[arg(long)]
    k: usize,
    #[arg(long)]
    restarts: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 80)]
    max_iterations: usize,
    #[arg(long, default_value_t = 1e-6)]
    step_tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvarianceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Io(String),
}

impl From<qtwirl_core::Error> for CliError {
    fn from(err: qtwirl_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Measure(args) => cmd_measure(args),
        Command::Twirl(args) => cmd_twirl(args),
        Command::Roof(args) => cmd_roof(args),
        Command::Invariance(args) => cmd_invariance(args),
    }
}

/// 17 significant digits, enough to reproduce every f64 exactly.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.n < 3 {
        return Err(CliError::Usage(format!("--n must be >= 3, got {}", args.n)));
    }
    if args.alpha_steps < 2 || args.gamma_steps < 2 {
        return Err(CliError::Usage("grid needs at least 2 steps per axis".into()));
    }
    let n = args.n;
    let alpha_max = 1.0 / (2.0 * (n as f64 - 2.0));
    let mut csv = String::from("alpha,gamma,value\n");
    for i in 0..args.alpha_steps {
        let alpha = alpha_max * i as f64 / (args.alpha_steps - 1) as f64;
        for j in 0..args.gamma_steps {
            let gamma = j as f64 / (args.gamma_steps - 1) as f64;
            // Inadmissible grid points (derived beta < 0) are omitted.
            if TwoParamState::new(n, alpha, gamma).is_err() {
                continue;
            }
            let region = classify_region(n, alpha, gamma)?;
            if let Some(filter) = args.region_filter {
                if region != filter.label() {
                    continue;
                }
            }
            let value = match args.quantity {
                Quantity::Negativity => fmt_float(negativity_closed_form(n, alpha, gamma)?),
                Quantity::EofLower => fmt_float(eof_lower_bound(n, alpha, gamma)?),
                Quantity::EofUpper => match region {
                    RegionLabel::NptEntangled => fmt_float(eof_upper_bound(n, alpha, gamma)?),
                    // Separable: formation entanglement is 0 by convention.
                    _ => fmt_float(0.0),
                },
                Quantity::Region => region.as_str().to_string(),
            };
            let _ = writeln!(csv, "{},{},{}", fmt_float(alpha), fmt_float(gamma), value);
        }
    }
    std::fs::write(&args.out, csv)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out.display())))
}

fn write_json<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_measure(args: MeasureArgs) -> Result<(), CliError> {
    let report = report(args.n, args.alpha, args.gamma, args.oracles)?;
    write_json(&report, args.out.as_ref())
}

fn read_state(path: &PathBuf, n: usize) -> Result<DensityMatrix, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be >= 2, got {n}")));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let matrix: ComplexMatrix = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed matrix JSON: {e}")))?;
    let dims = BipartiteDims::new(2, n)?;
    Ok(DensityMatrix::new(matrix, dims)?)
}

#[derive(Serialize)]
struct TwirlOutput {
    alpha: f64,
    gamma: f64,
    class_residual: f64,
    matrix: ComplexMatrix,
}

fn cmd_twirl(args: TwirlArgs) -> Result<(), CliError> {
    let rho = read_state(&args.input, args.n)?;
    let twirled = match args.mc_samples {
        Some(samples) => {
            if samples == 0 {
                return Err(CliError::Usage("--mc-samples must be positive".into()));
            }
            let seed = args.seed.expect("clap enforces --seed with --mc-samples");
            monte_carlo_twirl(&rho, samples, seed)?
        }
        None => twirl_pipeline(&rho)?,
    };
    let (alpha, gamma) = extract_parameters(&twirled)?;
    let output = TwirlOutput {
        alpha,
        gamma,
        class_residual: class_residual(&twirled)?,
        matrix: twirled.into_matrix(),
    };
    write_json(&output, args.out.as_ref())
}

#[derive(Serialize)]
struct RoofOutput {
    estimate: f64,
    iterations: usize,
}

fn cmd_roof(args: RoofArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.input.display())))?;
    let matrix: ComplexMatrix = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed matrix JSON: {e}")))?;
    if !matrix.dim().is_multiple_of(2) {
        return Err(CliError::Usage(format!(
            "matrix dim {} is not of the form 2n",
            matrix.dim()
        )));
    }
    let dims = BipartiteDims::new(2, matrix.dim() / 2)?;
    let rho = DensityMatrix::new(matrix, dims)?;
    let cfg = ConvexRoofConfig {
        k: args.k,
        restarts: args.restarts,
        max_iterations: args.max_iterations,
        step_tolerance: args.step_tolerance,
        rng_seed: args.seed,
    };
    let search = convex_roof_search(&rho, &cfg)?;
    let output = RoofOutput {
        estimate: search.estimate,
        iterations: search.iterations,
    };
    write_json(&output, args.out.as_ref())
}

#[derive(Serialize)]
struct InvarianceOutput {
    max_deviation: f64,
    samples: usize,
}

fn cmd_invariance(args: InvarianceArgs) -> Result<(), CliError> {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let rho = read_state(&args.input, args.n)?;
    let max_deviation = check_uu_invariance(&rho, args.samples, args.seed)?;
    let output = InvarianceOutput {
        max_deviation,
        samples: args.samples,
    };
    write_json(&output, args.out.as_ref())
}
