//! Command-line interface: basis generation, SIC POVM construction and
//! verification, spectral-bound reports, the dimension scan, tomography
//! simulation, and basis optimization. Every command is byte-deterministic
//! for fixed flags and seeds.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sicpovm::basis::{reorthonormalize, validate_basis};
use sicpovm::bounds::{dimension_scan, weyl_bounds};
use sicpovm::optimizer::{hill_climb, SearchReport};
use sicpovm::sic::VerificationReport;
use sicpovm::tomography::{born_probabilities, estimate_state, simulate_shots, DensityMatrix};
use sicpovm::{
    construct_sic, dual_frame, gell_mann_basis, make_family, max_purity_sic, pauli_basis,
    rotate_basis, verify, Error, HermitianOp, OrthogonalParam, SicPovm, TracelessBasis,
};

#[derive(Parser)]
#[command(name = "sicpovm", version, about = "General SIC POVM construction and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an orthonormal basis of the traceless Hermitian operators
    Basis(BasisArgs),
    /// Construct and verify a SIC POVM from a basis file
    Sic(SicArgs),
    /// Scan the admissible parameter magnitude over a dimension range
    Scan(ScanArgs),
    /// Analytic Weyl-inequality bounds report for one dimension
    Bounds(BoundsArgs),
    /// Simulate finite-shot tomography and reconstruct the state
    Tomo(TomoArgs),
    /// Hill-climb the basis rotation group for maximal purity
    Optimize(OptimizeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisKind {
    Gellmann,
    Pauli,
    Rotated,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    kind: BasisKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SicArgs {
    #[arg(long)]
    basis: PathBuf,
    /// "max" (positivity-convention t_m), "min" (t0), or a real number
    #[arg(long)]
    t: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    dmin: usize,
    #[arg(long)]
    dmax: usize,
    #[arg(long)]
    csv: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TomoArgs {
    #[arg(long)]
    sic: PathBuf,
    #[arg(long)]
    state: PathBuf,
    #[arg(long)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 1000)]
    iters: u64,
    /// Comma-separated list of seeds for independent restarts
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, default_value_t = 0.2)]
    step: f64,
    #[arg(long)]
    out: PathBuf,
}

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

enum CmdError {
    Usage(String),
    Verification(String),
    Numerical(String),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::ZeroT
            | Error::BadDimension(_)
            | Error::DimensionMismatch(..)
            | Error::InvalidArgument(_) => CmdError::Usage(message),
            Error::NotPsd { .. }
            | Error::PurityOutOfRange(_)
            | Error::DegeneratePovm
            | Error::InvalidBasis(_)
            | Error::BadGramStructure(_) => CmdError::Verification(message),
            Error::NotHermitian(_)
            | Error::NoConvergence(_)
            | Error::SingularBlock(_)
            | Error::NoSignChange => CmdError::Numerical(message),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Usage(format!("io error: {e}"))
    }
}

impl From<serde_json::Error> for CmdError {
    fn from(e: serde_json::Error) -> Self {
        CmdError::Usage(format!("json error: {e}"))
    }
}

fn write_json<T: Serialize>(path: &PathBuf, value: &T) -> Result<(), CmdError> {
    let mut body = serde_json::to_string_pretty(value)?;
    body.push('\n');
    std::fs::write(path, body)?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CmdError> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn cmd_basis(args: &BasisArgs) -> Result<(), CmdError> {
    let basis = match args.kind {
        BasisKind::Pauli => {
            if args.d != 2 {
                return Err(CmdError::Usage(format!(
                    "the pauli basis requires --d 2, got {}",
                    args.d
                )));
            }
            pauli_basis()
        }
        BasisKind::Gellmann => gell_mann_basis(args.d)?,
        BasisKind::Rotated => {
            let n = args.d * args.d - 1;
            let rotated = rotate_basis(
                &gell_mann_basis(args.d)?,
                &OrthogonalParam::random(n, args.steps, args.seed),
            )?;
            reorthonormalize(&rotated)?
        }
    };
    write_json(&args.out, &basis)?;
    println!("basis d={} elements={} label={}", basis.dim(), basis.len(), basis.label());
    Ok(())
}

#[derive(Serialize)]
struct SicOutput {
    povm: SicPovm,
    verification: VerificationReport,
}

fn cmd_sic(args: &SicArgs) -> Result<(), CmdError> {
    let basis: TracelessBasis = read_json(&args.basis)?;
    let sic = match args.t.as_str() {
        "max" => max_purity_sic(&basis)?.1,
        "min" => {
            let family = make_family(&basis)?;
            construct_sic(&family, family.t0())?
        }
        raw => {
            let t: f64 = raw
                .parse()
                .map_err(|_| CmdError::Usage(format!("--t must be max, min, or a real: {raw}")))?;
            let family = make_family(&basis)?;
            construct_sic(&family, t)?
        }
    };
    let report = verify(&sic)?;
    let pass = report.pass;
    println!(
        "sic d={} t={:.16e} a={:.16e} b={:.16e} weak={} pass={}",
        sic.dim, sic.t, sic.a, sic.b, report.weak, pass
    );
    write_json(&args.out, &SicOutput { povm: sic, verification: report })?;
    if !pass {
        return Err(CmdError::Verification("verification failed".into()));
    }
    Ok(())
}

fn cmd_scan(args: &ScanArgs) -> Result<(), CmdError> {
    if args.dmin < 2 || args.dmax < args.dmin {
        return Err(CmdError::Usage(format!(
            "need 2 <= dmin <= dmax, got {}..{}",
            args.dmin, args.dmax
        )));
    }
    let table = dimension_scan(args.dmin, args.dmax)?;
    std::fs::write(&args.csv, table.to_csv())?;
    println!("scan rows={}", table.rows.len());
    Ok(())
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), CmdError> {
    let report = weyl_bounds(args.d)?;
    println!(
        "bounds d={} t0_bound={:.16e} t1_bound={:.16e} t_m_numeric={:.16e}",
        report.dim, report.t0_bound, report.t1_bound, report.t_m_numeric
    );
    write_json(&args.out, &report)?;
    Ok(())
}

#[derive(Serialize)]
struct TomoOutput {
    shots: u64,
    counts: Vec<u64>,
    probabilities: Vec<f64>,
    estimate: HermitianOp,
    frobenius_error: f64,
}

fn cmd_tomo(args: &TomoArgs) -> Result<(), CmdError> {
    if args.shots == 0 {
        return Err(CmdError::Usage("--shots must be at least 1".into()));
    }
    let sic_file: serde_json::Value = read_json(&args.sic)?;
    // accept either a bare SicPovm or the `sic` command's output wrapper
    let sic: SicPovm = if sic_file.get("povm").is_some() {
        serde_json::from_value(sic_file["povm"].clone())?
    } else {
        serde_json::from_value(sic_file)?
    };
    let rho: DensityMatrix = read_json(&args.state)?;
    let probabilities = born_probabilities(&sic, &rho)?;
    let counts = simulate_shots(&sic, &rho, args.shots, args.seed)?;
    let dual = dual_frame(&sic)?;
    let estimate = estimate_state(&dual, &counts)?;
    let frobenius_error = estimate.frobenius_distance(rho.op())?;
    println!(
        "tomo d={} shots={} frobenius_error={:.16e}",
        sic.dim, args.shots, frobenius_error
    );
    write_json(
        &args.out,
        &TomoOutput {
            shots: counts.shots,
            counts: counts.counts.clone(),
            probabilities: probabilities.probs,
            estimate,
            frobenius_error,
        },
    )?;
    Ok(())
}

fn cmd_optimize(args: &OptimizeArgs) -> Result<(), CmdError> {
    if args.seeds.is_empty() {
        return Err(CmdError::Usage("--seeds must not be empty".into()));
    }
    let start = gell_mann_basis(args.d)?;
    let mut best: Option<SearchReport> = None;
    for &seed in &args.seeds {
        let state = hill_climb(&start, args.iters, seed, args.step)?;
        debug_assert!(validate_basis(state.current.elements())?.passes(1e-10, 1e-9));
        let report = SearchReport::from_state(&state);
        let better = match &best {
            None => true,
            Some(b) => {
                report.best_objective > b.best_objective
                    || (report.best_objective == b.best_objective && report.seed < b.seed)
            }
        };
        if better {
            best = Some(report);
        }
    }
    let best = best.expect("at least one seed");
    println!(
        "optimize d={} best_objective={:.16e} ceiling={:.16e} seed={}",
        best.dim, best.best_objective, best.ceiling, best.seed
    );
    write_json(&args.out, &best)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Basis(args) => cmd_basis(args),
        Command::Sic(args) => cmd_sic(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Tomo(args) => cmd_tomo(args),
        Command::Optimize(args) => cmd_optimize(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CmdError::Verification(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_VERIFICATION)
        }
        Err(CmdError::Numerical(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
