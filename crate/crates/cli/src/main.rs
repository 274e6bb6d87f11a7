//! Command-line front end: transforms, trivial variants, ambiguity
//! enumeration, intensity verification, and continuous-time checks over
//! JSON signal files.

mod io;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

use lctphase::{
    autocorrelation_identity_check, enumerate_solutions_with, trivial_reflect, trivial_rotate,
    trivial_shift, verify_intensity_match, verify_invariance, DeviationReport, EnumerationOptions,
    FrequencyGrid, InvarianceVariant, LctError, LctParams, Preset, Signal,
};

use io::{load_sampled, load_signal, write_signal, SignalFile};

/// Exit codes: 0 ok/pass, 1 verify-fail, 2 I/O or parse, 3 degenerate
/// params, 4 pairing/convergence.
#[derive(Debug)]
pub struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<LctError> for CliError {
    fn from(e: LctError) -> Self {
        let code = match e {
            LctError::Determinant { .. }
            | LctError::DegenerateParameter { .. }
            | LctError::NonFiniteParameter { .. } => 3,
            LctError::Pairing { .. } | LctError::Convergence { .. } => 4,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "lctphase",
    version,
    about = "Linear canonical transforms and phase-retrieval ambiguity enumeration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the transform on a frequency grid and emit CSV
    Transform(TransformArgs),
    /// Enumerate the solution classes of phase retrieval from |C[x]|
    Enumerate(EnumerateArgs),
    /// Check whether two signals share the same transform magnitude
    Verify(VerifyArgs),
    /// Write trivially ambiguous variants of a signal
    Trivials(TrivialsArgs),
    /// Continuous-time invariance and autocorrelation-identity checks
    ContinuousCheck(ContinuousArgs),
}

/// Either a named preset or raw matrix entries.
#[derive(Args)]
struct ParamArgs {
    /// fourier, fresnel:<alpha>, or frft:<alpha>
    #[arg(long, value_parser = parse_preset, required_unless_present = "abcd", conflicts_with = "abcd")]
    preset: Option<Preset>,
    /// Comma-separated matrix entries a,b,c,d with a*d - b*c = 1
    #[arg(long, value_parser = parse_abcd)]
    abcd: Option<Abcd>,
}

#[derive(Clone, Copy, Debug)]
struct Abcd([f64; 4]);

impl ParamArgs {
    fn build(&self) -> Result<LctParams, CliError> {
        let params = match (&self.preset, &self.abcd) {
            (Some(preset), None) => LctParams::preset(*preset)?,
            (None, Some(Abcd([a, b, c, d]))) => LctParams::new(*a, *b, *c, *d)?,
            _ => unreachable!("clap enforces exactly one parameter source"),
        };
        params.reject_degenerate()?;
        Ok(params)
    }
}

fn parse_preset(text: &str) -> Result<Preset, String> {
    if text == "fourier" {
        return Ok(Preset::Fourier);
    }
    if let Some(alpha) = text.strip_prefix("fresnel:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| format!("invalid fresnel parameter '{alpha}'"))?;
        return Ok(Preset::Fresnel(alpha));
    }
    if let Some(alpha) = text.strip_prefix("frft:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| format!("invalid frft angle '{alpha}'"))?;
        return Ok(Preset::Frft(alpha));
    }
    Err(format!(
        "unknown preset '{text}'; expected fourier, fresnel:<alpha>, or frft:<alpha>"
    ))
}

fn parse_abcd(text: &str) -> Result<Abcd, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated values, got {}",
            parts.len()
        ));
    }
    let mut values = [0.0f64; 4];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("invalid number '{part}'"))?;
    }
    Ok(Abcd(values))
}

#[derive(Args)]
struct TransformArgs {
    /// Signal JSON file
    signal: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    /// Number of grid points (default 4N over one period)
    #[arg(long)]
    grid_points: Option<usize>,
    /// Custom grid start (requires --grid-max)
    #[arg(long, requires = "grid_max")]
    grid_min: Option<f64>,
    /// Custom grid end, exclusive (requires --grid-min)
    #[arg(long, requires = "grid_min")]
    grid_max: Option<f64>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Signal JSON file
    signal: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    /// Peak-relative intensity tolerance for accepting a solution
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Tolerance for matching conjugate-reciprocal root pairs
    #[arg(long, default_value_t = 1e-7)]
    pairing_tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// First signal JSON file (the reference)
    signal_a: PathBuf,
    /// Second signal JSON file
    signal_b: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    /// Number of comparison frequencies (default 4N of the reference)
    #[arg(long)]
    grid: Option<usize>,
    /// Peak-relative tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct TrivialsArgs {
    /// Signal JSON file
    signal: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    /// Output directory for the variant files
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Variants: rotate:<alpha>, shift:<n0>, reflect
    #[arg(required = true)]
    variants: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ContinuousMode {
    Invariance,
    Autocorr,
}

#[derive(Args)]
struct ContinuousArgs {
    /// Sampled-function JSON file
    samples: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    /// Which check to run
    #[arg(long, value_enum)]
    mode: ContinuousMode,
    /// Quadrature nodes (at least the sample count)
    #[arg(long, default_value_t = 4096)]
    nodes: usize,
    /// Rotation angle for the invariance rotate variant
    #[arg(long, default_value_t = 2.1)]
    rotate_alpha: f64,
    /// Shift for the invariance shift variant
    #[arg(long, default_value_t = 0.7)]
    shift_t0: f64,
    /// Number of check frequencies
    #[arg(long, default_value_t = 16)]
    omega_count: usize,
    /// Lowest check frequency
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    omega_min: f64,
    /// Highest check frequency (exclusive)
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    omega_max: f64,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Trivials(args) => cmd_trivials(args),
        Command::ContinuousCheck(args) => cmd_continuous_check(args),
    }
}

fn build_grid(
    params: &LctParams,
    n: usize,
    points: Option<usize>,
    min: Option<f64>,
    max: Option<f64>,
) -> Result<FrequencyGrid, CliError> {
    match (min, max) {
        (Some(lo), Some(hi)) => {
            if hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater) {
                return Err(CliError::parse(format!("grid range [{lo}, {hi}) is empty")));
            }
            let count = points.unwrap_or(4 * n);
            let step = (hi - lo) / count as f64;
            let values = (0..count).map(|k| lo + k as f64 * step).collect();
            Ok(FrequencyGrid::extended(params, values)?)
        }
        _ => Ok(FrequencyGrid::equispaced(params, points.unwrap_or(4 * n))?),
    }
}

fn cmd_transform(args: TransformArgs) -> Result<i32, CliError> {
    let params = args.params.build()?;
    let signal = load_signal(&args.signal)?;
    let grid = build_grid(
        &params,
        signal.support_len(),
        args.grid_points,
        args.grid_min,
        args.grid_max,
    )?;
    let spectrum = lctphase::forward(&signal, &params, &grid)?;

    let mut csv = String::from("omega,re,im,abs\n");
    for (&omega, z) in grid.points().iter().zip(&spectrum) {
        writeln!(csv, "{omega},{},{},{}", z.re, z.im, z.norm()).expect("string write");
    }
    match &args.output {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(0)
}

#[derive(Serialize)]
struct EnumerateReport {
    classes: Vec<SignalFile>,
    count: usize,
    verification: Vec<f64>,
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<i32, CliError> {
    let params = args.params.build()?;
    let signal = load_signal(&args.signal)?;
    let options = EnumerationOptions {
        intensity_tol: args.tol,
        pairing_tol: args.pairing_tol,
        ..EnumerationOptions::default()
    };
    let solutions = enumerate_solutions_with(&signal, &params, &options)?;
    let verification = solutions
        .iter()
        .map(|s| {
            verify_intensity_match(
                &signal,
                &s.signal,
                &params,
                4 * signal.support_len(),
                args.tol,
            )
            .map(|r| r.max_rel_err)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let report = EnumerateReport {
        classes: solutions
            .iter()
            .map(|s| SignalFile::from_signal(&s.canonical))
            .collect(),
        count: solutions.len(),
        verification,
    };
    println!("{}", to_json(&report)?);
    Ok(0)
}

#[derive(Serialize)]
struct VerifyReport {
    max_rel_err: f64,
    pass: bool,
    grid_size: usize,
    tol: f64,
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let params = args.params.build()?;
    let a = load_signal(&args.signal_a)?;
    let b = load_signal(&args.signal_b)?;
    let grid_size = args.grid.unwrap_or(4 * a.support_len());
    let report = verify_intensity_match(&a, &b, &params, grid_size, args.tol)?;
    let out = VerifyReport {
        max_rel_err: report.max_rel_err,
        pass: report.pass,
        grid_size: report.grid_size,
        tol: args.tol,
    };
    println!("{}", to_json(&out)?);
    Ok(if report.pass { 0 } else { 1 })
}

enum TrivialSpec {
    Rotate(f64),
    Shift(i64),
    Reflect,
}

fn parse_trivial(text: &str) -> Result<TrivialSpec, CliError> {
    if text == "reflect" {
        return Ok(TrivialSpec::Reflect);
    }
    if let Some(alpha) = text.strip_prefix("rotate:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| CliError::parse(format!("invalid rotation angle '{alpha}'")))?;
        return Ok(TrivialSpec::Rotate(alpha));
    }
    if let Some(n0) = text.strip_prefix("shift:") {
        let n0: i64 = n0
            .parse()
            .map_err(|_| CliError::parse(format!("invalid shift '{n0}'")))?;
        return Ok(TrivialSpec::Shift(n0));
    }
    Err(CliError::parse(format!(
        "unknown variant '{text}'; expected rotate:<alpha>, shift:<n0>, or reflect"
    )))
}

fn cmd_trivials(args: TrivialsArgs) -> Result<i32, CliError> {
    let params = args.params.build()?;
    let signal = load_signal(&args.signal)?;
    let stem = args
        .signal
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "signal".into());
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::parse(format!("{}: {e}", args.out_dir.display())))?;
    for (index, spec) in args.variants.iter().enumerate() {
        let (kind, variant): (&str, Signal) = match parse_trivial(spec)? {
            TrivialSpec::Rotate(alpha) => ("rotate", trivial_rotate(&signal, alpha)),
            TrivialSpec::Shift(n0) => ("shift", trivial_shift(&signal, n0, &params)?),
            TrivialSpec::Reflect => ("reflect", trivial_reflect(&signal, &params)?),
        };
        let path = args.out_dir.join(format!("{stem}.{index}.{kind}.json"));
        write_signal(&path, &variant)?;
        println!("{}", path.display());
    }
    Ok(0)
}

#[derive(Serialize)]
struct VariantReport {
    variant: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    parameter: Option<f64>,
    deviations: Vec<[f64; 2]>,
    max_rel_deviation: f64,
}

#[derive(Serialize)]
struct ContinuousReport {
    mode: &'static str,
    nodes: usize,
    omegas: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variants: Option<Vec<VariantReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviations: Option<Vec<[f64; 2]>>,
    max_rel_deviation: f64,
}

fn deviation_pairs(report: &DeviationReport) -> Vec<[f64; 2]> {
    report.deviations.iter().map(|&(w, d)| [w, d]).collect()
}

fn cmd_continuous_check(args: ContinuousArgs) -> Result<i32, CliError> {
    let params = args.params.build()?;
    let function = load_sampled(&args.samples)?;
    let range_ok = args.omega_max.partial_cmp(&args.omega_min) == Some(std::cmp::Ordering::Greater);
    if args.omega_count == 0 || !range_ok {
        return Err(CliError::parse("empty frequency range"));
    }
    let step = (args.omega_max - args.omega_min) / args.omega_count as f64;
    let omegas: Vec<f64> = (0..args.omega_count)
        .map(|k| args.omega_min + k as f64 * step)
        .collect();

    let report = match args.mode {
        ContinuousMode::Invariance => {
            let grid = FrequencyGrid::extended(&params, omegas.clone())?;
            let runs = [
                (
                    "rotate",
                    Some(args.rotate_alpha),
                    InvarianceVariant::Rotate(args.rotate_alpha),
                ),
                (
                    "shift",
                    Some(args.shift_t0),
                    InvarianceVariant::Shift(args.shift_t0),
                ),
                ("reflect", None, InvarianceVariant::Reflect),
            ];
            let mut variants = Vec::new();
            let mut worst = 0.0f64;
            for (name, parameter, variant) in runs {
                let r = verify_invariance(&function, &params, variant, &grid, args.nodes)?;
                worst = worst.max(r.max_rel_deviation);
                variants.push(VariantReport {
                    variant: name,
                    parameter,
                    deviations: deviation_pairs(&r),
                    max_rel_deviation: r.max_rel_deviation,
                });
            }
            ContinuousReport {
                mode: "invariance",
                nodes: args.nodes,
                omegas,
                variants: Some(variants),
                deviations: None,
                max_rel_deviation: worst,
            }
        }
        ContinuousMode::Autocorr => {
            let r = autocorrelation_identity_check(&function, &params, &omegas, args.nodes)?;
            ContinuousReport {
                mode: "autocorr",
                nodes: args.nodes,
                omegas,
                variants: None,
                deviations: Some(deviation_pairs(&r)),
                max_rel_deviation: r.max_rel_deviation,
            }
        }
    };
    println!("{}", to_json(&report)?);
    Ok(0)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::parse(e.to_string()))
}
