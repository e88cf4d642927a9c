//! Command-line front end. Exit codes: 0 success, 2 usage or input error, 3 internal
//! invariant violation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::catalog::catalog_lookup;
use crate::code::{parse_generator, BinaryLinearCode};
use crate::error::Error;
use crate::error_model::{check_p0, roc_curve};
use crate::exponents::{
    bounds_csv, bounds_sweep, exponent_convergence_report, parse_grid, tradeoff_csv, tradeoff_curve,
};
use crate::montecarlo::{simulate, Hypothesis, SimulationConfig, SimulationReport};
use crate::numfmt::fmt_sig;
use crate::optimize::optimize_threshold;
use crate::spectrum::{enumerate_spectrum, CosetLeaderSpectrum, CosetLeaderTable};

pub const THREADS_ENV: &str = "COSET_DHT_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "coset-dht",
    version,
    about = "Coset leader spectra and error analysis for distributed hypothesis testing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// Enumerate the coset leader spectrum of a code
    Spectrum(SpectrumArgs),
    /// Type-I / Type-II error probabilities for every threshold
    Roc(RocArgs),
    /// Optimize a hypothetical coset leader spectrum and threshold
    Optimize(OptimizeArgs),
    /// Error exponent tradeoff over a grid of normalized thresholds
    Exponents(ExponentsArgs),
    /// Finite-length exponents against their limits
    Convergence(ConvergenceArgs),
    /// Monte Carlo estimate of one error probability
    Simulate(SimulateArgs),
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
struct CodeSource {
    /// Catalog code name, e.g. hamming_7_4
    #[arg(long)]
    code: Option<String>,
    /// Generator-matrix file (`n k` header, then k rows of 0/1)
    #[arg(long)]
    gen_file: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct OutputArgs {
    /// Write output to this file (a `.manifest.json` file is written next to it)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SpectrumFormat {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
struct SpectrumArgs {
    #[command(flatten)]
    source: CodeSource,
    #[arg(long, value_enum, default_value = "csv")]
    format: SpectrumFormat,
    /// Also dump the syndrome -> coset leader table (binary) for `simulate --table-file`
    #[arg(long)]
    table_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
#[group(id = "roc_source", required = true, multiple = false, args = ["code", "gen_file", "spectrum_file"])]
struct RocArgs {
    #[arg(long)]
    code: Option<String>,
    #[arg(long)]
    gen_file: Option<PathBuf>,
    /// Spectrum JSON `{n, k, rho, counts}`; may describe a hypothetical code
    #[arg(long)]
    spectrum_file: Option<PathBuf>,
    #[arg(long)]
    p0: f64,
    /// Add lower/upper bound columns (blank outside their validity windows)
    #[arg(long)]
    bounds: bool,
    /// With --bounds, write every probability as log2 (`_log2` columns)
    #[arg(long, requires = "bounds")]
    log2: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
struct OptimizeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    p0: f64,
    #[arg(long)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
struct ExponentsArgs {
    #[arg(long)]
    p0: f64,
    /// `start:stop:count`, endpoints included
    #[arg(long)]
    t_grid: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
struct ConvergenceArgs {
    /// Normalized threshold gamma_t / n
    #[arg(long)]
    t: f64,
    #[arg(long)]
    p0: f64,
    /// Comma-separated block lengths
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum HypothesisArg {
    H0,
    H1,
}

#[derive(Debug, Args, Serialize)]
struct SimulateArgs {
    #[command(flatten)]
    source: CodeSource,
    /// Coset leader table written by `spectrum --table-out`
    #[arg(long)]
    table_file: Option<PathBuf>,
    #[arg(long)]
    p0: f64,
    #[arg(long)]
    gamma_t: usize,
    #[arg(long, value_enum, ignore_case = true)]
    hypothesis: HypothesisArg,
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure of a CLI run, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => CliError::Internal(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn in_file(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

/// Reproducibility record written next to every output file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub tool_version: String,
    pub input_digests: BTreeMap<String, String>,
    pub timestamp: u64,
}

struct Context {
    inputs: BTreeMap<String, String>,
    notes: Vec<String>,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| in_file(path, e))?;
        self.inputs.insert(
            path.display().to_string(),
            hex::encode(Sha256::digest(&bytes)),
        );
        Ok(bytes)
    }

    fn read_text(&mut self, path: &Path) -> Result<String, CliError> {
        String::from_utf8(self.read(path)?).map_err(|e| in_file(path, e))
    }

    fn load_code(
        &mut self,
        code: &Option<String>,
        gen_file: &Option<PathBuf>,
    ) -> Result<(String, BinaryLinearCode), CliError> {
        match (code, gen_file) {
            (Some(name), _) => Ok((name.clone(), catalog_lookup(name)?)),
            (None, Some(path)) => {
                let text = self.read_text(path)?;
                let generator = parse_generator(&text).map_err(|e| in_file(path, e))?;
                let code =
                    BinaryLinearCode::from_generator(generator).map_err(|e| in_file(path, e))?;
                Ok((path.display().to_string(), code))
            }
            (None, None) => Err(CliError::Usage("a code source is required".into())),
        }
    }
}

fn check_p0_arg(p0: f64) -> Result<(), CliError> {
    check_p0(p0).map_err(CliError::from)
}

fn execute(command: &Command, ctx: &mut Context) -> Result<String, CliError> {
    match command {
        Command::Spectrum(args) => {
            let (_, code) = ctx.load_code(&args.source.code, &args.source.gen_file)?;
            let (spectrum, table) = enumerate_spectrum(&code, args.table_out.is_some())?;
            if let (Some(path), Some(table)) = (&args.table_out, table) {
                std::fs::write(path, table.to_bytes()).map_err(|e| in_file(path, e))?;
            }
            Ok(match args.format {
                SpectrumFormat::Csv => spectrum.to_csv_line() + "\n",
                SpectrumFormat::Json => spectrum.to_json() + "\n",
            })
        }
        Command::Roc(args) => {
            check_p0_arg(args.p0)?;
            let spectrum = match &args.spectrum_file {
                Some(path) => {
                    let text = ctx.read_text(path)?;
                    CosetLeaderSpectrum::from_json(&text).map_err(|e| in_file(path, e))?
                }
                None => {
                    let (_, code) = ctx.load_code(&args.code, &args.gen_file)?;
                    enumerate_spectrum(&code, false)?.0
                }
            };
            if args.bounds {
                let records = bounds_sweep(&spectrum, args.p0)?;
                Ok(bounds_csv(&records, args.log2))
            } else {
                Ok(roc_curve(&spectrum, args.p0)?.to_csv())
            }
        }
        Command::Optimize(args) => {
            let outcome = optimize_threshold(args.n, args.k, args.p0, args.epsilon)?;
            ctx.notes.push(outcome.covering_note());
            Ok(outcome.to_json() + "\n")
        }
        Command::Exponents(args) => {
            check_p0_arg(args.p0)?;
            let grid = parse_grid(&args.t_grid)?;
            Ok(tradeoff_csv(&tradeoff_curve(args.p0, &grid)?))
        }
        Command::Convergence(args) => {
            let rows = exponent_convergence_report(args.t, args.p0, &args.n_list)?;
            let mut out = String::from("n,gamma_t,alpha_exponent,beta_exponent,E0,E1,beta_gap\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.n,
                    r.gamma_t,
                    r.alpha_exponent.map(fmt_sig).unwrap_or_default(),
                    fmt_sig(r.beta_exponent),
                    fmt_sig(r.e0),
                    fmt_sig(r.e1),
                    fmt_sig(r.beta_gap)
                ));
            }
            Ok(out)
        }
        Command::Simulate(args) => {
            check_p0_arg(args.p0)?;
            let (label, code) = ctx.load_code(&args.source.code, &args.source.gen_file)?;
            let (spectrum, table) = match &args.table_file {
                Some(path) => {
                    let table = CosetLeaderTable::from_bytes(&ctx.read(path)?)
                        .map_err(|e| in_file(path, e))?;
                    if !table.matches_code(&code) {
                        return Err(in_file(
                            path,
                            "coset leader table belongs to a different code",
                        ));
                    }
                    (table.validate()?, table)
                }
                None => {
                    let (s, t) = enumerate_spectrum(&code, true)?;
                    (s, t.expect("table requested"))
                }
            };
            let config = SimulationConfig {
                p0: args.p0,
                gamma_t: args.gamma_t,
                trials: args.trials,
                seed: args.seed,
                hypothesis: match args.hypothesis {
                    HypothesisArg::H0 => Hypothesis::H0,
                    HypothesisArg::H1 => Hypothesis::H1,
                },
            };
            let estimate = simulate(&table, &config)?;
            Ok(SimulationReport::new(label, &spectrum, &config, &estimate)?.to_json() + "\n")
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Spectrum(_) => "spectrum",
        Command::Roc(_) => "roc",
        Command::Optimize(_) => "optimize",
        Command::Exponents(_) => "exponents",
        Command::Convergence(_) => "convergence",
        Command::Simulate(_) => "simulate",
    }
}

fn output_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Spectrum(a) => a.output.out.as_ref(),
        Command::Roc(a) => a.output.out.as_ref(),
        Command::Optimize(a) => a.output.out.as_ref(),
        Command::Exponents(a) => a.output.out.as_ref(),
        Command::Convergence(a) => a.output.out.as_ref(),
        Command::Simulate(a) => a.output.out.as_ref(),
    }
}

/// Thread cap from `COSET_DHT_THREADS`; `None` means use every available core.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

fn run_command(cli: &Cli) -> Result<(String, Vec<String>), CliError> {
    let mut ctx = Context {
        inputs: BTreeMap::new(),
        notes: Vec::new(),
    };
    let threads = threads_from_env()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    let output = pool.install(|| execute(&cli.command, &mut ctx))?;

    if let Some(path) = output_path(&cli.command) {
        std::fs::write(path, &output).map_err(|e| in_file(path, e))?;
        let manifest = RunManifest {
            command: command_name(&cli.command).to_string(),
            parameters: serde_json::to_value(&cli.command).unwrap_or_default(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digests: ctx.inputs,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let mut manifest_path = path.clone().into_os_string();
        manifest_path.push(".manifest.json");
        let manifest_path = PathBuf::from(manifest_path);
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        std::fs::write(&manifest_path, text).map_err(|e| in_file(&manifest_path, e))?;
        Ok((String::new(), ctx.notes))
    } else {
        Ok((output, ctx.notes))
    }
}

/// Runs the CLI on `args` (including the program name), writing to the given streams, and
/// returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match run_command(&cli) {
        Ok((output, notes)) => {
            for note in notes {
                let _ = writeln!(stderr, "note: {note}");
            }
            if stdout.write_all(output.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}
