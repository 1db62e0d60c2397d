use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::config::{parse_list, ConfigFile};
use crate::sweep::{self, PhaseGrid, Quantity, SweepSpec};
use crate::table::Table;
use crate::validate::{self, Depth, Fault};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "fockphase", version, about = "Phase estimation with mm' Fock states under dephasing and loss")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep one state over phase and dephasing rate, writing CSV
    Sweep(SweepArgs),
    /// Sensitivity of (5,1) and (4,0) against phase for three dephasing rates
    Fig2(OutputArgs),
    /// Optimal sensitivity of (5,1) and (4,0) against dephasing rate
    Fig3(OutputArgs),
    /// N00N visibility against dephasing rate for N = 2, 4, 6, 8
    Fig4(OutputArgs),
    /// Quantum Fisher information and the Cramer-Rao bound per dephasing rate
    Qfi(StateArgs),
    /// Check the simulation against independent reference computations
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// CSV destination; stdout when omitted
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// key = value file; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub m_prime: Option<usize>,
    /// Comma-separated dephasing rates
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Length of the dephasing medium [default: 1]
    #[arg(long)]
    pub dephase_len: Option<f64>,
    /// Transmittance of the lower arm [default: 1]
    #[arg(long)]
    pub t_a: Option<f64>,
    /// Transmittance of the upper arm [default: 1]
    #[arg(long)]
    pub t_b: Option<f64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub phi_start: Option<f64>,
    /// [default: pi/2]
    #[arg(long, allow_hyphen_values = true)]
    pub phi_stop: Option<f64>,
    /// Number of phase points [default: 101]
    #[arg(long)]
    pub steps: Option<usize>,
    /// sensitivity, parity, visibility, qfi or report [default: sensitivity]
    #[arg(long)]
    pub quantity: Option<Quantity>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value = "quick")]
    pub depth: Depth,
    /// Monte Carlo seed
    #[arg(long, env = "FOCKPHASE_SEED")]
    pub seed: Option<u64>,
    #[arg(long, hide = true)]
    pub inject_fault: Option<Fault>,
}

/// Usage problems, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

/// Flag, then config file, then default.
fn pick<T: std::str::FromStr>(flag: Option<T>, cfg: &ConfigFile, key: &str, default: Option<T>) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(v) = cfg.get(key).map_err(usage)? {
        return Ok(v);
    }
    default.ok_or_else(|| usage(format!("missing required value {key}")))
}

impl SweepArgs {
    pub fn resolve(&self) -> Result<(SweepSpec, Option<PathBuf>)> {
        let cfg = load_config(self.state.config.as_deref())?;
        let phi = PhaseGrid::closed(
            pick(self.phi_start, &cfg, "phi_start", Some(0.0))?,
            pick(self.phi_stop, &cfg, "phi_stop", Some(std::f64::consts::FRAC_PI_2))?,
            pick(self.steps, &cfg, "steps", Some(101))?,
        );
        let quantity = match self.quantity {
            Some(q) => q,
            None => cfg
                .raw("quantity")
                .map(|s| s.parse().map_err(usage))
                .transpose()?
                .unwrap_or(Quantity::Sensitivity),
        };
        self.state.resolve(&cfg, phi, quantity)
    }
}

impl StateArgs {
    fn resolve(&self, cfg: &ConfigFile, phi: PhaseGrid, quantity: Quantity) -> Result<(SweepSpec, Option<PathBuf>)> {
        let gammas = match &self.gamma {
            Some(s) => parse_list(s).map_err(usage)?,
            None => cfg.get_list("gamma").map_err(usage)?.unwrap_or_else(|| vec![0.0]),
        };
        let spec = SweepSpec {
            m: pick(self.m, cfg, "m", None)?,
            m_prime: pick(self.m_prime, cfg, "m_prime", None)?,
            phi,
            gammas,
            dephase_len: pick(self.dephase_len, cfg, "dephase_len", Some(1.0))?,
            t_a: pick(self.t_a, cfg, "t_a", Some(1.0))?,
            t_b: pick(self.t_b, cfg, "t_b", Some(1.0))?,
            quantity,
        };
        spec.validate().map_err(usage)?;
        let output = self.output.clone().or_else(|| cfg.raw("output").map(PathBuf::from));
        Ok((spec, output))
    }
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    match path {
        Some(p) => ConfigFile::load(p).map_err(usage),
        None => Ok(ConfigFile::default()),
    }
}

fn emit(table: &Table, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            let mut w = BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            );
            table.write_csv(&mut w)?;
            w.flush()?;
            eprintln!("wrote {} rows to {}", table.rows.len(), path.display());
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            table.write_csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Runs a parsed command and returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_VALIDATION
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Sweep(args) => {
            let (spec, output) = args.resolve()?;
            let table = sweep::run_sweep(&spec)?;
            for line in sweep::summarize(&table) {
                eprintln!("{line}");
            }
            emit(&table, output.as_deref())?;
        }
        Command::Fig2(o) => emit(&sweep::fig2()?, o.output.as_deref())?,
        Command::Fig3(o) => emit(&sweep::fig3()?, o.output.as_deref())?,
        Command::Fig4(o) => emit(&sweep::fig4()?, o.output.as_deref())?,
        Command::Qfi(args) => {
            let cfg = load_config(args.config.as_deref())?;
            let (spec, output) = args.resolve(&cfg, PhaseGrid::closed(0.0, 1.0, 2), Quantity::Qfi)?;
            emit(&sweep::run_sweep(&spec)?, output.as_deref())?;
        }
        Command::Validate(args) => {
            let seed = args.seed.unwrap_or(DEFAULT_SEED);
            let report = validate::run(args.depth, seed, args.inject_fault);
            println!("{report}");
            if !report.passed() {
                return Ok(EXIT_VALIDATION);
            }
        }
    }
    Ok(EXIT_OK)
}
