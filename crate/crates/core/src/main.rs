use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use dirac_vortex::io::{cmd_fig1, cmd_fig2, cmd_fig3, cmd_sample, read_points, AxisRange, FigureDataset, GridSpec, Slice};
use dirac_vortex::validation::{run_full_validation, ValidationConfig};
use dirac_vortex::{BeamParams, PhysicalConstants, ScalarKind, SpinChoice};

#[derive(Parser)]
#[command(name = "dirac-vortex", version, about = "Exact Dirac vortex wave packets: figure data, sampling and validation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Units {
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

impl Units {
    fn constants(&self) -> anyhow::Result<PhysicalConstants> {
        Ok(PhysicalConstants::new(self.hbar, self.mass, self.c)?)
    }
}

#[derive(Args)]
struct Output {
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized radial modulus of the exponential packet for several b.
    Fig1 {
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        l: i32,
        #[arg(long, value_delimiter = ',', default_values_t = [20.0, 100.0, 500.0])]
        b: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        pz: f64,
        #[arg(long, default_value = "0:300:601")]
        grid_rho: AxisRange,
        #[command(flatten)]
        units: Units,
        #[command(flatten)]
        output: Output,
    },
    /// Normalized spectral functions for several b.
    Fig2 {
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        l: i32,
        #[arg(long, value_delimiter = ',', default_values_t = [20.0, 100.0, 500.0])]
        b: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        pz: f64,
        /// Energy spacing in units of mc².
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        #[command(flatten)]
        units: Units,
        #[command(flatten)]
        output: Output,
    },
    /// Vorticity of the Dirac velocity of the exponential packet.
    Fig3 {
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        l: i32,
        #[arg(long, default_value_t = 40.0)]
        b: f64,
        #[arg(long, default_value_t = 0.75, allow_hyphen_values = true)]
        pz: f64,
        #[arg(long, default_value = "0.5:100:200")]
        grid_rho: AxisRange,
        #[arg(long, default_value = "-50:50:101", allow_hyphen_values = true)]
        grid_z: AxisRange,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value = "meridional")]
        slice: Slice,
        #[command(flatten)]
        units: Units,
        #[command(flatten)]
        output: Output,
    },
    /// Run the validation suite and write its report.
    Validate {
        /// TOML configuration; built-in defaults when absent.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the configured seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Include per-check runtimes in the report.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a beam at the points listed in a file.
    Sample {
        #[arg(long)]
        kind: ScalarKind,
        #[arg(long, default_value = "up")]
        spin: SpinChoice,
        /// File with columns rho, phi, z, t.
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        l: i32,
        #[arg(long, default_value_t = 40.0)]
        b: f64,
        #[arg(long, default_value_t = 0.75, allow_hyphen_values = true)]
        pz: f64,
        #[arg(long)]
        energy: Option<f64>,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 10.0)]
        w: f64,
        #[command(flatten)]
        units: Units,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(text: &str, output: &Output) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_dataset(data: &FigureDataset, output: &Output) -> anyhow::Result<()> {
    emit(&data.to_text()?, output)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Fig1 { l, b, pz, grid_rho, units, output } => {
            emit_dataset(&cmd_fig1(l, &b, pz, &units.constants()?, &grid_rho)?, &output)?;
        }
        Command::Fig2 { l, b, pz, step, units, output } => {
            emit_dataset(&cmd_fig2(l, &b, pz, &units.constants()?, step)?, &output)?;
        }
        Command::Fig3 { l, b, pz, grid_rho, grid_z, t, slice, units, output } => {
            let grid = GridSpec::new(grid_rho, grid_z, t)?;
            emit_dataset(&cmd_fig3(l, b, pz, &units.constants()?, &grid, slice)?, &output)?;
        }
        Command::Validate { config, seed, timing, output } => {
            let mut config = match config {
                Some(path) => ValidationConfig::from_path(&path).with_context(|| format!("reading {}", path.display()))?,
                None => ValidationConfig::default(),
            };
            if let Some(seed) = seed {
                config.seed = seed;
            }
            let report = run_full_validation(&config)?;
            emit(&report.to_toml(timing)?, &output)?;
            return Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Sample { kind, spin, points, l, b, pz, energy, n, w, units, output } => {
            let pts = read_points(&points).with_context(|| format!("reading {}", points.display()))?;
            let params = BeamParams { l, b, p_z: pz, energy, n, w };
            emit_dataset(&cmd_sample(kind, spin, &params, &units.constants()?, &pts)?, &output)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
