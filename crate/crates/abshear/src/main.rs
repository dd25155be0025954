//! Command-line front end: emit figures, sweep the decomposition grid,
//! run the phase pipeline, or verify the whole stack.
//!
//! Output is CSV files plus flat `key = value` lines on stdout, so plotting
//! scripts in any language can consume results without a parser dependency.
//!
//! Exit codes: 0 success, 1 verification failure, 2 config error, 3 I/O
//! error, 4 geometry error, 5 precondition violation.

use abshear::config::RunConfig;
use abshear::decomposition::{decompose_grid, grid_summary};
use abshear::figures::{figure_csv, grid_csv, sci9, Figure};
use abshear::phase::ab_phase_numeric;
use abshear::verify;
use abshear::Result;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "abshear", version, about = "Shear-tensor picture of the Aharonov-Bohm effect: figures, decomposition grids, phase pipeline, and self-verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one of the standard figures as CSV.
    Figure {
        /// Figure to emit.
        #[arg(value_enum)]
        name: FigureName,
        /// Config file; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output path; defaults to the figure's own filename.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Curve points, angular rows, or streamline seeds.
        #[arg(long)]
        samples: Option<usize>,
        /// Outer radius in units of the solenoid radius.
        #[arg(long)]
        rmax: Option<f64>,
    },
    /// Decompose the vector-potential gradient on a Cartesian grid.
    DecomposeGrid {
        /// Config file; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path.
        #[arg(short, long, default_value = "grid.csv")]
        output: PathBuf,
        /// Grid points per axis.
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Finite-difference half-step in metres; defaults to 1e-4·R.
        #[arg(long)]
        step: Option<f64>,
        /// Half-width of the grid in units of the solenoid radius.
        #[arg(long, default_value_t = 5.0)]
        rmax: f64,
    },
    /// Run the interference-phase pipeline and print its statistics.
    Phase {
        /// Config file; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Interior surface angles to sample.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Run every acceptance check and print the report table.
    Verify {
        /// Config file; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FigureName {
    /// Normalised tangential force along the upstream axis vs radius.
    #[value(name = "fig3a")]
    Fig3a,
    /// Normalised radial force above the solenoid vs radius.
    #[value(name = "fig3b")]
    Fig3b,
    /// Zero-lateral-force angle vs radius.
    #[value(name = "figB1")]
    FigB1,
    /// Upper/lower surface velocities vs angle.
    #[value(name = "figC1")]
    FigC1,
    /// Streamline bundle past the solenoid.
    #[value(name = "streamlines")]
    Streamlines,
}

impl From<FigureName> for Figure {
    fn from(name: FigureName) -> Figure {
        match name {
            FigureName::Fig3a => Figure::Fig3a,
            FigureName::Fig3b => Figure::Fig3b,
            FigureName::FigB1 => Figure::FigB1,
            FigureName::FigC1 => Figure::FigC1,
            FigureName::Streamlines => Figure::Streamlines,
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn write_csv(path: &Path, csv: &str) -> Result<()> {
    std::fs::write(path, csv)?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Figure { name, config, output, samples, rmax } => {
            let cfg = load_config(&config)?;
            let figure = Figure::from(name);
            let csv = figure_csv(figure, &cfg, samples, rmax)?;
            let path = output.unwrap_or_else(|| PathBuf::from(figure.default_filename()));
            write_csv(&path, &csv)?;
            println!("output = {}", path.display());
            println!("rows = {}", csv.lines().count() - 1);
            Ok(0)
        }
        Command::DecomposeGrid { config, output, samples, step, rmax } => {
            let cfg = load_config(&config)?;
            let radius = cfg.solenoid.radius;
            let h = step.unwrap_or(1e-4 * radius);
            let span = (-rmax * radius, rmax * radius);
            let rows = decompose_grid(&cfg.solenoid, span, span, samples, h)?;
            let summary = grid_summary(&rows);
            write_csv(&output, &grid_csv(&rows))?;
            println!("output = {}", output.display());
            println!("rows = {}", rows.len());
            println!("max_abs_div = {}", sci9(summary.max_abs_div));
            println!("max_abs_curl_z = {}", sci9(summary.max_abs_curl_z));
            println!("max_rel_shear_err = {}", sci9(summary.max_rel_shear_err));
            Ok(0)
        }
        Command::Phase { config, samples } => {
            let cfg = load_config(&config)?;
            let res = ab_phase_numeric(&cfg.beam, &cfg.solenoid, samples)?;
            println!("delta_phi_numeric_rad = {}", sci9(res.delta_phi_numeric));
            println!("delta_phi_analytic_rad = {}", sci9(res.delta_phi_analytic));
            println!("asymmetry = {}", sci9(res.asymmetry));
            println!("speed_diff_mean_mps = {}", sci9(res.speed_diff_mean()));
            println!("speed_diff_std_mps = {}", sci9(res.speed_diff_std()));
            println!("speed_diff_rel_std = {}", sci9(res.speed_diff_rel_std()));
            println!("upper_speed_higher = {}", res.upper_speed_higher);
            println!("samples = {}", res.speed_diff_trace.len());
            Ok(0)
        }
        Command::Verify { config } => {
            let cfg = load_config(&config)?;
            let report = verify::run_all(&cfg.beam, &cfg.solenoid)?;
            print!("{}", report.render());
            Ok(if report.overall() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
