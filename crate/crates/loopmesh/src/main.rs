use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use loopmesh::heuristics::{self, CatalogId};
use loopmesh::mesh::{control_schedule, decompose_reck, ArchKind};
use loopmesh::runner::{self, Series, SvgOptions};
use loopmesh::io;

#[derive(Parser)]
#[command(name = "loopmesh", about = "Loss analysis for time-bin multiport interferometers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArchFlag {
    Dl,
    Cl,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a unitary (CSV of re+imj entries) into a padded gate mesh
    Decompose {
        matrix_file: PathBuf,
        /// Output CSV path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the timed control sequence realizing a unitary on a loop architecture
    Schedule {
        matrix_file: PathBuf,
        #[arg(long, value_enum)]
        arch: ArchFlag,
        /// Time-bin spacing in seconds
        #[arg(long)]
        tau: f64,
        /// Inter-device delay in seconds (chain-loop)
        #[arg(long, default_value_t = 0.0)]
        d: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a seeded Haar-averaged loss sweep described by a JSON config
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Compare catalog configurations over a range of N
    Compare {
        /// Comma-separated list of mode counts
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Comma-separated catalog names
        #[arg(long, value_delimiter = ',', required = true)]
        configs: Vec<String>,
        /// Also compute the Haar-averaged transmission for loop architectures
        #[arg(long)]
        haar: bool,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a log-scale chart of the heuristic curves
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the physical component catalog as CSV
    Catalog,
    /// Check a transmission against the boson-sampling advantage threshold
    Feasibility {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> loopmesh::Result<()> {
    match output {
        Some(path) => io::write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> loopmesh::Result<()> {
    match cli.command {
        Command::Decompose { matrix_file, output } => {
            let matrix = io::parse_matrix_csv(&io::read_text(&matrix_file)?)?;
            let mesh = decompose_reck(&matrix)?;
            emit(&io::mesh_to_csv(&mesh), output.as_ref())
        }
        Command::Schedule {
            matrix_file,
            arch,
            tau,
            d,
            output,
        } => {
            let matrix = io::parse_matrix_csv(&io::read_text(&matrix_file)?)?;
            let mesh = decompose_reck(&matrix)?;
            let kind = match arch {
                ArchFlag::Dl => ArchKind::DualLoop,
                ArchFlag::Cl => ArchKind::ChainLoop,
            };
            let schedule = control_schedule(&mesh, kind, tau, d)?;
            emit(&io::schedule_to_csv(&schedule), output.as_ref())
        }
        Command::Sweep { config } => {
            let sweep = io::parse_sweep_config(&io::read_text(&config)?)?;
            let rows = runner::run_haar_sweep(&sweep)?;
            runner::emit_csv(&rows, &sweep.output_path)?;
            println!("wrote {} rows to {}", rows.len(), sweep.output_path.display());
            Ok(())
        }
        Command::Compare {
            n,
            configs,
            haar,
            trials,
            seed,
            svg,
            output,
        } => {
            let ids: Vec<CatalogId> = configs
                .iter()
                .map(|name| CatalogId::parse(name))
                .collect::<loopmesh::Result<_>>()?;
            let rows = runner::run_comparison(&n, &ids, haar, trials, seed)?;
            if let Some(path) = svg {
                let series: Vec<Series> = ids
                    .iter()
                    .map(|&id| Series {
                        label: id.as_str().to_string(),
                        points: rows
                            .iter()
                            .filter(|r| r.name == id)
                            .map(|r| (r.n as f64, r.eta_heuristic))
                            .collect(),
                    })
                    .collect();
                runner::emit_svg(&series, &path, SvgOptions { log_y: true })?;
            }
            emit(&runner::comparison_to_csv(&rows)?, output.as_ref())
        }
        Command::Catalog => {
            print!("{}", io::catalog_to_csv());
            Ok(())
        }
        Command::Feasibility { eta, n } => {
            let thresholds = heuristics::default_feasibility_thresholds();
            let verdict = heuristics::bs_feasibility(eta, n, &thresholds)?;
            println!("{}", verdict.as_str());
            Ok(())
        }
    }
}
