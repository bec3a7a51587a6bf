mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use cellforge::error::CellError;

#[derive(Parser, Debug)]
#[command(name = "cellforge", version, about = "Build cell towers in a finite context category and check what they satisfy")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Finset,
    Sset,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value = "finset", global = true)]
    pub backend: Backend,
    /// Tower height.
    #[arg(long = "n", default_value_t = 3, global = true)]
    pub n: usize,
    /// Truncation dimension of the simplicial backend.
    #[arg(long, default_value_t = 5, global = true)]
    pub dim: usize,
    /// Candidate assignments a single search may try.
    #[arg(long, default_value_t = 5_000_000, global = true)]
    pub budget: u64,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the tower and print it.
    Cells,
    /// Check the simplicial identities and the cone identities.
    Verify {
        /// Largest cell index used in the cone checks.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check each axiom against the backend's witnesses.
    Audit,
    /// Homology of an object through its nerve.
    Homology {
        #[arg(long)]
        object: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Realize a simplicial complex file (vertices/faces) or a cell diagram file (levels/arrows).
    Realize { file: PathBuf },
    /// Search for a homotopy between two maps and compare their induced maps.
    Homotopy {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
    },
}

pub enum Failure {
    Input(String),
    Budget(String),
    Verification(String),
}

impl From<CellError> for Failure {
    fn from(e: CellError) -> Self {
        match e {
            CellError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            CellError::InvalidInput(_) | CellError::IndexOutOfRange(_) | CellError::Mismatch { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Verification(e.to_string()),
        }
    }
}

/// A finished report and whether everything in it passed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl RunConfig {
    fn validate(&self) -> Result<(), Failure> {
        if self.n == 0 {
            return Err(Failure::Input("--n must be at least 1".into()));
        }
        if self.backend == Backend::Sset && self.dim < 2 {
            return Err(Failure::Input("--dim must be at least 2".into()));
        }
        if self.budget == 0 {
            return Err(Failure::Input("--budget must be positive".into()));
        }
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    cli.cfg.validate()?;
    match cli.cfg.backend {
        Backend::Finset => commands::dispatch(&cellforge::finset::FinSetContext, &cli.cfg, &cli.command),
        Backend::Sset => {
            let ctx = cellforge::sset::SSetContext::new(cli.cfg.dim)?;
            commands::dispatch(&ctx, &cli.cfg, &cli.command)
        }
    }
}

fn emit(cfg: &RunConfig, report: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(report).expect("json values serialize") + "\n";
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| emit(&cli.cfg, &o.report).map(|_| o.passed));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
