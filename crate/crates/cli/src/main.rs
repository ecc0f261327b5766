mod commands;
mod output;
mod problem;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Domain(#[from] higgsgrass::Error),
}

impl From<higgsgrass::grobner::GbError> for CliError {
    fn from(e: higgsgrass::grobner::GbError) -> Self {
        CliError::Domain(e.into())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(e) if e.is_budget() => 3,
            _ => 1,
        }
    }

    fn to_value(&self) -> Value {
        let (kind, code) = match self {
            CliError::Usage(_) => ("usage", "Usage".to_string()),
            CliError::Input(_) => ("input", "Input".to_string()),
            CliError::Domain(e) if e.is_budget() => ("budget", "BudgetExceeded".to_string()),
            CliError::Domain(e) => {
                let dbg = format!("{e:?}");
                let end = dbg.find(|c: char| !c.is_alphanumeric()).unwrap_or(dbg.len());
                ("domain", dbg[..end].to_string())
            }
        };
        json!({ "kind": kind, "code": code, "message": self.to_string() })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "higgsgrass", version, about = "Exact ideals of Higgs Grassmannians and related schemes")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Seed for random charts; overrides the problem file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for independent jobs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Full,
    Component,
    Single,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a Higgs field.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Equations of the rank-d Higgs Grassmannian.
    Grass {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        pluecker_relations: bool,
    },
    /// Predicted ideal of a Jordan specification.
    Structure {
        #[arg(long, alias = "in")]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        /// Stratum index for `--mode component`.
        #[arg(long, default_value_t = 1)]
        component: usize,
    },
    /// Classify a rank-2 field.
    Classify2 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Singular locus of an irreducible rank-2 field over a curve.
    Singular2 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        which: usize,
    },
    /// Spectral cover ideal.
    Spectral {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Degree of the spectral fiber over a point.
    SpectralDegree {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Radical certificate for the Simpson system.
    Simpson {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Flag ideal of a rank-3 table case and its fiber.
    Flag {
        #[arg(long)]
        case_file: PathBuf,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        point: String,
    },
    /// Projective degree of a Grassmannian fiber.
    Fiber {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Fiber-variable index groups, e.g. `0,1;2,3`.
        #[arg(long)]
        groups: Option<String>,
    },
    /// Canonical form of a rank-2 submodule over one variable.
    Quot {
        /// Row-major JSON matrix, e.g. `[["x","0"],["0","x"]]`.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Compare two ideals.
    Compare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
    /// Ideal membership of a polynomial.
    Member {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Intersection of two ideals.
    Intersect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
    /// Minimal primes of a squarefree monomial ideal.
    MinimalPrimes {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Grass { .. } => "grass",
            Command::Structure { .. } => "structure",
            Command::Classify2 { .. } => "classify2",
            Command::Singular2 { .. } => "singular2",
            Command::Spectral { .. } => "spectral",
            Command::SpectralDegree { .. } => "spectral-degree",
            Command::Simpson { .. } => "simpson",
            Command::Flag { .. } => "flag",
            Command::Fiber { .. } => "fiber",
            Command::Quot { .. } => "quot",
            Command::Compare { .. } => "compare",
            Command::Member { .. } => "member",
            Command::Intersect { .. } => "intersect",
            Command::MinimalPrimes { .. } => "minimal-primes",
        }
    }
}

fn spair_budget_from_env() -> Result<Option<u64>, CliError> {
    match std::env::var("HIGGSGRASS_SPAIR_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("HIGGSGRASS_SPAIR_BUDGET is not a count: {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        higgsgrass::par::set_jobs(j.max(1));
    }
    let mut run = commands::Run::new(cli.seed);
    let body = spair_budget_from_env().and_then(|b| {
        if let Some(b) = b {
            higgsgrass::grobner::set_default_spair_budget(b);
        }
        run.dispatch(&cli.command)
    });
    let code = body.as_ref().err().map_or(0, CliError::exit_code);
    let mut stats = Map::new();
    stats.insert("seed".into(), output::num(run.seed()));
    stats.insert("spair_budget".into(), output::num(run.budget()));
    let env = output::envelope(
        cli.command.name(),
        &run.digest(),
        stats,
        body.map_err(|e| e.to_value()),
    );
    let text = match cli.format {
        Format::Json => output::to_json(&env),
        Format::Text => output::to_text(&env),
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
