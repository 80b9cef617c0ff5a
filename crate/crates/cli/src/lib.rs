//! Command line front end for `ccnet-core`: network documents, reports and
//! property checks. The binary is a thin wrapper around [`run`].

pub mod commands;
pub mod document;
pub mod error;
pub mod expr;
pub mod verify;

use std::path::PathBuf;

use ccnet_core::normalform::Strategy;
use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use commands::{NormalFormArgs, Report};
use document::Document;
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "ccnet", version, about = "Exact algebra of coupled cell networks")]
pub struct Cli {
    /// Output format: a JSON report, or a human readable rendering.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Sn,
    Image,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Semigroup closure, composition table, tilde maps and A-maps.
    Complete { file: PathBuf },
    /// The fundamental network and the maps π_i.
    Fundamental { file: PathBuf },
    /// Cell permutations commuting with every map.
    Symmetries { file: PathBuf },
    /// Balanced partitions (robust synchrony spaces).
    Synchrony { file: PathBuf },
    /// Dynamical input symmetries (p, q) of the closed network.
    InputSymmetries { file: PathBuf },
    /// Symbolic composition f ∘_Σ g.
    Compose { file: PathBuf, f: String, g: String },
    /// Symbolic Lie bracket [f, g]_Σ.
    Bracket { file: PathBuf, f: String, g: String },
    /// Basis of ker γ in the grade P^{k,l}.
    KernelGamma {
        file: PathBuf,
        #[arg(long)]
        degree: i32,
        #[arg(long, default_value_t = 0)]
        param_degree: u32,
    },
    /// SN-decomposition of a linear cell function.
    Sn { file: PathBuf, f0: String },
    /// Local normal form up to state grade r1 and parameter degree r2.
    NormalForm {
        file: PathBuf,
        f: String,
        #[arg(long)]
        degree: i32,
        #[arg(long, default_value_t = 0)]
        param_degree: u32,
        #[arg(long, value_enum, default_value_t = StrategyArg::Sn)]
        strategy: StrategyArg,
        /// Keep every grade invariant under input symmetries: `all`, or
        /// positions from the `input-symmetries` report such as `2,3`.
        #[arg(long)]
        invariant: Option<String>,
        /// Work in the full P^{k,l} instead of modulo ker γ.
        #[arg(long)]
        full_space: bool,
    },
    /// Runs the property suite on the network of the document.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Prints the document in normal form.
    Normalize { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Complete { file }
            | Command::Fundamental { file }
            | Command::Symmetries { file }
            | Command::Synchrony { file }
            | Command::InputSymmetries { file }
            | Command::Compose { file, .. }
            | Command::Bracket { file, .. }
            | Command::KernelGamma { file, .. }
            | Command::Sn { file, .. }
            | Command::NormalForm { file, .. }
            | Command::Verify { file, .. }
            | Command::Normalize { file } => file,
        }
    }
}

pub fn load(path: &PathBuf) -> CliResult<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Document { path: path.display().to_string(), message: e.to_string() })?;
    Document::parse(&text).map_err(|e| CliError::Document { path: path.display().to_string(), message: e.0 })
}

/// Runs a parsed command line. The boolean is false when `verify` found a
/// violated identity; the report is still complete.
pub fn execute(cli: &Cli) -> CliResult<(Report, bool)> {
    let doc = load(cli.command.file())?;
    info!("loaded {}", cli.command.file().display());
    let report = match &cli.command {
        Command::Complete { .. } => commands::complete(&doc)?,
        Command::Fundamental { .. } => commands::fundamental(&doc)?,
        Command::Symmetries { .. } => commands::symmetries(&doc)?,
        Command::Synchrony { .. } => commands::synchrony(&doc)?,
        Command::InputSymmetries { .. } => commands::input_symmetries(&doc)?,
        Command::Compose { f, g, .. } => commands::binary(&doc, false, f, g)?,
        Command::Bracket { f, g, .. } => commands::binary(&doc, true, f, g)?,
        Command::KernelGamma { degree, param_degree, .. } => commands::kernel(&doc, *degree, *param_degree)?,
        Command::Sn { f0, .. } => commands::sn(&doc, f0)?,
        Command::NormalForm { f, degree, param_degree, strategy, invariant, full_space, .. } => {
            let strategy = match strategy {
                StrategyArg::Sn => Strategy::Sn,
                StrategyArg::Image => Strategy::ImageComplement,
            };
            let args = NormalFormArgs {
                f,
                degree: *degree,
                param_degree: *param_degree,
                strategy,
                invariant: invariant.as_deref(),
                full_space: *full_space,
            };
            commands::normal_form_cmd(&doc, &args)?
        }
        Command::Verify { seed, samples, .. } => return verify::verify(&doc, *seed, *samples),
        Command::Normalize { .. } => commands::normalize(&doc),
    };
    Ok((report, true))
}

/// Renders a report in the requested format, newline terminated.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
        Format::Text => {
            let mut s = report.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}
