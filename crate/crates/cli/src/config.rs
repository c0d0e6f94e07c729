use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use kchroma_core::coloring::SearchLimits;
use kchroma_core::generate::{GeneratorSpec, InvalidSpec};
use serde::Serialize;
use thiserror::Error;

/// Default step budget for the hole heuristic.
pub const DEFAULT_STEPS: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "kchroma", version, about = "Graph k-colorability toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input file: DIMACS .col (or .cnf for `reduce`, suite JSON for `bench`)
    #[arg(long, global = true, conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Generated input, e.g. cycle:11, complete:4, complete_bipartite:3,3, gnp:12,0.25,7
    #[arg(long, global = true)]
    pub gen: Option<String>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    #[arg(long, global = true)]
    pub budget_steps: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Concurrent instances for `bench`
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// `bench`: fit wall time against V+E for the bipartite subcommand
    #[arg(long, global = true)]
    pub check_linear: bool,
    /// `reduce`: also write the vertex-role JSON to this path
    #[arg(long, global = true)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// First-fit greedy coloring (natural order, or shuffled with --seed)
    Color,
    /// Exact k-colorability (requires --k)
    Decide,
    /// Chromatic number
    Chi,
    /// 2-coloring or odd-cycle certificate
    Bipartite,
    /// Clique, independence and vertex-cover numbers with inequality checks
    Bounds,
    /// Hole-rotation 3-coloring heuristic
    Holes,
    /// 3-SAT (.cnf) to 3-colorability
    Reduce,
    /// Emit a generated graph
    Gen,
    /// Run a benchmark suite
    Bench,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Color,
        Command::Decide,
        Command::Chi,
        Command::Bipartite,
        Command::Bounds,
        Command::Holes,
        Command::Reduce,
        Command::Gen,
        Command::Bench,
    ];

    pub fn from_name(name: &str) -> Option<Command> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Color => "color",
            Command::Decide => "decide",
            Command::Chi => "chi",
            Command::Bipartite => "bipartite",
            Command::Bounds => "bounds",
            Command::Holes => "holes",
            Command::Reduce => "reduce",
            Command::Gen => "gen",
            Command::Bench => "bench",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Dimacs,
    Summary,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    Path(PathBuf),
    Gen(GeneratorSpec),
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Command,
    pub input: Option<InputSource>,
    pub k: Option<usize>,
    pub budget_nodes: Option<u64>,
    pub budget_ms: Option<u64>,
    pub budget_steps: Option<usize>,
    pub seed: Option<u64>,
    pub format: Format,
    pub jobs: usize,
    pub check_linear: bool,
    pub sidecar: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Spec(#[from] InvalidSpec),
    #[error("{0}")]
    Dimacs(#[from] kchroma_core::dimacs::DimacsError),
    #[error("{0}")]
    Cnf(#[from] kchroma_core::reductions::CnfError),
    #[error("suite: {0}")]
    Suite(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Spec(_) => "invalid_generator",
            CliError::Dimacs(_) => "dimacs_col",
            CliError::Cnf(_) => "dimacs_cnf",
            CliError::Suite(_) => "suite",
        }
    }
}

impl RunConfig {
    /// Minimal config for `subcommand` with everything else defaulted.
    pub fn new(subcommand: Command) -> Self {
        Self {
            subcommand,
            input: None,
            k: None,
            budget_nodes: None,
            budget_ms: None,
            budget_steps: None,
            seed: None,
            format: Format::Json,
            jobs: 1,
            check_linear: false,
            sidecar: None,
        }
    }

    pub fn with_gen(mut self, spec: &str) -> Result<Self, CliError> {
        self.input = Some(InputSource::Gen(spec.parse()?));
        Ok(self)
    }

    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let input = match (cli.input, cli.gen) {
            (Some(p), None) => Some(InputSource::Path(p)),
            (None, Some(s)) => Some(InputSource::Gen(s.parse()?)),
            (None, None) => None,
            (Some(_), Some(_)) => {
                return Err(CliError::Usage("--input and --gen are exclusive".into()))
            }
        };
        let cfg = RunConfig {
            subcommand: cli.command,
            input,
            k: cli.k,
            budget_nodes: cli.budget_nodes,
            budget_ms: cli.budget_ms,
            budget_steps: cli.budget_steps,
            seed: cli.seed,
            format: cli.format,
            jobs: cli.jobs.max(1),
            check_linear: cli.check_linear,
            sidecar: cli.sidecar,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Subcommand-specific required fields and format support.
    pub fn validate(&self) -> Result<(), CliError> {
        use Command::*;
        let needs_input = !matches!(self.subcommand, Bench);
        if needs_input && self.input.is_none() {
            return Err(CliError::Usage(format!(
                "{} needs --input or --gen",
                self.subcommand.name()
            )));
        }
        if self.subcommand == Decide && self.k.is_none() {
            return Err(CliError::Usage("decide requires --k".into()));
        }
        if self.subcommand == Reduce && matches!(self.input, Some(InputSource::Gen(_))) {
            return Err(CliError::Usage("reduce reads a .cnf file via --input".into()));
        }
        if self.subcommand == Bench && matches!(self.input, Some(InputSource::Gen(_))) {
            return Err(CliError::Usage("bench reads a suite file via --input".into()));
        }
        if self.subcommand == Bench && self.input.is_none() && !self.check_linear {
            return Err(CliError::Usage("bench needs --input SUITE (or --check-linear)".into()));
        }
        if self.budget_steps == Some(0) {
            return Err(CliError::Usage("--budget-steps must be at least 1".into()));
        }
        let format_ok = match self.format {
            Format::Json | Format::Summary => true,
            Format::Dot => !matches!(self.subcommand, Bounds | Bench),
            Format::Dimacs => matches!(self.subcommand, Gen | Reduce),
        };
        if !format_ok {
            return Err(CliError::Usage(format!(
                "format {:?} is not available for {}",
                self.format,
                self.subcommand.name()
            )));
        }
        Ok(())
    }

    pub fn search_limits(&self) -> SearchLimits {
        SearchLimits {
            max_nodes: self.budget_nodes,
            max_time: self.budget_ms.map(Duration::from_millis),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("kchroma").chain(args.iter().copied()))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        RunConfig::from_cli(cli)
    }

    #[test]
    fn flags_after_subcommand() {
        let cfg = parse(&["decide", "--k", "2", "--gen", "cycle:11"]).unwrap();
        assert_eq!(cfg.subcommand, Command::Decide);
        assert_eq!(cfg.k, Some(2));
        assert_eq!(cfg.input, Some(InputSource::Gen(GeneratorSpec::Cycle(11))));
    }

    #[test]
    fn required_fields() {
        assert!(matches!(parse(&["decide", "--gen", "cycle:5"]), Err(CliError::Usage(_))));
        assert!(matches!(parse(&["chi"]), Err(CliError::Usage(_))));
        assert!(matches!(parse(&["chi", "--gen", "cycle:2"]), Err(CliError::Spec(_))));
        assert!(matches!(
            parse(&["bounds", "--gen", "cycle:5", "--format", "dot"]),
            Err(CliError::Usage(_))
        ));
        assert!(parse(&["bench", "--check-linear"]).is_ok());
    }
}
