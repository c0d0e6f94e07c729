//! Command-line front end for `kchroma-core`: argument handling, JSON/DOT/
//! DIMACS rendering and the benchmark harness.

pub mod bench;
pub mod config;
pub mod dot;
pub mod report;
pub mod run;

pub use config::{CliError, Command, Format, InputSource, RunConfig};
pub use run::{execute, run, run_config, Execution, RunOutput};
