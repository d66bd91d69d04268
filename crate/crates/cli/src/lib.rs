//! Command-line front end for `parity_lab`: curve input parsing, the
//! command registry, JSON reports and batch processing.

pub mod batch;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{Command, CommandOutput, Registry, Request};
pub use error::CliError;
pub use input::CurveInput;
pub use report::{Format, Report, SCHEMA, VERSION};
