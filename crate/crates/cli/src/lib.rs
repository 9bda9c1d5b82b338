//! Command-line front end for `fht-core`: CSV in, CSV/JSON/SVG out.

pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;
pub mod report;
pub mod suite;
pub mod svg;

pub use config::{Cli, Command, RunConfig};
pub use error::{CliError, Result};
