//! Command-line front end for `ward-core`: surface files, reports and
//! SVG figures.

pub mod commands;
pub mod config;
pub mod error;
pub mod pointspec;
pub mod report;
pub mod serial;
pub mod svg;

pub use commands::{run, Outcome};
pub use config::{Cli, RunConfig};
pub use error::{CliError, CliResult};
