//! Command-line front end for `simcorr-core`: toy generation, CSV input,
//! reports and table regeneration.

pub mod commands;
pub mod csvio;
pub mod error;
pub mod report;
pub mod select;
pub mod tables;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
