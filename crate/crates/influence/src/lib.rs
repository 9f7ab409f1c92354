//! File formats and the command implementations behind the `influence`
//! binary. The computations themselves live in `apriori-influence-core`.

pub mod commands;
pub mod csvio;
mod error;
pub mod formats;
pub mod report;

pub use crate::error::{CliError, Result};
