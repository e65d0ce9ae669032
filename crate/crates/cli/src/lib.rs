//! Library half of the `nb` command-line tool.
//!
//! Subcommands map onto [`commands`] (generate, spectrum, cluster, bp) and
//! [`sweep`]. Every output file carries its command, seed and parameters in
//! leading `#` comment lines or, for spectra, in the JSON document itself.

pub mod commands;
pub mod error;
pub mod files;
pub mod model;
pub mod sweep;

pub use error::{CliError, Result};
pub use model::PlantedModel;
pub use sweep::{Algorithm, Axis, RunRecord, SweepSpec};
