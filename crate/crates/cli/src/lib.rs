//! Command-line front end: configuration files, figure presets, CSV and manifest output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod csv;
pub mod error;
pub mod manifest;
pub mod presets;
pub mod run;

pub use config::{parse_config, Overrides, RawConfig, RunConfig, RunKind};
pub use csv::{emit_csv, format_significant, table_to_csv, CSV_HEADER};
pub use error::{CliError, CliResult};
pub use manifest::RunManifest;
pub use presets::{preset_info, run_preset, PresetInfo, RunOptions, PRESETS};
pub use run::{run_config, run_config_text};
