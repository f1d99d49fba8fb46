use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Record of one run: what was configured, what was written, and how long it took.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub config_digest: String,
    pub seed: u64,
    pub version: String,
    pub outputs: Vec<String>,
    pub trials: u64,
    pub wall_seconds: f64,
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::Internal(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
    }
}

/// Hex SHA-256 of a canonical configuration text.
pub fn digest(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}
