//! Run manifest embedded in every output artifact so a run can be
//! reproduced byte-for-byte from the recorded configuration and seed.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub config: serde_json::Value,
    pub version: String,
    pub seed: u64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        inputs: Vec<String>,
        config: serde_json::Value,
        seed: u64,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            inputs,
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
        }
    }

    /// One-line JSON rendering for `#`-comment headers.
    pub fn comment_line(&self) -> String {
        format!("# manifest {}", serde_json::to_string(self).expect("manifest serializes"))
    }
}
