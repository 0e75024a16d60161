use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::units::{si_values, UnitSystem};

/// Everything needed to reproduce a run: `args` is the fully defaulted
/// argument list, so `zpflab replay` gives byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub args: Vec<String>,
    pub units: UnitSystem,
    pub seed: Option<u64>,
    pub parameters: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub results: Option<Value>,
    pub constants_snapshot: String,
    /// Informational; never affects results.
    pub threads: Option<usize>,
    pub duration_seconds: f64,
}

impl RunManifest {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        subcommand: String,
        args: Vec<String>,
        units: UnitSystem,
        seed: Option<u64>,
        parameters: Value,
        results: Option<Value>,
        threads: Option<usize>,
        duration: Duration,
    ) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand,
            args,
            units,
            seed,
            parameters,
            results,
            constants_snapshot: si_values().snapshot.clone(),
            threads,
            duration_seconds: duration.as_secs_f64(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Config(format!("manifest {}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<RunManifest> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("manifest {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("manifest {}: {e}", path.display())))
    }
}
