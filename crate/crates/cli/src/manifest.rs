use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Written next to every output file. Contains nothing run-dependent
/// beyond the parameters, so reruns reproduce it byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub subcommand: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, parameters: Value, seed: Option<u64>, outputs: Vec<String>) -> Self {
        RunManifest {
            schema_version: SCHEMA_VERSION,
            tool: "involis",
            tool_version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            parameters,
            seed,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}
