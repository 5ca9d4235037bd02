//! Run settings merged from flags, an optional TOML file and defaults.

use std::path::Path;

use ait_core::hierarchy::DEFAULT_CAP_BITS;
use ait_core::machines::MachineId;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Same fields as the global flags. Unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub machine: Option<MachineId>,
    #[serde(rename = "L")]
    pub max_bits: Option<usize>,
    #[serde(rename = "B")]
    pub budget: Option<u64>,
    pub cap_bits: Option<u64>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Effective settings. The machine stays optional because its default
/// depends on the command.
#[derive(Debug, Clone)]
pub struct Settings {
    pub machine: Option<MachineId>,
    pub max_bits: usize,
    pub budget: u64,
    pub cap_bits: u64,
    pub workers: usize,
    pub format: Format,
}

pub const DEFAULT_L: usize = 24;
pub const DEFAULT_B: u64 = 10_000;

impl Settings {
    pub fn merge(flags: &crate::Common, file: FileConfig) -> Result<Settings, CliError> {
        let flag_format = match (flags.json, flags.csv) {
            (true, true) => return Err(CliError::Usage("--json and --csv are exclusive".into())),
            (true, false) => Some(Format::Json),
            (false, true) => Some(Format::Csv),
            (false, false) => None,
        };
        Ok(Settings {
            machine: flags.machine.or(file.machine),
            max_bits: flags.max_bits.or(file.max_bits).unwrap_or(DEFAULT_L),
            budget: flags.budget.or(file.budget).unwrap_or(DEFAULT_B),
            cap_bits: flags.cap_bits.or(file.cap_bits).unwrap_or(DEFAULT_CAP_BITS),
            workers: flags.workers.or(file.workers).unwrap_or(0),
            format: flag_format.or(file.format).unwrap_or(Format::Text),
        })
    }

    pub fn machine_or(&self, default: MachineId) -> MachineId {
        self.machine.unwrap_or(default)
    }
}

/// The configuration embedded in every report. Worker count is left out on
/// purpose: results do not depend on it.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub machine: Option<MachineId>,
    #[serde(rename = "L")]
    pub max_bits: usize,
    #[serde(rename = "B")]
    pub budget: u64,
    pub cap_bits: u64,
    pub format: Format,
    pub args: serde_json::Value,
}
