use std::path::Path;

use anyhow::{Context, Result};
use island_core::Heuristic;
use serde::Deserialize;

use crate::Format;

/// Optional defaults read from a TOML file. Keys mirror the long flag names;
/// anything given on the command line (or through the environment) wins.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub guard: Option<u64>,
    pub heuristic: Option<Heuristic>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub noise: Option<f64>,
    pub enumerate: Option<bool>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}
