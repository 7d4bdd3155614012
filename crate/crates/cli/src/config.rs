use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use cutrank::closures::{FamilySpec, Mode};
use cutrank::guards::Guards;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// Everything that determines a run besides its input files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub family: FamilySpec,
    pub guards: Guards,
    /// Output format; each command has its own default when unset.
    pub format: Option<Format>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            family: FamilySpec::split(1),
            guards: Guards::default(),
            format: None,
        }
    }
}

/// Values given on the command line; each one that is set wins.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
    pub t: Option<usize>,
    pub coeff_bound: Option<u32>,
    pub format: Option<Format>,
}

const ENV_NODES: &str = "CUTRANK_GUARD_NODES";
const ENV_FAMILY: &str = "CUTRANK_GUARD_FAMILY";

impl ExperimentConfig {
    /// Defaults, then the config file, then the environment, then flags.
    pub fn resolve(path: Option<&Path>, flags: &Overrides) -> Result<Self> {
        let mut config = match path {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?
            }
            None => ExperimentConfig::default(),
        };
        if let Some(v) = env_usize(ENV_NODES)? {
            config.guards.max_nodes = v;
        }
        if let Some(v) = env_usize(ENV_FAMILY)? {
            config.guards.max_family = v;
        }
        if let Some(seed) = flags.seed {
            config.seed = seed;
        }
        if let Some(mode) = flags.mode {
            config.family.mode = mode;
        }
        if let Some(t) = flags.t {
            config.family.t = t;
        }
        if let Some(b) = flags.coeff_bound {
            config.family.coeff_bound = b;
        }
        if let Some(format) = flags.format {
            config.format = Some(format);
        }
        Ok(config)
    }

    pub fn t(&self) -> usize {
        self.family.effective_t()
    }
}

fn env_usize(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(v) => Ok(Some(v.trim().parse().with_context(|| format!("{name}={v} is not a count"))?)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e).with_context(|| format!("reading {name}")),
    }
}
