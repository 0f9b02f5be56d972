//! Caps, seed and cache location from a TOML file and command-line flags; flags win.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use twistlab_core::Limits;

use crate::error::CliError;

/// Every key is optional; absent keys keep the library defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub table_cap: Option<usize>,
    pub closure_cap: Option<usize>,
    pub aut_cap: Option<usize>,
    pub enum_cap: Option<usize>,
    pub triple_tensor_cap: Option<usize>,
    pub seed: Option<u64>,
    pub conductor_multiplier: Option<u64>,
    pub cache_dir: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::parse(path.display().to_string(), e.to_string()))
    }

    /// Keys set in `other` replace ours.
    pub fn overlay(mut self, other: &ConfigFile) -> ConfigFile {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        take!(table_cap, closure_cap, aut_cap, enum_cap, triple_tensor_cap, seed, conductor_multiplier, cache_dir);
        self
    }
}

/// What a report records about the configuration. The cache directory is
/// left out so that reports do not depend on where results are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub table_cap: usize,
    pub closure_cap: usize,
    pub aut_cap: usize,
    pub enum_cap: usize,
    pub triple_tensor_cap: usize,
    pub h1_cap: usize,
    pub inversion_cap: usize,
    pub seed: u64,
    pub conductor_multiplier: u64,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub limits: Limits,
    pub cache_dir: PathBuf,
    pub use_cache: bool,
}

pub const DEFAULT_CACHE_DIR: &str = ".twistlab-cache";

impl Settings {
    pub fn from_config(cfg: &ConfigFile, use_cache: bool) -> Result<Settings, CliError> {
        let mut limits = Limits::default();
        if let Some(v) = cfg.table_cap {
            limits.table_cap = v;
        }
        if let Some(v) = cfg.closure_cap {
            limits.closure_cap = v;
        }
        if let Some(v) = cfg.aut_cap {
            limits.aut_cap = v;
        }
        if let Some(v) = cfg.enum_cap {
            limits.enum_cap = v;
        }
        if let Some(v) = cfg.triple_tensor_cap {
            limits.triple_tensor_cap = v;
        }
        if let Some(v) = cfg.seed {
            limits.seed = v;
        }
        if let Some(v) = cfg.conductor_multiplier {
            if v == 0 {
                return Err(CliError::Usage("conductor_multiplier must be positive".into()));
            }
            limits.conductor_multiplier = v;
        }
        let cache_dir = cfg.cache_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Ok(Settings { limits, cache_dir, use_cache })
    }

    pub fn snapshot(&self) -> ConfigSnapshot {
        let l = &self.limits;
        ConfigSnapshot {
            table_cap: l.table_cap,
            closure_cap: l.closure_cap,
            aut_cap: l.aut_cap,
            enum_cap: l.enum_cap,
            triple_tensor_cap: l.triple_tensor_cap,
            h1_cap: l.h1_cap,
            inversion_cap: l.inversion_cap,
            seed: l.seed,
            conductor_multiplier: l.conductor_multiplier,
        }
    }
}
