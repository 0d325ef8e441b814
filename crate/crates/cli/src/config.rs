use std::path::Path;

use serde::Deserialize;

use bgprod_core::exactlinalg::Coeff;
use bgprod_core::{Error, Result};

use crate::Cli;

/// Optional TOML config; keys mirror the global flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    json: Option<bool>,
    depth: Option<usize>,
    timings: Option<bool>,
    coeff: Option<String>,
}

/// Effective settings: flags (and the depth environment variable) win over
/// the config file, which wins over built-in defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub json: bool,
    pub timings: bool,
    /// `None` means "use the smallest sufficient depth".
    pub depth: Option<usize>,
    pub coeff: Coeff,
}

impl Settings {
    pub fn resolve(cli: &Cli) -> Result<Settings> {
        let file = match &cli.config {
            Some(path) => load(path)?,
            None => FileConfig::default(),
        };
        let coeff = match &file.coeff {
            Some(c) => c.parse()?,
            None => Coeff::Integers,
        };
        Ok(Settings {
            json: cli.json || file.json.unwrap_or(false),
            timings: cli.timings || file.timings.unwrap_or(false),
            depth: cli.depth.or(file.depth),
            coeff,
        })
    }

    /// Coefficient ring from a subcommand flag or the config default.
    pub fn coeff(&self, flag: &Option<String>) -> Result<Coeff> {
        match flag {
            Some(c) => c.parse(),
            None => Ok(self.coeff),
        }
    }

    /// Depth for a computation needing at least `needed`.
    pub fn depth_for(&self, needed: usize) -> Result<usize> {
        let needed = needed.max(2);
        match self.depth {
            Some(d) if d < needed => Err(Error::WindowInsufficient(format!(
                "this computation needs depth {needed}, got {d}"
            ))),
            Some(d) => Ok(d),
            None => Ok(needed),
        }
    }
}

fn load(path: &Path) -> Result<FileConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("config {}: {e}", path.display()),
    })
}
