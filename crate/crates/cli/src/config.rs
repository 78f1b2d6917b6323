use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use lftlab_core::SpaceSpec;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Optional `--config` file. Command-line flags win over file values.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub space: Option<String>,
    pub order: Option<usize>,
    pub tail: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl CliConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad config {}: {e}", path.display())))
    }
}

/// Flags and config merged.
#[derive(Clone, Debug)]
pub struct Settings {
    pub space: SpaceSpec,
    pub order: Option<usize>,
    pub tail: Option<usize>,
    pub tol: f64,
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(g: &crate::Global) -> Result<Self, CliError> {
        let cfg = match &g.config {
            Some(p) => CliConfig::load(p)?,
            None => CliConfig::default(),
        };
        let space_text = g.space.clone().or(cfg.space).unwrap_or_else(|| "hardy".into());
        let space: SpaceSpec = space_text.parse().map_err(|e| CliError::Input(format!("--space: {e}")))?;
        let order = g.order.or(cfg.order);
        if let Some(n) = order {
            if n < 4 {
                return Err(CliError::Input(format!("--order must be >= 4, got {n}")));
            }
        }
        let tail = g.tail.or(cfg.tail);
        if let (Some(n), Some(m)) = (order, tail) {
            if m < 2 * n {
                return Err(lftlab_core::Error::OrderPolicy { n, m, required: 2 * n }.into());
            }
        }
        let tol = g.tol.or(cfg.tol).unwrap_or(lftlab_core::mobius::DEFAULT_TOL);
        if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
            return Err(CliError::Input(format!("--tol must be a positive number, got {tol}")));
        }
        let (mut json, mut csv) = (g.json.clone(), g.csv.clone());
        match (cfg.format, cfg.output) {
            (Some(Format::Json), Some(p)) if json.is_none() => json = Some(p),
            (Some(Format::Csv), Some(p)) if csv.is_none() => csv = Some(p),
            (Some(Format::Table) | None, None) => {}
            (Some(Format::Table), Some(_)) => {
                return Err(CliError::Input("table output always goes to stdout; drop `output`".into()))
            }
            (_, _) => {}
        }
        Ok(Settings { space, order, tail, tol, json, csv })
    }

    pub fn n(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }

    /// Internal order: the flag if given, else `default`, never below `min`.
    pub fn m(&self, n: usize, default: usize, min: usize) -> Result<usize, CliError> {
        match self.tail {
            Some(m) if m < min => Err(CliError::Core(lftlab_core::Error::OrderPolicy { n, m, required: min })),
            Some(m) => Ok(m),
            None => Ok(default.max(min)),
        }
    }
}
