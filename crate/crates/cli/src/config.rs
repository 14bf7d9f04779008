use lbs_core::afunc::{DEFAULT_EDGE_DELTA, DEFAULT_QUADRATURE_N};
use lbs_core::oracle::{MAX_DENSE_N, MIN_DENSE_N};
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Optional settings file; every field may be overridden by a flag.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub quadrature_n: Option<usize>,
    pub grid_n: Option<usize>,
    pub edge_delta: Option<f64>,
    pub json: Option<bool>,
    pub mu1_range: Option<String>,
    pub mu2_range: Option<String>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quadrature_n: usize,
    pub grid_n: usize,
    pub edge_delta: f64,
    pub json: bool,
    pub mu1_range: Option<String>,
    pub mu2_range: Option<String>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quadrature_n: DEFAULT_QUADRATURE_N,
            grid_n: 12,
            edge_delta: DEFAULT_EDGE_DELTA,
            json: false,
            mu1_range: None,
            mu2_range: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn merge(file: ConfigFile) -> Self {
        let d = RunConfig::default();
        RunConfig {
            quadrature_n: file.quadrature_n.unwrap_or(d.quadrature_n),
            grid_n: file.grid_n.unwrap_or(d.grid_n),
            edge_delta: file.edge_delta.unwrap_or(d.edge_delta),
            json: file.json.unwrap_or(d.json),
            mu1_range: file.mu1_range,
            mu2_range: file.mu2_range,
            out: file.out,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.quadrature_n < 8 || self.quadrature_n % 2 != 0 {
            return Err(format!("quadrature_n must be even and >= 8, got {}", self.quadrature_n));
        }
        if !(MIN_DENSE_N..=MAX_DENSE_N).contains(&self.grid_n) || self.grid_n % 2 != 0 {
            return Err(format!("grid_n must be even and in [4, 24], got {}", self.grid_n));
        }
        if !(self.edge_delta > 0.0 && self.edge_delta < 0.5) {
            return Err(format!("edge_delta must lie in (0, 0.5), got {}", self.edge_delta));
        }
        Ok(())
    }
}
