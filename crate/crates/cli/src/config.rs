//! Run-configuration files: TOML with strict unknown-key rejection.
//!
//! ```toml
//! experiment = "c2"
//! output_dir = "out/c2"      # optional; falls back to $SYMVQC_OUT_DIR or "."
//!
//! [train]
//! epochs = 150
//! batch_size = 100
//! learning_rate = 0.1
//! spsa_c0 = 0.1
//! spsa_gamma = 0.101
//! seed = 1
//!
//! [emit]
//! loss_csv = true
//! params_csv = true
//! summary_json = true
//!
//! [data]
//! fixed_graph = "my.graph"   # s6 only: adjacency-list file, one node per line
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;
use symvqc_core::experiments::{make_experiment, ExperimentSpec, GraphData};
use symvqc_core::learner::TrainConfig;

use crate::CliError;

/// Environment variable holding the default output directory.
pub const OUT_DIR_ENV: &str = "SYMVQC_OUT_DIR";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: String,
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub train: TrainSection,
    #[serde(default)]
    pub emit: EmitSection,
    #[serde(default)]
    pub data: DataSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSection {
    pub epochs: Option<usize>,
    pub batch_size: Option<usize>,
    pub learning_rate: Option<f64>,
    pub spsa_c0: Option<f64>,
    pub spsa_gamma: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EmitSection {
    pub loss_csv: bool,
    pub params_csv: bool,
    pub summary_json: bool,
}

impl Default for EmitSection {
    fn default() -> Self {
        Self {
            loss_csv: true,
            params_csv: true,
            summary_json: true,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DataSection {
    pub fixed_graph: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::config(format!("config error: {e}")))
    }

    /// Builds the experiment with the configured overrides applied to its
    /// default training protocol.
    pub fn resolve(&self) -> Result<(ExperimentSpec, TrainConfig), CliError> {
        let mut exp = make_experiment(&self.experiment)?;
        if let Some(graph_path) = &self.data.fixed_graph {
            if self.experiment != "s6" {
                return Err(CliError::config(
                    "data.fixed_graph is only meaningful for the s6 experiment",
                ));
            }
            let text = std::fs::read_to_string(graph_path).map_err(|e| {
                CliError::config(format!("cannot read {}: {e}", graph_path.display()))
            })?;
            exp.fixed_graph = Some(GraphData::parse_adjacency(&text)?);
        }
        let mut train = exp.defaults.clone();
        if let Some(v) = self.train.epochs {
            train.epochs = v;
        }
        if let Some(v) = self.train.batch_size {
            train.batch_size = v;
        }
        if let Some(v) = self.train.learning_rate {
            train.learning_rate = v;
        }
        if let Some(v) = self.train.spsa_c0 {
            train.spsa.c0 = v;
        }
        if let Some(v) = self.train.spsa_gamma {
            train.spsa.gamma = v;
        }
        if let Some(v) = self.train.seed {
            train.seed = v;
        }
        train.validate()?;
        Ok((exp, train))
    }

    /// Output directory: config value, then `$SYMVQC_OUT_DIR`, then `.`.
    pub fn output_dir(&self) -> PathBuf {
        if let Some(dir) = &self.output_dir {
            return dir.clone();
        }
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir);
            }
        }
        PathBuf::from(".")
    }
}
