//! CSV and JSON artifacts. All floating-point values are written with 17
//! significant digits so files round-trip bit-for-bit and determinism checks
//! can compare bytes.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use symvqc_core::learner::TrainRecord;

use crate::CliError;

/// 17 significant digits; round-trips every f64 exactly.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `loss.csv`: one row per epoch with training and validation loss.
pub fn write_loss_csv(path: &Path, record: &TrainRecord) -> Result<(), CliError> {
    let mut out = String::from("epoch,train_loss,val_loss\n");
    for (epoch, (train, val)) in record
        .train_loss
        .iter()
        .zip(record.val_loss.iter())
        .enumerate()
    {
        out.push_str(&format!(
            "{},{},{}\n",
            epoch + 1,
            format_f64(*train),
            format_f64(*val)
        ));
    }
    write_atomically(path, out.as_bytes())
}

/// `params.csv`: epoch 0 holds the random initialization, epoch k the
/// parameters after the k-th update.
pub fn write_params_csv(path: &Path, record: &TrainRecord) -> Result<(), CliError> {
    let p = record.initial_params.len();
    let mut out = String::from("epoch");
    for i in 0..p {
        out.push_str(&format!(",theta{i}"));
    }
    out.push('\n');
    let mut row = |epoch: usize, params: &[f64]| {
        out.push_str(&epoch.to_string());
        for v in params {
            out.push(',');
            out.push_str(&format_f64(*v));
        }
        out.push('\n');
    };
    row(0, &record.initial_params);
    for (k, params) in record.params.iter().enumerate() {
        row(k + 1, params);
    }
    write_atomically(path, out.as_bytes())
}

fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(bytes)?;
    Ok(())
}

/// Config echo carried in `summary.json`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub experiment: String,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub spsa_c0: f64,
    pub spsa_gamma: f64,
    pub seed: u64,
}

/// Invariance report for one generator.
#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub generator: String,
    /// max |h(V(g)x) − h(x)| over the probe set
    pub gap: f64,
    pub invariant_unitary_commutator: f64,
    pub observable_commutator: f64,
}

/// Invariance report over the seeded probe set.
#[derive(Debug, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub probe_points: usize,
    pub max_gap: f64,
    pub per_generator: Vec<GeneratorReport>,
}

/// `summary.json` contents.
#[derive(Debug, Serialize, Deserialize)]
pub struct Summary {
    pub config: ConfigEcho,
    pub initial_theta: Vec<f64>,
    pub final_theta: Vec<f64>,
    pub final_train_loss: f64,
    pub final_val_loss: f64,
    pub total_seconds: f64,
    pub invariance: InvarianceReport,
}

pub fn write_summary_json(path: &Path, summary: &Summary) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(summary)
        .map_err(|e| CliError::config(format!("summary serialization failed: {e}")))?;
    write_atomically(path, format!("{text}\n").as_bytes())
}

/// Reads a parameter vector from `params.csv` (last row), `summary.json`
/// (its `final_theta`), or a bare JSON array.
pub fn read_params(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let summary: Summary = serde_json::from_str(trimmed)
            .map_err(|e| CliError::config(format!("bad summary json: {e}")))?;
        return Ok(summary.final_theta);
    }
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed)
            .map_err(|e| CliError::config(format!("bad parameter array: {e}")));
    }
    let last = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .last()
        .ok_or_else(|| CliError::config("empty params file"))?;
    let mut fields = last.split(',');
    fields
        .next()
        .ok_or_else(|| CliError::config("empty params row"))?;
    fields
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|e| CliError::config(format!("bad value '{f}': {e}")))
        })
        .collect()
}
