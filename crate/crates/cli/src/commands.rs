//! Implementations behind the CLI subcommands; kept as library functions so
//! integration tests can call them directly.

use std::path::Path;
use std::time::Instant;

use symvqc_core::experiments::{experiment_names, make_experiment, DataPoint, ExperimentSpec};
use symvqc_core::groups::{commutant_certificate, twirl};
use symvqc_core::learner::{invariance_gap, train_with_clock, Clock, TrainConfig};
use symvqc_core::sim::pauli_matrix;

use crate::config::RunConfig;
use crate::output::{
    format_f64, read_params, write_loss_csv, write_params_csv, write_summary_json, ConfigEcho,
    GeneratorReport, InvarianceReport, Summary,
};
use crate::CliError;

/// Seed of the fixed probe set used by every invariance report, so `check`
/// reproduces the numbers in `summary.json` bit-for-bit.
pub const PROBE_SEED: u64 = 0x5359_4d56_5143;
/// Number of data points in the probe set.
pub const PROBE_POINTS: usize = 100;

struct WallClock {
    start: Instant,
}

impl WallClock {
    fn new() -> Self {
        Self {
            start: Instant::now(),
        }
    }
}

impl Clock for WallClock {
    fn now_secs(&mut self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

/// Samples the fixed probe set and evaluates the invariance report at
/// `theta`, including the commutant certificates of the invariant unitary and
/// the observable.
pub fn invariance_report(
    exp: &ExperimentSpec,
    theta: &[f64],
) -> Result<InvarianceReport, CliError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let points: Vec<DataPoint> = exp
        .sample_data(PROBE_POINTS, &mut rng)
        .into_iter()
        .map(|s| s.point)
        .collect();
    let (max_gap, per_gen) = invariance_gap(exp, theta, &points)?;

    let u_inv = exp.circuit.invariant_unitary_matrix()?;
    let obs = exp.circuit.observable.to_matrix()?;
    let mut per_generator = Vec::new();
    for (idx, label) in exp.w_rep.group.generators.iter().enumerate() {
        let w = exp.w_rep.generator_images()[idx].to_matrix();
        per_generator.push(GeneratorReport {
            generator: label.clone(),
            gap: per_gen[idx],
            invariant_unitary_commutator: symvqc_core::tensor::commutator_norm(&w, &u_inv)?,
            observable_commutator: symvqc_core::tensor::commutator_norm(&w, &obs)?,
        });
    }
    Ok(InvarianceReport {
        probe_points: PROBE_POINTS,
        max_gap,
        per_generator,
    })
}

fn echo(config: &TrainConfig) -> ConfigEcho {
    ConfigEcho {
        experiment: config.experiment.clone(),
        epochs: config.epochs,
        batch_size: config.batch_size,
        learning_rate: config.learning_rate,
        spsa_c0: config.spsa.c0,
        spsa_gamma: config.spsa.gamma,
        seed: config.seed,
    }
}

/// `run <config>`: train and write the requested artifacts.
pub fn cmd_run(config_path: &Path) -> Result<(), CliError> {
    let run_config = RunConfig::load(config_path)?;
    let (exp, train_config) = run_config.resolve()?;
    let out_dir = run_config.output_dir();

    let mut clock = WallClock::new();
    let record = train_with_clock(&train_config, &exp, &mut clock)?;
    let total_seconds: f64 = record.epoch_seconds.iter().sum();

    if run_config.emit.loss_csv {
        write_loss_csv(&out_dir.join("loss.csv"), &record)?;
    }
    if run_config.emit.params_csv {
        write_params_csv(&out_dir.join("params.csv"), &record)?;
    }
    let invariance = invariance_report(&exp, &record.final_params)?;
    println!(
        "{}: {} epochs, final train loss {:.3e}, final val loss {:.3e}",
        exp.name,
        train_config.epochs,
        record.train_loss.last().copied().unwrap_or(f64::NAN),
        record.val_loss.last().copied().unwrap_or(f64::NAN),
    );
    println!(
        "invariance: max |h(V(g)x) - h(x)| = {:.3e} over {} probe points",
        invariance.max_gap, invariance.probe_points
    );
    if run_config.emit.summary_json {
        let summary = Summary {
            config: echo(&train_config),
            initial_theta: record.initial_params.clone(),
            final_theta: record.final_params.clone(),
            final_train_loss: *record.train_loss.last().expect("epochs >= 1"),
            final_val_loss: *record.val_loss.last().expect("epochs >= 1"),
            total_seconds,
            invariance,
        };
        write_summary_json(&out_dir.join("summary.json"), &summary)?;
    }
    Ok(())
}

/// `check <experiment> <params-file>`: recompute the invariance report.
pub fn cmd_check(experiment: &str, params_file: &Path) -> Result<(), CliError> {
    let exp = make_experiment(experiment)?;
    let theta = read_params(params_file)?;
    if theta.len() != exp.num_params() {
        return Err(CliError::config(format!(
            "expected {} parameters for '{experiment}', got {}",
            exp.num_params(),
            theta.len()
        )));
    }
    let report = invariance_report(&exp, &theta)?;
    for gen in &report.per_generator {
        println!(
            "generator {}: gap {}  [U_inv, W] {}  [O, W] {}",
            gen.generator,
            format_f64(gen.gap),
            format_f64(gen.invariant_unitary_commutator),
            format_f64(gen.observable_commutator)
        );
    }
    println!("max gap {}", format_f64(report.max_gap));
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::config(format!("report serialization failed: {e}")))?;
    println!("{json}");
    Ok(())
}

/// `twirl <group> <pauli-string>`: print the twirled operator and its
/// commutant certificate.
pub fn cmd_twirl(group: &str, pauli: &str) -> Result<(), CliError> {
    if !["c2", "c2c2", "d4", "s6"].contains(&group) {
        return Err(CliError::config(format!(
            "unknown group '{group}' (expected c2, c2c2, d4 or s6)"
        )));
    }
    let exp = make_experiment(group)?;
    let rep = &exp.w_rep;
    let expected_len = rep.dim.trailing_zeros() as usize;
    if pauli.len() != expected_len {
        return Err(CliError::config(format!(
            "group '{group}' acts on {expected_len} qubits, got a length-{} Pauli string",
            pauli.len()
        )));
    }
    let x = pauli_matrix(pauli, 1.0)?;
    let twirled = twirl(rep, &x)?;
    println!("T_{group}({pauli}), dimension {0}x{0}:", rep.dim);
    for i in 0..twirled.rows() {
        let mut row = String::new();
        for j in 0..twirled.cols() {
            let v = twirled[(i, j)];
            row.push_str(&format!("{:>13.5e}{:+.5e}i ", v.re, v.im));
        }
        println!("{row}");
    }
    let certificate = commutant_certificate(rep, &twirled)?;
    println!("max generator commutator norm: {}", format_f64(certificate));
    Ok(())
}

/// `list`: enumerate the built-in experiments.
pub fn cmd_list() -> Result<(), CliError> {
    for name in experiment_names() {
        let exp = make_experiment(name)?;
        println!(
            "{name:<12} group {:<6} qubits {} params {}",
            exp.w_rep.group.name,
            exp.circuit.num_qubits,
            exp.num_params()
        );
    }
    Ok(())
}
