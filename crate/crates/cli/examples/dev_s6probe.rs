//! Temporary probe: S6 trajectory under different learning rates.

use rand::SeedableRng;
use symvqc_core::experiments::{make_experiment, DataPoint};
use symvqc_core::learner::{invariance_gap, train, SpsaConfig, TrainConfig};

fn main() {
    let lr: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.1);
    let epochs: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    let seed: u64 = std::env::args()
        .nth(3)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let c0: f64 = std::env::args()
        .nth(4)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.1);

    let exp = make_experiment("s6").unwrap();
    let cfg = TrainConfig {
        experiment: "s6".into(),
        epochs,
        steps_per_epoch: 100,
        learning_rate: lr,
        spsa: SpsaConfig { c0, gamma: 0.101 },
        seed,
        ..exp.defaults.clone()
    };
    let rec = train(&cfg, &exp).unwrap();
    for (e, th) in rec.params.iter().enumerate() {
        if (e + 1) % (epochs / 10).max(1) != 0 {
            continue;
        }
        let mean = th.iter().sum::<f64>() / th.len() as f64;
        let sd = (th.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (th.len() as f64 - 1.0))
            .sqrt();
        println!(
            "epoch {:>3}: val {:.2e} sd {:.3} mean {:.3} theta {:?}",
            e + 1,
            rec.val_loss[e],
            sd,
            mean,
            th.iter().map(|v| (v * 100.0).round() / 100.0).collect::<Vec<_>>()
        );
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(778);
    let pts: Vec<DataPoint> = exp
        .sample_data(50, &mut rng)
        .into_iter()
        .map(|s| s.point)
        .collect();
    let (g0, _) = invariance_gap(&exp, &rec.initial_params, &pts).unwrap();
    let (g1, _) = invariance_gap(&exp, &rec.final_params, &pts).unwrap();
    println!("gap {g0:.3e} -> {g1:.3e} (x{:.0})", g0 / g1);
}
