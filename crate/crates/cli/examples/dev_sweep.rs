//! Temporary development harness: convergence statistics per experiment/seed.

use rand::SeedableRng;
use symvqc_core::experiments::{make_experiment, DataPoint};
use symvqc_core::groups::enumerate_group;
use symvqc_core::learner::{invariance_gap, train, TrainConfig};

fn dist_to_pi_multiple(x: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let r = (x / pi).round();
    (x - r * pi).abs()
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    let epochs: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(150);
    let steps_per_epoch: usize = std::env::args()
        .nth(3)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let lr: f64 = std::env::var("SWEEP_LR")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.1);
    let seeds: Vec<u64> = vec![1, 2, 3, 4, 5];

    if which == "c2" || which == "c2c2" || which == "all" {
        for name in ["c2", "c2c2"] {
            if which != "all" && which != name {
                continue;
            }
            let exp = make_experiment(name).unwrap();
            for &seed in &seeds {
                let cfg = TrainConfig {
                    experiment: name.into(),
                    seed,
                    epochs,
                    steps_per_epoch,
                    learning_rate: lr,
                    ..exp.defaults.clone()
                };
                let t0 = std::time::Instant::now();
                let rec = train(&cfg, &exp).unwrap();
                let th = &rec.final_params;
                let d01 = dist_to_pi_multiple(th[0] - th[1]);
                let d23 = dist_to_pi_multiple(th[2] - th[3]);
                println!(
                    "{name} seed {seed}: val {:.2e} d01 {:.3} d23 {:.3} t={:?} theta {:?}",
                    rec.val_loss.last().unwrap(),
                    d01,
                    d23,
                    t0.elapsed(),
                    th.iter().map(|v| (v * 100.0).round() / 100.0).collect::<Vec<_>>()
                );
            }
        }
    }

    if which == "d4" || which == "all" {
        let exp = make_experiment("d4").unwrap();
        let members = enumerate_group(&exp.w_rep, 8).unwrap();
        for &seed in &seeds {
            let cfg = TrainConfig {
                experiment: "d4".into(),
                seed,
                epochs,
                steps_per_epoch,
                learning_rate: lr,
                ..exp.defaults.clone()
            };
            let t0 = std::time::Instant::now();
            let rec = train(&cfg, &exp).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(777);
            let pts = exp.sample_data(20, &mut rng);
            let mut max_spread = 0.0f64;
            for s in &pts {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for m in &members {
                    let moved = exp.apply_element(&m.element, &s.point).unwrap();
                    let h = exp.estimate(&rec.final_params, &moved).unwrap();
                    lo = lo.min(h);
                    hi = hi.max(h);
                }
                max_spread = max_spread.max(hi - lo);
            }
            println!(
                "d4 seed {seed}: val {:.2e} orbit spread {:.2e} t={:?}",
                rec.val_loss.last().unwrap(),
                max_spread,
                t0.elapsed()
            );
        }
    }

    if which == "s6" || which == "all" {
        let exp = make_experiment("s6").unwrap();
        for &seed in &seeds {
            let cfg = TrainConfig {
                experiment: "s6".into(),
                seed,
                epochs,
                steps_per_epoch,
                learning_rate: lr,
                ..exp.defaults.clone()
            };
            let t0 = std::time::Instant::now();
            let rec = train(&cfg, &exp).unwrap();
            let th = &rec.final_params;
            let mean = th.iter().sum::<f64>() / th.len() as f64;
            let sd = (th.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (th.len() as f64 - 1.0))
                .sqrt();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(778);
            let pts: Vec<DataPoint> = exp
                .sample_data(50, &mut rng)
                .into_iter()
                .map(|s| s.point)
                .collect();
            let (gap0, _) = invariance_gap(&exp, &rec.initial_params, &pts).unwrap();
            let (gap1, _) = invariance_gap(&exp, &rec.final_params, &pts).unwrap();
            println!(
                "s6 seed {seed}: val {:.2e} sd {:.4} gap {:.2e} -> {:.2e} (x{:.0}) mean_theta {:.3} t={:?}",
                rec.val_loss.last().unwrap(),
                sd,
                gap0,
                gap1,
                gap0 / gap1,
                mean,
                t0.elapsed()
            );
        }
    }

    if which == "line" || which == "all" {
        let exp = make_experiment("line2x2").unwrap();
        for &seed in &seeds {
            let cfg = TrainConfig {
                experiment: "line2x2".into(),
                seed,
                epochs,
                steps_per_epoch,
                learning_rate: lr,
                ..exp.defaults.clone()
            };
            let t0 = std::time::Instant::now();
            let rec = train(&cfg, &exp).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(779);
            let held_out = exp.sample_data(200, &mut rng);
            let mut correct = 0usize;
            for s in &held_out {
                let h = exp.estimate(&rec.final_params, &s.point).unwrap();
                if (h > 0.0) == (s.label > 0.0) {
                    correct += 1;
                }
            }
            println!(
                "line2x2 seed {seed}: val {:.3} acc {}/200 theta {:?} t={:?}",
                rec.val_loss.last().unwrap(),
                correct,
                rec.final_params,
                t0.elapsed()
            );
        }
    }

    if which == "intertwiner" || which == "all" {
        let exp = make_experiment("intertwiner").unwrap();
        for &seed in &seeds[..2] {
            let cfg = TrainConfig {
                experiment: "intertwiner".into(),
                seed,
                epochs,
                steps_per_epoch,
                learning_rate: lr,
                ..exp.defaults.clone()
            };
            let rec = train(&cfg, &exp).unwrap();
            println!(
                "intertwiner seed {seed}: first {:.2e} val {:.2e}",
                rec.val_loss.first().unwrap(),
                rec.val_loss.last().unwrap()
            );
        }
    }
}
