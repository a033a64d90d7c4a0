//! Temporary probe: is the S6 estimate invariant under per-node sign flips
//! of the angles? And does a coherent init converge to a common value?

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symvqc_core::experiments::{make_experiment, DataPoint, GraphData};
use symvqc_core::learner::{batch_loss, invariance_gap, spsa_gradient, BatchItem};

fn main() {
    let exp = make_experiment("s6").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5151);

    // Part 1: per-node sign flip comparison.
    println!("-- per-node sign flip deviations --");
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let g = GraphData::sample(&mut rng);
        let p = DataPoint::Graph(g);
        let theta: Vec<f64> = (0..6).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let h0 = exp.estimate(&theta, &p).unwrap();
        for i in 0..6 {
            let mut flipped = theta.clone();
            flipped[i] = -flipped[i];
            let h1 = exp.estimate(&flipped, &p).unwrap();
            worst = worst.max((h1 - h0).abs());
        }
        // global flip
        let neg: Vec<f64> = theta.iter().map(|v| -v).collect();
        let hg = exp.estimate(&neg, &p).unwrap();
        if (hg - h0).abs() > 1e-12 {
            println!("global flip differs by {:.3e}", (hg - h0).abs());
        }
    }
    println!("max per-node sign-flip deviation: {worst:.3e}");

    // Part 2: coherent init (U[0,1)), lr/steps from args.
    let lr: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.1);
    let total_steps: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(15000);
    let init_hi: f64 = std::env::args()
        .nth(3)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);
    let spsa = symvqc_core::learner::SpsaConfig::default();
    for seed in 1..=5u64 {
        let mut init_rng = ChaCha8Rng::seed_from_u64(seed);
        let mut batch_rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let mut spsa_rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdef);
        let mut theta: Vec<f64> = (0..6).map(|_| init_rng.gen_range(0.0..init_hi)).collect();
        let theta0 = theta.clone();
        for k in 0..total_steps {
            let batch: Vec<BatchItem> = exp
                .sample_data(100, &mut batch_rng)
                .into_iter()
                .map(|s| BatchItem::Equiv {
                    generator: batch_rng.gen_range(0..2),
                    point: s.point,
                })
                .collect();
            let grad = spsa_gradient(&exp, &theta, &batch, k, &spsa, &mut spsa_rng).unwrap();
            for (t, g) in theta.iter_mut().zip(grad.iter()) {
                *t -= lr * g;
            }
        }
        let mean = theta.iter().sum::<f64>() / 6.0;
        let sd = (theta.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 5.0).sqrt();
        let mut vrng = ChaCha8Rng::seed_from_u64(778);
        let pts: Vec<DataPoint> = exp
            .sample_data(50, &mut vrng)
            .into_iter()
            .map(|s| s.point)
            .collect();
        let (g0, _) = invariance_gap(&exp, &theta0, &pts).unwrap();
        let (g1, _) = invariance_gap(&exp, &theta, &pts).unwrap();
        let vbatch: Vec<BatchItem> = exp
            .sample_data(100, &mut vrng)
            .into_iter()
            .enumerate()
            .map(|(i, s)| BatchItem::Equiv {
                generator: i % 2,
                point: s.point,
            })
            .collect();
        let val = batch_loss(&exp, &theta, &vbatch).unwrap();
        println!(
            "seed {seed}: val {val:.2e} sd {sd:.4} gap {g0:.2e}->{g1:.2e} (x{:.0}) theta {:?}",
            g0 / g1,
            theta.iter().map(|v| (v * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        );
    }
}
