//! Rates, estimated rates and the worst-case rate-gap bound.
//!
//! Run with: cargo run --release --example rate_gaps

use crest::channel::{gain_matrix, gen_group_channels, GroupModelConfig};
use crest::estimators::GainEstimate;
use crest::rates::{rate, rate_gap, sinr, PowerProfile};
use crest::seed::rng_from;
use rand::Rng;

fn main() {
    let n = 8;
    let h = gen_group_channels(&GroupModelConfig::iid(n, 21)).unwrap();
    let x = gain_matrix(&h);
    let pp = PowerProfile::uniform(n, 5.0);
    let members: Vec<usize> = (0..n).collect();

    println!("receiver | SINR (all {n} active) | rate [nats]");
    for i in 0..n {
        println!(
            "{i:>8} | {:>20.4} | {:.4}",
            sinr(&x, i, &members, &pp).unwrap(),
            rate(&x, i, &members, &pp).unwrap()
        );
    }

    // Perturb the gains and compare the realized rate gap against the
    // worst-case bound 2P sum |x - x_hat|.
    let mut rng = rng_from(22);
    println!("\nperturbed gain estimates vs the rate-gap bound:");
    println!("{:>8} {:>12} {:>12} {:>8}", "receiver", "gap", "bound", "ratio");
    let mut worst = 0.0f64;
    for i in 0..n {
        let est = GainEstimate {
            receiver: i,
            gains: x.receiver_gains(i).map(|g| g * rng.random_range(0.8..1.2)),
        };
        let rep = rate_gap(&x, &est, i, &members, &pp).unwrap();
        let ratio = rep.gap / rep.lipschitz_bound.max(f64::MIN_POSITIVE);
        worst = worst.max(ratio);
        println!(
            "{i:>8} {:>12.5} {:>12.5} {:>8.3}",
            rep.gap, rep.lipschitz_bound, ratio
        );
    }
    println!("\nworst gap/bound ratio: {worst:.3} (never exceeds 1)");
}
