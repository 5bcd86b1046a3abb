//! Simultaneous pilot sensing with certified noise bounds, and the
//! concentration of ‖Φa‖² against its analytic tail bound.
//!
//! Run with: cargo run --release --example pilot_sensing

use crest::bounds::gaussian_concentration_bound;
use crest::channel::{gen_group_channels, GroupModelConfig};
use crest::sensing::{concentration_probe, gen_pilot_matrix, measure, NoiseModel};

fn main() {
    let (n, m) = (25, 12);
    let h = gen_group_channels(&GroupModelConfig::iid(n, 5)).unwrap();
    let phi = gen_pilot_matrix(m, n, 6);
    println!("one pilot matrix ({m} x {n}) serves every receiver\n");

    let models = [
        ("noiseless", NoiseModel::Noiseless),
        ("bounded-ball xi=0.2", NoiseModel::BoundedBall { xi: 0.2, seed: 7 }),
        ("quantizer step=0.05", NoiseModel::ScalarQuantizer { step: 0.05 }),
    ];
    for (name, noise) in &models {
        let mut worst = 0.0f64;
        let mut bound = 0.0;
        for receiver in 0..n {
            let fb = measure(&phi, &h, noise, receiver).unwrap();
            let mu = &fb.z - phi.as_matrix() * h.receiver_channels(receiver);
            worst = worst.max(mu.norm());
            bound = fb.xi_bound;
        }
        println!("{name:22} worst ||mu|| = {worst:.4}  certified bound = {bound:.4}");
    }

    println!("\nconcentration of ||Phi a||^2 around ||a||^2 (10000 redraws each):");
    println!("{:>5} {:>5} {:>12} {:>12}", "M", "eps", "empirical", "bound");
    for m in [50, 100, 200] {
        for eps in [0.3, 0.5] {
            let freq = concentration_probe(m, 16, eps, 10_000, 42);
            let bound = gaussian_concentration_bound(m, eps);
            println!("{m:>5} {eps:>5} {freq:>12.4} {bound:>12.4}");
        }
    }
}
