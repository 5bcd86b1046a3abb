//! One full controller round: sense, estimate, discover direct-link
//! candidates, pair them with the cellular users, audit feasibility.
//!
//! Run with: cargo run --release --example discovery_pairing

use crest::bpdn::SolverOptions;
use crest::channel::{gain_matrix, gen_group_channels, GroupModelConfig};
use crest::estimators::nonlinear_gain_estimate;
use crest::rates::{rate, PowerProfile};
use crest::scheduler::{
    discover_estimated, discover_perfect, estimated_rate_oracle, is_feasible, pair_exhaustive,
    true_rate_oracle, FeasibleUnder,
};
use crest::sensing::{gen_pilot_matrix, measure, NoiseModel};
use nalgebra::DMatrix;

fn main() {
    let n = 12;
    let cellular = vec![0, 4]; // one per group, so they barely interfere
    let power = 10.0;
    // Three groups of four with strong cross-group attenuation: rows are
    // dominated by the in-group coefficients, so most interference between
    // groups is negligible and pairing across groups pays off.
    let mut pathloss = DMatrix::from_element(3, 3, 0.08);
    pathloss.fill_diagonal(1.0);
    let h = gen_group_channels(&GroupModelConfig {
        group_sizes: vec![4, 4, 4],
        pathloss,
        seed: 32,
    })
    .unwrap();
    let x = gain_matrix(&h);
    let pp = PowerProfile::uniform(n, power);
    let rbar = vec![0.1 * (1.0f64 + power).ln(); n];

    // What a controller with perfect knowledge would do.
    let ideal = discover_perfect(&x, &cellular, &rbar, &pp);
    let true_oracle = true_rate_oracle(&x, &pp);
    let ideal_decision = pair_exhaustive(
        &true_oracle,
        &cellular,
        &ideal.candidates,
        &rbar,
        0.0,
        FeasibleUnder::TrueRates,
    )
    .unwrap();
    println!("perfect knowledge:");
    println!("  candidates {:?}", ideal.candidates);
    println!("  decision   {:?}", ideal_decision.members());

    // The compressed pipeline: M = 6 pilots for 12 users.
    let phi = gen_pilot_matrix(8, n, 33);
    let estimates: Vec<_> = (0..n)
        .map(|i| {
            let fb = measure(&phi, &h, &NoiseModel::Noiseless, i).unwrap();
            nonlinear_gain_estimate(&phi, &fb, &SolverOptions::default())
                .unwrap()
                .0
        })
        .collect();
    let discovered = discover_estimated(&estimates, &cellular, &rbar, &pp, 0.0);
    let est_oracle = estimated_rate_oracle(&estimates, &pp);
    let decision = pair_exhaustive(
        &est_oracle,
        &cellular,
        &discovered.candidates,
        &rbar,
        0.0,
        FeasibleUnder::EstimatedRates,
    )
    .unwrap();
    println!("\ncompressed measurements (M = 8 of N = 12):");
    println!("  candidates {:?}", discovered.candidates);
    println!("  decision   {:?}", decision.members());
    println!(
        "  feasible under estimates: {}",
        is_feasible(&est_oracle, &decision, &rbar, 0.0).unwrap()
    );

    let sum = |members: &[usize]| -> f64 {
        members
            .iter()
            .map(|&i| rate(&x, i, members, &pp).unwrap())
            .sum()
    };
    println!(
        "\ntrue sum rate: perfect decision {:.4} nats, compressed decision {:.4} nats",
        sum(ideal_decision.members()),
        sum(decision.members())
    );
}
