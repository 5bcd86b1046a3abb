//! Noise-constrained ℓ1 recovery of channel rows from compressed
//! measurements: exact recovery, noisy recovery inside a certified ball,
//! and detection of an impossible constraint.
//!
//! Run with: cargo run --release --example sparse_recovery

use crest::bpdn::{solve_bpdn, BpdnProblem, SolverOptions};
use crest::channel::{gen_sparse_channels, SparseModelConfig, SupportRule};
use crest::seed::derive;
use crest::sensing::{gen_pilot_matrix, measure, NoiseModel};

fn main() {
    let (n, k) = (64, 4);
    let opts = SolverOptions::default();

    println!("exact recovery of {k}-sparse rows of length {n}, noiseless:");
    println!("{:>4} {:>10} {:>12} {:>8}", "M", "rel err", "residual", "iters");
    for m in [16, 24, 32, 48] {
        let h = gen_sparse_channels(&SparseModelConfig {
            n_nodes: n,
            sparsity: k,
            support_rule: SupportRule::UniformRandom,
            seed: derive(1, m as u64),
        })
        .unwrap();
        let truth = h.receiver_channels(0);
        let phi = gen_pilot_matrix(m, n, derive(2, m as u64));
        let z = phi.as_matrix() * &truth;
        let sol = solve_bpdn(&BpdnProblem { phi: &phi, z: &z, xi: 0.0 }, &opts).unwrap();
        println!(
            "{m:>4} {:>10.2e} {:>12.2e} {:>8}",
            (&sol.x_hat - &truth).norm() / truth.norm(),
            sol.residual_norm,
            sol.iterations
        );
    }

    println!("\nquantized feedback with certified radius:");
    let h = gen_sparse_channels(&SparseModelConfig::new(n, k, 11)).unwrap();
    let phi = gen_pilot_matrix(32, n, 12);
    let fb = measure(&phi, &h, &NoiseModel::ScalarQuantizer { step: 0.02 }, 0).unwrap();
    let sol = solve_bpdn(
        &BpdnProblem { phi: &phi, z: &fb.z, xi: fb.xi_bound },
        &opts,
    )
    .unwrap();
    println!(
        "  xi = {:.4}: converged={} residual={:.4} error={:.4}",
        fb.xi_bound,
        sol.converged,
        sol.residual_norm,
        (&sol.x_hat - h.receiver_channels(0)).norm()
    );

    // With more pilots than nodes a noisy measurement leaves the range of
    // the pilot matrix, so claiming xi = 0 makes the constraint set empty.
    let tall_phi = gen_pilot_matrix(2 * n, n, 13);
    let noisy = measure(&tall_phi, &h, &NoiseModel::ScalarQuantizer { step: 0.02 }, 0).unwrap();
    match solve_bpdn(
        &BpdnProblem { phi: &tall_phi, z: &noisy.z, xi: 0.0 },
        &opts,
    ) {
        Err(err) => println!("  claiming xi = 0 on out-of-range data: {err}"),
        Ok(sol) => println!("  claiming xi = 0: converged = {}", sol.converged),
    }
}
