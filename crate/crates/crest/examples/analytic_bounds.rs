//! Every closed-form guarantee evaluated at concrete numbers: sample
//! counts, isometry constants, recovery error constants, rate-gap
//! thresholds and the generic probability bound.
//!
//! Run with: cargo run --release --example analytic_bounds

use crest::bounds::{
    compression_curve, cs_error_constants, cs_rate_gap_threshold, exhaustive_rip_constant, kappa,
    linear_rate_gap_threshold, rate_est_bound_rhs, rip_c1, rip_delta_bound, rip_sample_count,
    CombinatorialFactor, ConcentrationProfile, RateEstBoundQuery, RipBoundQuery,
};
use crest::sensing::gen_pilot_matrix;

fn main() {
    println!("constants: C1 = {:.5}, kappa = {:.5}", rip_c1(), kappa());
    let (c2, c3) = cs_error_constants(0.2).unwrap();
    println!("recovery error constants at delta = 0.2: C2 = {c2:.4}, C3 = {c3:.4}");

    let q = RipBoundQuery {
        k: 10,
        n: 10_000,
        delta: 1.0 / 3.0,
        eps_fail: 0.1,
    };
    let m = rip_sample_count(&q).unwrap().m;
    println!("\npilots for delta_10 <= 1/3 at N = 10^4: M = {m} (exceeds N: the");
    println!("uniform-recovery guarantee only pays off for much larger systems)");
    println!(
        "achieved delta bound at that M: {:.4}",
        rip_delta_bound(m, q.n, q.k, q.eps_fail).unwrap()
    );

    println!("\ncompression curve (k = 10, failure probability 0.9):");
    let grid: Vec<u64> = (6..=22).step_by(4).map(|e| 1u64 << e).collect();
    for (n, ratio) in compression_curve(10, 0.9, 1.0 / 3.0, &grid).unwrap() {
        println!("  N = {n:>8}: M/N = {ratio:.4}");
    }

    // An exhaustively certified isometry constant for a desk-scale matrix.
    let phi = gen_pilot_matrix(22, 24, 5);
    let delta = exhaustive_rip_constant(&phi, 1).unwrap();
    println!("\nexact delta_1 of a 22x24 pilot draw: {delta:.4}");

    // Rate-gap thresholds for both estimator families.
    let cs = cs_rate_gap_threshold(1.0, 1.0, 0.0, 5, 0.1, 0.2).unwrap();
    println!("\nsparse-estimator rate-gap threshold (exactly 5-sparse, xi = 0.1): {cs:.4}");
    let lin = linear_rate_gap_threshold(1.0, 4, 100, 50, 5, 0.1, CombinatorialFactor::Binomial);
    println!("linear-estimator threshold (n=4, N=100, M=50, k=5, eps=0.1): {lin:.2}");

    // The generic union bound, raw and clamped.
    let bound = rate_est_bound_rhs(
        &RateEstBoundQuery {
            n_active: 5,
            n_nodes: 25,
            tail_prob_smax: 0.0,
            tail_prob_noise: 0.0,
        },
        &ConcentrationProfile::gaussian(25),
        0.5,
    );
    println!(
        "\ngeneric probability bound at desk scale (N=25, n=5, M=25, eps=0.5):\n  raw {:.3e}, clamped {}",
        bound.raw, bound.clamped
    );
    let threshold = crest::bounds::rate_est_gap_threshold(1.0, 5.0, 5, 1.0, 0.0, 0.5);
    println!("  paired deviation threshold at u0=1, rho0=0: {threshold:.3}");
    println!("(loose for small systems, as expected)");
}
