//! Linear versus sparse-recovery channel gain estimation as the pilot
//! count grows.
//!
//! Run with: cargo run --release --example gain_estimation

use crest::bpdn::SolverOptions;
use crest::channel::{gain_matrix, gen_sparse_channels, SparseModelConfig};
use crest::estimators::{linear_gain_estimate, nonlinear_gain_estimate, LinearDecoder};
use crest::seed::derive;
use crest::sensing::{gen_pilot_matrix, measure, NoiseModel};

fn main() {
    let (n, k, trials) = (32, 3, 50);
    println!("mean absolute gain error over {trials} trials, N={n}, k={k}:\n");
    println!(
        "{:>6} {:>14} {:>14} {:>14}",
        "M", "pseudo-inverse", "matched filter", "sparse recovery"
    );
    for m in [8, 16, 24, 32] {
        let mut err = [0.0f64; 3];
        for t in 0..trials {
            let h = gen_sparse_channels(&SparseModelConfig::new(n, k, derive(100 + m as u64, t)))
                .unwrap();
            let x = gain_matrix(&h);
            let phi = gen_pilot_matrix(m, n, derive(200 + m as u64, t));
            let receiver = (t % n as u64) as usize;
            let fb = measure(&phi, &h, &NoiseModel::Noiseless, receiver).unwrap();
            let truth = x.receiver_gains(receiver);

            let pinv = LinearDecoder::pseudo_inverse(&phi).unwrap();
            let mf = LinearDecoder::matched_filter(&phi);
            let (nl, _) = nonlinear_gain_estimate(&phi, &fb, &SolverOptions::default()).unwrap();
            for (slot, gains) in [
                linear_gain_estimate(&pinv, &fb).unwrap().gains,
                linear_gain_estimate(&mf, &fb).unwrap().gains,
                nl.gains,
            ]
            .into_iter()
            .enumerate()
            {
                err[slot] += (gains - &truth).iter().map(|e| e.abs()).sum::<f64>() / n as f64;
            }
        }
        let scale = trials as f64;
        println!(
            "{m:>6} {:>14.5} {:>14.5} {:>14.5}",
            err[0] / scale,
            err[1] / scale,
            err[2] / scale
        );
    }
    println!("\n(the matched filter never converges to the truth; the pseudo-inverse");
    println!(" improves like 1/sqrt(M); sparse recovery becomes exact once M is");
    println!(" a small multiple of k log(N/k))");
}
