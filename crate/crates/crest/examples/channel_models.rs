//! Generate both channel families and inspect their compressibility.
//!
//! Run with: cargo run --release --example channel_models

use crest::channel::{
    best_k_term_error, gain_matrix, gen_group_channels, gen_sparse_channels, GroupModelConfig, Lp,
    SparseModelConfig,
};

fn main() {
    // Five groups of five users; cross-group path loss drawn as 10^(z/10).
    let grouped = GroupModelConfig::random_pathloss_db(vec![5; 5], 7, 8);
    let h = gen_group_channels(&grouped).unwrap();
    println!("grouped channel, N = {}", h.n_nodes());
    println!("pathloss matrix:");
    for g in 0..5 {
        let row: Vec<String> = (0..5)
            .map(|f| format!("{:5.3}", grouped.pathloss[(g, f)]))
            .collect();
        println!("  [{}]", row.join(", "));
    }

    // Best-k-term error of a few rows: how close is each receiver's channel
    // vector to an exactly k-sparse one?
    for receiver in [0, 12, 24] {
        let row = h.receiver_channels(receiver);
        let decays: Vec<String> = [0, 1, 2, 5, 10, 20]
            .iter()
            .map(|&k| format!("sigma_{k}={:.3}", best_k_term_error(&row, k, Lp::L1)))
            .collect();
        println!("receiver {receiver:2}: {}", decays.join(", "));
    }

    // Exactly sparse channels: every row has k nonzeros, the direct link is
    // forced onto the support.
    let sparse = gen_sparse_channels(&SparseModelConfig::new(25, 4, 99)).unwrap();
    let x = gain_matrix(&sparse);
    let nnz: usize = sparse
        .as_matrix()
        .iter()
        .filter(|c| c.norm() > 0.0)
        .count();
    println!("\nsparse channel: N = 25, k = 4, nonzeros = {nnz} (= 25 * 4)");
    println!(
        "direct-link gains present on every row: {}",
        (0..25).all(|i| x.entry(i, i) > 0.0)
    );
    let row = sparse.receiver_channels(3);
    println!(
        "receiver 3: |supp| = {}, sigma_4 = {:.1e}",
        row.iter().filter(|c| c.norm() > 0.0).count(),
        best_k_term_error(&row, 4, Lp::L1)
    );
}
