//! Empirical exact-recovery phase map over sparsity and pilot count,
//! the same computation as `crest recover`.
//!
//! Run with: cargo run --release --example recovery_phase

use crest::bpdn::SolverOptions;
use crest::experiments::{run_recovery_phase, RecoveryPhaseArgs};

fn main() {
    let args = RecoveryPhaseArgs {
        n: 64,
        k_grid: vec![1, 2, 4, 6, 8, 12],
        m_grid: vec![8, 16, 24, 32, 48],
        trials: 40,
        seed: 7,
        solver: SolverOptions::default(),
    };
    let rows = run_recovery_phase(&args).unwrap();

    println!(
        "fraction of exact recoveries (N = {}, {} trials per cell):\n",
        args.n, args.trials
    );
    print!("{:>6}", "k\\M");
    for &m in &args.m_grid {
        print!("{m:>7}");
    }
    println!();
    for &k in &args.k_grid {
        print!("{k:>6}");
        for &m in &args.m_grid {
            let row = rows
                .iter()
                .find(|r| r.k == k && r.m_pilots == m)
                .expect("cell");
            print!("{:>7.2}", row.fraction);
        }
        println!();
    }
    println!("\nthe transition tracks M ~ k log(N/k): more pilots are needed as");
    println!("rows get denser, far fewer than N once they are genuinely sparse");
}
