//! A small end-to-end sum-rate experiment writing CSV, the same thing the
//! `crest simulate` subcommand does from a TOML config.
//!
//! Run with: cargo run --release --example sum_rate_experiment

use crest::bpdn::SolverOptions;
use crest::experiments::{
    rows_to_csv, run_sumrate_experiment, ChannelSetup, EstimatorChoice, NoiseConfig,
    PathlossSetup, RbarRule, SimConfig,
};

fn main() {
    let cfg = SimConfig {
        n: 25,
        cellular: vec![],
        channel: ChannelSetup::Group {
            group_sizes: vec![5; 5],
            pathloss: PathlossSetup::RandomDb,
        },
        power_grid: vec![1.0],
        rbar_rule: RbarRule::FractionOfSingleLink,
        eps: 0.0,
        m_grid: vec![10, 15, 20, 25],
        estimator: EstimatorChoice::Both,
        noise: NoiseConfig::None,
        trials: 30,
        master_seed: 2024,
        record_timing: false,
        exhaustive_cap: 16,
        solver_failure_budget: 0.05,
        solver: SolverOptions::default(),
    };
    let outcome = run_sumrate_experiment(&cfg).unwrap();
    let run = &outcome.runs[0];

    println!("mean true sum rate (nats) over {} trials:", cfg.trials);
    println!("{:>6} {:>14} {:>16} {:>14}", "M/N", "linear-pinv", "nonlinear-bpdn", "perfect");
    for &m in &cfg.m_grid {
        let m_over_n = m as f64 / cfg.n as f64;
        let mean = |est: &str| -> f64 {
            let vals: Vec<f64> = run
                .rows
                .iter()
                .filter(|r| (r.m_over_n - m_over_n).abs() < 1e-12 && r.estimator == est)
                .map(|r| r.sum_rate_true_at_decision)
                .collect();
            vals.iter().sum::<f64>() / vals.len() as f64
        };
        let perfect: f64 = run
            .rows
            .iter()
            .filter(|r| (r.m_over_n - m_over_n).abs() < 1e-12)
            .map(|r| r.sum_rate_perfect_csi)
            .sum::<f64>()
            / (2 * cfg.trials) as f64;
        println!(
            "{m_over_n:>6.2} {:>14.4} {:>16.4} {:>14.4}",
            mean("linear-pinv"),
            mean("nonlinear-bpdn"),
            perfect
        );
    }

    let out = std::env::temp_dir().join("crest_sum_rate_demo.csv");
    std::fs::write(&out, rows_to_csv(&run.rows).unwrap()).unwrap();
    println!(
        "\n{} rows written to {} ({} solver failures of {} solves)",
        run.rows.len(),
        out.display(),
        run.solver_failures,
        run.total_solves
    );
}
