//! Bound sweeps and the empirical recovery phase map.

use serde::Serialize;

use crate::bounds::{rip_sample_count, RipBoundQuery};
use crate::bpdn::{solve_bpdn, BpdnProblem, SolverOptions};
use crate::channel::{gen_sparse_channels, SparseModelConfig, SupportRule};
use crate::seed::derive;
use crate::sensing::gen_pilot_matrix;
use crate::{Error, Result};
use rayon::prelude::*;

/// Arguments of the pilot-count bound sweep.
#[derive(Debug, Clone)]
pub struct BoundsSweepArgs {
    pub k: u64,
    pub eps_fail: f64,
    pub delta: f64,
    pub n_min: u64,
    pub n_max: u64,
    /// Number of log-spaced grid points (deduplicated after rounding).
    pub points: usize,
}

/// One row of the compression curve.
#[derive(Debug, Clone, Serialize)]
pub struct CompressionRow {
    pub n_nodes: u64,
    pub m_pilots: u64,
    /// `min(M/N, 1)`.
    pub ratio: f64,
}

/// Evaluate the pilot-count bound over a log-spaced grid of system sizes.
pub fn run_bounds_sweep(args: &BoundsSweepArgs) -> Result<Vec<CompressionRow>> {
    if args.n_min < args.k.max(1) || args.n_max < args.n_min || args.points == 0 {
        return Err(Error::InvalidConfig(format!(
            "need k <= n_min <= n_max and points >= 1, got k={} n_min={} n_max={} points={}",
            args.k, args.n_min, args.n_max, args.points
        )));
    }
    let mut grid = Vec::with_capacity(args.points);
    if args.points == 1 || args.n_min == args.n_max {
        grid.push(args.n_min);
    } else {
        let (lo, hi) = ((args.n_min as f64).ln(), (args.n_max as f64).ln());
        for i in 0..args.points {
            let t = i as f64 / (args.points - 1) as f64;
            grid.push((lo + t * (hi - lo)).exp().round() as u64);
        }
    }
    grid.dedup();
    grid.iter()
        .map(|&n| {
            let count = rip_sample_count(&RipBoundQuery {
                k: args.k,
                n,
                delta: args.delta,
                eps_fail: args.eps_fail,
            })?;
            Ok(CompressionRow {
                n_nodes: n,
                m_pilots: count.m,
                ratio: (count.m as f64 / n as f64).min(1.0),
            })
        })
        .collect()
}

/// Arguments of the exact-recovery phase map.
#[derive(Debug, Clone)]
pub struct RecoveryPhaseArgs {
    pub n: usize,
    pub k_grid: Vec<usize>,
    pub m_grid: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverOptions,
}

/// One cell of the phase map.
#[derive(Debug, Clone, Serialize)]
pub struct RecoveryRow {
    pub k: usize,
    pub m_pilots: usize,
    pub trials: usize,
    pub successes: usize,
    pub fraction: f64,
}

/// Relative reconstruction error counting as exact recovery.
pub const RECOVERY_REL_TOL: f64 = 1e-4;

/// For every `(k, M)` cell: the fraction of noiseless sparse rows recovered
/// to relative error `1e-4` over seeded trials. Deterministic per seed.
pub fn run_recovery_phase(args: &RecoveryPhaseArgs) -> Result<Vec<RecoveryRow>> {
    if args.n == 0 || args.trials == 0 {
        return Err(Error::InvalidConfig(
            "recovery phase needs n >= 1 and trials >= 1".into(),
        ));
    }
    if args.k_grid.iter().any(|&k| k == 0 || k > args.n) {
        return Err(Error::InvalidConfig("k grid entries must lie in 1..=n".into()));
    }
    if args.m_grid.contains(&0) {
        return Err(Error::InvalidConfig("m grid entries must be positive".into()));
    }

    let mut rows = Vec::with_capacity(args.k_grid.len() * args.m_grid.len());
    for (k_idx, &k) in args.k_grid.iter().enumerate() {
        for (m_idx, &m) in args.m_grid.iter().enumerate() {
            let cell_seed = derive(args.seed, ((k_idx as u64) << 32) | m_idx as u64);
            let successes = (0..args.trials)
                .into_par_iter()
                .filter(|&t| recovery_trial(args, k, m, derive(cell_seed, t as u64)))
                .count();
            rows.push(RecoveryRow {
                k,
                m_pilots: m,
                trials: args.trials,
                successes,
                fraction: successes as f64 / args.trials as f64,
            });
        }
    }
    Ok(rows)
}

fn recovery_trial(args: &RecoveryPhaseArgs, k: usize, m: usize, seed: u64) -> bool {
    let h = gen_sparse_channels(&SparseModelConfig {
        n_nodes: args.n,
        sparsity: k,
        support_rule: SupportRule::UniformRandom,
        seed: derive(seed, 1),
    })
    .expect("validated sparse config");
    let truth = h.receiver_channels(0);
    let phi = gen_pilot_matrix(m, args.n, derive(seed, 2));
    let z = phi.as_matrix() * &truth;
    match solve_bpdn(
        &BpdnProblem {
            phi: &phi,
            z: &z,
            xi: 0.0,
        },
        &args.solver,
    ) {
        Ok(solution) => {
            solution.converged
                && (&solution.x_hat - &truth).norm() <= RECOVERY_REL_TOL * truth.norm()
        }
        Err(_) => false,
    }
}
