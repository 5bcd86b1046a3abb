//! A condensed invariant suite behind `crest selftest`.
//!
//! Each check is a fast randomized or closed-form audit of one module
//! contract; the full statistical versions live in the acceptance test
//! suite.

use nalgebra::{DMatrix, DVector};

use super::config::{ChannelSetup, EstimatorChoice, NoiseConfig, PathlossSetup, RbarRule, SimConfig};
use super::output::rows_to_csv;
use super::sumrate::run_sumrate_experiment;
use crate::bounds;
use crate::bpdn::{solve_bpdn, BpdnProblem, SolverOptions};
use crate::channel::{gain_matrix, gen_group_channels, gen_sparse_channels, GainMatrix,
    GroupModelConfig, SparseModelConfig, SupportRule};
use crate::estimators::{GainEstimate, LinearDecoder};
use crate::rates::{rate_gap, PowerProfile};
use crate::scheduler::{
    is_feasible, pair_exhaustive, pair_greedy, true_rate_oracle, FeasibleUnder,
};
use crate::seed::{derive, rng_from};
use crate::sensing::{concentration_probe, gen_pilot_matrix};
use rand::Rng;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct SelftestCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// All checks with an aggregate verdict.
#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub checks: Vec<SelftestCheck>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &'static str, run: impl FnOnce() -> std::result::Result<String, String>) -> SelftestCheck {
    match run() {
        Ok(detail) => SelftestCheck {
            name,
            passed: true,
            detail,
        },
        Err(detail) => SelftestCheck {
            name,
            passed: false,
            detail,
        },
    }
}

/// Run the condensed invariant suite.
pub fn selftest() -> SelftestReport {
    SelftestReport {
        checks: vec![
            check("constant-pins", constants_pins),
            check("rate-gap-bound", rate_gap_bound),
            check("pseudo-inverse-identities", pseudo_inverse_identities),
            check("pilot-concentration", pilot_concentration),
            check("sparse-recovery", sparse_recovery),
            check("discovery-pairing", discovery_pairing),
            check("deterministic-output", deterministic_output),
        ],
    }
}

fn constants_pins() -> std::result::Result<String, String> {
    let c1 = bounds::rip_c1();
    if (c1 - 6.32843).abs() > 1e-5 {
        return Err(format!("C1 = {c1}, expected 6.32843"));
    }
    let kappa = bounds::kappa();
    if (kappa - 6.51778).abs() > 1e-4 {
        return Err(format!("kappa = {kappa}, expected 6.51778"));
    }
    let (c2, c3) = bounds::cs_error_constants(0.0).map_err(|e| e.to_string())?;
    if (c2 - 2.0).abs() > 1e-12 || (c3 - 2.0f64.sqrt()).abs() > 1e-12 {
        return Err(format!("C2(0) = {c2}, C3(0) = {c3}"));
    }
    let m = bounds::rip_sample_count(&bounds::RipBoundQuery {
        k: 10,
        n: 10_000,
        delta: 1.0 / 3.0,
        eps_fail: 0.1,
    })
    .map_err(|e| e.to_string())?
    .m;
    if (m as i64 - 59_167).abs() > 1 {
        return Err(format!("pilot count {m}, expected 59167 +- 1"));
    }
    Ok(format!("C1={c1:.5}, kappa={kappa:.5}, M(10,1e4)={m}"))
}

fn rate_gap_bound() -> std::result::Result<String, String> {
    let mut rng = rng_from(0x5e1f);
    let trials = 10_000;
    for trial in 0..trials {
        let n = rng.random_range(2..8usize);
        let x = GainMatrix::from_gains(DMatrix::from_fn(n, n, |_, _| rng.random_range(0.0..5.0)))
            .map_err(|e| e.to_string())?;
        let p = rng.random_range(0.1..10.0);
        let pp = PowerProfile::uniform(n, p);
        let size = rng.random_range(1..=n);
        let mut members: Vec<usize> = (0..n).collect();
        for idx in (1..n).rev() {
            let j = rng.random_range(0..=idx);
            members.swap(idx, j);
        }
        members.truncate(size);
        members.sort_unstable();
        let i = members[rng.random_range(0..size)];
        let est = GainEstimate {
            receiver: i,
            gains: DVector::from_fn(n, |_, _| rng.random_range(0.0..5.0)),
        };
        let report = rate_gap(&x, &est, i, &members, &pp).map_err(|e| e.to_string())?;
        if report.gap > report.lipschitz_bound + 1e-9 {
            return Err(format!(
                "trial {trial}: gap {} exceeds bound {}",
                report.gap, report.lipschitz_bound
            ));
        }
    }
    Ok(format!("{trials} random instances, zero violations"))
}

fn pseudo_inverse_identities() -> std::result::Result<String, String> {
    for t in 0..10u64 {
        let (m, n) = (6 + (t % 4) as usize, 16 + (t % 9) as usize);
        let phi = gen_pilot_matrix(m, n, derive(0x91b5, t));
        let dec = LinearDecoder::pseudo_inverse(&phi).map_err(|e| e.to_string())?;
        let right = phi.as_matrix() * dec.psi() - DMatrix::identity(m, m);
        if right.norm() > 1e-10 {
            return Err(format!("trial {t}: right-inverse residual {}", right.norm()));
        }
        let proj = dec.psi() * phi.as_matrix();
        if (&proj * &proj - &proj).norm() > 1e-9 {
            return Err(format!("trial {t}: projector not idempotent"));
        }
    }
    Ok("10 random pilot matrices".into())
}

fn pilot_concentration() -> std::result::Result<String, String> {
    let (m, eps, trials) = (100, 0.5, 2000);
    let bound = bounds::gaussian_concentration_bound(m, eps);
    let freq = concentration_probe(m, 20, eps, trials, 0xc0de);
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    if freq > bound + 3.0 * sigma {
        return Err(format!("frequency {freq} above bound {bound}"));
    }
    Ok(format!("empirical {freq:.4} <= bound {bound:.4} + 3 sigma"))
}

fn sparse_recovery() -> std::result::Result<String, String> {
    let (n, k, m) = (32, 2, 16);
    for t in 0..20u64 {
        let h = gen_sparse_channels(&SparseModelConfig {
            n_nodes: n,
            sparsity: k,
            support_rule: SupportRule::UniformRandom,
            seed: derive(0xbead, t),
        })
        .map_err(|e| e.to_string())?;
        let truth = h.receiver_channels(0);
        let phi = gen_pilot_matrix(m, n, derive(0xfeed, t));
        let z = phi.as_matrix() * &truth;
        let sol = solve_bpdn(
            &BpdnProblem {
                phi: &phi,
                z: &z,
                xi: 0.0,
            },
            &SolverOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        let rel = (&sol.x_hat - &truth).norm() / truth.norm();
        if !sol.converged || rel > 1e-6 {
            return Err(format!("trial {t}: converged={} rel={rel:.2e}", sol.converged));
        }
    }
    Ok("20/20 exact recoveries at half compression".into())
}

fn discovery_pairing() -> std::result::Result<String, String> {
    let mut rng = rng_from(0xd15c);
    for t in 0..100u64 {
        let n = 6 + (t % 5) as usize;
        let h = gen_group_channels(&GroupModelConfig::iid(n, derive(0xd15c, t)))
            .map_err(|e| e.to_string())?;
        let x = gain_matrix(&h);
        let pp = PowerProfile::uniform(n, rng.random_range(1.0..8.0));
        let rbar = vec![rng.random_range(0.0..0.4); n];
        let cellular = if t % 2 == 0 { vec![0] } else { vec![] };
        let oracle = true_rate_oracle(&x, &pp);
        let candidates: Vec<usize> = (0..n).filter(|i| !cellular.contains(i)).collect();
        let exhaustive = pair_exhaustive(&oracle, &cellular, &candidates, &rbar, 0.0, FeasibleUnder::TrueRates)
            .map_err(|e| e.to_string())?;
        let greedy = pair_greedy(&oracle, &cellular, &candidates, &rbar, 0.0, FeasibleUnder::TrueRates);
        for c in &cellular {
            if !exhaustive.members().contains(c) || !greedy.members().contains(c) {
                return Err(format!("trial {t}: cellular user dropped"));
            }
        }
        if exhaustive.feasible_under != FeasibleUnder::Unchecked
            && !is_feasible(&oracle, &exhaustive, &rbar, 0.0).map_err(|e| e.to_string())?
        {
            return Err(format!("trial {t}: exhaustive decision infeasible"));
        }
        let sum = |d: &crate::scheduler::SchedulingDecision| -> f64 {
            d.members().iter().map(|&i| oracle(i, d.members())).sum()
        };
        if sum(&greedy) > sum(&exhaustive) + 1e-9 {
            return Err(format!("trial {t}: greedy beat exhaustive"));
        }
    }
    Ok("100 random instances".into())
}

fn deterministic_output() -> std::result::Result<String, String> {
    let cfg = SimConfig {
        n: 6,
        cellular: vec![],
        channel: ChannelSetup::Group {
            group_sizes: vec![6],
            pathloss: PathlossSetup::Ones,
        },
        power_grid: vec![10.0],
        rbar_rule: RbarRule::FractionOfSingleLink,
        eps: 0.0,
        m_grid: vec![3, 6],
        estimator: EstimatorChoice::LinearPinv,
        noise: NoiseConfig::None,
        trials: 3,
        master_seed: 11,
        record_timing: false,
        exhaustive_cap: 16,
        solver_failure_budget: 1.0,
        solver: SolverOptions::default(),
    };
    let a = run_sumrate_experiment(&cfg).map_err(|e| e.to_string())?;
    let b = run_sumrate_experiment(&cfg).map_err(|e| e.to_string())?;
    let csv_a = rows_to_csv(&a.runs[0].rows).map_err(|e| e.to_string())?;
    let csv_b = rows_to_csv(&b.runs[0].rows).map_err(|e| e.to_string())?;
    if csv_a != csv_b {
        return Err("re-run produced different CSV bytes".into());
    }
    Ok(format!("{} identical CSV bytes", csv_a.len()))
}
