//! Simulation configuration: a TOML document with a strict schema.
//!
//! Unknown keys are rejected. Indices are 0-based. The full schema with
//! defaults is documented in the README.

use nalgebra::DMatrix;
use serde::Deserialize;

use crate::bpdn::SolverOptions;
use crate::channel::SupportRule;
use crate::{Error, Result};

/// Which gain estimator(s) a run evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorChoice {
    LinearPinv,
    NonlinearBpdn,
    Both,
}

impl EstimatorChoice {
    /// CSV labels of the estimators this choice runs, in emission order.
    pub fn labels(self) -> &'static [&'static str] {
        match self {
            EstimatorChoice::LinearPinv => &["linear-pinv"],
            EstimatorChoice::NonlinearBpdn => &["nonlinear-bpdn"],
            EstimatorChoice::Both => &["linear-pinv", "nonlinear-bpdn"],
        }
    }
}

/// Rate-requirement rule.
#[derive(Debug, Clone, PartialEq)]
pub enum RbarRule {
    /// `r̄_i = (1/10) log(1 + P)` for every user.
    FractionOfSingleLink,
    /// Explicit per-user requirements.
    Explicit(Vec<f64>),
}

impl RbarRule {
    /// Materialize the requirement vector for `n` users at power `p`.
    pub fn requirements(&self, n: usize, p: f64) -> Vec<f64> {
        match self {
            RbarRule::FractionOfSingleLink => vec![0.1 * p.ln_1p(); n],
            RbarRule::Explicit(list) => list.clone(),
        }
    }
}

/// Cross-group path-loss selection for the group channel model.
#[derive(Debug, Clone, PartialEq)]
pub enum PathlossSetup {
    /// `10^(z/10)`, `z` uniform in `[0, 1]`, symmetric, redrawn per trial.
    RandomDb,
    /// All coefficients 1 (a single statistical population).
    Ones,
    /// Fixed explicit matrix.
    Explicit(DMatrix<f64>),
}

/// Channel model of a run.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSetup {
    Group {
        group_sizes: Vec<usize>,
        pathloss: PathlossSetup,
    },
    Sparse {
        sparsity: usize,
        support_rule: SupportRule,
    },
}

/// Noise applied to every receiver's feedback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseConfig {
    None,
    BoundedBall { xi: f64 },
    ScalarQuantizer { step: f64 },
}

/// Validated simulation configuration.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub n: usize,
    pub cellular: Vec<usize>,
    pub channel: ChannelSetup,
    pub power_grid: Vec<f64>,
    pub rbar_rule: RbarRule,
    pub eps: f64,
    pub m_grid: Vec<usize>,
    pub estimator: EstimatorChoice,
    pub noise: NoiseConfig,
    pub trials: usize,
    pub master_seed: u64,
    /// Record wall-clock times in the output. Off by default: timing values
    /// are non-deterministic and would break byte-identical reruns.
    pub record_timing: bool,
    pub exhaustive_cap: usize,
    /// Maximal tolerated fraction of non-converged sparse-recovery solves.
    pub solver_failure_budget: f64,
    pub solver: SolverOptions,
}

impl SimConfig {
    /// Parse and validate a TOML document.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text)
            .map_err(|e| Error::InvalidConfig(format!("config parse error: {e}")))?;
        raw.validate()
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if self.m_grid.is_empty() || self.power_grid.is_empty() {
            return Err(Error::InvalidConfig(
                "m_grid and power_grid must be non-empty".into(),
            ));
        }
        if self.m_grid.iter().any(|&m| m == 0) {
            return Err(Error::InvalidConfig("pilot counts must be positive".into()));
        }
        // The pseudo-inverse decoder needs M <= N; the sparse-recovery
        // estimator accepts any M.
        if self.estimator != EstimatorChoice::NonlinearBpdn
            && self.m_grid.iter().any(|&m| m > self.n)
        {
            return Err(Error::InvalidConfig(format!(
                "pilot counts above N = {} are only valid with estimator = \"nonlinear-bpdn\"",
                self.n
            )));
        }
        if self.power_grid.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
            return Err(Error::InvalidConfig("powers must be positive".into()));
        }
        if self.eps.is_nan() || self.eps < 0.0 {
            return Err(Error::InvalidConfig("eps must be >= 0".into()));
        }
        if self.cellular.iter().any(|&c| c >= self.n) {
            return Err(Error::InvalidConfig(format!(
                "cellular indices must lie in 0..{}",
                self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.solver_failure_budget) {
            return Err(Error::InvalidConfig(
                "solver_failure_budget must lie in [0, 1]".into(),
            ));
        }
        if let RbarRule::Explicit(list) = &self.rbar_rule {
            if list.len() != self.n {
                return Err(Error::InvalidConfig(format!(
                    "rbar_list must have {} entries, got {}",
                    self.n,
                    list.len()
                )));
            }
        }
        match &self.channel {
            ChannelSetup::Group {
                group_sizes,
                pathloss,
            } => {
                if group_sizes.iter().sum::<usize>() != self.n {
                    return Err(Error::InvalidConfig(format!(
                        "group sizes must sum to n = {}",
                        self.n
                    )));
                }
                if let PathlossSetup::Explicit(m) = pathloss {
                    if m.nrows() != group_sizes.len() || m.ncols() != group_sizes.len() {
                        return Err(Error::InvalidConfig(
                            "explicit path-loss matrix must be GxG".into(),
                        ));
                    }
                }
            }
            ChannelSetup::Sparse { sparsity, .. } => {
                if *sparsity == 0 || *sparsity > self.n {
                    return Err(Error::InvalidConfig(format!(
                        "sparsity must satisfy 1 <= k <= {}",
                        self.n
                    )));
                }
            }
        }
        match self.noise {
            NoiseConfig::None => {}
            NoiseConfig::BoundedBall { xi } => {
                if xi.is_nan() || !(0.0..f64::INFINITY).contains(&xi) {
                    return Err(Error::InvalidConfig("noise xi must be >= 0".into()));
                }
            }
            NoiseConfig::ScalarQuantizer { step } => {
                if step.is_nan() || !(0.0..f64::INFINITY).contains(&step) {
                    return Err(Error::InvalidConfig("noise step must be >= 0".into()));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Raw serde schema (strict: unknown keys are errors).

fn default_n() -> usize {
    25
}
fn default_trials() -> usize {
    200
}
fn default_power_grid() -> Vec<f64> {
    vec![1.0, 10.0, 100.0]
}
fn default_rbar_rule() -> String {
    "fraction-of-single-link".into()
}
fn default_estimator() -> EstimatorChoice {
    EstimatorChoice::Both
}
fn default_cap() -> usize {
    crate::scheduler::DEFAULT_EXHAUSTIVE_CAP
}
fn default_failure_budget() -> f64 {
    0.05
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default = "default_n")]
    n: usize,
    #[serde(default)]
    cellular: Vec<usize>,
    channel: RawChannel,
    #[serde(default = "default_power_grid")]
    power_grid: Vec<f64>,
    #[serde(default = "default_rbar_rule")]
    rbar_rule: String,
    #[serde(default)]
    rbar_list: Option<Vec<f64>>,
    #[serde(default)]
    eps: f64,
    m_grid: Vec<usize>,
    #[serde(default = "default_estimator")]
    estimator: EstimatorChoice,
    #[serde(default)]
    noise: RawNoise,
    #[serde(default = "default_trials")]
    trials: usize,
    master_seed: u64,
    #[serde(default)]
    record_timing: bool,
    #[serde(default = "default_cap")]
    exhaustive_cap: usize,
    #[serde(default = "default_failure_budget")]
    solver_failure_budget: f64,
    #[serde(default)]
    solver: RawSolver,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    kind: String,
    #[serde(default)]
    group_sizes: Option<Vec<usize>>,
    #[serde(default)]
    pathloss: Option<String>,
    #[serde(default)]
    pathloss_rows: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    sparsity: Option<usize>,
    #[serde(default)]
    support_rule: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    xi: Option<f64>,
    #[serde(default)]
    step: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    abs_tol: Option<f64>,
    feas_tol: Option<f64>,
    max_iters: Option<usize>,
    pareto_tol: Option<f64>,
}

impl RawConfig {
    fn validate(self) -> Result<SimConfig> {
        let channel = self.channel.into_setup()?;
        let rbar_rule = match (self.rbar_rule.as_str(), self.rbar_list) {
            ("fraction-of-single-link", None) => RbarRule::FractionOfSingleLink,
            ("explicit", Some(list)) => RbarRule::Explicit(list),
            ("explicit", None) => {
                return Err(Error::InvalidConfig(
                    "rbar_rule = \"explicit\" requires rbar_list".into(),
                ))
            }
            (other, Some(_)) => {
                return Err(Error::InvalidConfig(format!(
                    "rbar_list is only valid with rbar_rule = \"explicit\", got \"{other}\""
                )))
            }
            (other, None) => {
                return Err(Error::InvalidConfig(format!(
                    "unknown rbar_rule \"{other}\" (expected \"fraction-of-single-link\" or \"explicit\")"
                )))
            }
        };
        let noise = self.noise.into_config()?;
        let defaults = SolverOptions::default();
        let solver = SolverOptions {
            abs_tol: self.solver.abs_tol.unwrap_or(defaults.abs_tol),
            feas_tol: self.solver.feas_tol.unwrap_or(defaults.feas_tol),
            max_iters: self.solver.max_iters.unwrap_or(defaults.max_iters),
            pareto_tol: self.solver.pareto_tol.unwrap_or(defaults.pareto_tol),
        };
        let mut cellular = self.cellular;
        cellular.sort_unstable();
        cellular.dedup();
        let cfg = SimConfig {
            n: self.n,
            cellular,
            channel,
            power_grid: self.power_grid,
            rbar_rule,
            eps: self.eps,
            m_grid: self.m_grid,
            estimator: self.estimator,
            noise,
            trials: self.trials,
            master_seed: self.master_seed,
            record_timing: self.record_timing,
            exhaustive_cap: self.exhaustive_cap,
            solver_failure_budget: self.solver_failure_budget,
            solver,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RawChannel {
    fn into_setup(self) -> Result<ChannelSetup> {
        match self.kind.as_str() {
            "group" => {
                let group_sizes = self.group_sizes.ok_or_else(|| {
                    Error::InvalidConfig("channel.kind = \"group\" requires group_sizes".into())
                })?;
                if self.sparsity.is_some() || self.support_rule.is_some() {
                    return Err(Error::InvalidConfig(
                        "sparsity/support_rule are not valid for the group channel".into(),
                    ));
                }
                let pathloss = match (self.pathloss.as_deref(), self.pathloss_rows) {
                    (Some("random-db") | None, None) => PathlossSetup::RandomDb,
                    (Some("ones"), None) => PathlossSetup::Ones,
                    (Some("explicit"), Some(rows)) => {
                        let g = rows.len();
                        if rows.iter().any(|r| r.len() != g) {
                            return Err(Error::InvalidConfig(
                                "pathloss_rows must be square".into(),
                            ));
                        }
                        let m = DMatrix::from_fn(g, g, |i, j| rows[i][j]);
                        PathlossSetup::Explicit(m)
                    }
                    (Some("explicit"), None) => {
                        return Err(Error::InvalidConfig(
                            "pathloss = \"explicit\" requires pathloss_rows".into(),
                        ))
                    }
                    (_, Some(_)) => {
                        return Err(Error::InvalidConfig(
                            "pathloss_rows is only valid with pathloss = \"explicit\"".into(),
                        ))
                    }
                    (Some(other), None) => {
                        return Err(Error::InvalidConfig(format!(
                            "unknown pathloss \"{other}\" (expected \"random-db\", \"ones\" or \"explicit\")"
                        )))
                    }
                };
                Ok(ChannelSetup::Group {
                    group_sizes,
                    pathloss,
                })
            }
            "sparse" => {
                let sparsity = self.sparsity.ok_or_else(|| {
                    Error::InvalidConfig("channel.kind = \"sparse\" requires sparsity".into())
                })?;
                if self.group_sizes.is_some()
                    || self.pathloss.is_some()
                    || self.pathloss_rows.is_some()
                {
                    return Err(Error::InvalidConfig(
                        "group keys are not valid for the sparse channel".into(),
                    ));
                }
                let support_rule = match self.support_rule.as_deref() {
                    Some("diagonal-forced") | None => SupportRule::DiagonalForced,
                    Some("uniform-random") => SupportRule::UniformRandom,
                    Some(other) => {
                        return Err(Error::InvalidConfig(format!(
                            "unknown support_rule \"{other}\""
                        )))
                    }
                };
                Ok(ChannelSetup::Sparse {
                    sparsity,
                    support_rule,
                })
            }
            other => Err(Error::InvalidConfig(format!(
                "unknown channel kind \"{other}\" (expected \"group\" or \"sparse\")"
            ))),
        }
    }
}

impl RawNoise {
    fn into_config(self) -> Result<NoiseConfig> {
        match self.kind.as_deref() {
            None | Some("none") => {
                if self.xi.is_some() || self.step.is_some() {
                    return Err(Error::InvalidConfig(
                        "xi/step are not valid for noise kind \"none\"".into(),
                    ));
                }
                Ok(NoiseConfig::None)
            }
            Some("bounded-ball") => {
                if self.step.is_some() {
                    return Err(Error::InvalidConfig(
                        "step is not valid for bounded-ball noise".into(),
                    ));
                }
                let xi = self.xi.ok_or_else(|| {
                    Error::InvalidConfig("bounded-ball noise requires xi".into())
                })?;
                Ok(NoiseConfig::BoundedBall { xi })
            }
            Some("scalar-quantizer") => {
                if self.xi.is_some() {
                    return Err(Error::InvalidConfig(
                        "xi is not valid for scalar-quantizer noise".into(),
                    ));
                }
                let step = self.step.ok_or_else(|| {
                    Error::InvalidConfig("scalar-quantizer noise requires step".into())
                })?;
                Ok(NoiseConfig::ScalarQuantizer { step })
            }
            Some(other) => Err(Error::InvalidConfig(format!(
                "unknown noise kind \"{other}\""
            ))),
        }
    }
}
