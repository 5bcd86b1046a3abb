//! Closed-form evaluation of the analytical guarantees.
//!
//! Everything here is a pure, deterministic function: sample-complexity and
//! restricted-isometry constants for Gaussian pilot matrices, the stable
//! sparse-recovery error constants, rate-gap thresholds for the non-linear
//! and linear estimators, and the generic concentration-based probability
//! bound. Exponential and combinatorial quantities are evaluated in log
//! space; probabilities are reported both raw and clamped to `[0, 1]`.
//!
//! A small exhaustive certifier computes exact restricted-isometry constants
//! for desk-scale matrices so the recovery guarantees can be audited against
//! the solver with no statistical slack.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::sensing::MeasurementMatrix;
use crate::{Error, Result};

/// Constant folding the isometry-defect bound into a single factor:
/// `2(1 + sqrt(1/2)) + (1 + sqrt(1/2))^2 ≈ 6.32843`.
pub fn rip_c1() -> f64 {
    let a = 1.0 + 0.5f64.sqrt();
    2.0 * a + a * a
}

/// Constant of the linear-estimator threshold: `2 / (1 - ln 2) ≈ 6.51772`.
pub fn kappa() -> f64 {
    2.0 / (1.0 - std::f64::consts::LN_2)
}

/// Query for the pilot-count bound: how many Gaussian pilots guarantee a
/// restricted-isometry constant of order `k` at most `delta`, except with
/// probability `eps_fail`.
#[derive(Debug, Clone, Copy)]
pub struct RipBoundQuery {
    pub k: u64,
    pub n: u64,
    pub delta: f64,
    pub eps_fail: f64,
}

impl RipBoundQuery {
    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n == 0 || self.k > self.n {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= k <= N, got k={} N={}",
                self.k, self.n
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "delta must lie in (0,1), got {}",
                self.delta
            )));
        }
        if !(self.eps_fail > 0.0 && self.eps_fail < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "eps_fail must lie in (0,1), got {}",
                self.eps_fail
            )));
        }
        Ok(())
    }
}

/// Result of [`rip_sample_count`]. `cs_domain_warning` flags `delta >= 1/3`,
/// where the stable-recovery error constants below are undefined.
#[derive(Debug, Clone, Copy)]
pub struct RipSampleCount {
    pub m: u64,
    pub cs_domain_warning: bool,
}

fn log_dimension_term(k: u64, n: u64, eps_fail: f64) -> f64 {
    let k_f = k as f64;
    let n_f = n as f64;
    k_f * (std::f64::consts::E * n_f / k_f).ln() + (2.0 / eps_fail).ln()
}

/// Minimal pilot count `M ≥ 2 C1² δ⁻² (k ln(eN/k) + ln(2/ε))` guaranteeing
/// a restricted-isometry constant `δ_k ≤ δ` with probability `1 − ε` for
/// CN(0, 1/M) pilot matrices.
pub fn rip_sample_count(q: &RipBoundQuery) -> Result<RipSampleCount> {
    q.validate()?;
    let c1 = rip_c1();
    let m = 2.0 * c1 * c1 / (q.delta * q.delta) * log_dimension_term(q.k, q.n, q.eps_fail);
    Ok(RipSampleCount {
        m: m.ceil() as u64,
        cs_domain_warning: q.delta >= 1.0 / 3.0,
    })
}

/// High-probability bound on the restricted-isometry constant of an `m x n`
/// CN(0, 1/m) pilot matrix at sparsity `k`:
/// `δ_k ≤ 2cη + c²η²` with `c = 1 + 1/sqrt(2 ln(eN/k))` and
/// `η = sqrt(2(k ln(eN/k) + ln(2/ε)) / M)`, valid for `η < 1`.
pub fn rip_delta_bound(m: u64, n: u64, k: u64, eps_fail: f64) -> Result<f64> {
    if k == 0 || n == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "need 1 <= k <= N, got k={k} N={n}"
        )));
    }
    if !(eps_fail > 0.0 && eps_fail < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "eps_fail must lie in (0,1), got {eps_fail}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidConfig("M must be positive".into()));
    }
    let eta_sq = 2.0 * log_dimension_term(k, n, eps_fail) / m as f64;
    if eta_sq >= 1.0 {
        return Err(Error::NoBound(format!(
            "M = {m} is too small: eta = {:.4} >= 1",
            eta_sq.sqrt()
        )));
    }
    let eta = eta_sq.sqrt();
    let c = 1.0 + 1.0 / (2.0 * (std::f64::consts::E * n as f64 / k as f64).ln()).sqrt();
    Ok(2.0 * c * eta + c * c * eta * eta)
}

/// Error constants of the stable sparse-recovery guarantee, defined for
/// restricted-isometry constants `δ < 1/3`:
/// `C2 = (2√2(2δ + sqrt((1−3δ)δ)) + 2(1−3δ)) / (1−3δ)`,
/// `C3 = sqrt(2(1+δ)) / (1−3δ)`.
pub fn cs_error_constants(delta: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0 / 3.0).contains(&delta) {
        return Err(Error::InvalidConfig(format!(
            "delta must lie in [0, 1/3), got {delta}"
        )));
    }
    let one_minus = 1.0 - 3.0 * delta;
    let c2 = (2.0 * 2.0f64.sqrt() * (2.0 * delta + (one_minus * delta).sqrt()) + 2.0 * one_minus)
        / one_minus;
    let c3 = (2.0 * (1.0 + delta)).sqrt() / one_minus;
    Ok((c2, c3))
}

/// Rate-gap threshold of the sparse-recovery estimator:
/// `q = C2(δ) σ_k(h)₁ / sqrt(k) + 2 C3(δ) ξ`, threshold `2P q (2 a_i + q)`,
/// where `a_i` bounds `‖h_i‖₂`.
pub fn cs_rate_gap_threshold(
    p_max: f64,
    a_i: f64,
    sigma_k1: f64,
    k: u64,
    xi: f64,
    delta: f64,
) -> Result<f64> {
    if p_max < 0.0 || a_i < 0.0 || sigma_k1 < 0.0 || xi < 0.0 || k == 0 {
        return Err(Error::InvalidConfig(
            "threshold inputs must be non-negative with k >= 1".into(),
        ));
    }
    let (c2, c3) = cs_error_constants(delta)?;
    let q = c2 * sigma_k1 / (k as f64).sqrt() + 2.0 * c3 * xi;
    Ok(2.0 * p_max * q * (2.0 * a_i + q))
}

/// Concentration behaviour of a pilot ensemble: the probability that
/// `‖Φa‖²` deviates from `‖a‖²` by a factor `ε` is at most
/// `c0 · exp(−γ(ε))`.
pub struct ConcentrationProfile {
    c0: f64,
    gamma: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ConcentrationProfile {
    /// Custom profile. `gamma` must be non-decreasing with `gamma(0) = 0`.
    pub fn new(c0: f64, gamma: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            c0,
            gamma: Box::new(gamma),
        }
    }

    /// Profile of an `m`-row CN(0, 1/m) matrix:
    /// `c0 = 2`, `γ(ε) = ε² m (1 − ln 2) / 2`.
    pub fn gaussian(m: usize) -> Self {
        let m_f = m as f64;
        Self::new(2.0, move |eps| {
            eps * eps * m_f * (1.0 - std::f64::consts::LN_2) / 2.0
        })
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn gamma(&self, eps: f64) -> f64 {
        (self.gamma)(eps)
    }

    /// `c0 · exp(−γ(ε))`.
    pub fn tail_bound(&self, eps: f64) -> f64 {
        self.c0 * (-self.gamma(eps)).exp()
    }
}

/// Analytic deviation bound `2 exp(ε² M (ln 2 − 1)/2)` for CN(0, 1/M)
/// pilot matrices; compare with [`crate::sensing::concentration_probe`].
pub fn gaussian_concentration_bound(m: usize, eps: f64) -> f64 {
    ConcentrationProfile::gaussian(m).tail_bound(eps)
}

/// Inputs of the generic linear-estimator probability bound.
#[derive(Debug, Clone, Copy)]
pub struct RateEstBoundQuery {
    /// Maximal number of active transmissions `n`, `1 ≤ n ≤ N`.
    pub n_active: u64,
    /// System size `N`.
    pub n_nodes: u64,
    /// Probability that `s_max(ΨΦ)` exceeds the chosen `u0`.
    pub tail_prob_smax: f64,
    /// Probability that the noise term exceeds the chosen `ρ0`.
    pub tail_prob_noise: f64,
}

/// Probability bound, raw and clamped to `[0, 1]`. The raw value of a union
/// bound may exceed 1 for small systems.
#[derive(Debug, Clone, Copy)]
pub struct ProbabilityBound {
    pub raw: f64,
    pub clamped: f64,
}

impl ProbabilityBound {
    fn from_raw(raw: f64) -> Self {
        Self {
            raw,
            clamped: raw.clamp(0.0, 1.0),
        }
    }
}

/// Right-hand side of the generic linear-estimator bound:
/// `exp(ln(4n²) + n ln(Ne/n) − γ(ε))` plus `exp(n ln(Ne/n))` times each of
/// the two tail probabilities.
pub fn rate_est_bound_rhs(
    q: &RateEstBoundQuery,
    profile: &ConcentrationProfile,
    eps: f64,
) -> ProbabilityBound {
    let n = q.n_active as f64;
    let subsets_log = n * (q.n_nodes as f64 * std::f64::consts::E / n).ln();
    let concentration = ((4.0 * n * n).ln() + subsets_log - profile.gamma(eps)).exp();
    let smax_term = subsets_log.exp() * q.tail_prob_smax;
    let noise_term = subsets_log.exp() * q.tail_prob_noise;
    ProbabilityBound::from_raw(concentration + smax_term + noise_term)
}

/// Deviation threshold paired with [`rate_est_bound_rhs`]:
/// `2 P ‖h‖² (4 sqrt(n) (1 + u0) ε + ρ0)`.
pub fn rate_est_gap_threshold(
    p_max: f64,
    h_norm_sq: f64,
    n_active: u64,
    u0: f64,
    rho0: f64,
    eps: f64,
) -> f64 {
    2.0 * p_max * h_norm_sq * (4.0 * (n_active as f64).sqrt() * (1.0 + u0) * eps + rho0)
}

/// Which subset-counting coefficient enters the linear threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombinatorialFactor {
    /// `binom(N, n)`: one term per scheduling decision of size `n`
    /// (the union bound over subsets).
    #[default]
    Binomial,
    /// `binom(N + n − 1, n)`: multisets of size `n` out of `N`.
    Multiset,
}

/// `ln binom(n, k)` evaluated stably in log space.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    let mut acc = 0.0f64;
    for i in 1..=k {
        acc += ((n - k + i) as f64).ln() - (i as f64).ln();
    }
    acc
}

/// Rate-gap threshold of the pseudo-inverse estimator for `k`-sparse unit
/// Gaussian channel rows:
/// `16 P sqrt(κ n / M) (√2 · t + k sqrt(t))` with
/// `t = ln((4nN·B + 1)/ε)` and `B` the combinatorial factor.
pub fn linear_rate_gap_threshold(
    p_max: f64,
    n_active: u64,
    n_nodes: u64,
    m: u64,
    k: u64,
    eps_fail: f64,
    factor: CombinatorialFactor,
) -> f64 {
    let ln_b = match factor {
        CombinatorialFactor::Binomial => ln_binomial(n_nodes, n_active),
        CombinatorialFactor::Multiset => ln_binomial(n_nodes + n_active - 1, n_active),
    };
    // ln(4nN·B + 1) via log-sum-exp so huge B cannot overflow.
    let a = (4.0 * n_active as f64 * n_nodes as f64).ln() + ln_b;
    let log_arg = a + (-a).exp().ln_1p();
    let t = log_arg - eps_fail.ln();
    16.0 * p_max * (kappa() * n_active as f64 / m as f64).sqrt()
        * (2.0f64.sqrt() * t + k as f64 * t.sqrt())
}

/// Compression curve: for each system size in `n_grid`, the pilot fraction
/// `M/N` required by [`rip_sample_count`], clamped at 1.
pub fn compression_curve(
    k: u64,
    eps_fail: f64,
    delta: f64,
    n_grid: &[u64],
) -> Result<Vec<(u64, f64)>> {
    let mut rows = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let count = rip_sample_count(&RipBoundQuery {
            k,
            n,
            delta,
            eps_fail,
        })?;
        let ratio = (count.m as f64 / n as f64).min(1.0);
        rows.push((n, ratio));
    }
    Ok(rows)
}

/// Size gates of the exhaustive restricted-isometry certifier.
pub const RIP_CERTIFIER_MAX_N: usize = 24;
pub const RIP_CERTIFIER_MAX_K: usize = 3;

/// Exact restricted-isometry constant of order `k`: enumerate every support
/// of size `k`, take the extreme squared singular values of each `M x k`
/// column submatrix, and return
/// `max(σ_max² − 1, 1 − σ_min²)` over all supports.
///
/// Gated to `N ≤ 24`, `k ≤ 3`; larger requests return
/// [`Error::TooExpensive`] instead of silently approximating.
pub fn exhaustive_rip_constant(phi: &MeasurementMatrix, k: usize) -> Result<f64> {
    let n = phi.n_nodes();
    if n > RIP_CERTIFIER_MAX_N || k > RIP_CERTIFIER_MAX_K {
        return Err(Error::TooExpensive(format!(
            "exhaustive certifier is gated to N <= {RIP_CERTIFIER_MAX_N}, k <= {RIP_CERTIFIER_MAX_K}; got N = {n}, k = {k}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "need 1 <= k <= N, got k={k} with N={n}"
        )));
    }
    let mut delta: f64 = 0.0;
    let mut support = vec![0usize; k];
    enumerate_supports(n, k, 0, 0, &mut support, &mut |sup| {
        let sub: DMatrix<Complex64> = phi.as_matrix().select_columns(sup.iter());
        let singular = sub.svd(false, false).singular_values;
        let s_max = singular[0];
        let s_min = singular[singular.len() - 1];
        delta = delta.max(s_max * s_max - 1.0).max(1.0 - s_min * s_min);
    });
    Ok(delta)
}

fn enumerate_supports(
    n: usize,
    k: usize,
    start: usize,
    depth: usize,
    support: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(support);
        return;
    }
    for idx in start..=(n - (k - depth)) {
        support[depth] = idx;
        enumerate_supports(n, k, idx + 1, depth + 1, support, visit);
    }
}
