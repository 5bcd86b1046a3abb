//! SINR, achievable rates, estimated rates and rate gaps.
//!
//! Rates are in nats (natural logarithm). The true SINR divides by the
//! receiver's noise power `σ²_i` plus interference; the estimated rate uses
//! a unit noise term in its denominator, exactly as the estimation protocol
//! defines it. With `σ²_i = 1` and exact gains the two formulas coincide
//! term by term, and the rate gap obeys the Lipschitz bound
//! `Δ_i ≤ 2P Σ_{j∈S} |x_{i,j} − x̂_{i,j}|` simultaneously for every member
//! of the decision.

use crate::channel::GainMatrix;
use crate::estimators::GainEstimate;
use crate::{Error, Result};

/// Fixed transmit powers and receiver noise powers (no power control).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerProfile {
    powers: Vec<f64>,
    noise_powers: Vec<f64>,
}

impl PowerProfile {
    /// Per-user transmit powers and noise powers.
    pub fn new(powers: Vec<f64>, noise_powers: Vec<f64>) -> Result<Self> {
        if powers.len() != noise_powers.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} powers but {} noise powers",
                powers.len(),
                noise_powers.len()
            )));
        }
        if powers.iter().any(|&p| p.is_nan() || !(p > 0.0 && p.is_finite())) {
            return Err(Error::InvalidConfig(
                "transmit powers must be positive and finite".into(),
            ));
        }
        if noise_powers.iter().any(|&s| s.is_nan() || !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidConfig(
                "noise powers must be positive and finite".into(),
            ));
        }
        Ok(Self {
            powers,
            noise_powers,
        })
    }

    /// All users transmit at power `p`; unit noise power everywhere.
    pub fn uniform(n: usize, p: f64) -> Self {
        Self::new(vec![p; n], vec![1.0; n]).expect("positive power")
    }

    pub fn n_nodes(&self) -> usize {
        self.powers.len()
    }

    /// Transmit power of user `j`.
    pub fn power(&self, j: usize) -> f64 {
        self.powers[j]
    }

    /// Noise power at receiver `i`.
    pub fn noise_power(&self, i: usize) -> f64 {
        self.noise_powers[i]
    }

    /// `P = max_j p_j`.
    pub fn p_max(&self) -> f64 {
        self.powers.iter().cloned().fold(0.0, f64::max)
    }
}

fn require_member(members: &[usize], i: usize) -> Result<()> {
    if members.contains(&i) {
        Ok(())
    } else {
        Err(Error::NotScheduled { receiver: i })
    }
}

/// Signal-to-interference-plus-noise ratio of receiver `i` under decision
/// `members`: `p_i x_{i,i} / (σ²_i + Σ_{j∈S\{i}} p_j x_{i,j})`.
pub fn sinr(x: &GainMatrix, i: usize, members: &[usize], pp: &PowerProfile) -> Result<f64> {
    require_member(members, i)?;
    let mut denom = pp.noise_power(i);
    for &j in members {
        if j != i {
            denom += pp.power(j) * x.entry(i, j);
        }
    }
    Ok(pp.power(i) * x.entry(i, i) / denom)
}

/// Achievable rate in nats: `log(1 + SINR)`.
pub fn rate(x: &GainMatrix, i: usize, members: &[usize], pp: &PowerProfile) -> Result<f64> {
    Ok(sinr(x, i, members, pp)?.ln_1p())
}

/// Rate computed from estimated gains with a unit noise term:
/// `log(1 + x̂_i p_i / (1 + Σ_{j∈S\{i}} x̂_j p_j))`.
pub fn estimated_rate(
    est: &GainEstimate,
    i: usize,
    members: &[usize],
    pp: &PowerProfile,
) -> Result<f64> {
    require_member(members, i)?;
    if est.receiver != i {
        return Err(Error::InvalidConfig(format!(
            "gain estimate belongs to receiver {}, not {i}",
            est.receiver
        )));
    }
    let mut denom = 1.0;
    for &j in members {
        if j != i {
            denom += pp.power(j) * est.gains[j];
        }
    }
    Ok((pp.power(i) * est.gains[i] / denom).ln_1p())
}

/// `2P Σ_{j∈S} |x_{i,j} − x̂_{i,j}|`: the Lipschitz bound on the rate gap of
/// receiver `i`, valid simultaneously for all members when `σ²_i = 1` and
/// powers are capped by `P`.
pub fn lipschitz_bound(
    x_row: &nalgebra::DVector<f64>,
    est_row: &nalgebra::DVector<f64>,
    members: &[usize],
    p_max: f64,
) -> f64 {
    let total: f64 = members
        .iter()
        .map(|&j| (x_row[j] - est_row[j]).abs())
        .sum();
    2.0 * p_max * total
}

/// True rate, estimated rate, their gap and the Lipschitz bound for one
/// receiver under one decision.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub receiver: usize,
    pub true_rate: f64,
    pub est_rate: f64,
    pub gap: f64,
    pub lipschitz_bound: f64,
}

/// Fill a [`RateReport`] for receiver `i` under `members`.
pub fn rate_gap(
    x: &GainMatrix,
    est: &GainEstimate,
    i: usize,
    members: &[usize],
    pp: &PowerProfile,
) -> Result<RateReport> {
    let true_rate = rate(x, i, members, pp)?;
    let est_rate = estimated_rate(est, i, members, pp)?;
    let bound = lipschitz_bound(&x.receiver_gains(i), &est.gains, members, pp.p_max());
    Ok(RateReport {
        receiver: i,
        true_rate,
        est_rate,
        gap: (true_rate - est_rate).abs(),
        lipschitz_bound: bound,
    })
}
