//! Channel gain estimation from compressed feedback.
//!
//! Both estimator families map one receiver's feedback `z` to the vector of
//! gain estimates `x̂_j = |ĥ_j|²`. The linear family applies an `N x M`
//! decoding matrix `Ψ` and squares the moduli of `Ψz`; the shipped instances
//! are the pseudo-inverse `Ψ = Φ^H (ΦΦ^H)^{-1}` and the matched filter
//! `Ψ = Φ^H`. The non-linear estimator recovers a sparse coefficient vector
//! by basis pursuit denoising and squares that instead.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bpdn::{solve_bpdn, BpdnProblem, BpdnSolution, SolverOptions};
use crate::sensing::{MeasurementMatrix, ReceiverFeedback};
use crate::{Error, Result};

/// How a linear decoder was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    /// `Ψ = Φ^H (ΦΦ^H)^{-1}`.
    PseudoInverse,
    /// `Ψ = Φ^H A` for a caller-supplied positive semi-definite `A`;
    /// the matched filter is `A = I`.
    PhiHermitianA,
    /// Arbitrary `Ψ`; no accuracy claims.
    Custom,
}

/// An `N x M` linear decoding matrix with its construction tag. Immutable
/// and shareable across receivers.
#[derive(Debug, Clone)]
pub struct LinearDecoder {
    psi: DMatrix<Complex64>,
    kind: DecoderKind,
}

/// Condition-number guard of the pseudo-inverse construction.
const MAX_GRAM_CONDITION: f64 = 1e12;

impl LinearDecoder {
    /// Pseudo-inverse decoder `Ψ = Φ^H (ΦΦ^H)^{-1}` for `M ≤ N`.
    ///
    /// The Gram matrix is factorized by Cholesky; its condition number
    /// (squared singular-value ratio of `Φ`) must stay below `1e12`.
    pub fn pseudo_inverse(phi: &MeasurementMatrix) -> Result<Self> {
        let (m, n) = (phi.m_pilots(), phi.n_nodes());
        if m > n {
            return Err(Error::DimensionMismatch(format!(
                "pseudo-inverse decoder needs M <= N, got M={m} N={n}"
            )));
        }
        let singular = phi.as_matrix().clone().svd(false, false).singular_values;
        let (s_max, s_min) = (singular[0], singular[singular.len() - 1]);
        if s_min <= 0.0 || (s_max / s_min).powi(2) > MAX_GRAM_CONDITION {
            return Err(Error::Singular(format!(
                "pilot Gram matrix condition {:.3e} exceeds {MAX_GRAM_CONDITION:.0e}",
                if s_min > 0.0 {
                    (s_max / s_min).powi(2)
                } else {
                    f64::INFINITY
                }
            )));
        }
        let gram = phi.as_matrix() * phi.as_matrix().adjoint();
        let chol = gram
            .cholesky()
            .ok_or_else(|| Error::Singular("pilot Gram matrix is not positive definite".into()))?;
        // Ψ = Φ^H G^{-1} = (G^{-1} Φ)^H since G is Hermitian.
        let psi = chol.solve(phi.as_matrix()).adjoint();
        Ok(Self {
            psi,
            kind: DecoderKind::PseudoInverse,
        })
    }

    /// Matched filter `Ψ = Φ^H` (the cheapest member of the `Φ^H A` family,
    /// with `A = I`).
    pub fn matched_filter(phi: &MeasurementMatrix) -> Self {
        Self {
            psi: phi.as_matrix().adjoint(),
            kind: DecoderKind::PhiHermitianA,
        }
    }

    /// `Ψ = Φ^H A` for a Hermitian positive semi-definite `M x M` matrix
    /// (eigenvalue floor `-1e-10`).
    pub fn phi_hermitian(phi: &MeasurementMatrix, a: &DMatrix<Complex64>) -> Result<Self> {
        let m = phi.m_pilots();
        if a.nrows() != m || a.ncols() != m {
            return Err(Error::DimensionMismatch(format!(
                "A must be {m}x{m}, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        let asym = (a - a.adjoint()).norm();
        if asym > 1e-10 * a.norm().max(1.0) {
            return Err(Error::InvalidConfig(
                "A must be Hermitian for the gain-decoder family".into(),
            ));
        }
        let eigenvalues = a.clone().symmetric_eigen().eigenvalues;
        if eigenvalues.iter().any(|&ev| ev < -1e-10) {
            return Err(Error::InvalidConfig(
                "A must be positive semi-definite (eigenvalue floor -1e-10)".into(),
            ));
        }
        Ok(Self {
            psi: phi.as_matrix().adjoint() * a,
            kind: DecoderKind::PhiHermitianA,
        })
    }

    /// Arbitrary caller-supplied decoding matrix.
    pub fn custom(psi: DMatrix<Complex64>) -> Self {
        Self {
            psi,
            kind: DecoderKind::Custom,
        }
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    /// The decoding matrix `Ψ`.
    pub fn psi(&self) -> &DMatrix<Complex64> {
        &self.psi
    }
}

/// Estimated channel gains of one receiver, `gains[j] ≈ |h_{i,j}|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct GainEstimate {
    pub receiver: usize,
    pub gains: DVector<f64>,
}

impl GainEstimate {
    /// Exact gains of one receiver row, useful as a perfect-knowledge
    /// baseline.
    pub fn from_true_gains(x: &crate::channel::GainMatrix, receiver: usize) -> Self {
        Self {
            receiver,
            gains: x.receiver_gains(receiver),
        }
    }
}

/// Linear gain estimate: `gains[j] = |(Ψ z)_j|²`.
pub fn linear_gain_estimate(dec: &LinearDecoder, fb: &ReceiverFeedback) -> Result<GainEstimate> {
    if dec.psi.ncols() != fb.z.len() {
        return Err(Error::DimensionMismatch(format!(
            "decoder expects measurements of length {}, got {}",
            dec.psi.ncols(),
            fb.z.len()
        )));
    }
    let decoded = &dec.psi * &fb.z;
    Ok(GainEstimate {
        receiver: fb.receiver,
        gains: decoded.map(|c| c.norm_sqr()),
    })
}

/// Non-linear gain estimate via basis pursuit denoising with the feedback's
/// certified noise bound as constraint radius: `gains[j] = |x̂_j|²`.
///
/// Solver non-convergence is not fatal: the best-effort gains are returned
/// with the solution metadata so callers can count and report it. A provably
/// empty constraint set (for example an under-supplied bound) is an error.
pub fn nonlinear_gain_estimate(
    phi: &MeasurementMatrix,
    fb: &ReceiverFeedback,
    opts: &SolverOptions,
) -> Result<(GainEstimate, BpdnSolution)> {
    if !fb.xi_bound.is_finite() {
        return Err(Error::InvalidConfig(
            "feedback noise bound must be finite".into(),
        ));
    }
    let solution = solve_bpdn(
        &BpdnProblem {
            phi,
            z: &fb.z,
            xi: fb.xi_bound,
        },
        opts,
    )?;
    let estimate = GainEstimate {
        receiver: fb.receiver,
        gains: solution.x_hat.map(|c| c.norm_sqr()),
    };
    Ok((estimate, solution))
}
