//! Compressive rate estimation for network-assisted device-to-device links.
//!
//! A central controller wants to decide which direct links may share spectrum
//! with already-scheduled cellular users, but it only sees compressed, quantized
//! channel measurements: all transmitters send `M` random pilot signals at once,
//! every receiver observes the superposition `Φ h_i` plus noise and feeds it
//! back. This crate implements the whole pipeline on top of that idea:
//!
//! * [`channel`] — group-structured compressible and exactly sparse channel
//!   matrices, channel gains, best-k-term approximation errors;
//! * [`sensing`] — random pilot matrices, per-receiver measurements and
//!   certified noise-norm bounds;
//! * [`bpdn`] — a complex-valued basis pursuit denoising solver (accelerated
//!   proximal gradient inside a root-finder on the residual constraint);
//! * [`estimators`] — linear (pseudo-inverse, matched filter) and non-linear
//!   (sparse recovery) channel gain estimators;
//! * [`rates`] — SINR, achievable rates, estimated rates and rate gaps with
//!   the `2P Σ|x - x̂|` Lipschitz bound;
//! * [`scheduler`] — discovery of direct-link candidates and feasible pairing
//!   decisions by exhaustive subset search with a greedy fallback;
//! * [`bounds`] — closed-form evaluators for the sample-complexity, recovery
//!   and rate-gap bounds, plus an exhaustive restricted-isometry certifier;
//! * [`experiments`] — seeded Monte Carlo harness with CSV/JSON output, also
//!   driving the `crest` command-line tool.
//!
//! Every random quantity is drawn from a seeded generator, and the seed
//! derivation is documented in the README; identical configurations produce
//! byte-identical outputs. See the `examples/` directory for one runnable
//! program per capability.

pub mod bounds;
pub mod bpdn;
pub mod channel;
mod error;
pub mod estimators;
pub mod experiments;
pub mod rates;
pub mod scheduler;
pub mod seed;
pub mod sensing;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Complex scalar used throughout (double precision).
pub use num_complex::Complex64;
