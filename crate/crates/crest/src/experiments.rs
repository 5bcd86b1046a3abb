//! Seeded Monte Carlo harness behind the `crest` command-line tool.
//!
//! [`run_sumrate_experiment`] reproduces the discovery-and-pairing
//! simulation: draw a channel, sense it with random pilots, estimate gains
//! with the configured estimator, discover and pair from the estimates, then
//! score the resulting decision with the true rates next to a
//! perfect-knowledge baseline. [`run_bounds_sweep`] and
//! [`run_recovery_phase`] sweep the pilot-count bound and the empirical
//! exact-recovery fraction. [`selftest`] runs a condensed invariant suite.
//!
//! Reproducibility contract: all randomness derives from `master_seed` via
//! the documented stream rules in [`crate::seed`], rows are emitted in a
//! fixed order, and identical configurations yield byte-identical CSV.

mod config;
mod output;
mod selftest;
mod sumrate;
mod sweeps;

pub use config::{
    ChannelSetup, EstimatorChoice, NoiseConfig, PathlossSetup, RbarRule, SimConfig,
};
pub use output::{rows_to_csv, rows_to_json, sumrate_rows_to_json, write_csv, write_json, OutputFormat};
pub use selftest::{selftest, SelftestCheck, SelftestReport};
pub use sumrate::{run_sumrate_experiment, PowerRun, ResultRow, SumRateOutcome};
pub use sweeps::{
    run_bounds_sweep, run_recovery_phase, BoundsSweepArgs, CompressionRow, RecoveryPhaseArgs,
    RecoveryRow,
};
