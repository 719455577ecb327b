//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by the numerical engines.
///
/// Variants carry enough context to be actionable without a debugger; the
/// CLI maps all of them to a "computational failure" exit status.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    /// A constructor argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A shear profile was rejected (empty, unnormalised, or out of range).
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// Critical-point classification failed (profile flat beyond the
    /// supported derivative order at some root of u').
    #[error("could not classify critical point at y = {location}: {reason}")]
    Classification { location: f64, reason: String },

    /// The requested time exceeds the horizon covered by a Brownian path.
    #[error("time {t} exceeds path horizon {horizon}")]
    HorizonExceeded { t: f64, horizon: f64 },

    /// A Monte Carlo routine was asked for fewer samples than it supports.
    #[error("sample budget {got} below the minimum {min}")]
    TooFewSamples { got: usize, min: usize },

    /// The variational determinant fell below the degeneracy floor, so
    /// weights of the form g/detM are meaningless for this path.
    #[error("degenerate sample: detM = {det_m:.3e} at (seed {seed}, sample {sample_index})")]
    DegenerateSample {
        det_m: f64,
        seed: u64,
        sample_index: u64,
    },

    /// Too many paths hit the degeneracy floor for the estimate to stand.
    #[error("{count} of {total} samples degenerate (threshold {max_frac:.2e})")]
    TooManyDegenerate {
        count: usize,
        total: usize,
        max_frac: f64,
    },

    /// Matrix exponential overflow guard: the scaled time step is too large.
    #[error("matrix exponential rejected: |tL| = {norm:.3e} exceeds guard {guard:.3e}")]
    ExponentialOverflow { norm: f64, guard: f64 },

    /// A regression was attempted on an unusable point set.
    #[error("unusable fit input: {0}")]
    FitInput(String),

    /// Two results that must share parameters (profile, k, ν, t) do not.
    #[error("mismatched parameters: {0}")]
    ParameterMismatch(String),
}
