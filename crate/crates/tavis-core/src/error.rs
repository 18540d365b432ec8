//! Error types shared by every stage of the pipeline.

use thiserror::Error;

/// Everything that can go wrong while preparing states, propagating them, or
/// reducing them to observables.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid {name} = {value}: must satisfy {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// The closed-form propagator's root structure collapses for these
    /// parameters: one of the quantities that appear under a square root in a
    /// denominator is too close to zero for the formulas to be trusted.
    /// Callers should fall back to the spectral propagator.
    #[error("degenerate parameters: |{quantity}| = {magnitude:.3e} is below {tolerance:.1e}")]
    DegenerateParameters {
        quantity: &'static str,
        magnitude: f64,
        tolerance: f64,
    },

    /// The closed-form propagator failed its self-check `A(0) = I`, which
    /// signals that a square- or cube-root branch was resolved incorrectly
    /// for these parameters. Callers should fall back to the spectral
    /// propagator.
    #[error("branch inconsistency: max |A(0) - I| = {deviation:.3e} exceeds {budget:.1e}")]
    BranchInconsistency { deviation: f64, budget: f64 },

    /// Fixed-step integration let the state norm drift past its budget; the
    /// requested step size is too large for these parameters.
    #[error("integration step too large: norm drift {drift:.3e} exceeds {budget:.1e}")]
    StepTooLarge { drift: f64, budget: f64 },

    /// A matrix handed to the entanglement monotone is not a physical
    /// density matrix.
    #[error("not a density matrix: {reason}")]
    NotADensityMatrix { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
