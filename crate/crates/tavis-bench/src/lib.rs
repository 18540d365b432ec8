//! Shared fixtures for the benchmark targets: one well-conditioned parameter
//! set away from the degeneracy manifold, and one tilted initial condition
//! that populates several excitation sectors.

use tavis_core::{InitialCondition, ModelParams};

/// A generic off-resonant parameter set with both couplings active. Kept far
/// from the closed form's degeneracy guard so the analytic path is exercised.
pub fn reference_params() -> ModelParams {
    ModelParams::new(1.0, 0.3, 0.4, 1.5, 3.9).unwrap()
}

/// A mixed, tilted preparation with one photon: both branches populated,
/// three excitation sectors in play.
pub fn reference_init() -> InitialCondition {
    InitialCondition::new(1.2, 0.7, 1, 0.35).unwrap()
}

/// A uniform grid over `[0, t_max]` with `steps` points.
pub fn grid(t_max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| t_max * k as f64 / (steps - 1) as f64)
        .collect()
}
