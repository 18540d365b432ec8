//! The closed-form-vs-exact diagnostic: per-entry worst residuals of the
//! radical-form propagator against spectral decomposition over a time grid.

use tavis_core::{
    analytic_matrix, build_sector, oracle_matrix, sector_hamiltonian, Error, ModelParams,
};

use crate::run::time_grid;

/// Upper-triangle entry labels of the 4x4 sector propagator, row-major.
pub const ENTRY_NAMES: [&str; 10] = [
    "A11", "A12", "A13", "A14", "A22", "A23", "A24", "A33", "A34", "A44",
];

const ENTRY_INDICES: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Every entry's worst residual is within tolerance.
    Pass,
    /// At least one entry exceeded tolerance; carries the worst residual.
    Fail { worst: f64, entry: &'static str },
    /// The parameters sit on the degeneracy manifold where the closed form
    /// is undefined by construction; not a correctness failure.
    Skip { reason: String },
}

#[derive(Debug, Clone)]
pub struct AppendixReport {
    pub params: ModelParams,
    pub n: u32,
    pub t_max: f64,
    pub t_steps: usize,
    pub tolerance: f64,
    /// Worst residual per upper-triangle entry; empty when skipped.
    pub residuals: Vec<(&'static str, f64)>,
    pub outcome: Outcome,
}

/// Sweep the grid and record per-entry worst |closed form − spectral|.
pub fn validate_appendix(
    params: &ModelParams,
    n: u32,
    t_max: f64,
    t_steps: usize,
    tolerance: f64,
) -> AppendixReport {
    let skeleton = |outcome: Outcome, residuals: Vec<(&'static str, f64)>| AppendixReport {
        params: *params,
        n,
        t_max,
        t_steps,
        tolerance,
        residuals,
        outcome,
    };
    let h = sector_hamiltonian(&build_sector(n + 2), params);
    let mut worst = [0.0f64; 10];
    for &t in &time_grid(t_max, t_steps) {
        let a = match analytic_matrix(params, n, t) {
            Ok(a) => a,
            Err(e @ Error::DegenerateParameters { .. }) => {
                return skeleton(
                    Outcome::Skip {
                        reason: e.to_string(),
                    },
                    Vec::new(),
                )
            }
            Err(e) => {
                // Self-check failures (a mis-resolved root branch) are
                // genuine numerical failures, not skips.
                log::error!("closed form rejected at t = {t}: {e}");
                let residuals = ENTRY_NAMES.map(|name| (name, f64::INFINITY)).to_vec();
                return skeleton(
                    Outcome::Fail {
                        worst: f64::INFINITY,
                        entry: "self-check",
                    },
                    residuals,
                );
            }
        };
        let o = oracle_matrix(&h, t);
        for (k, (i, j)) in ENTRY_INDICES.into_iter().enumerate() {
            worst[k] = worst[k].max((a.entries.get(i, j) - o.get(i, j)).norm());
        }
    }
    let residuals: Vec<(&'static str, f64)> = ENTRY_NAMES.into_iter().zip(worst).collect();
    let (entry, top) = residuals
        .iter()
        .copied()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("ten entries");
    let outcome = if top <= tolerance {
        Outcome::Pass
    } else {
        Outcome::Fail { worst: top, entry }
    };
    skeleton(outcome, residuals)
}

/// Human-readable report: one line per entry plus a verdict line.
pub fn render_report(report: &AppendixReport) -> String {
    let p = &report.params;
    let mut out = format!(
        "closed-form propagator check: lambda1={} lambda2={} delta1={} delta2={} n={}\n\
         grid: {} points over [0, {}], tolerance {:e}\n",
        p.lambda1, p.lambda2, p.delta1, p.delta2, report.n, report.t_steps, report.t_max,
        report.tolerance
    );
    for (name, residual) in &report.residuals {
        out.push_str(&format!("  {name}  max residual {residual:.3e}\n"));
    }
    match &report.outcome {
        Outcome::Pass => out.push_str(&format!(
            "PASS: all {} entries within {:e}\n",
            ENTRY_NAMES.len(),
            report.tolerance
        )),
        Outcome::Fail { worst, entry } => out.push_str(&format!(
            "FAIL: {entry} reaches {worst:.3e}, above {:e}\n",
            report.tolerance
        )),
        Outcome::Skip { reason } => out.push_str(&format!("SKIP: {reason}\n")),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_reference_parameter_set_passes() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 1.0, 0.0).unwrap();
        let report = validate_appendix(&p, 0, 30.0, 121, 1e-6);
        assert_eq!(report.outcome, Outcome::Pass);
        assert_eq!(report.residuals.len(), 10);
        for (name, residual) in &report.residuals {
            assert!(*residual <= 1e-6, "{name} residual {residual:.3e}");
        }
        let text = render_report(&report);
        assert!(text.contains("PASS"), "{text}");
        assert!(text.contains("A23"), "{text}");
    }

    #[test]
    fn the_degeneracy_manifold_is_a_named_skip() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 0.0, 0.0).unwrap();
        let report = validate_appendix(&p, 0, 30.0, 61, 1e-6);
        match &report.outcome {
            Outcome::Skip { reason } => assert!(reason.contains("degenerate"), "{reason}"),
            other => panic!("expected skip, got {other:?}"),
        }
        assert!(render_report(&report).contains("SKIP"));
    }

    #[test]
    fn a_decoupled_environment_with_detuning_still_passes() {
        // One coupling zero is fine as long as the detuning keeps the root
        // structure away from the degeneracy manifold.
        let p = ModelParams::new(1.0, 0.0, 0.0, 1.0, 0.0).unwrap();
        let report = validate_appendix(&p, 0, 30.0, 61, 1e-6);
        assert_eq!(report.outcome, Outcome::Pass);
    }

    #[test]
    fn an_unachievable_tolerance_fails_with_the_worst_entry() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 1.0, 0.0).unwrap();
        let report = validate_appendix(&p, 0, 30.0, 31, 1e-18);
        match report.outcome {
            Outcome::Fail { worst, .. } => assert!(worst > 1e-18),
            other => panic!("expected fail, got {other:?}"),
        }
    }
}
