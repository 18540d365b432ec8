//! Ground-truth propagation of sector amplitudes.
//!
//! Two independent witnesses live here: the exact spectral propagator
//! `A(t) = V e^{-iEt} V^T` from the eigendecomposition of the real symmetric
//! sector block, and a classical fixed-step Runge-Kutta integrator for the
//! same amplitude equations. `evolve` dispatches an ensemble across the
//! available backends, falling back from the closed form to the spectral
//! path whenever the closed form declines.

use num_complex::Complex64 as C64;

use crate::analytic::analytic_matrix;
use crate::error::{Error, Result};
use crate::linalg::{eigh, ComplexMatrix, RealSymMatrix, SymEig};
use crate::model::{build_sector, sector_hamiltonian, Branch, EnsembleState, ModelParams};

/// Default Runge-Kutta step bound, in units of 1/λ₁. Chosen so the witness
/// meets its norm-drift budget over the horizons the figures use (t ≤ 50).
pub const DEFAULT_DT_MAX: f64 = 1e-3;

/// Norm drift past this bound makes `rk_integrate` report failure.
pub const RK_DRIFT_BUDGET: f64 = 1e-6;

/// Eigendecomposition of a sector Hamiltonian, the exact backbone of the
/// spectral propagator.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eig: SymEig,
}

impl SpectralDecomposition {
    pub fn new(h: &RealSymMatrix) -> Self {
        Self { eig: eigh(h) }
    }

    pub fn dim(&self) -> usize {
        self.eig.dim
    }

    /// Eigenvalues, sorted ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    /// Orthonormal eigenvector belonging to `eigenvalues()[j]`.
    pub fn eigenvector(&self, j: usize) -> &[f64] {
        self.eig.vector(j)
    }

    /// The propagator `A(t) = V e^{-iEt} V^T`.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        let n = self.dim();
        let mut a = ComplexMatrix::zeros(n);
        for k in 0..n {
            let phase = C64::from_polar(1.0, -self.eig.values[k] * t);
            let v = self.eig.vector(k);
            for i in 0..n {
                for j in 0..n {
                    a.add_assign_at(i, j, phase * v[i] * v[j]);
                }
            }
        }
        a
    }

    /// `A(t) c` without forming the matrix.
    pub fn apply(&self, c: &[C64], t: f64) -> Vec<C64> {
        let n = self.dim();
        assert_eq!(c.len(), n);
        let mut out = vec![C64::new(0.0, 0.0); n];
        for k in 0..n {
            let v = self.eig.vector(k);
            let overlap: C64 = (0..n).map(|i| v[i] * c[i]).sum();
            let phase = C64::from_polar(1.0, -self.eig.values[k] * t);
            for i in 0..n {
                out[i] += phase * overlap * v[i];
            }
        }
        out
    }
}

/// Exact sector propagator by eigendecomposition.
pub fn oracle_matrix(h: &RealSymMatrix, t: f64) -> ComplexMatrix {
    SpectralDecomposition::new(h).propagator(t)
}

/// Fixed-step fourth-order Runge-Kutta integration of `i dC/dt = H C`.
///
/// Returns the amplitudes at each grid time, starting from `c0` at t = 0.
/// The grid must be ascending; each segment is subdivided so no internal
/// step exceeds `dt_max`. The amplitude norm is monitored at every grid
/// time against the initial norm.
pub fn rk_integrate(
    h: &RealSymMatrix,
    c0: &[C64],
    t_grid: &[f64],
    dt_max: f64,
) -> Result<Vec<Vec<C64>>> {
    if !(dt_max.is_finite() && dt_max > 0.0) {
        return Err(Error::InvalidParameter {
            name: "dt_max",
            value: dt_max,
            requirement: "dt_max > 0",
        });
    }
    validate_grid(t_grid)?;
    let norm0 = c0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut c: Vec<C64> = c0.to_vec();
    let mut now = 0.0;
    let mut out = Vec::with_capacity(t_grid.len());
    for &target in t_grid {
        rk_advance(h, &mut c, target - now, dt_max);
        now = target;
        let norm = c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let drift = (norm - norm0).abs();
        if drift > RK_DRIFT_BUDGET {
            return Err(Error::StepTooLarge {
                drift,
                budget: RK_DRIFT_BUDGET,
            });
        }
        out.push(c.clone());
    }
    Ok(out)
}

/// Require finite, non-decreasing grid times.
pub(crate) fn validate_grid(t_grid: &[f64]) -> Result<()> {
    for (k, &t) in t_grid.iter().enumerate() {
        let ascending = k == 0 || t >= t_grid[k - 1];
        if !t.is_finite() || !ascending {
            return Err(Error::InvalidParameter {
                name: "t_grid",
                value: t,
                requirement: "finite, ascending times",
            });
        }
    }
    Ok(())
}

/// Advance `c` by the signed duration `dt` in uniform classical RK4 steps
/// no longer than `dt_max`.
fn rk_advance(h: &RealSymMatrix, c: &mut [C64], dt: f64, dt_max: f64) {
    if dt == 0.0 {
        return;
    }
    let steps = (dt.abs() / dt_max).ceil().max(1.0) as usize;
    let step = dt / steps as f64;
    let deriv = |v: &[C64]| -> Vec<C64> {
        // i dC/dt = H C  =>  dC/dt = -i H C.
        h.mul_complex_vec(v)
            .into_iter()
            .map(|x| -C64::i() * x)
            .collect()
    };
    for _ in 0..steps {
        let k1 = deriv(c);
        let mid1: Vec<C64> = c.iter().zip(&k1).map(|(x, k)| x + 0.5 * step * k).collect();
        let k2 = deriv(&mid1);
        let mid2: Vec<C64> = c.iter().zip(&k2).map(|(x, k)| x + 0.5 * step * k).collect();
        let k3 = deriv(&mid2);
        let end: Vec<C64> = c.iter().zip(&k3).map(|(x, k)| x + step * k).collect();
        let k4 = deriv(&end);
        for i in 0..c.len() {
            c[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
}

/// Propagation backend selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Closed-form propagator where available (full sectors, non-degenerate
    /// parameters); spectral fallback elsewhere, with a logged notice.
    Analytic,
    /// Exact eigendecomposition (the default backend).
    Spectral,
    /// Fixed-step Runge-Kutta witness.
    Rk,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Spectral => "spectral",
            Method::Rk => "rk",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "analytic" => Ok(Method::Analytic),
            "spectral" => Ok(Method::Spectral),
            "rk" => Ok(Method::Rk),
            other => Err(format!(
                "unknown method '{other}' (expected analytic, spectral, or rk)"
            )),
        }
    }
}

/// Advance every branch of `ensemble` by the signed duration `dt`.
///
/// Weights are untouched (the mixture is classical); each branch's sector
/// amplitudes are propagated independently. With `Method::Analytic`, sectors
/// that the closed form cannot serve — truncated dimension, degenerate root
/// structure, or a failed branch self-check — silently is not an option:
/// they are advanced spectrally and the switch is logged.
pub fn evolve(
    ensemble: &EnsembleState,
    params: &ModelParams,
    dt: f64,
    method: Method,
) -> Result<EnsembleState> {
    let mut branches = Vec::with_capacity(ensemble.branches.len());
    for branch in &ensemble.branches {
        let mut amplitudes = branch.amplitudes.clone();
        for (&m, amps) in amplitudes.iter_mut() {
            let sector = build_sector(m);
            let h = sector_hamiltonian(&sector, params);
            let advanced = match method {
                Method::Spectral => SpectralDecomposition::new(&h).apply(amps, dt),
                Method::Rk => rk_integrate(&h, amps, &[dt], DEFAULT_DT_MAX)?
                    .pop()
                    .expect("one grid point in, one state out"),
                Method::Analytic => {
                    if sector.ansatz_index() >= 0 {
                        match analytic_matrix(params, sector.ansatz_index() as u32, dt) {
                            Ok(prop) => prop.entries.mul_vec(amps),
                            Err(
                                err @ (Error::DegenerateParameters { .. }
                                | Error::BranchInconsistency { .. }),
                            ) => {
                                log::warn!(
                                    "sector M={m}: closed form unavailable ({err}); \
                                     falling back to the spectral propagator"
                                );
                                SpectralDecomposition::new(&h).apply(amps, dt)
                            }
                            Err(other) => return Err(other),
                        }
                    } else {
                        log::warn!(
                            "sector M={m} has dimension {} (< 4); the closed form only \
                             covers full sectors — using the spectral propagator",
                            sector.dim()
                        );
                        SpectralDecomposition::new(&h).apply(amps, dt)
                    }
                }
            };
            *amps = advanced;
        }
        branches.push(Branch {
            weight: branch.weight,
            amplitudes,
        });
    }
    Ok(EnsembleState {
        branches,
        time: ensemble.time + dt,
    })
}

/// Interaction-picture energy ⟨H⟩ of one branch (summed over its sectors);
/// conserved under all backends.
pub fn branch_energy(branch: &Branch, params: &ModelParams) -> f64 {
    let mut energy = 0.0;
    for (&m, amps) in &branch.amplitudes {
        let h = sector_hamiltonian(&build_sector(m), params);
        let hc = h.mul_complex_vec(amps);
        energy += amps
            .iter()
            .zip(&hc)
            .map(|(c, hc)| (c.conj() * hc).re)
            .sum::<f64>();
    }
    energy
}
