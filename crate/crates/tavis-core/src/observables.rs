//! The three diagnostics: linear entropy of atom 1, dipole squeezing
//! indices, and atom-1–field negativity, each computed by a general partial
//! trace over the ensemble — no special-cased initial conditions.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues_doubled, ComplexMatrix};
use crate::model::{
    build_sector, prepare_ensemble, BasisState, EnsembleState, InitialCondition, Level,
    ModelParams,
};
use crate::oracle::{evolve, Method};

/// Inversion magnitudes below this default make the squeezing indices
/// undefined rather than numerically huge.
pub const DEFAULT_SQUEEZING_EPS: f64 = 1e-9;

/// Reduced state of atom 1: ρ = [[α, γ], [γ*, 1−α]] in the {|g₁⟩, |e₁⟩}
/// basis, with α the ground population and γ the coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom1State {
    pub alpha: f64,
    pub gamma: C64,
}

/// Trace out the field and atom 2.
///
/// α collects the weighted squared amplitudes of every atom-1-ground basis
/// state; γ pairs each such state with its atom-1-excited partner at the
/// same atom-2 level and photon number (those partners live one sector up).
pub fn atom1_reduce(ensemble: &EnsembleState) -> Atom1State {
    let mut alpha = 0.0;
    let mut gamma = C64::new(0.0, 0.0);
    for branch in &ensemble.branches {
        for (&m, amps) in &branch.amplitudes {
            let sector = build_sector(m);
            for (slot, state) in sector.basis().iter().enumerate() {
                if state.atom1 != Level::Ground {
                    continue;
                }
                let cg = amps[slot];
                alpha += branch.weight * cg.norm_sqr();
                let partner = BasisState::new(Level::Excited, state.atom2, state.photons);
                let ce = branch.amplitude(&partner);
                gamma += branch.weight * cg * ce.conj();
            }
        }
    }
    Atom1State { alpha, gamma }
}

/// Linear entropy S = 2[α − α² − |γ|²] of the atom-1 reduced state; 0 for a
/// pure qubit, ½ for a maximally mixed one. Pure states can land a few ulps
/// below zero; rounding dust is snapped to the boundary, while anything
/// larger passes through for the range checks to catch.
pub fn linear_entropy(a: &Atom1State) -> f64 {
    let s = 2.0 * (a.alpha - a.alpha * a.alpha - a.gamma.norm_sqr());
    if (-1e-12..=0.0).contains(&s) {
        0.0
    } else {
        s
    }
}

/// Dipole squeezing indices; `None` marks the undefined case of vanishing
/// inversion, where the Heisenberg bound itself collapses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingIndices {
    pub s1: Option<f64>,
    pub s2: Option<f64>,
}

/// Squeezing indices of the two slowly-varying dipole quadratures at carrier
/// frequency ω₁ = ω + Δ₁. A value below 1 flags squeezing; both indices are
/// undefined when |1 − 2α| < eps.
pub fn squeezing_indices(a: &Atom1State, omega1: f64, t: f64, eps: f64) -> SqueezingIndices {
    let inversion = (1.0 - 2.0 * a.alpha).abs();
    if inversion < eps {
        return SqueezingIndices { s1: None, s2: None };
    }
    let (sin_wt, cos_wt) = (omega1 * t).sin_cos();
    let q1 = a.gamma.re * cos_wt - a.gamma.im * sin_wt;
    let q2 = a.gamma.re * sin_wt + a.gamma.im * cos_wt;
    SqueezingIndices {
        s1: Some((1.0 - 4.0 * q1 * q1) / inversion),
        s2: Some((1.0 - 4.0 * q2 * q2) / inversion),
    }
}

/// Reduced density matrix of atom 1 together with the (truncated) field,
/// atom 2 traced out. Row/column index = level·field_dim + photons, ground
/// block first.
#[derive(Debug, Clone)]
pub struct AtomFieldDensity {
    pub field_dim: usize,
    pub matrix: ComplexMatrix,
}

impl AtomFieldDensity {
    /// Flat index of |atom1, photons⟩.
    pub fn index(&self, atom1: Level, photons: usize) -> usize {
        atom1.excitation() as usize * self.field_dim + photons
    }

    pub fn dim(&self) -> usize {
        2 * self.field_dim
    }

    /// Purity Tr ρ² (1 for a pure atom-field state).
    pub fn purity(&self) -> f64 {
        self.matrix.mul(&self.matrix).trace().re
    }
}

/// Partial trace over atom 2, valid for any ensemble.
///
/// The field cutoff adapts to the state: the largest occupied excitation
/// number M bounds the reachable photon count (attained by |g₁,g₂,M⟩), so
/// the field block has dimension M + 1.
pub fn atom_field_density(ensemble: &EnsembleState) -> AtomFieldDensity {
    let field_dim = ensemble.max_sector().unwrap_or(0) as usize + 1;
    let dim = 2 * field_dim;
    let mut rho = ComplexMatrix::zeros(dim);
    for branch in &ensemble.branches {
        for atom2 in [Level::Ground, Level::Excited] {
            // The branch amplitude vector over (atom 1, photons) at fixed
            // atom-2 level; tracing atom 2 sums the two outer products.
            let mut v = vec![C64::new(0.0, 0.0); dim];
            for (block, atom1) in [Level::Ground, Level::Excited].into_iter().enumerate() {
                for n in 0..field_dim {
                    v[block * field_dim + n] =
                        branch.amplitude(&BasisState::new(atom1, atom2, n as u32));
                }
            }
            for r in 0..dim {
                if v[r] == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..dim {
                    rho.add_assign_at(r, c, branch.weight * v[r] * v[c].conj());
                }
            }
        }
    }
    AtomFieldDensity { field_dim, matrix: rho }
}

/// Entanglement negativity between atom 1 and the field: twice the absolute
/// sum of the negative eigenvalues of the partial transpose over atom 1,
/// normalized so one maximally entangled excitation gives 1.
///
/// The density-matrix invariants (hermiticity to 1e−12, unit trace to 1e−10,
/// eigenvalues above −1e−10) are checked first and violations are refused.
pub fn negativity(rho: &AtomFieldDensity) -> Result<f64> {
    let defect = rho.matrix.hermiticity_defect();
    if defect > 1e-12 {
        return Err(Error::NotADensityMatrix {
            reason: format!("hermiticity defect {defect:.3e} exceeds 1e-12"),
        });
    }
    let trace = rho.matrix.trace();
    if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
        return Err(Error::NotADensityMatrix {
            reason: format!("trace {trace} deviates from 1 beyond 1e-10"),
        });
    }
    let spectrum = hermitian_eigenvalues_doubled(&rho.matrix);
    if let Some(&lowest) = spectrum.first() {
        if lowest < -1e-10 {
            return Err(Error::NotADensityMatrix {
                reason: format!("negative eigenvalue {lowest:.3e} below -1e-10"),
            });
        }
    }

    // Partial transpose over atom 1 swaps the two off-diagonal level blocks
    // elementwise: (a,n| ρ^{T₁} |b,m) = (b,n| ρ |a,m).
    let fd = rho.field_dim;
    let mut pt = rho.matrix.clone();
    for n in 0..fd {
        for m in 0..fd {
            pt.set(n, fd + m, rho.matrix.get(fd + n, m));
            pt.set(fd + n, m, rho.matrix.get(n, fd + m));
        }
    }
    // The embedding doubles every eigenvalue, so summing |negative| over it
    // already carries the factor-of-2 normalization.
    let neg: f64 = hermitian_eigenvalues_doubled(&pt)
        .iter()
        .filter(|&&e| e < 0.0)
        .map(|e| -e)
        .sum();
    // An empty float sum is seeded at -0.0; keep separable states at +0.
    Ok(if neg == 0.0 { 0.0 } else { neg })
}

/// One time-stamped record of every diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableRecord {
    pub time: f64,
    pub alpha: f64,
    pub gamma: C64,
    pub entropy: f64,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub negativity: f64,
}

/// Time series of all diagnostics over one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub records: Vec<ObservableRecord>,
}

/// Prepare the initial ensemble and walk it across the grid, evaluating all
/// diagnostics from the same evolved state at each time.
pub fn series(
    init: &InitialCondition,
    params: &ModelParams,
    t_grid: &[f64],
    method: Method,
) -> Result<ObservableSeries> {
    crate::oracle::validate_grid(t_grid)?;
    let omega1 = params.omega1();
    let mut state = prepare_ensemble(init)?;
    let mut records = Vec::with_capacity(t_grid.len());
    let mut prev = 0.0;
    for &t in t_grid {
        state = evolve(&state, params, t - prev, method)?;
        prev = t;
        let a1 = atom1_reduce(&state);
        let squeezing = squeezing_indices(&a1, omega1, t, DEFAULT_SQUEEZING_EPS);
        let rho = atom_field_density(&state);
        records.push(ObservableRecord {
            time: t,
            alpha: a1.alpha,
            gamma: a1.gamma,
            entropy: linear_entropy(&a1),
            s1: squeezing.s1,
            s2: squeezing.s2,
            negativity: negativity(&rho)?,
        });
    }
    Ok(ObservableSeries {
        times: t_grid.to_vec(),
        records,
    })
}
