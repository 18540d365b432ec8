//! Model parameters, the excitation-sector decomposition of the Hilbert
//! space, sector Hamiltonian blocks, and initial-state preparation.
//!
//! Two two-level atoms couple to one field mode with strengths λ₁, λ₂ and
//! detunings Δ₁, Δ₂. The total excitation number M (photons plus excited
//! atoms) is conserved, so the interaction-picture Hamiltonian block-
//! diagonalizes over sectors of fixed M with dimension at most 4; all
//! dynamics happens inside those blocks.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::RealSymMatrix;

/// Level of one two-level atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Ground,
    Excited,
}

impl Level {
    /// Excitation quantum carried by this level (0 or 1).
    pub fn excitation(self) -> u32 {
        match self {
            Level::Ground => 0,
            Level::Excited => 1,
        }
    }

    /// Sign of the σ_z/2 eigenvalue: +1 excited, −1 ground.
    fn inversion_sign(self) -> f64 {
        match self {
            Level::Ground => -1.0,
            Level::Excited => 1.0,
        }
    }
}

/// Physical parameters of the two-atom model.
///
/// `lambda1` sets the clock: all times are reported in units of 1/λ₁. The
/// atomic transition frequencies are derived, never stored: ω₁ = ω + Δ₁ and
/// ω₂ = ω + Δ₂. The field frequency ω itself only enters the observables
/// through the squeezing rotation phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub lambda1: f64,
    pub lambda2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub omega: f64,
}

impl ModelParams {
    pub fn new(lambda1: f64, lambda2: f64, delta1: f64, delta2: f64, omega: f64) -> Result<Self> {
        if !(lambda1.is_finite() && lambda1 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda1",
                value: lambda1,
                requirement: "lambda1 > 0 (it sets the clock)",
            });
        }
        if !(lambda2.is_finite() && lambda2 >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda2",
                value: lambda2,
                requirement: "lambda2 >= 0 (0 decouples the second atom)",
            });
        }
        for (name, value) in [("delta1", delta1), ("delta2", delta2), ("omega", omega)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    requirement: "a finite number",
                });
            }
        }
        Ok(Self {
            lambda1,
            lambda2,
            delta1,
            delta2,
            omega,
        })
    }

    /// Transition frequency of atom 1, ω₁ = ω + Δ₁.
    pub fn omega1(&self) -> f64 {
        self.omega + self.delta1
    }

    /// Transition frequency of atom 2, ω₂ = ω + Δ₂.
    pub fn omega2(&self) -> f64 {
        self.omega + self.delta2
    }
}

/// One product basis state |atom1, atom2, n⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub atom1: Level,
    pub atom2: Level,
    pub photons: u32,
}

impl BasisState {
    pub fn new(atom1: Level, atom2: Level, photons: u32) -> Self {
        Self {
            atom1,
            atom2,
            photons,
        }
    }

    /// Total excitation M = n + (atom 1 excited) + (atom 2 excited);
    /// conserved by the dynamics.
    pub fn excitation(&self) -> u32 {
        self.photons + self.atom1.excitation() + self.atom2.excitation()
    }
}

/// All product basis states sharing one total excitation number M, in the
/// canonical order |e₁,e₂,M−2⟩, |e₁,g₂,M−1⟩, |g₁,e₂,M−1⟩, |g₁,g₂,M⟩ with
/// states of negative photon number dropped. Dimension is 1 for M = 0, 3
/// for M = 1, and 4 for M ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcitationSector {
    m: u32,
    basis: Vec<BasisState>,
}

impl ExcitationSector {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisState] {
        &self.basis
    }

    /// The index n = M − 2: the photon count accompanying the doubly excited
    /// member. Negative for the truncated sectors M < 2.
    pub fn ansatz_index(&self) -> i64 {
        self.m as i64 - 2
    }

    /// Position of `state` in the canonical basis order, if it belongs here.
    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        self.basis.iter().position(|s| s == state)
    }
}

/// Build the excitation sector with total excitation `m`.
pub fn build_sector(m: u32) -> ExcitationSector {
    let m_i = m as i64;
    let candidates = [
        (Level::Excited, Level::Excited, m_i - 2),
        (Level::Excited, Level::Ground, m_i - 1),
        (Level::Ground, Level::Excited, m_i - 1),
        (Level::Ground, Level::Ground, m_i),
    ];
    let basis = candidates
        .into_iter()
        .filter(|&(_, _, n)| n >= 0)
        .map(|(a1, a2, n)| BasisState::new(a1, a2, n as u32))
        .collect();
    ExcitationSector { m, basis }
}

/// The interaction-picture Hamiltonian block of one excitation sector, as a
/// real symmetric matrix over the sector's canonical basis.
///
/// Diagonal entries carry the detuning shifts ±Δ₁/2 ± Δ₂/2 (sign per atom
/// level); an off-diagonal entry is λᵢ√(n_max) exactly when the two states
/// differ by one flip of atom i compensated by one photon, with n_max the
/// larger of the two photon numbers.
pub fn sector_hamiltonian(sector: &ExcitationSector, params: &ModelParams) -> RealSymMatrix {
    let dim = sector.dim();
    let mut h = RealSymMatrix::zeros(dim);
    for (i, si) in sector.basis().iter().enumerate() {
        let diag = si.atom1.inversion_sign() * params.delta1 / 2.0
            + si.atom2.inversion_sign() * params.delta2 / 2.0;
        h.set_sym(i, i, diag);
        for (j, sj) in sector.basis().iter().enumerate().skip(i + 1) {
            if let Some(v) = coupling(si, sj, params) {
                h.set_sym(i, j, v);
            }
        }
    }
    h
}

/// Off-diagonal matrix element between two distinct basis states: nonzero
/// exactly when one atom flips and the photon number compensates by one
/// (rotating-wave coupling a σ⁺ + a† σ⁻).
fn coupling(a: &BasisState, b: &BasisState, params: &ModelParams) -> Option<f64> {
    let flip1 = a.atom1 != b.atom1;
    let flip2 = a.atom2 != b.atom2;
    let dn = a.photons as i64 - b.photons as i64;
    let lambda = match (flip1, flip2) {
        (true, false) => params.lambda1,
        (false, true) => params.lambda2,
        _ => return None,
    };
    if dn.abs() != 1 {
        return None;
    }
    let n_max = a.photons.max(b.photons) as f64;
    Some(lambda * n_max.sqrt())
}

/// The tripartite product initial condition: atom 1 in the pure state
/// cos(θ/2)|g₁⟩ + e^{iφ} sin(θ/2)|e₁⟩, the field in the Fock state |N⟩, and
/// atom 2 in the classical mixture p|e₂⟩⟨e₂| + (1−p)|g₂⟩⟨g₂|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCondition {
    pub theta: f64,
    pub phi: f64,
    pub fock_n: u32,
    pub p: f64,
}

impl InitialCondition {
    pub fn new(theta: f64, phi: f64, fock_n: u32, p: f64) -> Result<Self> {
        if !(theta.is_finite() && (0.0..=std::f64::consts::PI).contains(&theta)) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                requirement: "0 <= theta <= pi",
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
                requirement: "a finite number",
            });
        }
        if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                requirement: "0 <= p <= 1",
            });
        }
        Ok(Self {
            theta,
            phi,
            fock_n,
            p,
        })
    }
}

/// One pure trajectory of the classical mixture: a statistical weight plus
/// complex amplitudes grouped by excitation sector. Amplitude vectors follow
/// the owning sector's canonical basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub weight: f64,
    pub amplitudes: BTreeMap<u32, Vec<C64>>,
}

impl Branch {
    /// Amplitude on one product basis state; zero if the state's sector or
    /// slot is unoccupied in this branch.
    pub fn amplitude(&self, state: &BasisState) -> C64 {
        let m = state.excitation();
        match self.amplitudes.get(&m) {
            Some(v) => build_sector(m)
                .index_of(state)
                .map(|i| v[i])
                .unwrap_or_default(),
            None => C64::new(0.0, 0.0),
        }
    }

    /// Squared amplitude norm across all sectors (1 for a physical branch).
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes
            .values()
            .flat_map(|v| v.iter())
            .map(|c| c.norm_sqr())
            .sum()
    }
}

/// A classical mixture of pure trajectories at a common time. Weights come
/// from atom 2's initial mixedness and stay constant; each branch evolves
/// unitarily on its own.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleState {
    pub branches: Vec<Branch>,
    /// Current time in units of 1/λ₁.
    pub time: f64,
}

impl EnsembleState {
    /// Sum of branch weights (1 for a physical ensemble).
    pub fn total_weight(&self) -> f64 {
        self.branches.iter().map(|b| b.weight).sum()
    }

    /// Largest deviation of any branch's amplitude norm from one.
    pub fn norm_defect(&self) -> f64 {
        self.branches
            .iter()
            .fold(0.0, |worst: f64, b| worst.max((b.norm_sq() - 1.0).abs()))
    }

    /// Largest occupied excitation number, or None for an empty ensemble.
    pub fn max_sector(&self) -> Option<u32> {
        self.branches
            .iter()
            .flat_map(|b| b.amplitudes.keys().copied())
            .max()
    }
}

/// Prepare the ensemble at t = 0 from a product initial condition.
///
/// Atom 2's mixture becomes (at most) two branches with weights p and 1 − p;
/// zero-weight branches are omitted. Within a branch, the atom-1-ground
/// component carries amplitude cos(θ/2) into the sector M = N + e₂ and the
/// atom-1-excited component carries sin(θ/2)·e^{iφ} into M = N + 1 + e₂.
pub fn prepare_ensemble(init: &InitialCondition) -> Result<EnsembleState> {
    // Re-validate: the fields are public, so the value may not have come
    // through the checked constructor.
    let init = InitialCondition::new(init.theta, init.phi, init.fock_n, init.p)?;
    let zero = C64::new(0.0, 0.0);
    let ground_amp = C64::from((init.theta / 2.0).cos());
    let excited_amp = C64::from_polar((init.theta / 2.0).sin(), init.phi);

    let mut branches = Vec::new();
    for (atom2, weight) in [
        (Level::Excited, init.p),
        (Level::Ground, 1.0 - init.p),
    ] {
        if weight == 0.0 {
            continue;
        }
        let mut amplitudes: BTreeMap<u32, Vec<C64>> = BTreeMap::new();
        for (atom1, amp) in [(Level::Ground, ground_amp), (Level::Excited, excited_amp)] {
            if amp == zero {
                continue;
            }
            let state = BasisState::new(atom1, atom2, init.fock_n);
            let sector = build_sector(state.excitation());
            let slot = sector
                .index_of(&state)
                .expect("a product state always belongs to its own sector");
            amplitudes
                .entry(sector.m())
                .or_insert_with(|| vec![zero; sector.dim()])[slot] = amp;
        }
        branches.push(Branch { weight, amplitudes });
    }
    Ok(EnsembleState {
        branches,
        time: 0.0,
    })
}
