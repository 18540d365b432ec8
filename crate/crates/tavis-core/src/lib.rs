//! Dynamics of two two-level atoms sharing one quantized field mode under
//! rotating-wave coupling, with independently chosen coupling strengths and
//! detunings for each atom.
//!
//! Total excitation number is conserved, so the state space splits into
//! sectors of dimension at most four ([`model`]). Each sector can be
//! propagated three ways:
//!
//! * [`analytic`] — the closed-form propagator built from quartic roots in
//!   radical form, with self-checks and a degeneracy guard;
//! * spectral — exact diagonalization of the sector Hamiltonian
//!   ([`oracle::SpectralDecomposition`]);
//! * Runge–Kutta — direct integration of the Schrödinger equation
//!   ([`oracle::rk_integrate`]), the slow cross-check.
//!
//! [`observables`] reduces the evolved state to the quantities of interest:
//! atom-1 linear entropy, dipole squeezing indices, and atom-field
//! entanglement negativity.

pub mod analytic;
pub mod error;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod oracle;

pub use analytic::{
    analytic_matrix, compute_coefficients, compute_coefficients_with_tolerance,
    AnalyticCoefficients, Condition, PropagatorMatrix, DEGENERACY_TOLERANCE,
};
pub use error::{Error, Result};
pub use linalg::{eigh, hermitian_eigenvalues_doubled, ComplexMatrix, RealSymMatrix, SymEig};
pub use model::{
    build_sector, prepare_ensemble, sector_hamiltonian, BasisState, Branch, EnsembleState,
    ExcitationSector, InitialCondition, Level, ModelParams,
};
pub use observables::{
    atom1_reduce, atom_field_density, linear_entropy, negativity, series, squeezing_indices,
    Atom1State, AtomFieldDensity, ObservableRecord, ObservableSeries, SqueezingIndices,
    DEFAULT_SQUEEZING_EPS,
};
pub use oracle::{branch_energy, evolve, oracle_matrix, rk_integrate, Method, SpectralDecomposition};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
