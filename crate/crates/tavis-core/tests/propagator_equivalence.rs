//! The closed-form propagator against the spectral one, across random
//! parameters and times, plus the algebraic properties a propagator family
//! must satisfy (unitarity, composition, time reversal).

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use tavis_core::{
    analytic_matrix, build_sector, oracle_matrix, sector_hamiltonian, ComplexMatrix, Error,
    ModelParams, SpectralDecomposition,
};

fn params(l1: f64, l2: f64, d1: f64, d2: f64) -> ModelParams {
    ModelParams::new(l1, l2, d1, d2, 0.0).unwrap()
}

fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    let dim = m.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            out.set(r, c, m.get(c, r).conj());
        }
    }
    out
}

proptest! {
    #[test]
    fn closed_form_matches_the_spectral_propagator(
        l1 in 0.5f64..=2.0,
        l2 in 0.0f64..=0.5,
        d1 in 0.0f64..=5.0,
        d2 in 0.0f64..=5.0,
        n in 0u32..=4,
        t in 0.0f64..=30.0,
    ) {
        let p = params(l1, l2, d1, d2);
        let a = match analytic_matrix(&p, n, t) {
            Ok(a) => a,
            Err(Error::DegenerateParameters { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
        };
        let h = sector_hamiltonian(&build_sector(n + 2), &p);
        let o = oracle_matrix(&h, t);
        let diff = a.entries.max_abs_diff(&o);
        prop_assert!(diff <= 1e-6, "entrywise deviation {diff:.3e} at t = {t}");
    }

    #[test]
    fn closed_form_is_unitary(
        l1 in 0.5f64..=2.0,
        l2 in 0.0f64..=0.5,
        d1 in 0.0f64..=5.0,
        d2 in 0.0f64..=5.0,
        n in 0u32..=4,
        t in 0.0f64..=30.0,
    ) {
        let p = params(l1, l2, d1, d2);
        let a = match analytic_matrix(&p, n, t) {
            Ok(a) => a,
            Err(Error::DegenerateParameters { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
        };
        let product = a.entries.mul(&adjoint(&a.entries));
        let defect = product.max_abs_diff(&ComplexMatrix::identity(4));
        prop_assert!(defect <= 1e-8, "unitarity defect {defect:.3e} at t = {t}");
    }

    #[test]
    fn closed_form_composes_over_time(
        l1 in 0.5f64..=2.0,
        l2 in 0.0f64..=0.5,
        d1 in 0.0f64..=5.0,
        d2 in 0.0f64..=5.0,
        n in 0u32..=4,
        t1 in 0.0f64..=15.0,
        t2 in 0.0f64..=15.0,
    ) {
        let p = params(l1, l2, d1, d2);
        let whole = match analytic_matrix(&p, n, t1 + t2) {
            Ok(a) => a,
            Err(Error::DegenerateParameters { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
        };
        let first = analytic_matrix(&p, n, t1).unwrap();
        let second = analytic_matrix(&p, n, t2).unwrap();
        let composed = second.entries.mul(&first.entries);
        let diff = whole.entries.max_abs_diff(&composed);
        prop_assert!(diff <= 1e-7, "composition defect {diff:.3e}");
    }

    #[test]
    fn closed_form_reverses_in_time(
        l1 in 0.5f64..=2.0,
        l2 in 0.0f64..=0.5,
        d1 in 0.0f64..=5.0,
        d2 in 0.0f64..=5.0,
        n in 0u32..=4,
        t in 0.0f64..=30.0,
    ) {
        let p = params(l1, l2, d1, d2);
        let fwd = match analytic_matrix(&p, n, t) {
            Ok(a) => a,
            Err(Error::DegenerateParameters { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
        };
        let bwd = analytic_matrix(&p, n, -t).unwrap();
        let round_trip = bwd.entries.mul(&fwd.entries);
        let defect = round_trip.max_abs_diff(&ComplexMatrix::identity(4));
        prop_assert!(defect <= 1e-8, "reversal defect {defect:.3e} at t = {t}");
    }

    #[test]
    fn spectral_decomposition_reconstructs_its_input(
        l1 in 0.5f64..=2.0,
        l2 in 0.0f64..=0.5,
        d1 in 0.0f64..=5.0,
        d2 in 0.0f64..=5.0,
        m in 1u32..=6,
    ) {
        let p = params(l1, l2, d1, d2);
        let h = sector_hamiltonian(&build_sector(m), &p);
        let dim = h.dim();
        let sd = SpectralDecomposition::new(&h);

        // V E Vᵀ = H.
        let mut recon_defect: f64 = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                let mut sum = 0.0;
                for j in 0..dim {
                    sum += sd.eigenvector(j)[r] * sd.eigenvalues()[j] * sd.eigenvector(j)[c];
                }
                recon_defect = recon_defect.max((sum - h.get(r, c)).abs());
            }
        }
        prop_assert!(recon_defect <= 1e-12, "reconstruction defect {recon_defect:.3e}");

        // VᵀV = I.
        let mut ortho_defect: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let dot: f64 = sd
                    .eigenvector(i)
                    .iter()
                    .zip(sd.eigenvector(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                ortho_defect = ortho_defect.max((dot - want).abs());
            }
        }
        prop_assert!(ortho_defect <= 1e-12, "orthogonality defect {ortho_defect:.3e}");

        // The zero-time propagator is the identity.
        let at_zero = sd.propagator(0.0);
        prop_assert!(at_zero.max_abs_diff(&ComplexMatrix::identity(dim)) <= 1e-13);
    }
}

#[test]
fn propagator_entries_start_from_the_identity() {
    for (l1, l2, d1, d2, n) in [
        (1.0, 0.1, 0.0, 1.0, 0),
        (1.7, 0.4, 2.5, 0.3, 3),
        (0.6, 0.0, 0.0, 4.0, 1),
    ] {
        let a = analytic_matrix(&params(l1, l2, d1, d2), n, 0.0).unwrap();
        let defect = a.entries.max_abs_diff(&ComplexMatrix::identity(4));
        assert!(defect <= 1e-9, "identity defect {defect:.3e}");
    }
}

#[test]
fn propagator_stays_symmetric_in_the_basis_indices() {
    // exp(-iHt) of a real symmetric H is complex symmetric: A_{ij} = A_{ji}.
    let p = params(1.3, 0.45, 1.1, 3.7);
    for t in [0.7, 5.0, 19.3] {
        let a = analytic_matrix(&p, 2, t).unwrap();
        let mut defect: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                defect = defect.max((a.entries.get(r, c) - a.entries.get(c, r)).norm());
            }
        }
        assert!(defect <= 1e-9, "symmetry defect {defect:.3e} at t = {t}");
    }
}

#[test]
fn spectral_and_rk_integration_agree_on_a_full_sector() {
    let p = params(1.0, 0.3, 0.4, 2.0);
    let h = sector_hamiltonian(&build_sector(3), &p);
    let c0 = vec![
        C64::new(0.5, 0.0),
        C64::new(0.0, 0.5),
        C64::new(-0.5, 0.0),
        C64::new(0.0, -0.5),
    ];
    let grid: Vec<f64> = (0..=20).map(|k| k as f64 * 0.5).collect();
    let rk = tavis_core::rk_integrate(&h, &c0, &grid, 1e-3).unwrap();
    let sd = SpectralDecomposition::new(&h);
    for (c_rk, &t) in rk.iter().zip(&grid) {
        let c_sp = sd.apply(&c0, t);
        let diff = c_rk
            .iter()
            .zip(&c_sp)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(diff <= 1e-7, "rk vs spectral deviation {diff:.3e} at t = {t}");
    }
}
