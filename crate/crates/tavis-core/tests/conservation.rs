//! What evolution must never change: branch norms, branch energies, the
//! ensemble weight budget — plus the symmetry of the model under exchanging
//! the two atoms.

use proptest::prelude::*;
use tavis_core::{
    branch_energy, build_sector, eigh, evolve, prepare_ensemble, sector_hamiltonian,
    InitialCondition, Level, Method, ModelParams,
};

proptest! {
    #[test]
    fn preparation_is_normalized(
        theta in 0.0f64..=std::f64::consts::PI,
        phi in -3.2f64..=3.2,
        fock_n in 0u32..=6,
        p in 0.0f64..=1.0,
    ) {
        let init = InitialCondition::new(theta, phi, fock_n, p).unwrap();
        let e = prepare_ensemble(&init).unwrap();
        prop_assert!(e.norm_defect() <= 1e-12);
        prop_assert!((e.total_weight() - 1.0).abs() <= 1e-12);
        for b in &e.branches {
            prop_assert!((b.norm_sq() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn evolution_conserves_norm_and_energy_per_branch(
        l1 in 0.5f64..=2.0,
        l2 in 0.0f64..=0.5,
        d1 in 0.0f64..=5.0,
        d2 in 0.0f64..=5.0,
        theta in 0.1f64..=3.0,
        fock_n in 0u32..=3,
        p in 0.0f64..=1.0,
        method_pick in 0u8..=1,
    ) {
        let params = ModelParams::new(l1, l2, d1, d2, 0.0).unwrap();
        let init = InitialCondition::new(theta, 0.3, fock_n, p).unwrap();
        let method = if method_pick == 0 { Method::Analytic } else { Method::Spectral };

        let mut state = prepare_ensemble(&init).unwrap();
        let norms0: Vec<f64> = state.branches.iter().map(|b| b.norm_sq()).collect();
        let energies0: Vec<f64> = state
            .branches
            .iter()
            .map(|b| branch_energy(b, &params))
            .collect();

        for _ in 0..5 {
            state = evolve(&state, &params, 1.7, method).unwrap();
            for (k, b) in state.branches.iter().enumerate() {
                let dn = (b.norm_sq() - norms0[k]).abs();
                prop_assert!(dn <= 1e-9, "norm drift {dn:.3e} in branch {k}");
                let de = (branch_energy(b, &params) - energies0[k]).abs();
                prop_assert!(de <= 1e-9, "energy drift {de:.3e} in branch {k}");
            }
        }
    }

    #[test]
    fn exchanging_the_atoms_permutes_the_sector_basis(
        l1 in 0.5f64..=2.0,
        l2 in 0.1f64..=0.5,
        d1 in 0.0f64..=5.0,
        d2 in 0.0f64..=5.0,
        m in 1u32..=6,
    ) {
        let p = ModelParams::new(l1, l2, d1, d2, 0.0).unwrap();
        let q = ModelParams::new(l2, l1, d2, d1, 0.0).unwrap();
        let sector = build_sector(m);
        let h_p = sector_hamiltonian(&sector, &p);
        let h_q = sector_hamiltonian(&sector, &q);

        // Swapping the atom labels permutes each sector's basis: the two
        // single-flip states trade places and the extremal ones stay put.
        let perm: Vec<usize> = sector
            .basis()
            .iter()
            .map(|s| {
                let swapped = tavis_core::BasisState::new(s.atom2, s.atom1, s.photons);
                sector.index_of(&swapped).unwrap()
            })
            .collect();
        let mut defect: f64 = 0.0;
        for i in 0..sector.dim() {
            for j in 0..sector.dim() {
                defect = defect.max((h_q.get(i, j) - h_p.get(perm[i], perm[j])).abs());
            }
        }
        prop_assert!(defect <= 1e-14, "permutation defect {defect:.3e}");

        // Same physics, same spectrum.
        let ev_p = eigh(&h_p);
        let ev_q = eigh(&h_q);
        for (a, b) in ev_p.values.iter().zip(&ev_q.values) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn evolution_leaves_unpopulated_sectors_untouched() {
    // θ = 0 keeps atom 1 in the ground state: only two sectors appear and
    // their keys must survive evolution unchanged.
    let init = InitialCondition::new(0.0, 0.0, 2, 0.4).unwrap();
    let params = ModelParams::new(1.0, 0.2, 0.3, 1.0, 0.0).unwrap();
    let e0 = prepare_ensemble(&init).unwrap();
    let keys0: Vec<Vec<u32>> = e0
        .branches
        .iter()
        .map(|b| b.amplitudes.keys().copied().collect())
        .collect();
    let e1 = evolve(&e0, &params, 8.0, Method::Spectral).unwrap();
    let keys1: Vec<Vec<u32>> = e1
        .branches
        .iter()
        .map(|b| b.amplitudes.keys().copied().collect())
        .collect();
    assert_eq!(keys0, keys1);
    assert_eq!(e1.time, 8.0);
}

#[test]
fn ground_preparation_with_empty_field_is_stationary() {
    // |g₁, g₂, 0⟩ spans the one-dimensional zero-excitation sector: nothing
    // can move.
    let init = InitialCondition::new(0.0, 0.0, 0, 0.0).unwrap();
    let params = ModelParams::new(1.0, 0.4, 1.3, 0.2, 0.0).unwrap();
    let e0 = prepare_ensemble(&init).unwrap();
    let e1 = evolve(&e0, &params, 11.0, Method::Analytic).unwrap();
    assert_eq!(e1.branches.len(), 1);
    let amp = e1.branches[0].amplitude(&tavis_core::BasisState::new(
        Level::Ground,
        Level::Ground,
        0,
    ));
    assert!((amp.norm() - 1.0).abs() < 1e-12);
}
