use std::f64::consts::{PI, TAU};

use nalgebra::{SymmetricEigen, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;

use fiberphase::evolution::unitary_step;
use fiberphase::spin::CMatrix3;
use fiberphase::{
    casimir_cutoff, cyclic_phases, evolve, helicity_eigenstates, helicity_operator, helix_path,
    phase_decomposition, quantal_geometric_phase, refractive_indices_squared, spherical_angles,
    spin1_matrices, FiberPath, GyrotropicMedium, Helicity, OperatorOrdering,
};

fn unit_vector() -> impl Strategy<Value = Vector3<f64>> {
    (0.0..PI, 0.0..TAU).prop_map(|(theta, phi): (f64, f64)| {
        Vector3::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        )
    })
}

fn sorted_eigenvalues(m: &CMatrix3) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(*m)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #[test]
    fn helicity_operator_is_hermitian_with_unit_spectrum(k in unit_vector()) {
        let a = helicity_operator(&k, &spin1_matrices()).unwrap();
        prop_assert!((a - a.adjoint()).norm() < 1e-15);
        let ev = sorted_eigenvalues(&a);
        for (got, want) in ev.iter().zip([-1.0, 0.0, 1.0]) {
            prop_assert!((got - want).abs() < 1e-12, "{:?}", ev);
        }
    }

    #[test]
    fn eigenstates_are_orthonormal_eigenvectors(k in unit_vector()) {
        let s = spin1_matrices();
        let a = s.dot(&k);
        let basis = helicity_eigenstates(&k, &s).unwrap();
        for sigma in [-1, 0, 1] {
            let v = basis.state(sigma).unwrap();
            prop_assert!((a * v - v * Complex64::from(sigma as f64)).norm() < 1e-12);
            for tau in [-1, 0, 1] {
                let overlap = v.dotc(basis.state(tau).unwrap()).norm();
                let want = if sigma == tau { 1.0 } else { 0.0 };
                prop_assert!((overlap - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn step_is_unitary(h in unit_vector(), scale in 0.0..50.0f64, dt in 1e-4..1.0f64) {
        let u = unitary_step(&spin1_matrices().dot(&(h * scale)), dt);
        prop_assert!((u.adjoint() * u - CMatrix3::identity()).norm() < 1e-13);
    }

    #[test]
    fn ordering_shifts_each_mode_by_half(n_l in 0u32..1000, n_r in 0u32..1000, lambda in 0.0..=PI) {
        let sym = cyclic_phases(n_l, n_r, lambda, OperatorOrdering::Symmetric).unwrap();
        let nor = cyclic_phases(n_l, n_r, lambda, OperatorOrdering::Normal).unwrap();
        let cap = TAU * (1.0 - lambda.cos());
        prop_assert!((sym.left - nor.left + 0.5 * cap).abs() < 1e-9);
        prop_assert!((sym.right - nor.right - 0.5 * cap).abs() < 1e-9);
        prop_assert!((nor.total() - (n_r as f64 - n_l as f64) * cap).abs() < 1e-9);
    }

    #[test]
    fn quantal_phase_is_linear(n_l in 0u32..50, n_r in 0u32..50, lambda in 0.1..3.0f64) {
        let path = helix_path(lambda, 1.0, 1.0, 1.0, 128).unwrap();
        let angles = spherical_angles(&path);
        let end = path.len() - 1;
        let one = quantal_geometric_phase(0, 1, &angles, end).unwrap();
        let q = quantal_geometric_phase(n_l, n_r, &angles, end).unwrap();
        prop_assert!((q - (n_r as f64 - n_l as f64) * one).abs() < 1e-9);
    }

    #[test]
    fn reversed_medium_swaps_indices(
        e1 in -5.0..5.0f64, e2 in -5.0..5.0f64, m1 in -5.0..5.0f64, m2 in -5.0..5.0f64,
    ) {
        let m = GyrotropicMedium::new(e1, e2, 1.0, m1, m2, 1.0).unwrap();
        let (p, n) = refractive_indices_squared(&m);
        let (rp, rn) = refractive_indices_squared(&m.reversed());
        prop_assert_eq!((p, n), (rn, rp));
    }

    #[test]
    fn cutoff_is_a_threshold(k in 1e-3..10.0f64, a in 0.1..10.0f64) {
        prop_assert_eq!(casimir_cutoff(k, a).unwrap(), k < PI / a);
        if casimir_cutoff(k, a).unwrap() {
            prop_assert!(casimir_cutoff(0.5 * k, a).unwrap());
        }
    }

    #[test]
    fn path_text_round_trips(lambda in 0.0..=PI, omega in 0.5..3.0f64, n in 64usize..300) {
        let path = helix_path(lambda, omega, 2.0, 1.0, n).unwrap();
        let back = FiberPath::parse(&path.to_text()).unwrap();
        prop_assert_eq!(back.times(), path.times());
        // k is written scaled by |k| and renormalized on import
        for (a, b) in back.k_hat().iter().zip(path.k_hat()) {
            prop_assert!((a - b).norm() < 4.0 * f64::EPSILON);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn opposite_helicities_have_opposite_phases(lambda in 0.2..1.3f64, omega in prop_oneof![Just(1.0), Just(-1.0), Just(2.0)]) {
        let s = spin1_matrices();
        let path = helix_path(lambda, omega, 1.0, 1.0, 1024).unwrap();
        let g = |sigma| {
            let traj = evolve(&path, &s, sigma).unwrap();
            *phase_decomposition(&traj, &path, &s).unwrap().geometric.last().unwrap()
        };
        let (plus, minus) = (g(Helicity::Plus), g(Helicity::Minus));
        prop_assert!((plus + minus).abs() < 1e-9, "{} {}", plus, minus);
        let cap = omega.signum() * TAU * (1.0 - lambda.cos());
        prop_assert!((plus - cap).abs() < 1e-2, "{} vs {}", plus, cap);
    }
}
