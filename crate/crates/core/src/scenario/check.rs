use std::f64::consts::{FRAC_PI_3, PI};

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::Result;
use crate::evolution::{evolve, phase_decomposition, Helicity};
use crate::fock::{cyclic_phases, OperatorOrdering};
use crate::geometry::helix_path;
use crate::gyrotropic::{mode_status, GyrotropicMedium};
use crate::spin::{
    commutator, helicity_eigenstates, max_abs_diff, spin1_cartesian, spin1_matrices, CMatrix3,
};

/// Outcome of one built-in self-check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, value: f64, tolerance: f64) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: value.is_finite() && value <= tolerance,
        detail: format!("{value:.3e} (tolerance {tolerance:.0e})"),
    }
}

fn algebra() -> CheckOutcome {
    let s = spin1_cartesian();
    let i = num_complex::Complex64::i();
    let err = [
        max_abs_diff(&commutator(&s.s1, &s.s2), &(s.s3 * i)),
        max_abs_diff(&commutator(&s.s2, &s.s3), &(s.s1 * i)),
        max_abs_diff(&commutator(&s.s3, &s.s1), &(s.s2 * i)),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    outcome("spin commutators", err, 0.0)
}

fn eigenstates() -> Result<CheckOutcome> {
    let s = spin1_matrices();
    let k = Vector3::new(1.0, -2.0, 0.5).normalize();
    let basis = helicity_eigenstates(&k, &s)?;
    let a: CMatrix3 = s.dot(&k);
    let mut err: f64 = 0.0;
    for (j, sigma) in [-1.0, 0.0, 1.0].into_iter().enumerate() {
        let v = &basis.states[j];
        err = err.max((a * v - v * num_complex::Complex64::from(sigma)).norm());
    }
    Ok(outcome("helicity eigenstates", err, 1e-12))
}

fn cyclic_phase() -> Result<CheckOutcome> {
    let s = spin1_matrices();
    let path = helix_path(FRAC_PI_3, 1.0, 1.0, 1.0, 4096)?;
    let traj = evolve(&path, &s, Helicity::Plus)?;
    let phases = phase_decomposition(&traj, &path, &s)?;
    let err = (phases.geometric.last().copied().unwrap_or(f64::NAN) - PI).abs();
    let drift = traj.norm_drift();
    let mut o = outcome("cyclic Berry phase", err.max(drift), 1e-3);
    o.detail = format!("|gamma - pi| = {err:.3e}, norm drift {drift:.3e}");
    Ok(o)
}

fn vacuum() -> Result<CheckOutcome> {
    let sym = cyclic_phases(0, 0, FRAC_PI_3, OperatorOrdering::Symmetric)?;
    let normal = cyclic_phases(0, 0, FRAC_PI_3, OperatorOrdering::Normal)?;
    let err =
        (sym.right - PI / 2.0).abs() + sym.total().abs() + normal.left.abs() + normal.right.abs();
    Ok(outcome("vacuum phases", err, 1e-12))
}

fn isolation() -> Result<CheckOutcome> {
    let m = GyrotropicMedium::new(2.0, 3.0, 1.0, 2.0, 1.0, 1.0)?;
    let status = mode_status(&m);
    let ok = status.plus_propagates && !status.minus_propagates;
    Ok(CheckOutcome {
        name: "gyrotropic isolation",
        passed: ok,
        detail: format!("n+^2 = {}, n-^2 = {}", status.n2_plus, status.n2_minus),
    })
}

/// Runs the built-in self-checks.
pub fn self_check() -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        algebra(),
        eigenstates()?,
        cyclic_phase()?,
        vacuum()?,
        isolation()?,
    ])
}
