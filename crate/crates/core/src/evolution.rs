//! Time evolution of a photon spinor under `H_eff(t) = (k x k')/k^2 . S`.
//!
//! The same Hamiltonian is reachable three ways and all three are exposed
//! so they can be checked against each other:
//!
//! * directly, [`effective_hamiltonian`];
//! * from the rotation between successive wave vectors,
//!   [`hamiltonian_from_rotation`];
//! * as the generator that keeps the helicity `I(t) = k_hat . S` invariant,
//!   checked by [`invariant_residual`].
//!
//! # Phase convention
//!
//! Phases are reported in the convention where a state picks up the factor
//! `exp(-i phi)`. The total phase is `-arg <psi(0)|psi(t)>`, the dynamical
//! phase is `+integral <psi|H|psi> dt` and the geometric phase is their
//! difference. In this convention a helicity-`sigma` photon taken once around
//! a cone of half-angle `lambda` acquires `+sigma 2 pi (1 - cos lambda)`.
//!
//! # Adiabaticity
//!
//! The stepper integrates any path exactly (up to the step error). The
//! closed-form phases are only expected to match when the direction turns
//! slowly compared to the step, i.e. when `|h| dt << 1`.

use nalgebra::{SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{rotation_vector, FiberPath, SphericalAngles};
use crate::spin::{
    commutator, helicity_eigenstates, helicity_eigenstates_in, CMatrix3, Gauge, SpinTriple, Spinor,
};

/// Photon helicity. Helicity 0 is not a transverse photon state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Helicity {
    Minus,
    Plus,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Minus => -1.0,
            Helicity::Plus => 1.0,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Helicity::Minus => -1,
            Helicity::Plus => 1,
        }
    }
}

impl TryFrom<i32> for Helicity {
    type Error = Error;

    fn try_from(value: i32) -> Result<Self> {
        match value {
            1 => Ok(Helicity::Plus),
            -1 => Ok(Helicity::Minus),
            other => Err(Error::InvalidHelicity(other)),
        }
    }
}

/// `H(t_i)` and its coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSample {
    /// `(k x k') / k^2`.
    pub h: Vector3<f64>,
    pub matrix: CMatrix3,
}

/// Coefficient vector `(k(t_i) x k'(t_i)) / k^2`.
pub fn hamiltonian_coefficient(path: &FiberPath, i: usize) -> Vector3<f64> {
    let k = path.k(i);
    let kd = path.k_dot_at(i);
    k.cross(&kd) / (path.k_mag() * path.k_mag())
}

pub fn effective_hamiltonian(
    path: &FiberPath,
    spin: &SpinTriple,
    i: usize,
) -> Result<HamiltonianSample> {
    path.check_index(i, 0..path.len())?;
    let h = hamiltonian_coefficient(path, i);
    Ok(HamiltonianSample {
        h,
        matrix: spin.dot(&h),
    })
}

/// `(theta_i / dt) . S`, the Hamiltonian implied by the rotation that takes
/// `k(t_i)` into `k(t_{i+1})`. Agrees with [`effective_hamiltonian`] to
/// first order in `dt`.
pub fn hamiltonian_from_rotation(
    path: &FiberPath,
    spin: &SpinTriple,
    i: usize,
) -> Result<CMatrix3> {
    let theta = rotation_vector(path, i)?;
    Ok(spin.dot(&(theta / path.dt())))
}

/// Frobenius norm.
pub fn frobenius(m: &CMatrix3) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `exp(-i H dt)` for Hermitian `H`, through its spectral decomposition.
pub fn unitary_step(hamiltonian: &CMatrix3, dt: f64) -> CMatrix3 {
    let eig = SymmetricEigen::new(*hamiltonian);
    let v = eig.eigenvectors;
    let phases =
        CMatrix3::from_diagonal(&eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * dt)));
    v * phases * v.adjoint()
}

/// States along a path, one per time sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<Spinor>,
    pub initial_helicity: Helicity,
}

impl SpinorTrajectory {
    /// Largest `| |psi| - 1 |` over the run.
    pub fn norm_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `<psi(t_i)| k_hat(t_i) . S |psi(t_i)>`.
    pub fn helicity_expectation(&self, path: &FiberPath, spin: &SpinTriple) -> Vec<f64> {
        self.states
            .iter()
            .zip(path.k_hat())
            .map(|(psi, k)| psi.dotc(&(spin.dot(k) * psi)).re)
            .collect()
    }

    /// Largest `|<k_hat . S> - sigma|` over the run.
    pub fn helicity_drift(&self, path: &FiberPath, spin: &SpinTriple) -> f64 {
        let sigma = self.initial_helicity.sign();
        self.helicity_expectation(path, spin)
            .iter()
            .map(|h| (h - sigma).abs())
            .fold(0.0, f64::max)
    }
}

/// Evolves the gauge-fixed helicity-`sigma` eigenstate of `k_hat(t_0) . S`
/// with one exact exponential per step, the Hamiltonian taken at the
/// interval midpoint.
pub fn evolve(path: &FiberPath, spin: &SpinTriple, sigma: Helicity) -> Result<SpinorTrajectory> {
    let basis = helicity_eigenstates(&path.k_hat()[0], spin)?;
    let mut psi = *basis.state(sigma.as_i32())?;
    let dt = path.dt();
    let mut states = Vec::with_capacity(path.len());
    states.push(psi);
    let mut h_prev = hamiltonian_coefficient(path, 0);
    for i in 1..path.len() {
        let h_next = hamiltonian_coefficient(path, i);
        let h_mid = (h_prev + h_next) * 0.5;
        psi = unitary_step(&spin.dot(&h_mid), dt) * psi;
        if psi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numerical(format!("non-finite state at sample {i}")));
        }
        states.push(psi);
        h_prev = h_next;
    }
    Ok(SpinorTrajectory {
        times: path.times().to_vec(),
        states,
        initial_helicity: sigma,
    })
}

/// Frobenius norm of `dI/dt + (1/i)[I, H]` at an interior sample, for a
/// caller-supplied Hamiltonian.
pub fn liouville_residual(
    path: &FiberPath,
    spin: &SpinTriple,
    i: usize,
    hamiltonian: &CMatrix3,
) -> Result<f64> {
    path.check_index(i, 1..path.len() - 1)?;
    let k = path.k_hat();
    let di = spin.dot(&((k[i + 1] - k[i - 1]) / (2.0 * path.dt())));
    let inv = spin.dot(&k[i]);
    let r = di + commutator(&inv, hamiltonian) * Complex64::new(0.0, -1.0);
    Ok(frobenius(&r))
}

/// Liouville-von Neumann residual of the helicity invariant under
/// [`effective_hamiltonian`]. Vanishes to discretization order.
pub fn invariant_residual(path: &FiberPath, spin: &SpinTriple, i: usize) -> Result<f64> {
    path.check_index(i, 1..path.len().saturating_sub(1))?;
    let h = effective_hamiltonian(path, spin, i)?;
    liouville_residual(path, spin, i, &h.matrix)
}

/// Total, dynamical and geometric phase series.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDecomposition {
    /// `-arg <psi(0)|psi(t)>`, unwrapped.
    pub total: Vec<f64>,
    /// `integral_0^t <psi|H|psi> dt'`.
    pub dynamical: Vec<f64>,
    /// `total - dynamical`.
    pub geometric: Vec<f64>,
    /// Geometric phase read off in the eigenframe of the helicity invariant
    /// (north-pole gauge) rather than against `psi(0)`. Agrees with
    /// `geometric` at cyclic times modulo `2 pi` and stays meaningful through
    /// orthogonal passages.
    pub invariant_frame: Vec<f64>,
    /// Samples where `|<psi(0)|psi(t)>|` was too small for a phase; their
    /// `total` value is interpolated from neighbours.
    pub flagged: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Overlap magnitude below which a Pancharatnam phase is undefined.
pub const ORTHOGONAL_OVERLAP: f64 = 1e-9;

fn wrap(d: f64) -> f64 {
    use std::f64::consts::TAU;
    d - TAU * (d / TAU).round()
}

/// Unwraps `raw` angles, skipping `None` and filling them by linear
/// interpolation between the nearest defined neighbours.
fn unwrap_with_gaps(raw: &[Option<f64>]) -> Vec<f64> {
    let n = raw.len();
    let mut out = vec![f64::NAN; n];
    let mut last: Option<(usize, f64)> = None;
    for (i, r) in raw.iter().enumerate() {
        if let Some(a) = r {
            let v = match last {
                Some((_, prev)) => prev + wrap(a - prev),
                None => *a,
            };
            out[i] = v;
            last = Some((i, v));
        }
    }
    let defined: Vec<usize> = (0..n).filter(|&i| raw[i].is_some()).collect();
    if defined.is_empty() {
        return vec![0.0; n];
    }
    for i in 0..n {
        if raw[i].is_some() {
            continue;
        }
        let left = defined.iter().rev().find(|&&j| j < i).copied();
        let right = defined.iter().find(|&&j| j > i).copied();
        out[i] = match (left, right) {
            (Some(l), Some(r)) => {
                let w = (i - l) as f64 / (r - l) as f64;
                out[l] * (1.0 - w) + out[r] * w
            }
            (Some(l), None) => out[l],
            (None, Some(r)) => out[r],
            (None, None) => 0.0,
        };
    }
    out
}

/// Splits the phase accumulated along `traj` into dynamical and geometric
/// parts.
pub fn phase_decomposition(
    traj: &SpinorTrajectory,
    path: &FiberPath,
    spin: &SpinTriple,
) -> Result<PhaseDecomposition> {
    let n = traj.states.len();
    if n != path.len() || traj.times.first() != path.times().first() {
        return Err(Error::Config(
            "trajectory and path do not share a time grid".into(),
        ));
    }
    let psi0 = traj.states[0];
    let mut flagged = Vec::new();
    let raw: Vec<Option<f64>> = traj
        .states
        .iter()
        .enumerate()
        .map(|(i, psi)| {
            let z = psi0.dotc(psi);
            if z.norm() < ORTHOGONAL_OVERLAP {
                flagged.push(i);
                None
            } else {
                Some(-z.arg())
            }
        })
        .collect();
    let mut total = unwrap_with_gaps(&raw);
    let offset = total[0];
    total.iter_mut().for_each(|t| *t -= offset);

    let energies: Vec<f64> = traj
        .states
        .iter()
        .enumerate()
        .map(|(i, psi)| {
            let h = spin.dot(&hamiltonian_coefficient(path, i));
            psi.dotc(&(h * psi)).re
        })
        .collect();
    let dynamical = cumulative_trapezoid(&energies, path.dt());

    let sigma = traj.initial_helicity.as_i32();
    let mut frame_raw = Vec::with_capacity(n);
    for (k, psi) in path.k_hat().iter().zip(&traj.states) {
        let e = *helicity_eigenstates_in(k, spin, Gauge::NorthPole)?.state(sigma)?;
        let z = e.dotc(psi);
        frame_raw.push((z.norm() >= ORTHOGONAL_OVERLAP).then(|| -z.arg()));
    }
    let mut frame = unwrap_with_gaps(&frame_raw);
    let frame0 = frame[0];
    frame.iter_mut().for_each(|f| *f -= frame0);

    let geometric = total.iter().zip(&dynamical).map(|(t, d)| t - d).collect();
    let invariant_frame = frame.iter().zip(&dynamical).map(|(f, d)| f - d).collect();
    let warnings = flagged
        .iter()
        .map(|&i| {
            format!(
                "orthogonal passage at t = {:.6e}: phase interpolated",
                traj.times[i]
            )
        })
        .collect();
    Ok(PhaseDecomposition {
        total,
        dynamical,
        geometric,
        invariant_frame,
        flagged,
        warnings,
    })
}

pub(crate) fn cumulative_trapezoid(values: &[f64], dt: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in values.windows(2) {
        acc += 0.5 * (w[0] + w[1]) * dt;
        out.push(acc);
    }
    out
}

/// `Omega(t_i) = integral_0^{t_i} gamma'(1 - cos lambda) dt'` at every
/// sample: the solid-angle integral shared by every closed-form phase.
pub fn solid_angle_series(angles: &SphericalAngles) -> Vec<f64> {
    let integrand: Vec<f64> = (0..angles.len())
        .map(|i| angles.gamma_dot_at(i) * (1.0 - angles.lambda[i].cos()))
        .collect();
    cumulative_trapezoid(&integrand, angles.dt)
}

pub(crate) fn solid_angle_at(angles: &SphericalAngles, i: usize) -> Result<f64> {
    if i >= angles.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            valid: format!("0..{}", angles.len()),
        });
    }
    let mut acc = 0.0;
    let mut prev = angles.gamma_dot_at(0) * (1.0 - angles.lambda[0].cos());
    for j in 1..=i {
        let cur = angles.gamma_dot_at(j) * (1.0 - angles.lambda[j].cos());
        acc += 0.5 * (prev + cur) * angles.dt;
        prev = cur;
    }
    Ok(acc)
}

/// `sigma * Omega(t_i)`: the noncyclic geometric phase of a helicity-`sigma`
/// photon.
pub fn analytic_noncyclic_phase(
    angles: &SphericalAngles,
    sigma: Helicity,
    i: usize,
) -> Result<f64> {
    Ok(sigma.sign() * solid_angle_at(angles, i)?)
}
