//! Geometric phases of photons in a noncoplanarly curved optical fiber.
//!
//! A photon whose wave vector `k(t)` traces a curve on the sphere of
//! directions evolves under `H_eff = (k x k')/k^2 . S`. This crate builds
//! that Hamiltonian, integrates it, splits the accumulated phase into
//! dynamical and geometric parts, and layers on the second-quantized picture:
//! occupation-number dependent phases, the `+-1/2` vacuum contributions kept
//! by symmetric operator ordering, and the gyrotropic-medium scheme that
//! removes one circular polarization so the vacuum phase no longer cancels.
//!
//! Units: `hbar = c = 1`, angles and phases in radians.

pub mod error;
pub mod evolution;
pub mod fock;
pub mod geometry;
pub mod gyrotropic;
pub mod scenario;
pub mod spin;

pub use error::{Error, Result};
pub use evolution::{
    analytic_noncyclic_phase, effective_hamiltonian, evolve, hamiltonian_from_rotation,
    invariant_residual, phase_decomposition, solid_angle_series, HamiltonianSample, Helicity,
    PhaseDecomposition, SpinorTrajectory,
};
pub use fock::{
    cyclic_phases, fock_weight_operator, phase_spectrum, quantal_geometric_phase, vacuum_phase,
    FockLadder, OperatorOrdering,
};
pub use geometry::{
    helix_path, k_dot, motion_residual, nutating_helix_path, rotation_vector, spherical_angles,
    FiberPath, SphericalAngles,
};
pub use gyrotropic::{
    casimir_cutoff, effective_wave_vector, mode_status, net_vacuum_phase,
    refractive_indices_squared, GyrotropicMedium, ModeStatus, Polarization,
};
pub use spin::{
    helicity_eigenstates, helicity_operator, spin1_cartesian, spin1_matrices, HelicityBasis,
    SpinTriple,
};
