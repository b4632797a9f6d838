//! Two-mode occupation-number phases.
//!
//! The photon field in the fiber is split into left (`L`, helicity `-1`) and
//! right (`R`, helicity `+1`) circularly polarized modes. Each photon in a
//! mode carries the single-photon geometric phase of its helicity, so a Fock
//! state `|n_L, n_R>` picks up phases that are linear in the occupations.
//!
//! With normal ordering the spin operator counts `n` per mode and the vacuum
//! carries no phase. With symmetric (Weyl) ordering,
//! `(a^dagger a + a a^dagger)/2 = n + 1/2`, so each mode keeps a zero-point
//! contribution of `+-1/2 Omega`. The two vacuum pieces have opposite sign
//! and cancel in the sum, which is why both per-mode phases are reported
//! separately everywhere in this module.
//!
//! Only diagonal phases are modelled. Relative phases between superpositions
//! of different `(n_L, n_R)` follow from the diagonal entries, and nothing
//! beyond that is claimed.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{solid_angle_at, Helicity};
use crate::geometry::SphericalAngles;

/// Operator ordering applied to the mode number operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OperatorOrdering {
    /// `a^dagger a`; the vacuum is deleted.
    Normal,
    /// `(a^dagger a + a a^dagger) / 2`; keeps the zero-point half.
    #[default]
    Symmetric,
}

impl OperatorOrdering {
    /// Spin weight of a mode holding `n` photons.
    pub fn weight(self, n: u32) -> f64 {
        match self {
            OperatorOrdering::Normal => n as f64,
            OperatorOrdering::Symmetric => n as f64 + 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Left,
    Right,
}

impl Mode {
    pub fn helicity(self) -> Helicity {
        match self {
            Mode::Left => Helicity::Minus,
            Mode::Right => Helicity::Plus,
        }
    }
}

/// Truncated two-mode Fock space, basis `|n_L, n_R>` with
/// `0 <= n_L, n_R <= n_max`, ordered with `n_R` fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockLadder {
    n_max: u32,
    ordering: OperatorOrdering,
}

pub const DEFAULT_N_MAX: u32 = 8;

impl FockLadder {
    pub fn new(n_max: u32, ordering: OperatorOrdering) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Domain {
                name: "n_max",
                value: n_max as f64,
                expected: ">= 1",
            });
        }
        Ok(FockLadder { n_max, ordering })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn ordering(&self) -> OperatorOrdering {
        self.ordering
    }

    pub fn dimension(&self) -> usize {
        let side = self.n_max as usize + 1;
        side * side
    }

    pub fn index(&self, n_l: u32, n_r: u32) -> usize {
        n_l as usize * (self.n_max as usize + 1) + n_r as usize
    }

    /// Basis labels `(n_L, n_R)` in index order.
    pub fn basis(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..=self.n_max).flat_map(move |l| (0..=self.n_max).map(move |r| (l, r)))
    }

    /// Truncated annihilation operator of one mode.
    pub fn annihilation(&self, mode: Mode) -> DMatrix<f64> {
        let dim = self.dimension();
        let mut a = DMatrix::zeros(dim, dim);
        for (l, r) in self.basis() {
            let (n, lowered) = match mode {
                Mode::Left if l > 0 => (l, (l - 1, r)),
                Mode::Right if r > 0 => (r, (l, r - 1)),
                _ => continue,
            };
            a[(self.index(lowered.0, lowered.1), self.index(l, r))] = (n as f64).sqrt();
        }
        a
    }

    /// `a^dagger a` of one mode, diagonal with entries `0..=n_max`.
    pub fn number_operator(&self, mode: Mode) -> DMatrix<f64> {
        let diag = DVector::from_iterator(
            self.dimension(),
            self.basis().map(|(l, r)| match mode {
                Mode::Left => l as f64,
                Mode::Right => r as f64,
            }),
        );
        DMatrix::from_diagonal(&diag)
    }
}

/// Per-mode phase-generating weights on the truncated basis.
///
/// `left` holds `-w(n_L)` and `right` holds `+w(n_R)`, so the helicity sign
/// is already applied; multiply by `Omega` to get phases.
#[derive(Debug, Clone, PartialEq)]
pub struct FockWeights {
    pub left: DVector<f64>,
    pub right: DVector<f64>,
}

impl FockWeights {
    /// `w(n_R) - w(n_L)`.
    pub fn combined(&self) -> DVector<f64> {
        &self.left + &self.right
    }

    pub fn combined_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.combined())
    }
}

pub fn fock_weight_operator(ladder: &FockLadder) -> FockWeights {
    let ord = ladder.ordering();
    let dim = ladder.dimension();
    FockWeights {
        left: DVector::from_iterator(dim, ladder.basis().map(|(l, _)| -ord.weight(l))),
        right: DVector::from_iterator(dim, ladder.basis().map(|(_, r)| ord.weight(r))),
    }
}

/// Per-mode cyclic phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CyclicPhases {
    pub left: f64,
    pub right: f64,
}

impl CyclicPhases {
    pub fn total(&self) -> f64 {
        self.left + self.right
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=std::f64::consts::PI).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "lambda",
            value: lambda,
            expected: "[0, pi]",
        })
    }
}

/// Cyclic adiabatic phases of `|n_L, n_R>` after one turn on a cone of
/// half-angle `lambda`: `-w(n_L) 2pi(1 - cos l)` and `+w(n_R) 2pi(1 - cos l)`.
pub fn cyclic_phases(
    n_l: u32,
    n_r: u32,
    lambda: f64,
    ordering: OperatorOrdering,
) -> Result<CyclicPhases> {
    check_lambda(lambda)?;
    let cap = TAU * (1.0 - lambda.cos());
    Ok(CyclicPhases {
        left: -ordering.weight(n_l) * cap,
        right: ordering.weight(n_r) * cap,
    })
}

/// `(n_R - n_L) Omega(t_i)`.
pub fn quantal_geometric_phase(
    n_l: u32,
    n_r: u32,
    angles: &SphericalAngles,
    i: usize,
) -> Result<f64> {
    Ok((n_r as f64 - n_l as f64) * solid_angle_at(angles, i)?)
}

/// Zero-point phase `sigma Omega(t_i) / 2` of one circular polarization.
pub fn vacuum_phase(sigma: Helicity, angles: &SphericalAngles, i: usize) -> Result<f64> {
    Ok(sigma.sign() * 0.5 * solid_angle_at(angles, i)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n_l: u32,
    pub n_r: u32,
    pub phi_l: f64,
    pub phi_r: f64,
    pub phi_total: f64,
}

/// Cyclic phases over every basis state of `ladder`.
pub fn phase_spectrum(ladder: &FockLadder, lambda: f64) -> Result<Vec<SpectrumRow>> {
    check_lambda(lambda)?;
    ladder
        .basis()
        .map(|(n_l, n_r)| {
            let p = cyclic_phases(n_l, n_r, lambda, ladder.ordering())?;
            Ok(SpectrumRow {
                n_l,
                n_r,
                phi_l: p.left,
                phi_r: p.right,
                phi_total: p.total(),
            })
        })
        .collect()
}
