//! Gyrotropic-medium dispersion and the vacuum-phase isolation scheme.
//!
//! For propagation along the third axis of a medium with
//!
//! ```text
//!       | e1   i e2  0  |          | m1   i m2  0  |
//! eps = | -i e2  e1  0  |,   mu  = | -i m2  m1  0  |
//!       | 0     0   e3  |          | 0     0   m3  |
//! ```
//!
//! the two circular polarizations see `n^2_+- = (e1 +- e2)(m1 +- m2)`.
//! `+` labels the right-handed (helicity `+1`) mode and `-` the left-handed
//! one. A mode with `n^2 <= 0` is evanescent. Inside a closed chamber of size
//! `a` the zero-point field with `k < pi/a` is excluded as well.
//!
//! The classification is done for on-axis propagation and applied uniformly
//! along a curved path.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{solid_angle_at, Helicity};
use crate::geometry::SphericalAngles;

/// Diagonal and gyration entries of the permittivity and permeability
/// tensors. `eps3` and `mu3` do not enter on-axis dispersion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GyrotropicMedium {
    pub eps1: f64,
    pub eps2: f64,
    #[serde(default = "unit")]
    pub eps3: f64,
    pub mu1: f64,
    pub mu2: f64,
    #[serde(default = "unit")]
    pub mu3: f64,
}

fn unit() -> f64 {
    1.0
}

impl GyrotropicMedium {
    pub fn new(eps1: f64, eps2: f64, eps3: f64, mu1: f64, mu2: f64, mu3: f64) -> Result<Self> {
        let m = GyrotropicMedium {
            eps1,
            eps2,
            eps3,
            mu1,
            mu2,
            mu3,
        };
        m.validate()?;
        Ok(m)
    }

    /// `eps = mu = identity`.
    pub fn vacuum() -> Self {
        GyrotropicMedium {
            eps1: 1.0,
            eps2: 0.0,
            eps3: 1.0,
            mu1: 1.0,
            mu2: 0.0,
            mu3: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eps1", self.eps1),
            ("eps2", self.eps2),
            ("eps3", self.eps3),
            ("mu1", self.mu1),
            ("mu2", self.mu2),
            ("mu3", self.mu3),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::Domain {
                    name,
                    value,
                    expected: "finite",
                });
            }
        }
        Ok(())
    }

    /// Same medium with the gyration reversed, `(e2, m2) -> (-e2, -m2)`.
    pub fn reversed(&self) -> Self {
        GyrotropicMedium {
            eps2: -self.eps2,
            mu2: -self.mu2,
            ..*self
        }
    }
}

/// Circular polarization, labelled by the sign in `n^2_+-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Polarization {
    /// Right-handed, helicity `+1`.
    Plus,
    /// Left-handed, helicity `-1`.
    Minus,
}

impl Polarization {
    pub fn helicity(self) -> Helicity {
        match self {
            Polarization::Plus => Helicity::Plus,
            Polarization::Minus => Helicity::Minus,
        }
    }
}

/// `((e1 + e2)(m1 + m2), (e1 - e2)(m1 - m2))`.
pub fn refractive_indices_squared(medium: &GyrotropicMedium) -> (f64, f64) {
    (
        (medium.eps1 + medium.eps2) * (medium.mu1 + medium.mu2),
        (medium.eps1 - medium.eps2) * (medium.mu1 - medium.mu2),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeStatus {
    pub n2_plus: f64,
    pub n2_minus: f64,
    pub plus_propagates: bool,
    pub minus_propagates: bool,
}

impl ModeStatus {
    pub fn propagates(&self, pol: Polarization) -> bool {
        match pol {
            Polarization::Plus => self.plus_propagates,
            Polarization::Minus => self.minus_propagates,
        }
    }
}

/// A mode propagates iff its `n^2` is strictly positive.
pub fn mode_status(medium: &GyrotropicMedium) -> ModeStatus {
    let (n2_plus, n2_minus) = refractive_indices_squared(medium);
    ModeStatus {
        n2_plus,
        n2_minus,
        plus_propagates: n2_plus > 0.0,
        minus_propagates: n2_minus > 0.0,
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "finite and > 0",
        })
    }
}

/// Whether a zero-point mode of wave number `k` is expelled from a chamber
/// of size `a`: true iff `k < pi / a`.
pub fn casimir_cutoff(k: f64, a: f64) -> Result<bool> {
    check_positive("k", k)?;
    check_positive("a", a)?;
    Ok(k < PI / a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WaveVector {
    Propagating(f64),
    Evanescent,
}

impl WaveVector {
    pub fn value(self) -> Option<f64> {
        match self {
            WaveVector::Propagating(k) => Some(k),
            WaveVector::Evanescent => None,
        }
    }
}

/// `k_+- = n_+- k0` for a propagating mode.
pub fn effective_wave_vector(
    medium: &GyrotropicMedium,
    k0: f64,
    pol: Polarization,
) -> Result<WaveVector> {
    check_positive("k0", k0)?;
    let (p, m) = refractive_indices_squared(medium);
    let n2 = match pol {
        Polarization::Plus => p,
        Polarization::Minus => m,
    };
    Ok(if n2 > 0.0 {
        WaveVector::Propagating(n2.sqrt() * k0)
    } else {
        WaveVector::Evanescent
    })
}

/// Which circular zero-point modes `(plus, minus)` survive both the medium
/// and, when `chamber` is given, the cutoff of a chamber of that size.
pub fn surviving_modes(
    medium: &GyrotropicMedium,
    k0: f64,
    chamber: Option<f64>,
) -> Result<(bool, bool)> {
    if let Some(a) = chamber {
        check_positive("a", a)?;
    }
    let survives = |pol| -> Result<bool> {
        Ok(match effective_wave_vector(medium, k0, pol)? {
            WaveVector::Propagating(k) => match chamber {
                Some(a) => !casimir_cutoff(k, a)?,
                None => true,
            },
            WaveVector::Evanescent => false,
        })
    };
    Ok((
        survives(Polarization::Plus)?,
        survives(Polarization::Minus)?,
    ))
}

/// Sum of the vacuum phases of the surviving modes at sample `i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetVacuumPhase {
    pub phase: f64,
    pub plus_survives: bool,
    pub minus_survives: bool,
    /// Both modes are suppressed; `phase` is then 0 by construction.
    pub no_propagating_mode: bool,
}

pub fn net_vacuum_phase(
    medium: &GyrotropicMedium,
    k0: f64,
    a: f64,
    angles: &SphericalAngles,
    i: usize,
) -> Result<NetVacuumPhase> {
    medium.validate()?;
    let omega = solid_angle_at(angles, i)?;
    net_vacuum_from_solid_angle(medium, k0, Some(a), omega)
}

/// [`net_vacuum_phase`] for an already integrated solid angle `Omega`;
/// `chamber = None` means unbounded space.
pub fn net_vacuum_from_solid_angle(
    medium: &GyrotropicMedium,
    k0: f64,
    chamber: Option<f64>,
    omega: f64,
) -> Result<NetVacuumPhase> {
    let (plus, minus) = surviving_modes(medium, k0, chamber)?;
    let mut phase = 0.0;
    if plus {
        phase += 0.5 * omega;
    }
    if minus {
        phase -= 0.5 * omega;
    }
    Ok(NetVacuumPhase {
        phase,
        plus_survives: plus,
        minus_survives: minus,
        no_propagating_mode: !plus && !minus,
    })
}
