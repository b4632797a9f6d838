//! Spin-1 operator algebra and helicity eigenstructure.
//!
//! The canonical representation is the angular-momentum basis ordered
//! `|m = +1>, |m = 0>, |m = -1>`, in which `S3 = diag(1, 0, -1)`. The
//! Cartesian representation `(S_i)_{jk} = -i eps_{ijk}` is reachable through
//! [`cartesian_basis_change`]; it is a change of basis, not a second set of
//! formulas.
//!
//! Only the spin part of the photon angular momentum is modelled. The
//! orbital part `L` never enters the effective Hamiltonian because it is
//! orthogonal to the linear momentum, so `(k x k') . L = 0` identically.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// 3x3 complex matrix acting on spin-1 states.
pub type CMatrix3 = Matrix3<Complex64>;
/// Three-component spin-1 state.
pub type Spinor = Vector3<Complex64>;

/// Tolerance on `|k|` for inputs that must be unit vectors.
pub const UNIT_TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// The three spin-1 matrices `S1, S2, S3` (hbar = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinTriple {
    pub s1: CMatrix3,
    pub s2: CMatrix3,
    pub s3: CMatrix3,
}

impl SpinTriple {
    pub fn components(&self) -> [&CMatrix3; 3] {
        [&self.s1, &self.s2, &self.s3]
    }

    /// `v1 S1 + v2 S2 + v3 S3` for a real 3-vector `v`.
    pub fn dot(&self, v: &Vector3<f64>) -> CMatrix3 {
        self.s1 * Complex64::from(v.x)
            + self.s2 * Complex64::from(v.y)
            + self.s3 * Complex64::from(v.z)
    }

    /// Conjugates every component by `u`: `S_i -> u S_i u^dagger`.
    pub fn transformed(&self, u: &CMatrix3) -> SpinTriple {
        let ud = u.adjoint();
        SpinTriple {
            s1: u * self.s1 * ud,
            s2: u * self.s2 * ud,
            s3: u * self.s3 * ud,
        }
    }

    /// The same algebra in the Cartesian representation `(S_i)_{jk} = -i eps_{ijk}`.
    pub fn cartesian(&self) -> SpinTriple {
        self.transformed(&cartesian_basis_change())
    }

    /// `S1^2 + S2^2 + S3^2`, which is `s(s+1) = 2` times the identity.
    pub fn casimir(&self) -> CMatrix3 {
        self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3
    }
}

/// Spin-1 matrices in the `|m>` basis ordered `m = +1, 0, -1`.
pub fn spin1_matrices() -> SpinTriple {
    let r = Complex64::from(FRAC_1_SQRT_2);
    let ri = I * FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let s1 = Matrix3::new(
        ZERO, r, ZERO,
        r, ZERO, r,
        ZERO, r, ZERO,
    );
    #[rustfmt::skip]
    let s2 = Matrix3::new(
        ZERO, -ri, ZERO,
        ri, ZERO, -ri,
        ZERO, ri, ZERO,
    );
    #[rustfmt::skip]
    let s3 = Matrix3::new(
        ONE, ZERO, ZERO,
        ZERO, ZERO, ZERO,
        ZERO, ZERO, -ONE,
    );
    SpinTriple { s1, s2, s3 }
}

/// Spin-1 matrices in the Cartesian representation, `(S_i)_{jk} = -i eps_{ijk}`.
///
/// Every entry is `0` or `+-i`, so commutators come out exact.
pub fn spin1_cartesian() -> SpinTriple {
    let eps = |i: usize| {
        CMatrix3::from_fn(|j, k| {
            let p = (3 + j - i) % 3;
            let q = (3 + k - i) % 3;
            match (p, q) {
                (1, 2) => -I,
                (2, 1) => I,
                _ => ZERO,
            }
        })
    };
    SpinTriple {
        s1: eps(0),
        s2: eps(1),
        s3: eps(2),
    }
}

/// Unitary `U` with `U S_i U^dagger = -i eps_{i..}` (Cartesian components).
///
/// Columns are the spherical unit vectors `e_{+1} = -(x + iy)/sqrt2`,
/// `e_0 = z`, `e_{-1} = (x - iy)/sqrt2` written in Cartesian coordinates.
pub fn cartesian_basis_change() -> CMatrix3 {
    let r = Complex64::from(FRAC_1_SQRT_2);
    let ri = I * FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let u = Matrix3::new(
        -r, ZERO, r,
        -ri, ZERO, -ri,
        ZERO, ONE, ZERO,
    );
    u
}

fn check_unit(v: &Vector3<f64>) -> Result<()> {
    let norm = v.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(())
}

/// Helicity operator `k_hat . S`.
pub fn helicity_operator(k_hat: &Vector3<f64>, spin: &SpinTriple) -> Result<CMatrix3> {
    check_unit(k_hat)?;
    Ok(spin.dot(k_hat))
}

/// Phase convention applied to helicity eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gauge {
    /// Largest-magnitude component is real and positive; ties go to the
    /// lowest component index.
    #[default]
    LargestComponent,
    /// Overlap with the same-helicity eigenvector along `+z` is real and
    /// positive. Smooth everywhere except the south pole, where it falls
    /// back to [`Gauge::LargestComponent`].
    NorthPole,
}

/// Eigenvectors of `k_hat . S` for helicities `-1, 0, +1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HelicityBasis {
    pub direction: Vector3<f64>,
    /// Indexed by `sigma + 1`.
    pub states: [Spinor; 3],
    pub gauge: Gauge,
}

impl HelicityBasis {
    pub fn state(&self, sigma: i32) -> Result<&Spinor> {
        match sigma {
            -1..=1 => Ok(&self.states[(sigma + 1) as usize]),
            _ => Err(Error::InvalidHelicity(sigma)),
        }
    }
}

fn largest_component(v: &Spinor) -> usize {
    let mut best = 0;
    for j in 1..3 {
        if v[j].norm() > v[best].norm() {
            best = j;
        }
    }
    best
}

fn fix_largest_component(v: Spinor) -> Spinor {
    let j = largest_component(&v);
    let phase = v[j] / v[j].norm();
    v * phase.conj()
}

/// Rank-one spectral projector of `a` onto eigenvalue `sigma`, valid for any
/// operator whose spectrum is `{-1, 0, +1}`.
fn projector(a: &CMatrix3, sigma: i32) -> CMatrix3 {
    let a2 = a * a;
    let half = Complex64::from(0.5);
    match sigma {
        1 => (a2 + a) * half,
        -1 => (a2 - a) * half,
        _ => CMatrix3::identity() - a2,
    }
}

fn eigenvector(a: &CMatrix3, sigma: i32) -> Spinor {
    let p = projector(a, sigma);
    let mut col = 0;
    for j in 1..3 {
        if p[(j, j)].re > p[(col, col)].re {
            col = j;
        }
    }
    let v: Spinor = p.column(col).into();
    v.unscale(v.norm())
}

/// Helicity eigenstates of `k_hat . S` in the default gauge.
pub fn helicity_eigenstates(k_hat: &Vector3<f64>, spin: &SpinTriple) -> Result<HelicityBasis> {
    helicity_eigenstates_in(k_hat, spin, Gauge::LargestComponent)
}

/// Helicity eigenstates of `k_hat . S` in the requested gauge.
pub fn helicity_eigenstates_in(
    k_hat: &Vector3<f64>,
    spin: &SpinTriple,
    gauge: Gauge,
) -> Result<HelicityBasis> {
    let a = helicity_operator(k_hat, spin)?;
    let states = [-1, 0, 1].map(|sigma| {
        let v = eigenvector(&a, sigma);
        match gauge {
            Gauge::LargestComponent => fix_largest_component(v),
            Gauge::NorthPole => {
                let reference = fix_largest_component(eigenvector(&spin.s3, sigma));
                let overlap = reference.dotc(&v);
                if overlap.norm() < 1e-12 {
                    fix_largest_component(v)
                } else {
                    v * (overlap / overlap.norm()).conj()
                }
            }
        }
    });
    Ok(HelicityBasis {
        direction: *k_hat,
        states,
        gauge,
    })
}

/// `a b - b a`.
pub fn commutator(a: &CMatrix3, b: &CMatrix3) -> CMatrix3 {
    a * b - b * a
}

/// Largest entrywise deviation of `a` from `b`.
pub fn max_abs_diff(a: &CMatrix3, b: &CMatrix3) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;
    use std::f64::consts::PI;

    fn sorted_eigenvalues(a: &CMatrix3) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(*a)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        ev
    }

    #[test]
    fn commutators_close_on_s3() {
        let s = spin1_matrices();
        let lhs = commutator(&s.s1, &s.s2);
        // products of two 1/sqrt2 entries round to 1 ulp of 1/2
        assert!(max_abs_diff(&lhs, &(s.s3 * I)) <= 4.0 * f64::EPSILON);
        assert!(max_abs_diff(&commutator(&s.s2, &s.s3), &(s.s1 * I)) <= 4.0 * f64::EPSILON);
        assert!(max_abs_diff(&commutator(&s.s3, &s.s1), &(s.s2 * I)) <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn cartesian_representation_is_levi_civita() {
        let c = spin1_matrices().cartesian();
        let eps = |i: usize, j: usize, k: usize| -> f64 {
            match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        for (i, m) in c.components().iter().enumerate() {
            for j in 0..3 {
                for k in 0..3 {
                    let expected = -I * eps(i, j, k);
                    assert!(
                        (m[(j, k)] - expected).norm() < 1e-15,
                        "S{} ({j},{k})",
                        i + 1
                    );
                }
            }
        }
    }

    #[test]
    fn direct_cartesian_commutators_are_exact() {
        let c = spin1_cartesian();
        assert!(max_abs_diff(&c.s1, &spin1_matrices().cartesian().s1) < 1e-15);
        assert_eq!(commutator(&c.s1, &c.s2), c.s3 * I);
        assert_eq!(commutator(&c.s2, &c.s3), c.s1 * I);
        assert_eq!(commutator(&c.s3, &c.s1), c.s2 * I);
    }

    #[test]
    fn s3_spectrum_and_casimir() {
        let s = spin1_matrices();
        assert_eq!(sorted_eigenvalues(&s.s3), vec![-1.0, 0.0, 1.0]);
        let c = s.casimir();
        assert!(max_abs_diff(&c, &(CMatrix3::identity() * Complex64::from(2.0))) < 1e-15);
    }

    #[test]
    fn helicity_operator_axis_cases() {
        let s = spin1_matrices();
        assert_eq!(helicity_operator(&Vector3::z(), &s).unwrap(), s.s3);
        assert_eq!(helicity_operator(&Vector3::x(), &s).unwrap(), s.s1);
    }

    #[test]
    fn helicity_operator_diagonal_direction() {
        let s = spin1_matrices();
        let k = Vector3::new(1.0, 1.0, 1.0) / 3f64.sqrt();
        let ev = sorted_eigenvalues(&helicity_operator(&k, &s).unwrap());
        for (got, want) in ev.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn non_unit_direction_rejected() {
        let s = spin1_matrices();
        let err = helicity_operator(&Vector3::new(1.0, 1.0, 0.0), &s).unwrap_err();
        assert!(matches!(err, Error::NotUnitVector { .. }));
        assert!(helicity_eigenstates(&Vector3::new(0.0, 0.0, 1.1), &s).is_err());
    }

    #[test]
    fn z_axis_eigenstates() {
        let s = spin1_matrices();
        let b = helicity_eigenstates(&Vector3::z(), &s).unwrap();
        let plus = b.state(1).unwrap();
        assert_eq!(*plus, Spinor::new(ONE, ZERO, ZERO));
        assert_eq!(*b.state(-1).unwrap(), Spinor::new(ZERO, ZERO, ONE));
    }

    #[test]
    fn reversed_axis_swaps_labels() {
        let s = spin1_matrices();
        let up = helicity_eigenstates(&Vector3::z(), &s).unwrap();
        let down = helicity_eigenstates(&-Vector3::z(), &s).unwrap();
        assert_eq!(up.state(1).unwrap(), down.state(-1).unwrap());
        assert_eq!(up.state(-1).unwrap(), down.state(1).unwrap());
    }

    #[test]
    fn tilted_eigenstates_residual() {
        let s = spin1_matrices();
        let lambda = PI / 3.0;
        let k = Vector3::new(lambda.sin(), 0.0, lambda.cos());
        let a = helicity_operator(&k, &s).unwrap();
        for gauge in [Gauge::LargestComponent, Gauge::NorthPole] {
            let b = helicity_eigenstates_in(&k, &s, gauge).unwrap();
            for sigma in -1..=1 {
                let e = b.state(sigma).unwrap();
                let r = a * e - e * Complex64::from(sigma as f64);
                assert!(r.norm() < 1e-12);
            }
            for p in 0..3 {
                for q in 0..3 {
                    let ip = b.states[p].dotc(&b.states[q]);
                    let want = if p == q { 1.0 } else { 0.0 };
                    assert!((ip - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn largest_component_gauge_is_real_positive() {
        let s = spin1_matrices();
        let k = Vector3::new(0.3, -0.5, 0.7).normalize();
        let b = helicity_eigenstates(&k, &s).unwrap();
        for e in &b.states {
            let j = largest_component(e);
            assert!(e[j].im == 0.0 && e[j].re > 0.0);
        }
    }

    #[test]
    fn north_gauge_matches_rotated_basis_state() {
        // R = exp(-i g S3) exp(-i l S2) exp(+i g S3) applied to |m = +1> has
        // components ((1+c)/2, e^{i g} s/sqrt2, e^{2 i g}(1-c)/2).
        let s = spin1_matrices();
        let (l, g) = (0.9_f64, 2.3_f64);
        let k = Vector3::new(l.sin() * g.cos(), l.sin() * g.sin(), l.cos());
        let b = helicity_eigenstates_in(&k, &s, Gauge::NorthPole).unwrap();
        let want = Spinor::new(
            Complex64::from((1.0 + l.cos()) / 2.0),
            Complex64::from_polar(l.sin() * FRAC_1_SQRT_2, g),
            Complex64::from_polar((1.0 - l.cos()) / 2.0, 2.0 * g),
        );
        assert!((b.state(1).unwrap() - want).norm() < 1e-12);
    }

    #[test]
    fn invalid_state_label() {
        let s = spin1_matrices();
        let b = helicity_eigenstates(&Vector3::z(), &s).unwrap();
        assert!(matches!(b.state(2), Err(Error::InvalidHelicity(2))));
    }
}
