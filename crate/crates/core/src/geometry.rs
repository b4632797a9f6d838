//! Wave-vector trajectories `k(t)` and their differential geometry.
//!
//! A [`FiberPath`] is always stored sampled on a uniform grid, whether it
//! came from [`helix_path`] or from a text file. Only the direction of `k`
//! matters to the effective Hamiltonian; `|k|` is carried along and must be
//! constant.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Sub};
use std::path::Path;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::spin::UNIT_TOLERANCE;

/// Largest allowed `|k_hat(t_{i+1}) - k_hat(t_i)|`.
pub const MAX_STEP_JUMP: f64 = 0.5;
/// Relative tolerance on the time step for a grid to count as uniform.
pub const GRID_TOLERANCE: f64 = 1e-6;
/// Relative tolerance on `|k|` when importing a path.
pub const MAGNITUDE_TOLERANCE: f64 = 1e-6;
/// Below this `sin(lambda)` the azimuth is undefined and held.
pub const POLE_TOLERANCE: f64 = 1e-9;

/// Time-sampled wave-vector direction with constant magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPath {
    times: Vec<f64>,
    k_hat: Vec<Vector3<f64>>,
    k_mag: f64,
    dt: f64,
}

impl FiberPath {
    /// Validates and builds a path.
    pub fn new(times: Vec<f64>, k_hat: Vec<Vector3<f64>>, k_mag: f64) -> Result<Self> {
        let n = times.len();
        if n < 3 {
            return Err(Error::TooFewSamples { min: 3, got: n });
        }
        if k_hat.len() != n {
            return Err(Error::Config(format!(
                "{} times but {} direction samples",
                n,
                k_hat.len()
            )));
        }
        if !(k_mag.is_finite() && k_mag > 0.0) {
            return Err(Error::Domain {
                name: "k_mag",
                value: k_mag,
                expected: "finite and > 0",
            });
        }
        let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
        for i in 0..n - 1 {
            let step = times[i + 1] - times[i];
            if !(step > 0.0) {
                return Err(Error::NonIncreasingTime { index: i + 1 });
            }
            if (step - dt).abs() > GRID_TOLERANCE * dt {
                return Err(Error::NonUniformGrid { index: i + 1 });
            }
        }
        for k in &k_hat {
            let norm = k.norm();
            if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::NotUnitVector { norm });
            }
        }
        for i in 0..n - 1 {
            let jump = (k_hat[i + 1] - k_hat[i]).norm();
            if jump >= MAX_STEP_JUMP {
                return Err(Error::NonSmoothPath { index: i, jump });
            }
        }
        Ok(FiberPath {
            times,
            k_hat,
            k_mag,
            dt,
        })
    }

    /// Samples `direction(t)` at `n_steps + 1` uniformly spaced instants on
    /// `[0, t_end]`.
    pub fn sample<F>(t_end: f64, n_steps: usize, k_mag: f64, direction: F) -> Result<Self>
    where
        F: Fn(f64) -> Vector3<f64>,
    {
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(Error::Domain {
                name: "t_end",
                value: t_end,
                expected: "finite and > 0",
            });
        }
        let times: Vec<f64> = (0..=n_steps)
            .map(|i| t_end * i as f64 / n_steps as f64)
            .collect();
        let k_hat = times.iter().map(|&t| direction(t)).collect();
        FiberPath::new(times, k_hat, k_mag)
    }

    /// Parses the `t kx ky kz` text format. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut times = Vec::new();
        let mut vectors: Vec<Vector3<f64>> = Vec::new();
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 4 fields `t kx ky kz`, found {}", fields.len()),
                });
            }
            let mut values = [0.0_f64; 4];
            for (slot, field) in values.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{field}` is not a number"),
                })?;
                if !slot.is_finite() {
                    return Err(Error::Parse {
                        line,
                        message: format!("`{field}` is not finite"),
                    });
                }
            }
            times.push(values[0]);
            vectors.push(Vector3::new(values[1], values[2], values[3]));
            lines.push(line);
        }
        let first = vectors
            .first()
            .ok_or(Error::TooFewSamples { min: 3, got: 0 })?;
        let k_mag = first.norm();
        if k_mag == 0.0 {
            return Err(Error::Parse {
                line: lines[0],
                message: "zero wave vector".into(),
            });
        }
        for (i, (v, &line)) in vectors.iter().zip(&lines).enumerate() {
            let norm = v.norm();
            if (norm - k_mag).abs() > MAGNITUDE_TOLERANCE * k_mag {
                return Err(Error::Parse {
                    line,
                    message: Error::MagnitudeMismatch {
                        index: i,
                        expected: k_mag,
                        got: norm,
                    }
                    .to_string(),
                });
            }
        }
        let k_hat = vectors.iter().map(|v| v / v.norm()).collect();
        FiberPath::new(times, k_hat, k_mag)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        FiberPath::parse(&text)
    }

    /// Renders the path in the import format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# t kx ky kz\n");
        for (t, k) in self.times.iter().zip(&self.k_hat) {
            let v = k * self.k_mag;
            let _ = writeln!(out, "{t:.17e} {:.17e} {:.17e} {:.17e}", v.x, v.y, v.z);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn k_hat(&self) -> &[Vector3<f64>] {
        &self.k_hat
    }

    pub fn k_mag(&self) -> f64 {
        self.k_mag
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Full wave vector `k(t_i)`.
    pub fn k(&self, i: usize) -> Vector3<f64> {
        self.k_hat[i] * self.k_mag
    }

    pub(crate) fn check_index(&self, i: usize, valid: std::ops::Range<usize>) -> Result<()> {
        if valid.contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                valid: format!("{}..{}", valid.start, valid.end),
            })
        }
    }

    /// `dk/dt` at sample `i`.
    pub fn k_dot_at(&self, i: usize) -> Vector3<f64> {
        derivative_at(&self.k_hat, self.dt, i) * self.k_mag
    }

    /// `dk_hat/dt` at sample `i`.
    pub fn k_hat_dot_at(&self, i: usize) -> Vector3<f64> {
        derivative_at(&self.k_hat, self.dt, i)
    }
}

/// Second-order finite difference: central in the interior, one-sided
/// three-point stencils at the ends. `values.len() >= 3`.
pub(crate) fn derivative_at<T>(values: &[T], dt: f64, i: usize) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let n = values.len();
    let inv = 1.0 / (2.0 * dt);
    if i == 0 {
        (values[1] * 4.0 - values[0] * 3.0 - values[2]) * inv
    } else if i == n - 1 {
        (values[n - 1] * 3.0 - values[n - 2] * 4.0 + values[n - 3]) * inv
    } else {
        (values[i + 1] - values[i - 1]) * inv
    }
}

/// Polar angle and unwrapped azimuth of a path.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalAngles {
    pub times: Vec<f64>,
    pub lambda: Vec<f64>,
    pub gamma: Vec<f64>,
    pub dt: f64,
}

impl SphericalAngles {
    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Direction rebuilt from `(lambda, gamma)` at sample `i`.
    pub fn direction(&self, i: usize) -> Vector3<f64> {
        let (l, g) = (self.lambda[i], self.gamma[i]);
        Vector3::new(l.sin() * g.cos(), l.sin() * g.sin(), l.cos())
    }

    /// `d gamma / dt` at sample `i`.
    pub fn gamma_dot_at(&self, i: usize) -> f64 {
        derivative_at(&self.gamma, self.dt, i)
    }
}

/// The cone path `k_hat(t) = (sin l cos wt, sin l sin wt, cos l)` over
/// `n_cycles` turns, split into `n_steps` intervals.
pub fn helix_path(
    lambda: f64,
    omega: f64,
    k_mag: f64,
    n_cycles: f64,
    n_steps: usize,
) -> Result<FiberPath> {
    if !(0.0..=PI).contains(&lambda) {
        return Err(Error::Domain {
            name: "lambda",
            value: lambda,
            expected: "[0, pi]",
        });
    }
    if !(omega.is_finite() && omega != 0.0) {
        return Err(Error::Domain {
            name: "omega",
            value: omega,
            expected: "finite and nonzero",
        });
    }
    if !(n_cycles.is_finite() && n_cycles > 0.0) {
        return Err(Error::Domain {
            name: "n_cycles",
            value: n_cycles,
            expected: "finite and > 0",
        });
    }
    if (n_steps as f64) < 16.0 * n_cycles {
        return Err(Error::Domain {
            name: "n_steps",
            value: n_steps as f64,
            expected: ">= 16 per cycle",
        });
    }
    let t_end = TAU * n_cycles / omega.abs();
    let (sl, cl) = lambda.sin_cos();
    FiberPath::sample(t_end, n_steps, k_mag, |t| {
        let (sg, cg) = (omega * t).sin_cos();
        Vector3::new(sl * cg, sl * sg, cl)
    })
}

/// A cone path whose polar angle nods twice per turn,
/// `lambda(t) = lambda0 + nutation sin(2 omega t)`, `gamma(t) = omega t`.
///
/// Unlike [`helix_path`] its angular speed varies along the path, so
/// finite-difference errors do not cancel by symmetry.
pub fn nutating_helix_path(
    lambda: f64,
    nutation: f64,
    omega: f64,
    k_mag: f64,
    n_cycles: f64,
    n_steps: usize,
) -> Result<FiberPath> {
    if !(nutation.is_finite() && nutation >= 0.0)
        || lambda - nutation < 0.0
        || lambda + nutation > PI
    {
        return Err(Error::Domain {
            name: "nutation",
            value: nutation,
            expected: "lambda +- nutation within [0, pi]",
        });
    }
    // validates lambda, omega, n_cycles and n_steps
    let base = helix_path(lambda, omega, k_mag, n_cycles, n_steps)?;
    let t_end = *base.times().last().unwrap_or(&0.0);
    FiberPath::sample(t_end, n_steps, k_mag, |t| {
        let l = lambda + nutation * (2.0 * omega * t).sin();
        let (sg, cg) = (omega * t).sin_cos();
        Vector3::new(l.sin() * cg, l.sin() * sg, l.cos())
    })
}

/// `lambda = acos(k3)`, `gamma = atan2(k2, k1)` unwrapped; at the poles the
/// azimuth holds its previous value.
pub fn spherical_angles(path: &FiberPath) -> SphericalAngles {
    let n = path.len();
    let mut lambda = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    let mut prev = 0.0;
    for k in path.k_hat() {
        let l = k.z.clamp(-1.0, 1.0).acos();
        let g = if l.sin() < POLE_TOLERANCE {
            prev
        } else {
            let raw = k.y.atan2(k.x);
            let mut d = raw - prev;
            d -= TAU * (d / TAU).round();
            prev + d
        };
        lambda.push(l);
        gamma.push(g);
        prev = g;
    }
    SphericalAngles {
        times: path.times().to_vec(),
        lambda,
        gamma,
        dt: path.dt(),
    }
}

/// `dk/dt` at every sample.
pub fn k_dot(path: &FiberPath) -> Vec<Vector3<f64>> {
    (0..path.len()).map(|i| path.k_dot_at(i)).collect()
}

/// `|k' + k x (k x k')/k^2|` per sample. For constant `|k|` this is an
/// identity, so what remains is finite-difference error.
pub fn motion_residual(path: &FiberPath) -> Vec<f64> {
    let k2 = path.k_mag() * path.k_mag();
    (0..path.len())
        .map(|i| {
            let k = path.k(i);
            let kd = path.k_dot_at(i);
            (kd + k.cross(&(k.cross(&kd) / k2))).norm()
        })
        .collect()
}

/// Infinitesimal rotation vector `k(t_i) x k(t_{i+1}) / k^2` between
/// successive samples.
pub fn rotation_vector(path: &FiberPath, i: usize) -> Result<Vector3<f64>> {
    path.check_index(i, 0..path.len().saturating_sub(1))?;
    Ok(path.k_hat()[i].cross(&path.k_hat()[i + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_path() -> FiberPath {
        helix_path(0.0, 1.0, 1.0, 1.0, 64).unwrap()
    }

    #[test]
    fn degenerate_cone_is_constant() {
        let p = constant_path();
        assert_eq!(p.len(), 65);
        for k in p.k_hat() {
            assert_eq!(*k, Vector3::z());
        }
        assert!(k_dot(&p).iter().all(|v| v.norm() == 0.0));
        assert!(motion_residual(&p).iter().all(|&r| r == 0.0));
        assert_eq!(rotation_vector(&p, 10).unwrap(), Vector3::zeros());
    }

    #[test]
    fn equator_has_no_z_component() {
        let p = helix_path(PI / 2.0, 1.0, 1.0, 1.0, 256).unwrap();
        assert!(p.k_hat().iter().all(|k| k.z.abs() < 1e-15));
    }

    #[test]
    fn helix_domain_errors() {
        assert!(matches!(
            helix_path(-0.1, 1.0, 1.0, 1.0, 64),
            Err(Error::Domain { name: "lambda", .. })
        ));
        assert!(helix_path(3.2, 1.0, 1.0, 1.0, 64).is_err());
        assert!(helix_path(1.0, 0.0, 1.0, 1.0, 64).is_err());
        assert!(helix_path(1.0, 1.0, 1.0, 1.0, 15).is_err());
        assert!(helix_path(1.0, 1.0, -1.0, 1.0, 64).is_err());
    }

    #[test]
    fn angles_recover_helix() {
        let p = helix_path(PI / 3.0, 2.0, 5.0, 2.0, 512).unwrap();
        let a = spherical_angles(&p);
        for (i, &t) in p.times().iter().enumerate() {
            assert!((a.lambda[i] - PI / 3.0).abs() < 1e-9);
            assert!((a.gamma[i] - 2.0 * t).abs() < 1e-9);
        }
    }

    #[test]
    fn pole_holds_azimuth() {
        let a = spherical_angles(&constant_path());
        assert!(a.lambda.iter().all(|&l| l == 0.0));
        assert!(a.gamma.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn unwrap_is_monotone_and_counts_windings() {
        let p = helix_path(PI / 3.0, 1.0, 1.0, 3.0, 3 * 128).unwrap();
        let a = spherical_angles(&p);
        for w in a.gamma.windows(2) {
            assert!(w[1] > w[0] && w[1] - w[0] < PI);
        }
        assert!((a.gamma.last().unwrap() - a.gamma[0] - 6.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn equator_speed_converges() {
        let p = helix_path(PI / 2.0, 1.0, 1.0, 1.0, 256).unwrap();
        let h = p.dt();
        for (i, kd) in k_dot(&p).iter().enumerate() {
            assert!((kd.norm() - 1.0).abs() < h * h, "sample {i}");
        }
    }

    #[test]
    fn k_dot_orthogonal_to_direction() {
        let p = helix_path(PI / 3.0, 1.0, 1.0, 1.0, 256).unwrap();
        let h = p.dt();
        for (i, kd) in k_dot(&p).iter().enumerate() {
            assert!(kd.dot(&p.k_hat()[i]).abs() < h * h);
        }
    }

    #[test]
    fn equator_rotation_vector() {
        let n = 256;
        let p = helix_path(PI / 2.0, 1.0, 1.0, 1.0, n).unwrap();
        let dt = TAU / n as f64;
        for i in 0..n {
            let v = rotation_vector(&p, i).unwrap();
            assert!((v - Vector3::new(0.0, 0.0, dt)).norm() < dt.powi(3));
        }
        assert!(matches!(
            rotation_vector(&p, n),
            Err(Error::IndexOutOfRange { index, .. }) if index == n
        ));
    }

    #[test]
    fn rotation_vector_matches_angular_velocity() {
        // theta_i / dt -> k_hat x k_hat' with an O(dt) gap
        let gap = |n: usize| {
            let p = helix_path(1.0, 1.0, 1.0, 1.0, n).unwrap();
            (0..n)
                .map(|i| {
                    let w = p.k_hat()[i].cross(&p.k_hat_dot_at(i));
                    (rotation_vector(&p, i).unwrap() / p.dt() - w).norm()
                })
                .fold(0.0, f64::max)
        };
        let (g1, g2) = (gap(512), gap(1024));
        assert!(g1 < 1e-2);
        assert!((g1 / g2 - 2.0).abs() < 0.1, "ratio {}", g1 / g2);
    }

    #[test]
    fn nutating_path_bounds() {
        assert!(nutating_helix_path(0.2, 0.3, 1.0, 1.0, 1.0, 64).is_err());
        assert!(nutating_helix_path(3.0, 0.3, 1.0, 1.0, 1.0, 64).is_err());
        let p = nutating_helix_path(1.0, 0.3, 1.0, 1.0, 1.0, 256).unwrap();
        let a = spherical_angles(&p);
        let lmax = a.lambda.iter().copied().fold(0.0, f64::max);
        assert!((lmax - 1.3).abs() < 1e-3);
        assert!((a.lambda[0] - a.lambda[256]).abs() < 1e-12);
    }

    #[test]
    fn motion_residual_second_order_on_nutating_path() {
        let max_res = |n| {
            let p = nutating_helix_path(1.0, 0.3, 1.0, 1.0, 1.0, n).unwrap();
            motion_residual(&p).into_iter().fold(0.0, f64::max)
        };
        let (r1, r2) = (max_res(512), max_res(1024));
        assert!(r1 < 1e-3);
        assert!((r1 / r2 - 4.0).abs() < 0.3, "ratio {}", r1 / r2);
    }

    #[test]
    fn grid_and_norm_validation() {
        let k = vec![Vector3::z(); 4];
        assert!(matches!(
            FiberPath::new(vec![0.0, 1.0, 2.5, 3.0], k.clone(), 1.0),
            Err(Error::NonUniformGrid { .. })
        ));
        assert!(matches!(
            FiberPath::new(vec![0.0, 1.0], vec![Vector3::z(); 2], 1.0),
            Err(Error::TooFewSamples { .. })
        ));
        let mut bad = k.clone();
        bad[2] = Vector3::new(0.0, 0.0, 1.01);
        assert!(matches!(
            FiberPath::new(vec![0.0, 1.0, 2.0, 3.0], bad, 1.0),
            Err(Error::NotUnitVector { .. })
        ));
        let mut jump = k;
        jump[2] = Vector3::x();
        assert!(matches!(
            FiberPath::new(vec![0.0, 1.0, 2.0, 3.0], jump, 1.0),
            Err(Error::NonSmoothPath { index: 1, .. })
        ));
    }

    #[test]
    fn parse_text_format() {
        let text = "# helix sample\n0 2 0 0\n\n0.1 0 2 0 # trailing\n";
        // two samples only, and a 90 degree jump
        assert!(FiberPath::parse(text).is_err());

        let p = helix_path(0.7, 1.0, 3.0, 1.0, 64).unwrap();
        let q = FiberPath::parse(&p.to_text()).unwrap();
        assert_eq!(q.len(), p.len());
        assert!((q.k_mag() - 3.0).abs() < 1e-12);
        assert!((q.dt() - p.dt()).abs() < 1e-12);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = FiberPath::parse("0 0 0 1\n0.1 0 0 1\n0.2 0 x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = FiberPath::parse("0 0 0 1\n0.1 0 0 1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = FiberPath::parse("# c\n0 0 0 1\n0.1 0 0 1.1\n0.2 0 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }
}
