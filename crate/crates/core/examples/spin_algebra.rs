//! Spin-1 matrices, their commutators and helicity eigenstates.
//!
//! ```text
//! cargo run --example spin_algebra
//! ```

use fiberphase::spin::{commutator, max_abs_diff, spin1_cartesian, Gauge};
use fiberphase::{helicity_eigenstates, helicity_operator, spin1_matrices};
use nalgebra::Vector3;
use num_complex::Complex64;

fn main() -> fiberphase::Result<()> {
    let i = Complex64::i();
    let s = spin1_matrices();
    let c = spin1_cartesian();
    println!(
        "|m> basis   max |[S1,S2] - iS3| = {:.1e}",
        max_abs_diff(&commutator(&s.s1, &s.s2), &(s.s3 * i))
    );
    println!(
        "Cartesian   max |[S1,S2] - iS3| = {:.1e}",
        max_abs_diff(&commutator(&c.s1, &c.s2), &(c.s3 * i))
    );
    println!("S^2 = {:.3} I", s.casimir()[(0, 0)].re);

    let k = Vector3::new(1.0, 1.0, 1.0).normalize();
    let a = helicity_operator(&k, &s)?;
    for gauge in [Gauge::LargestComponent, Gauge::NorthPole] {
        let basis = fiberphase::spin::helicity_eigenstates_in(&k, &s, gauge)?;
        println!("\n{gauge:?} gauge, k = (1,1,1)/sqrt3");
        for sigma in [1, 0, -1] {
            let v = basis.state(sigma)?;
            let residual = (a * v - v * Complex64::from(sigma as f64)).norm();
            println!(
                "  sigma {sigma:>2}: {:.4} {:.4} {:.4}  residual {residual:.1e}",
                v[0], v[1], v[2]
            );
        }
    }

    // Along -z the labels swap: the m = -1 state carries helicity +1.
    let south = helicity_eigenstates(&-Vector3::z(), &s)?;
    let v = south.state(1)?;
    println!(
        "\nk = -z, sigma = +1 state: {:.3} {:.3} {:.3}",
        v[0], v[1], v[2]
    );
    Ok(())
}
