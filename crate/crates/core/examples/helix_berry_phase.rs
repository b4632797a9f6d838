//! Berry phase of a photon whose wave vector winds once around a cone.
//!
//! After one turn the geometric phase is `sigma * 2pi(1 - cos lambda)`,
//! the solid angle enclosed by the path on the sphere of directions.
//!
//! ```text
//! cargo run --release --example helix_berry_phase
//! ```

use std::f64::consts::{FRAC_PI_3, TAU};

use fiberphase::{evolve, helix_path, phase_decomposition, spin1_matrices, Helicity};

fn main() -> fiberphase::Result<()> {
    let s = spin1_matrices();
    println!(
        "{:>8} {:>6} {:>14} {:>14} {:>10}",
        "lambda", "sigma", "geometric", "2pi(1-cosl)", "norm drift"
    );
    for lambda in [FRAC_PI_3 / 2.0, FRAC_PI_3, 1.3] {
        let path = helix_path(lambda, 1.0, 1.0, 1.0, 4096)?;
        for sigma in [Helicity::Plus, Helicity::Minus] {
            let traj = evolve(&path, &s, sigma)?;
            let phases = phase_decomposition(&traj, &path, &s)?;
            let gamma = *phases.geometric.last().unwrap();
            let expected = sigma.sign() * TAU * (1.0 - lambda.cos());
            println!(
                "{lambda:>8.4} {:>+6} {gamma:>14.9} {expected:>14.9} {:>10.1e}",
                sigma.as_i32(),
                traj.norm_drift()
            );
        }
    }

    // Halfway round the phase is noncyclic and follows sigma * Omega(t).
    let path = helix_path(FRAC_PI_3, 1.0, 1.0, 1.0, 4096)?;
    let traj = evolve(&path, &s, Helicity::Plus)?;
    let phases = phase_decomposition(&traj, &path, &s)?;
    let half = path.len() / 2;
    println!(
        "\nhalf turn: geometric {:.7}, invariant frame {:.7}, pi/2 = {:.7}",
        phases.geometric[half],
        phases.invariant_frame[half],
        FRAC_PI_3 * 1.5
    );
    Ok(())
}
