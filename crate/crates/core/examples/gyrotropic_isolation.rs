//! A gyrotropic medium in which only one circular polarization propagates,
//! and a chamber whose cutoff suppresses long-wavelength vacuum modes.
//! With one mode gone the zero-point phases no longer cancel.
//!
//! ```text
//! cargo run --example gyrotropic_isolation
//! ```

use std::f64::consts::FRAC_PI_3;

use fiberphase::gyrotropic::{effective_wave_vector, net_vacuum_phase, surviving_modes};
use fiberphase::{
    casimir_cutoff, helix_path, mode_status, spherical_angles, GyrotropicMedium, Polarization,
};

fn main() -> fiberphase::Result<()> {
    let media = [
        ("vacuum", GyrotropicMedium::vacuum()),
        (
            "isolating",
            GyrotropicMedium::new(2.0, 3.0, 1.0, 2.0, 1.0, 1.0)?,
        ),
    ];
    for (name, m) in &media {
        for medium in [*m, m.reversed()] {
            let st = mode_status(&medium);
            println!(
                "{name:>9}: n+^2 = {:>5} n-^2 = {:>5}  k+ {:?}  k- {:?}",
                st.n2_plus,
                st.n2_minus,
                effective_wave_vector(&medium, 1.0, Polarization::Plus)?,
                effective_wave_vector(&medium, 1.0, Polarization::Minus)?,
            );
        }
    }

    let a = 2.0;
    println!(
        "\nchamber a = {a}: cutoff pi/a = {:.4}",
        std::f64::consts::PI / a
    );
    for k in [0.5, 1.5, 2.0] {
        println!("  k = {k}: suppressed {}", casimir_cutoff(k, a)?);
    }

    let path = helix_path(FRAC_PI_3, 1.0, 1.0, 1.0, 1024)?;
    let angles = spherical_angles(&path);
    let end = path.len() - 1;
    for (name, medium) in &media {
        for k0 in [1.0, 2.0] {
            let net = net_vacuum_phase(medium, k0, a, &angles, end)?;
            let (p, m) = surviving_modes(medium, k0, Some(a))?;
            println!(
                "{name:>9} k0 = {k0}: survivors (+ {p}, - {m})  net vacuum phase {:+.6}",
                net.phase
            );
        }
    }
    Ok(())
}
