//! Round-trips a wave-vector path through the `t kx ky kz` text format and
//! shows the checks applied on import.
//!
//! ```text
//! cargo run --example path_import
//! ```

use std::f64::consts::FRAC_PI_3;

use fiberphase::{evolve, helix_path, phase_decomposition, spin1_matrices, FiberPath, Helicity};

fn main() -> fiberphase::Result<()> {
    let original = helix_path(FRAC_PI_3, 1.0, 1.0, 1.0, 512)?;
    let text = format!("# helix, lambda = pi/3\n{}", original.to_text());
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));

    let path = FiberPath::parse(&text)?;
    println!("... {} samples, dt = {:.6}", path.len(), path.dt());
    let s = spin1_matrices();
    let traj = evolve(&path, &s, Helicity::Plus)?;
    let phases = phase_decomposition(&traj, &path, &s)?;
    println!(
        "geometric phase after import: {:.6}",
        phases.geometric.last().unwrap()
    );

    let bad = [
        ("ragged grid", "0 0 0 1\n0.1 0 0 1\n0.3 0 0 1\n"),
        ("changing |k|", "0 0 0 1\n0.1 0 0 1\n0.2 0 0 2\n"),
        ("missing column", "0 0 0 1\n0.1 0 0\n0.2 0 0 1\n"),
    ];
    for (what, text) in bad {
        match FiberPath::parse(text) {
            Ok(_) => println!("{what}: accepted"),
            Err(e) => println!("{what}: {e}"),
        }
    }
    Ok(())
}
