//! Second-quantized phases: each photon in the right (left) circular mode
//! adds `+Omega` (`-Omega`), and symmetric ordering leaves a `+-Omega/2`
//! zero-point term per mode.
//!
//! ```text
//! cargo run --example fock_phases
//! ```

use std::f64::consts::FRAC_PI_3;

use fiberphase::fock::DEFAULT_N_MAX;
use fiberphase::{cyclic_phases, phase_spectrum, FockLadder, OperatorOrdering};

fn main() -> fiberphase::Result<()> {
    let lambda = FRAC_PI_3;
    for ordering in [OperatorOrdering::Symmetric, OperatorOrdering::Normal] {
        let vac = cyclic_phases(0, 0, lambda, ordering)?;
        println!(
            "{ordering:?}: vacuum L {:+.6} R {:+.6} net {:+.6}",
            vac.left,
            vac.right,
            vac.total()
        );
    }

    let ladder = FockLadder::new(3, OperatorOrdering::Symmetric)?;
    println!("\n n_L n_R       phi_L       phi_R       total");
    for row in phase_spectrum(&ladder, lambda)? {
        println!(
            "{:>4} {:>3} {:>11.6} {:>11.6} {:>11.6}",
            row.n_l, row.n_r, row.phi_l, row.phi_r, row.phi_total
        );
    }
    println!(
        "\ndefault truncation n_max = {DEFAULT_N_MAX}, dimension {}",
        FockLadder::new(DEFAULT_N_MAX, OperatorOrdering::Symmetric)?.dimension()
    );
    Ok(())
}
