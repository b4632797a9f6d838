//! The effective Hamiltonian reached three ways: directly from
//! `(k x k')/k^2 . S`, from the small rotation between neighbouring
//! samples, and by checking that the helicity `k_hat . S` is an invariant
//! of the motion.
//!
//! ```text
//! cargo run --release --example three_derivations
//! ```

use fiberphase::evolution::frobenius;
use fiberphase::{
    effective_hamiltonian, hamiltonian_from_rotation, invariant_residual, motion_residual,
    nutating_helix_path, spin1_matrices,
};

fn main() -> fiberphase::Result<()> {
    let s = spin1_matrices();
    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "n", "rotation gap", "invariant", "motion"
    );
    let mut prev: Option<[f64; 3]> = None;
    for n in [256, 512, 1024, 2048] {
        let path = nutating_helix_path(1.0, 0.3, 1.0, 1.0, 1.0, n)?;
        let mut gap: f64 = 0.0;
        let mut inv: f64 = 0.0;
        for i in 0..path.len() - 1 {
            let a = hamiltonian_from_rotation(&path, &s, i)?;
            let b = effective_hamiltonian(&path, &s, i)?.matrix;
            gap = gap.max(frobenius(&(a - b)));
            if i > 0 {
                inv = inv.max(invariant_residual(&path, &s, i)?);
            }
        }
        let motion = motion_residual(&path).into_iter().fold(0.0, f64::max);
        let now = [gap, inv, motion];
        print!("{n:>6} {gap:>12.3e} {inv:>12.3e} {motion:>12.3e}");
        if let Some(p) = prev {
            print!(
                "   ratios {:.2} {:.2} {:.2}",
                p[0] / now[0],
                p[1] / now[1],
                p[2] / now[2]
            );
        }
        println!();
        prev = Some(now);
    }
    Ok(())
}
