//! Drives the same config-file layer as the `fiberphase` binary: a single
//! run that writes `results.csv`, `summary.json` and plot files, then a
//! convergence sweep over `n_steps`.
//!
//! ```text
//! cargo run --release --example scenario_run -- [output dir]
//! ```

use std::path::{Path, PathBuf};

use fiberphase::scenario::{run, sweep, write_outputs, write_sweep, Scenario};

const RUN: &str = r#"{
  "path": { "helix": { "lambda": "60deg" } },
  "n_steps": 2048,
  "occupations": { "n_l": 0, "n_r": 1 },
  "medium": { "eps1": 2, "eps2": 3, "mu1": 2, "mu2": 1 },
  "chamber_length": 10
}"#;

const SWEEP: &str = r#"{
  "path": { "nutating": { "lambda": 1.0, "nutation": 0.3 } },
  "n_steps": 256,
  "sigma": [1],
  "sweep": { "parameter": "n_steps", "values": [256, 512, 1024, 2048] }
}"#;

fn main() -> fiberphase::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fiberphase-example"));

    let scenario = Scenario::from_json(RUN, Path::new("."))?;
    let report = run(&scenario)?;
    for file in write_outputs(&report, &out.join("run"))? {
        println!("wrote {}", file.display());
    }
    let s = &report.summary;
    println!(
        "geometric (sigma +1) {:.6}, quantal {:.6}, net vacuum {:.6}",
        s.helicities[0].phase_geometric, s.phase_quantal, s.vacuum.net
    );

    let scenario = Scenario::from_json(SWEEP, Path::new("."))?;
    let report = sweep(&scenario)?;
    write_sweep(&report, &out.join("sweep"))?;
    for c in &report.summary.convergence {
        match c.order {
            Some(p) => println!("{:>22} {:?}: order {p:.3}", c.quantity, c.n_steps),
            None => println!("{:>22} {:?}: at roundoff", c.quantity, c.n_steps),
        }
    }
    Ok(())
}
