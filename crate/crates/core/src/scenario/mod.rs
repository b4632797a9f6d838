//! Config-driven runs: the layer behind the `fiberphase` binary.

mod check;
pub mod config;
mod run;
mod sweep;

pub use check::{self_check, CheckOutcome};
pub use config::{
    Angle, HelixSpec, NutatingSpec, Occupations, PathSpec, Scenario, SweepSpec, MIN_STEPS,
};
pub use run::{
    format_number, run, run_on_path, write_outputs, Diagnostics, HelicitySummary, PathSummary,
    PlotSeries, ResultRow, ScenarioReport, Summary, VacuumSummary, RESULT_COLUMNS, SENTINEL,
    SUMMARY_SCHEMA_VERSION,
};
pub use sweep::{
    observed_order, sweep, write_sweep, ConvergenceOrder, SweepReport, SweepRow, SweepSummary,
    ROUNDOFF_FLOOR, SWEEP_COLUMNS,
};

use crate::error::Error;

/// Process exit code for an error: 2 for bad input, 3 for a numerical
/// failure, 4 for I/O.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Numerical(_) => 3,
        Error::Io(_) => 4,
        _ => 2,
    }
}
