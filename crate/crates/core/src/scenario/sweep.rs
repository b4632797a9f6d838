use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::config::{Occupations, PathSpec, Scenario, SweepSpec};
use super::run::{csv_bytes, format_number, run, ScenarioReport, SUMMARY_SCHEMA_VERSION};

/// Errors below this are treated as roundoff; no order is reported.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

pub const SWEEP_COLUMNS: [&str; 16] = [
    "lambda",
    "n_steps",
    "n_l",
    "n_r",
    "sigma",
    "phase_geometric",
    "phase_invariant_frame",
    "phase_analytic",
    "geometric_error",
    "phase_quantal",
    "phase_vacuum_net",
    "norm_drift",
    "helicity_drift",
    "max_invariant_residual",
    "max_motion_residual",
    "max_rotation_gap",
];

/// End-of-path values of one helicity at one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub n_steps: usize,
    pub n_l: u32,
    pub n_r: u32,
    pub sigma: i32,
    pub phase_geometric: f64,
    pub phase_invariant_frame: f64,
    pub phase_analytic: f64,
    /// `|phase_geometric - phase_analytic|`.
    pub geometric_error: f64,
    pub phase_quantal: f64,
    pub phase_vacuum_net: f64,
    pub norm_drift: f64,
    pub helicity_drift: f64,
    pub max_invariant_residual: f64,
    pub max_motion_residual: f64,
    pub max_rotation_gap: f64,
}

impl SweepRow {
    fn record(&self) -> Vec<String> {
        let num = |v: f64| format_number(Some(v));
        vec![
            num(self.lambda),
            self.n_steps.to_string(),
            self.n_l.to_string(),
            self.n_r.to_string(),
            self.sigma.to_string(),
            num(self.phase_geometric),
            num(self.phase_invariant_frame),
            num(self.phase_analytic),
            num(self.geometric_error),
            num(self.phase_quantal),
            num(self.phase_vacuum_net),
            num(self.norm_drift),
            num(self.helicity_drift),
            num(self.max_invariant_residual),
            num(self.max_motion_residual),
            num(self.max_rotation_gap),
        ]
    }
}

/// Observed order between two consecutive `n_steps` points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceOrder {
    pub sigma: i32,
    pub n_steps: [usize; 2],
    pub quantity: &'static str,
    /// `None` when either error sits at the roundoff floor.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub schema_version: u32,
    pub parameter: &'static str,
    pub points: usize,
    pub convergence: Vec<ConvergenceOrder>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

fn point_scenarios(base: &Scenario, sweep: &SweepSpec) -> Result<Vec<Scenario>> {
    let mut points = match sweep {
        SweepSpec::Lambda(values) => {
            let mut v: Vec<f64> = values.iter().map(|a| a.0).collect();
            v.sort_by(f64::total_cmp);
            v.into_iter()
                .map(|l| {
                    base.with_lambda(l).ok_or_else(|| {
                        Error::Config("a lambda sweep needs a generated path".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        SweepSpec::NSteps(values) => {
            let mut v = values.clone();
            v.sort_unstable();
            v.into_iter()
                .map(|n| Scenario {
                    n_steps: Some(n),
                    ..base.clone()
                })
                .collect()
        }
        SweepSpec::Occupations(values) => {
            let mut v = values.clone();
            v.sort_unstable();
            v.into_iter()
                .map(|[n_l, n_r]| Scenario {
                    occupations: Occupations { n_l, n_r },
                    ..base.clone()
                })
                .collect()
        }
    };
    for p in &mut points {
        p.sweep = None;
    }
    Ok(points)
}

/// `lambda` is the swept value when there is one, else the final polar
/// angle of the path.
fn rows_of(report: &ScenarioReport, lambda: Option<f64>) -> Vec<SweepRow> {
    let s = &report.summary;
    let n_steps = s.path.samples - 1;
    s.helicities
        .iter()
        .map(|h| SweepRow {
            lambda: lambda.unwrap_or(s.path.lambda_end),
            n_steps,
            n_l: s.occupations.n_l,
            n_r: s.occupations.n_r,
            sigma: h.sigma,
            phase_geometric: h.phase_geometric,
            phase_invariant_frame: h.phase_invariant_frame,
            phase_analytic: h.phase_analytic,
            geometric_error: (h.phase_geometric - h.phase_analytic).abs(),
            phase_quantal: s.phase_quantal,
            phase_vacuum_net: s.vacuum.net,
            norm_drift: h.norm_drift,
            helicity_drift: h.helicity_drift,
            max_invariant_residual: s.diagnostics.max_invariant_residual,
            max_motion_residual: s.diagnostics.max_motion_residual,
            max_rotation_gap: s.diagnostics.max_rotation_gap,
        })
        .collect()
}

/// `log(e0 / e1) / log(n1 / n0)`, or `None` at the roundoff floor.
pub fn observed_order(n: [usize; 2], e: [f64; 2]) -> Option<f64> {
    if e[0] < ROUNDOFF_FLOOR || e[1] < ROUNDOFF_FLOOR {
        return None;
    }
    Some((e[0] / e[1]).ln() / (n[1] as f64 / n[0] as f64).ln())
}

fn convergence(rows: &[SweepRow]) -> Vec<ConvergenceOrder> {
    let mut sigmas: Vec<i32> = rows.iter().map(|r| r.sigma).collect();
    sigmas.sort_unstable_by(|a, b| b.cmp(a));
    sigmas.dedup();
    let mut out = Vec::new();
    for sigma in sigmas {
        let series: Vec<&SweepRow> = rows.iter().filter(|r| r.sigma == sigma).collect();
        for pair in series.windows(2) {
            let n = [pair[0].n_steps, pair[1].n_steps];
            let quantities: [(&'static str, fn(&SweepRow) -> f64); 3] = [
                ("geometric_error", |r| r.geometric_error),
                ("max_invariant_residual", |r| r.max_invariant_residual),
                ("max_motion_residual", |r| r.max_motion_residual),
            ];
            for (quantity, f) in quantities {
                out.push(ConvergenceOrder {
                    sigma,
                    n_steps: n,
                    quantity,
                    order: observed_order(n, [f(pair[0]), f(pair[1])]),
                });
            }
        }
    }
    out
}

/// Runs every point of the scenario's sweep, in parallel. Rows come back
/// sorted by the swept value.
pub fn sweep(scenario: &Scenario) -> Result<SweepReport> {
    let spec = scenario
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("field `sweep`: missing; nothing to sweep".into()))?;
    let points = point_scenarios(scenario, spec)?;
    let reports = points.par_iter().map(run).collect::<Result<Vec<_>>>()?;
    let rows: Vec<SweepRow> = reports
        .iter()
        .zip(&points)
        .flat_map(|(r, p)| {
            let lambda = match (spec, &p.path) {
                (SweepSpec::Lambda(_), PathSpec::Helix(h)) => Some(h.lambda.0),
                (SweepSpec::Lambda(_), PathSpec::Nutating(n)) => Some(n.lambda.0),
                _ => None,
            };
            rows_of(r, lambda)
        })
        .collect();
    let warnings = reports
        .iter()
        .zip(&points)
        .flat_map(|(r, p)| {
            let key = match spec {
                SweepSpec::Lambda(_) => format!("lambda {:.6}", r.summary.path.lambda_end),
                SweepSpec::NSteps(_) => format!("n_steps {}", p.n_steps.unwrap_or(0)),
                SweepSpec::Occupations(_) => {
                    format!("occupations {} {}", p.occupations.n_l, p.occupations.n_r)
                }
            };
            r.warnings().iter().map(move |w| format!("{key}: {w}"))
        })
        .collect();
    let convergence = match spec {
        SweepSpec::NSteps(_) => convergence(&rows),
        _ => Vec::new(),
    };
    Ok(SweepReport {
        summary: SweepSummary {
            schema_version: SUMMARY_SCHEMA_VERSION,
            parameter: spec.parameter(),
            points: points.len(),
            convergence,
            warnings,
        },
        rows,
    })
}

/// Writes `sweep.csv` and `sweep_summary.json` into `dir`.
pub fn write_sweep(report: &SweepReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let table = dir.join("sweep.csv");
    fs::write(
        &table,
        csv_bytes(&SWEEP_COLUMNS, report.rows.iter().map(SweepRow::record))?,
    )?;
    let summary = dir.join("sweep_summary.json");
    let mut json = serde_json::to_string_pretty(&report.summary)
        .map_err(|e| Error::Numerical(e.to_string()))?;
    json.push('\n');
    fs::write(&summary, json)?;
    Ok(vec![table, summary])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(sweep: &str) -> Scenario {
        let text = format!(
            r#"{{"path": {{"helix": {{"lambda": "60deg"}}}}, "n_steps": 256, "sweep": {sweep}}}"#
        );
        Scenario::from_json(&text, Path::new(".")).unwrap()
    }

    #[test]
    fn lambda_points_are_sorted() {
        let s = scenario(r#"{"parameter": "lambda", "values": ["60deg", "30deg"]}"#);
        let report = sweep(&s).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.rows[0].lambda < report.rows[2].lambda);
        assert_eq!(report.rows[0].sigma, 1);
        assert_eq!(report.rows[1].sigma, -1);
    }

    #[test]
    fn occupation_sweep_is_linear() {
        let s = scenario(r#"{"parameter": "occupations", "values": [[0, 2], [0, 0], [0, 1]]}"#);
        let report = sweep(&s).unwrap();
        let q: Vec<f64> = report
            .rows
            .iter()
            .step_by(2)
            .map(|r| r.phase_quantal)
            .collect();
        assert_eq!(q[0], 0.0);
        assert!((q[2] - 2.0 * q[1]).abs() < 1e-12);
    }

    #[test]
    fn order_estimate() {
        assert_eq!(observed_order([100, 200], [4e-4, 1e-4]), Some(2.0));
        assert_eq!(observed_order([100, 200], [1e-13, 1e-14]), None);
    }

    #[test]
    fn missing_sweep_is_a_config_error() {
        let s = Scenario::from_json(
            r#"{"path": {"helix": {"lambda": 1}}, "n_steps": 128}"#,
            Path::new("."),
        )
        .unwrap();
        assert!(matches!(sweep(&s), Err(Error::Config(_))));
    }
}
