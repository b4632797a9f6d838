use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{
    effective_hamiltonian, evolve, frobenius, hamiltonian_from_rotation, invariant_residual,
    phase_decomposition, solid_angle_series, Helicity,
};
use crate::fock::OperatorOrdering;
use crate::geometry::{motion_residual, spherical_angles, FiberPath, SphericalAngles};
use crate::gyrotropic::{mode_status, net_vacuum_from_solid_angle, GyrotropicMedium, ModeStatus};
use crate::spin::{spin1_matrices, SpinTriple};

use super::config::{Occupations, Scenario};

/// Version of the `summary.json` layout.
pub const SUMMARY_SCHEMA_VERSION: u32 = 1;

/// Column names of `results.csv`, in order.
pub const RESULT_COLUMNS: [&str; 18] = [
    "sigma",
    "t",
    "lambda",
    "gamma",
    "phase_total",
    "phase_dynamical",
    "phase_geometric",
    "phase_invariant_frame",
    "phase_analytic",
    "phase_quantal",
    "phase_vacuum_L",
    "phase_vacuum_R",
    "phase_vacuum_net",
    "norm_drift",
    "helicity_drift",
    "invariant_residual",
    "motion_residual",
    "flagged",
];

/// Written in place of a value that is undefined at a sample.
pub const SENTINEL: &str = "NA";

/// One time sample of one helicity run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub sigma: i32,
    pub t: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub phase_total: f64,
    pub phase_dynamical: f64,
    pub phase_geometric: f64,
    pub phase_invariant_frame: f64,
    pub phase_analytic: f64,
    pub phase_quantal: f64,
    pub phase_vacuum_l: f64,
    pub phase_vacuum_r: f64,
    pub phase_vacuum_net: f64,
    pub norm_drift: f64,
    pub helicity_drift: f64,
    /// Undefined at the two end samples.
    pub invariant_residual: Option<f64>,
    pub motion_residual: f64,
    pub flagged: bool,
}

impl ResultRow {
    fn numbers(&self) -> [Option<f64>; 16] {
        [
            Some(self.t),
            Some(self.lambda),
            Some(self.gamma),
            Some(self.phase_total),
            Some(self.phase_dynamical),
            Some(self.phase_geometric),
            Some(self.phase_invariant_frame),
            Some(self.phase_analytic),
            Some(self.phase_quantal),
            Some(self.phase_vacuum_l),
            Some(self.phase_vacuum_r),
            Some(self.phase_vacuum_net),
            Some(self.norm_drift),
            Some(self.helicity_drift),
            self.invariant_residual,
            Some(self.motion_residual),
        ]
    }

    /// Fields as written to `results.csv`.
    pub fn record(&self) -> Vec<String> {
        let mut out = vec![self.sigma.to_string()];
        out.extend(self.numbers().iter().map(|v| format_number(*v)));
        out.push(u8::from(self.flagged).to_string());
        out
    }
}

/// Scientific notation with 17 significant digits.
pub fn format_number(v: Option<f64>) -> String {
    match v {
        // no negative zero in the tables
        Some(0.0) => format!("{:.16e}", 0.0),
        Some(x) => format!("{x:.16e}"),
        None => SENTINEL.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathSummary {
    pub source: String,
    pub samples: usize,
    pub dt: f64,
    pub t_end: f64,
    pub k_mag: f64,
    pub lambda_start: f64,
    pub lambda_end: f64,
    pub gamma_winding: f64,
    /// `integral gamma'(1 - cos lambda) dt` over the whole path.
    pub solid_angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HelicitySummary {
    pub sigma: i32,
    pub phase_total: f64,
    pub phase_dynamical: f64,
    pub phase_geometric: f64,
    pub phase_invariant_frame: f64,
    pub phase_analytic: f64,
    pub norm_drift: f64,
    pub helicity_drift: f64,
    /// Times of samples whose Pancharatnam phase was interpolated.
    pub flagged_times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VacuumSummary {
    pub phase_l: f64,
    pub phase_r: f64,
    pub net: f64,
    pub plus_survives: bool,
    pub minus_survives: bool,
    pub no_propagating_mode: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Largest Liouville-von Neumann residual over interior samples.
    pub max_invariant_residual: f64,
    pub max_motion_residual: f64,
    /// Largest Frobenius gap between the rotation-built and direct
    /// Hamiltonians.
    pub max_rotation_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub path: PathSummary,
    pub ordering: OperatorOrdering,
    pub occupations: Occupations,
    pub helicities: Vec<HelicitySummary>,
    pub phase_quantal: f64,
    pub vacuum: VacuumSummary,
    pub medium: GyrotropicMedium,
    pub modes: ModeStatus,
    pub k0: f64,
    pub chamber_length: Option<f64>,
    pub diagnostics: Diagnostics,
    pub warnings: Vec<String>,
}

/// Two-column series written as `plot_<name>.dat`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub rows: Vec<ResultRow>,
    pub summary: Summary,
    pub plots: Vec<PlotSeries>,
}

impl ScenarioReport {
    pub fn warnings(&self) -> &[String] {
        &self.summary.warnings
    }
}

/// Path-level quantities shared by every helicity run.
pub(crate) struct PathAnalysis {
    pub angles: SphericalAngles,
    pub solid_angle: Vec<f64>,
    pub invariant: Vec<Option<f64>>,
    pub motion: Vec<f64>,
    pub rotation_gap: f64,
}

impl PathAnalysis {
    pub fn new(path: &FiberPath, spin: &SpinTriple) -> Result<Self> {
        let angles = spherical_angles(path);
        let solid_angle = solid_angle_series(&angles);
        let n = path.len();
        let invariant = (0..n)
            .map(|i| {
                if i == 0 || i == n - 1 {
                    Ok(None)
                } else {
                    invariant_residual(path, spin, i).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let rotation_gap = (0..n - 1)
            .map(|i| {
                let a = hamiltonian_from_rotation(path, spin, i)?;
                let b = effective_hamiltonian(path, spin, i)?.matrix;
                Ok(frobenius(&(a - b)))
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        Ok(PathAnalysis {
            angles,
            solid_angle,
            invariant,
            motion: motion_residual(path),
            rotation_gap,
        })
    }

    pub fn max_invariant(&self) -> f64 {
        self.invariant.iter().flatten().copied().fold(0.0, f64::max)
    }

    pub fn max_motion(&self) -> f64 {
        self.motion.iter().copied().fold(0.0, f64::max)
    }
}

struct HelicityRun {
    sigma: Helicity,
    rows: Vec<ResultRow>,
    summary: HelicitySummary,
    warnings: Vec<String>,
}

fn run_helicity(
    scenario: &Scenario,
    path: &FiberPath,
    spin: &SpinTriple,
    analysis: &PathAnalysis,
    sigma: Helicity,
) -> Result<HelicityRun> {
    let traj = evolve(path, spin, sigma)?;
    let phases = phase_decomposition(&traj, path, spin)?;
    let helicity = traj.helicity_expectation(path, spin);
    let medium = scenario.medium();
    let vacuum_weight = scenario.ordering.weight(0);
    let occ = scenario.occupations;
    let quantal_factor = occ.n_r as f64 - occ.n_l as f64;

    let mut rows = Vec::with_capacity(path.len());
    for i in 0..path.len() {
        let omega = analysis.solid_angle[i];
        let net =
            net_vacuum_from_solid_angle(&medium, scenario.k0, scenario.chamber_length, omega)?;
        rows.push(ResultRow {
            sigma: sigma.as_i32(),
            t: path.times()[i],
            lambda: analysis.angles.lambda[i],
            gamma: analysis.angles.gamma[i],
            phase_total: phases.total[i],
            phase_dynamical: phases.dynamical[i],
            phase_geometric: phases.geometric[i],
            phase_invariant_frame: phases.invariant_frame[i],
            phase_analytic: sigma.sign() * omega,
            phase_quantal: quantal_factor * omega,
            phase_vacuum_l: -vacuum_weight * omega,
            phase_vacuum_r: vacuum_weight * omega,
            phase_vacuum_net: 2.0 * vacuum_weight * net.phase,
            norm_drift: (traj.states[i].norm() - 1.0).abs(),
            helicity_drift: (helicity[i] - sigma.sign()).abs(),
            invariant_residual: analysis.invariant[i],
            motion_residual: analysis.motion[i],
            flagged: phases.flagged.contains(&i),
        });
    }
    let last = rows.last().expect("path has at least 3 samples");
    let summary = HelicitySummary {
        sigma: sigma.as_i32(),
        phase_total: last.phase_total,
        phase_dynamical: last.phase_dynamical,
        phase_geometric: last.phase_geometric,
        phase_invariant_frame: last.phase_invariant_frame,
        phase_analytic: last.phase_analytic,
        norm_drift: traj.norm_drift(),
        helicity_drift: traj.helicity_drift(path, spin),
        flagged_times: phases.flagged.iter().map(|&i| path.times()[i]).collect(),
    };
    let warnings = phases
        .warnings
        .iter()
        .map(|w| format!("sigma {:+}: {w}", sigma.as_i32()))
        .collect();
    Ok(HelicityRun {
        sigma,
        rows,
        summary,
        warnings,
    })
}

fn check_finite(report: &ScenarioReport) -> Result<()> {
    for row in &report.rows {
        if row.numbers().iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!(
                "non-finite value at t = {} (sigma {:+})",
                row.t, row.sigma
            )));
        }
    }
    let json =
        serde_json::to_value(&report.summary).map_err(|e| Error::Numerical(e.to_string()))?;
    fn has_null(v: &serde_json::Value, key: &str) -> bool {
        match v {
            serde_json::Value::Null => key != "chamber_length",
            serde_json::Value::Array(a) => a.iter().any(|x| has_null(x, key)),
            serde_json::Value::Object(m) => m.iter().any(|(k, x)| has_null(x, k)),
            _ => false,
        }
    }
    if has_null(&json, "") {
        return Err(Error::Numerical("non-finite value in summary".into()));
    }
    Ok(())
}

/// Runs a scenario on an already built path.
pub fn run_on_path(scenario: &Scenario, path: &FiberPath) -> Result<ScenarioReport> {
    let spin = spin1_matrices();
    let analysis = PathAnalysis::new(path, &spin)?;
    let sigmas = scenario
        .sigma
        .iter()
        .map(|&s| Helicity::try_from(s))
        .collect::<Result<Vec<_>>>()?;
    let runs = sigmas
        .par_iter()
        .map(|&sigma| run_helicity(scenario, path, &spin, &analysis, sigma))
        .collect::<Result<Vec<_>>>()?;

    let medium = scenario.medium();
    let omega_end = *analysis.solid_angle.last().unwrap_or(&0.0);
    let net =
        net_vacuum_from_solid_angle(&medium, scenario.k0, scenario.chamber_length, omega_end)?;
    let vacuum_weight = scenario.ordering.weight(0);
    let occ = scenario.occupations;
    let n = path.len();
    let angles = &analysis.angles;

    let mut plots = vec![
        PlotSeries {
            name: "solid_angle".into(),
            points: path
                .times()
                .iter()
                .copied()
                .zip(analysis.solid_angle.iter().copied())
                .collect(),
        },
        PlotSeries {
            name: "quantal".into(),
            points: path
                .times()
                .iter()
                .zip(&analysis.solid_angle)
                .map(|(&t, &o)| (t, (occ.n_r as f64 - occ.n_l as f64) * o))
                .collect(),
        },
    ];
    let mut rows = Vec::with_capacity(n * runs.len());
    let mut helicities = Vec::new();
    let mut warnings = Vec::new();
    for run in runs {
        let tag = if run.sigma == Helicity::Plus {
            "p1"
        } else {
            "m1"
        };
        let series = |name: &str, f: fn(&ResultRow) -> f64| PlotSeries {
            name: format!("{name}_{tag}"),
            points: run.rows.iter().map(|r| (r.t, f(r))).collect(),
        };
        plots.push(series("geometric", |r| r.phase_geometric));
        plots.push(series("invariant_frame", |r| r.phase_invariant_frame));
        plots.push(series("analytic", |r| r.phase_analytic));
        plots.push(series("vacuum_net", |r| r.phase_vacuum_net));
        rows.extend(run.rows);
        helicities.push(run.summary);
        warnings.extend(run.warnings);
    }

    let summary = Summary {
        schema_version: SUMMARY_SCHEMA_VERSION,
        path: PathSummary {
            source: scenario.path.source_name().into(),
            samples: n,
            dt: path.dt(),
            t_end: path.times()[n - 1],
            k_mag: path.k_mag(),
            lambda_start: angles.lambda[0],
            lambda_end: angles.lambda[n - 1],
            gamma_winding: angles.gamma[n - 1] - angles.gamma[0],
            solid_angle: omega_end,
        },
        ordering: scenario.ordering,
        occupations: occ,
        helicities,
        phase_quantal: (occ.n_r as f64 - occ.n_l as f64) * omega_end,
        vacuum: VacuumSummary {
            phase_l: -vacuum_weight * omega_end,
            phase_r: vacuum_weight * omega_end,
            net: 2.0 * vacuum_weight * net.phase,
            plus_survives: net.plus_survives,
            minus_survives: net.minus_survives,
            no_propagating_mode: net.no_propagating_mode,
        },
        medium,
        modes: mode_status(&medium),
        k0: scenario.k0,
        chamber_length: scenario.chamber_length,
        diagnostics: Diagnostics {
            max_invariant_residual: analysis.max_invariant(),
            max_motion_residual: analysis.max_motion(),
            max_rotation_gap: analysis.rotation_gap,
        },
        warnings,
    };
    let report = ScenarioReport {
        rows,
        summary,
        plots,
    };
    check_finite(&report)?;
    Ok(report)
}

/// Builds the path and runs every requested helicity.
pub fn run(scenario: &Scenario) -> Result<ScenarioReport> {
    let path = scenario.build_path()?;
    run_on_path(scenario, &path)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(contents)?;
    Ok(())
}

pub(crate) fn csv_bytes(
    header: &[&str],
    records: impl Iterator<Item = Vec<String>>,
) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(to_io)?;
    for r in records {
        w.write_record(&r).map_err(to_io)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

/// Writes `results.csv`, `summary.json` and `plot_*.dat` into `dir`.
pub fn write_outputs(report: &ScenarioReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let results = dir.join("results.csv");
    write_file(
        &results,
        &csv_bytes(&RESULT_COLUMNS, report.rows.iter().map(ResultRow::record))?,
    )?;
    written.push(results);

    let summary = dir.join("summary.json");
    let mut json = serde_json::to_string_pretty(&report.summary)
        .map_err(|e| Error::Numerical(e.to_string()))?;
    json.push('\n');
    write_file(&summary, json.as_bytes())?;
    written.push(summary);

    for plot in &report.plots {
        let file = dir.join(format!("plot_{}.dat", plot.name));
        let mut text = String::new();
        for (x, y) in &plot.points {
            text.push_str(&format!(
                "{} {}\n",
                format_number(Some(*x)),
                format_number(Some(*y))
            ));
        }
        write_file(&file, text.as_bytes())?;
        written.push(file);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn scenario(extra: &str) -> Scenario {
        let text =
            format!(r#"{{"path": {{"helix": {{"lambda": "60deg"}}}}, "n_steps": 512{extra}}}"#);
        Scenario::from_json(&text, Path::new(".")).unwrap()
    }

    #[test]
    fn row_layout_matches_header() {
        let report = run(&scenario("")).unwrap();
        assert_eq!(report.rows.len(), 2 * 513);
        for row in &report.rows {
            assert_eq!(row.record().len(), RESULT_COLUMNS.len());
        }
        assert_eq!(report.rows[0].invariant_residual, None);
        assert_eq!(report.rows[0].record()[15], SENTINEL);
        assert!(report.rows[1].invariant_residual.is_some());
    }

    #[test]
    fn number_format_has_seventeen_digits() {
        assert_eq!(format_number(Some(PI)), "3.1415926535897931e0");
        assert_eq!(format_number(Some(-0.00125)), "-1.2500000000000000e-3");
        assert_eq!(format_number(None), "NA");
    }

    #[test]
    fn summary_reports_cyclic_phases() {
        let report = run(&scenario("")).unwrap();
        let s = &report.summary;
        assert_eq!(s.schema_version, SUMMARY_SCHEMA_VERSION);
        assert_eq!(s.helicities.len(), 2);
        assert!((s.helicities[0].phase_geometric - PI).abs() < 1e-3);
        assert!((s.helicities[1].phase_geometric + PI).abs() < 1e-3);
        assert_eq!(s.vacuum.net, 0.0);
        assert!((s.vacuum.phase_r - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn normal_ordering_deletes_vacuum() {
        let report = run(&scenario(
            r#", "ordering": "normal", "medium": {"eps1": 2, "eps2": 3, "mu1": 2, "mu2": 1}"#,
        ))
        .unwrap();
        assert_eq!(report.summary.vacuum.net, 0.0);
        assert_eq!(report.summary.vacuum.phase_l, 0.0);
        assert!(!report.summary.modes.minus_propagates);
    }

    #[test]
    fn plot_series_cover_every_sample() {
        let report = run(&scenario(r#", "sigma": [1]"#)).unwrap();
        let names: Vec<&str> = report.plots.iter().map(|p| p.name.as_str()).collect();
        assert!(names.contains(&"geometric_p1"));
        assert!(!names.contains(&"geometric_m1"));
        assert!(report.plots.iter().all(|p| p.points.len() == 513));
    }
}
