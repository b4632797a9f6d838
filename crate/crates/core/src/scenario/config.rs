//! Scenario configuration files.
//!
//! A scenario is a JSON document:
//!
//! ```json
//! {
//!   "path": { "helix": { "lambda": "60deg", "omega": 1.0, "n_cycles": 1 } },
//!   "n_steps": 4096,
//!   "sigma": [1, -1],
//!   "occupations": { "n_l": 0, "n_r": 1 },
//!   "ordering": "symmetric",
//!   "medium": { "eps1": 2, "eps2": 3, "mu1": 2, "mu2": 1 },
//!   "chamber_length": 10.0,
//!   "k0": 1.0,
//!   "output_dir": "out"
//! }
//! ```
//!
//! Angles are radians when given as numbers; strings accept a `deg` or `rad`
//! suffix. `path` takes exactly one of `helix`, `nutating` or `file`; a
//! relative `file` is resolved against the config file's directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::fock::OperatorOrdering;
use crate::geometry::{helix_path, nutating_helix_path, FiberPath};
use crate::gyrotropic::GyrotropicMedium;

/// Smallest accepted `n_steps`.
pub const MIN_STEPS: usize = 64;

/// An angle in radians, parsed from a number or a `"<value>deg"` string.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle(pub f64);

impl Angle {
    pub fn parse(text: &str) -> std::result::Result<Angle, String> {
        let t = text.trim();
        let (number, degrees) = if let Some(v) = t.strip_suffix("deg") {
            (v, true)
        } else if let Some(v) = t.strip_suffix("rad") {
            (v, false)
        } else {
            (t, false)
        };
        let value: f64 = number
            .trim()
            .parse()
            .map_err(|_| format!("`{text}` is not an angle"))?;
        Ok(Angle(if degrees { value.to_radians() } else { value }))
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(v) => Ok(Angle(v)),
            Raw::Text(s) => Angle::parse(&s).map_err(serde::de::Error::custom),
        }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HelixSpec {
    pub lambda: Angle,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub k_mag: f64,
    #[serde(default = "one")]
    pub n_cycles: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NutatingSpec {
    pub lambda: Angle,
    pub nutation: Angle,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub k_mag: f64,
    #[serde(default = "one")]
    pub n_cycles: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PathSpec {
    Helix(HelixSpec),
    Nutating(NutatingSpec),
    File(PathBuf),
}

impl PathSpec {
    pub fn source_name(&self) -> &'static str {
        match self {
            PathSpec::Helix(_) => "helix",
            PathSpec::Nutating(_) => "nutating",
            PathSpec::File(_) => "file",
        }
    }

    fn lambda_mut(&mut self) -> Option<&mut Angle> {
        match self {
            PathSpec::Helix(h) => Some(&mut h.lambda),
            PathSpec::Nutating(n) => Some(&mut n.lambda),
            PathSpec::File(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Occupations {
    #[serde(default)]
    pub n_l: u32,
    #[serde(default)]
    pub n_r: u32,
}

/// Parameter varied by `fiberphase sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "parameter", content = "values", rename_all = "snake_case")]
pub enum SweepSpec {
    Lambda(Vec<Angle>),
    NSteps(Vec<usize>),
    Occupations(Vec<[u32; 2]>),
}

impl SweepSpec {
    pub fn len(&self) -> usize {
        match self {
            SweepSpec::Lambda(v) => v.len(),
            SweepSpec::NSteps(v) => v.len(),
            SweepSpec::Occupations(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parameter(&self) -> &'static str {
        match self {
            SweepSpec::Lambda(_) => "lambda",
            SweepSpec::NSteps(_) => "n_steps",
            SweepSpec::Occupations(_) => "occupations",
        }
    }
}

fn default_sigma() -> Vec<i32> {
    vec![1, -1]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub path: PathSpec,
    /// Required for generated paths; an imported path fixes its own grid.
    #[serde(default)]
    pub n_steps: Option<usize>,
    #[serde(default = "default_sigma")]
    pub sigma: Vec<i32>,
    #[serde(default)]
    pub occupations: Occupations,
    #[serde(default)]
    pub ordering: OperatorOrdering,
    #[serde(default)]
    pub medium: Option<GyrotropicMedium>,
    #[serde(default)]
    pub chamber_length: Option<f64>,
    #[serde(default = "one")]
    pub k0: f64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

fn field_error(field: &str, message: impl std::fmt::Display) -> Error {
    Error::Config(format!("field `{field}`: {message}"))
}

impl Scenario {
    /// Parses and validates a scenario. Relative paths inside it are
    /// resolved against `base_dir`.
    pub fn from_json(text: &str, base_dir: &Path) -> Result<Scenario> {
        let mut scenario: Scenario =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if let PathSpec::File(f) = &mut scenario.path {
            if f.is_relative() {
                *f = base_dir.join(&*f);
            }
        }
        if scenario.output_dir.is_relative() {
            scenario.output_dir = base_dir.join(&scenario.output_dir);
        }
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Scenario::from_json(&text, base)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(field_error(field, format!("{v} must be finite and > 0")))
            }
        };
        let lambda_ok = |field: &str, l: f64| {
            if (0.0..=std::f64::consts::PI).contains(&l) {
                Ok(())
            } else {
                Err(field_error(field, format!("{l} rad is outside [0, pi]")))
            }
        };
        match &self.path {
            PathSpec::Helix(h) => {
                lambda_ok("path.helix.lambda", h.lambda.0)?;
                if !(h.omega.is_finite() && h.omega != 0.0) {
                    return Err(field_error(
                        "path.helix.omega",
                        "must be finite and nonzero",
                    ));
                }
                positive("path.helix.k_mag", h.k_mag)?;
                positive("path.helix.n_cycles", h.n_cycles)?;
            }
            PathSpec::Nutating(n) => {
                lambda_ok("path.nutating.lambda", n.lambda.0)?;
                let (lo, hi) = (n.lambda.0 - n.nutation.0, n.lambda.0 + n.nutation.0);
                if n.nutation.0 < 0.0 || lo < 0.0 || hi > std::f64::consts::PI {
                    return Err(field_error(
                        "path.nutating.nutation",
                        "lambda +- nutation must stay within [0, pi]",
                    ));
                }
                if !(n.omega.is_finite() && n.omega != 0.0) {
                    return Err(field_error(
                        "path.nutating.omega",
                        "must be finite and nonzero",
                    ));
                }
                positive("path.nutating.k_mag", n.k_mag)?;
                positive("path.nutating.n_cycles", n.n_cycles)?;
            }
            PathSpec::File(_) => {}
        }
        let generated = !matches!(self.path, PathSpec::File(_));
        match self.n_steps {
            Some(n) if n < MIN_STEPS => {
                return Err(field_error("n_steps", format!("{n} is below {MIN_STEPS}")))
            }
            None if generated => {
                return Err(field_error("n_steps", "required for generated paths"))
            }
            _ => {}
        }
        if self.sigma.is_empty() {
            return Err(field_error("sigma", "needs at least one helicity"));
        }
        for (i, s) in self.sigma.iter().enumerate() {
            if *s != 1 && *s != -1 {
                return Err(field_error(
                    &format!("sigma[{i}]"),
                    format!("{s} is not +1 or -1"),
                ));
            }
            if self.sigma[..i].contains(s) {
                return Err(field_error(&format!("sigma[{i}]"), "duplicate helicity"));
            }
        }
        positive("k0", self.k0)?;
        if let Some(a) = self.chamber_length {
            positive("chamber_length", a)?;
        }
        if let Some(m) = &self.medium {
            m.validate().map_err(|e| field_error("medium", e))?;
        }
        if let Some(sweep) = &self.sweep {
            if sweep.is_empty() {
                return Err(field_error("sweep.values", "empty sweep range"));
            }
            match sweep {
                SweepSpec::Lambda(values) => {
                    if !generated {
                        return Err(field_error(
                            "sweep",
                            "a lambda sweep needs a generated path",
                        ));
                    }
                    for (i, l) in values.iter().enumerate() {
                        lambda_ok(&format!("sweep.values[{i}]"), l.0)?;
                    }
                }
                SweepSpec::NSteps(values) => {
                    if !generated {
                        return Err(field_error(
                            "sweep",
                            "an n_steps sweep needs a generated path",
                        ));
                    }
                    for (i, n) in values.iter().enumerate() {
                        if *n < MIN_STEPS {
                            return Err(field_error(
                                &format!("sweep.values[{i}]"),
                                format!("{n} is below {MIN_STEPS}"),
                            ));
                        }
                    }
                }
                SweepSpec::Occupations(_) => {}
            }
        }
        Ok(())
    }

    pub fn medium(&self) -> GyrotropicMedium {
        self.medium.unwrap_or_else(GyrotropicMedium::vacuum)
    }

    /// Samples or loads the wave-vector path.
    pub fn build_path(&self) -> Result<FiberPath> {
        let n = self.n_steps.unwrap_or(0);
        match &self.path {
            PathSpec::Helix(h) => helix_path(h.lambda.0, h.omega, h.k_mag, h.n_cycles, n),
            PathSpec::Nutating(p) => {
                nutating_helix_path(p.lambda.0, p.nutation.0, p.omega, p.k_mag, p.n_cycles, n)
            }
            PathSpec::File(f) => FiberPath::read(f),
        }
    }

    /// Copy with the path cone angle replaced; `None` for imported paths.
    pub fn with_lambda(&self, lambda: f64) -> Option<Scenario> {
        let mut s = self.clone();
        *s.path.lambda_mut()? = Angle(lambda);
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Scenario> {
        Scenario::from_json(text, Path::new("/cfg"))
    }

    #[test]
    fn angle_suffixes() {
        assert_eq!(Angle::parse("180deg").unwrap().0, std::f64::consts::PI);
        assert_eq!(Angle::parse(" 0.5 rad").unwrap().0, 0.5);
        assert_eq!(Angle::parse("1.25").unwrap().0, 1.25);
        assert!(Angle::parse("north").is_err());
    }

    #[test]
    fn minimal_helix_scenario() {
        let s = parse(r#"{"path": {"helix": {"lambda": "60deg"}}, "n_steps": 128}"#).unwrap();
        assert_eq!(s.sigma, vec![1, -1]);
        assert_eq!(s.ordering, OperatorOrdering::Symmetric);
        assert_eq!(s.output_dir, PathBuf::from("/cfg/out"));
        let p = s.build_path().unwrap();
        assert_eq!(p.len(), 129);
    }

    #[test]
    fn file_paths_resolve_against_config_dir() {
        let s = parse(r#"{"path": {"file": "k.txt"}}"#).unwrap();
        assert_eq!(s.path, PathSpec::File(PathBuf::from("/cfg/k.txt")));
    }

    #[test]
    fn rejects_two_path_sources() {
        let err = parse(r#"{"path": {"helix": {"lambda": 1}, "file": "k.txt"}, "n_steps": 128}"#);
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let cases = [
            (
                r#"{"path": {"helix": {"lambda": 1}}, "n_steps": 10}"#,
                "n_steps",
            ),
            (r#"{"path": {"helix": {"lambda": 1}}}"#, "n_steps"),
            (
                r#"{"path": {"helix": {"lambda": 4}}, "n_steps": 128}"#,
                "path.helix.lambda",
            ),
            (
                r#"{"path": {"helix": {"lambda": 1}}, "n_steps": 128, "sigma": [0]}"#,
                "sigma[0]",
            ),
            (
                r#"{"path": {"helix": {"lambda": 1}}, "n_steps": 128, "k0": -1}"#,
                "k0",
            ),
            (
                r#"{"path": {"helix": {"lambda": 1}}, "n_steps": 128, "sweep": {"parameter": "lambda", "values": []}}"#,
                "sweep.values",
            ),
        ];
        for (text, field) in cases {
            let msg = parse(text).unwrap_err().to_string();
            assert!(msg.contains(field), "{msg} should mention {field}");
        }
    }

    #[test]
    fn syntax_errors_report_position() {
        let msg = parse("{\n  \"path\": {\"helix\": {\"lambda\": 1}},\n  \"n_steps\": ,\n}")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn negative_occupation_is_a_config_error() {
        let err = parse(
            r#"{"path": {"helix": {"lambda": 1}}, "n_steps": 128, "occupations": {"n_l": -1}}"#,
        );
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn sweep_parsing() {
        let s = parse(
            r#"{"path": {"helix": {"lambda": 1}}, "n_steps": 128,
            "sweep": {"parameter": "occupations", "values": [[0, 1], [2, 3]]}}"#,
        )
        .unwrap();
        assert_eq!(s.sweep, Some(SweepSpec::Occupations(vec![[0, 1], [2, 3]])));
        let err = parse(
            r#"{"path": {"file": "k.txt"}, "sweep": {"parameter": "lambda", "values": [1]}}"#,
        );
        assert!(err.is_err());
    }
}
