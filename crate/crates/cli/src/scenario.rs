//! Scenario files: molecule, CTLS level selection, temperatures and sweep grid.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use ctls_core::rotor::RotationalConstants;
use ctls_core::thermal::{Temperatures, VibrationalMode};
use ctls_core::transfer::{CtlsConfig, CtlsMode, Labeling, LevelSelection, TemperatureGrid};

use crate::error::CliError;

/// Scenario compiled into the binary, used when no file is given.
pub const BUNDLED_PROPANEDIOL: &str = include_str!("../scenarios/propanediol.scenario");

/// Environment variable naming the default scenario file.
pub const SCENARIO_ENV: &str = "CTLS_SCENARIO_PATH";

const DEFAULT_T_VIB_K: f64 = 300.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub labeling: LabelingKey,
    pub molecule: MoleculeSection,
    pub ctls: CtlsSection,
    pub temperatures: TemperatureSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelingKey {
    #[default]
    Tau,
    KaKc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoleculeSection {
    pub name: String,
    pub rotational_constants_ghz: ConstantsSection,
    #[serde(default)]
    pub vibrational_modes: Vec<ModeSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSection {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSection {
    pub name: String,
    pub frequency_thz: f64,
    pub max_quanta: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKey {
    RoVibrational,
    PurelyRotational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CtlsSection {
    pub mode: ModeKey,
    pub levels: Vec<LevelSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSection {
    pub vib: u32,
    #[serde(rename = "J")]
    pub j: u32,
    pub tau: i32,
    #[serde(rename = "M")]
    pub m: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperatureSection {
    pub t_rot_k: f64,
    #[serde(default = "default_t_vib")]
    pub t_vib_k: f64,
}

fn default_t_vib() -> f64 {
    DEFAULT_T_VIB_K
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub t_rot_min_k: f64,
    pub t_rot_max_k: f64,
    pub points: usize,
    pub log_scale: bool,
}

impl Default for SweepSection {
    fn default() -> Self {
        let g = TemperatureGrid::default();
        SweepSection { t_rot_min_k: g.min, t_rot_max_k: g.max, points: g.points, log_scale: g.log_scale }
    }
}

/// A parsed and validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub source: ScenarioSource,
    pub config: CtlsConfig,
    pub temperatures: Temperatures,
    pub grid: TemperatureGrid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioSource {
    File(PathBuf),
    Bundled,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{field}: {msg}"))
}

fn positive(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(field, format!("must be finite and > 0, got {v}")))
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("scenario serializes")
    }

    /// Checks every field and builds the core configuration.
    pub fn validate(&self) -> Result<(CtlsConfig, Temperatures, TemperatureGrid), CliError> {
        if self.molecule.name.trim().is_empty() {
            return Err(invalid("molecule.name", "must not be empty"));
        }
        let k = &self.molecule.rotational_constants_ghz;
        for (name, v) in [("A", k.a), ("B", k.b), ("C", k.c)] {
            positive(&format!("molecule.rotational_constants_ghz.{name}"), v)?;
        }
        if !(k.a >= k.b && k.b >= k.c) {
            return Err(invalid(
                "molecule.rotational_constants_ghz",
                format!("ordering rule A >= B >= C violated (A = {}, B = {}, C = {})", k.a, k.b, k.c),
            ));
        }
        let constants = RotationalConstants::new(k.a, k.b, k.c).map_err(|e| invalid("molecule.rotational_constants_ghz", e))?;

        let mut modes = Vec::with_capacity(self.molecule.vibrational_modes.len());
        for (i, m) in self.molecule.vibrational_modes.iter().enumerate() {
            let field = format!("molecule.vibrational_modes[{i}]");
            positive(&format!("{field}.frequency_thz"), m.frequency_thz)?;
            if m.max_quanta == 0 {
                return Err(invalid(&format!("{field}.max_quanta"), "must be >= 1"));
            }
            modes.push(VibrationalMode::new(m.name.clone(), m.frequency_thz, m.max_quanta).map_err(|e| invalid(&field, e))?);
        }

        let levels: [LevelSection; 3] = self
            .ctls
            .levels
            .clone()
            .try_into()
            .map_err(|v: Vec<_>| invalid("ctls.levels", format!("exactly 3 levels required, got {}", v.len())))?;
        let selection = levels.map(|l| LevelSelection::new(l.vib, l.j, l.tau, l.m));
        let mode = match self.ctls.mode {
            ModeKey::RoVibrational => CtlsMode::RoVibrational,
            ModeKey::PurelyRotational => CtlsMode::PurelyRotational,
        };
        let labeling = match self.labeling {
            LabelingKey::Tau => Labeling::Tau,
            LabelingKey::KaKc => Labeling::KaKc,
        };
        let config = CtlsConfig::new(mode, constants, modes, selection, labeling).map_err(|e| invalid("ctls", e))?;

        let t = &self.temperatures;
        for (name, v) in [("temperatures.t_rot_k", t.t_rot_k), ("temperatures.t_vib_k", t.t_vib_k)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        let temperatures = Temperatures::new(t.t_rot_k, t.t_vib_k).map_err(|e| invalid("temperatures", e))?;

        let s = &self.sweep;
        let grid = TemperatureGrid::new(s.t_rot_min_k, s.t_rot_max_k, s.points, s.log_scale).map_err(|e| invalid("sweep", e))?;
        Ok((config, temperatures, grid))
    }
}

impl Scenario {
    pub fn from_text(text: &str, source: ScenarioSource) -> Result<Self, CliError> {
        let file = ScenarioFile::parse(text)?;
        let (config, temperatures, grid) = file.validate()?;
        Ok(Scenario { file, source, config, temperatures, grid })
    }

    pub fn bundled() -> Self {
        Scenario::from_text(BUNDLED_PROPANEDIOL, ScenarioSource::Bundled).expect("bundled scenario is valid")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Scenario::from_text(&text, ScenarioSource::File(path.to_path_buf()))
    }

    /// The given file, else the bundled scenario.
    pub fn resolve(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            Some(path) => Scenario::load(path),
            None => Ok(Scenario::bundled()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_values() {
        let s = Scenario::bundled();
        let k = s.config.constants();
        assert_eq!((k.a(), k.b(), k.c()), (8.5244, 3.6354, 2.7887));
        assert_eq!(s.config.vibrational_modes()[0].frequency_thz(), 100.95);
        assert_eq!(s.config.mode(), CtlsMode::RoVibrational);
        assert_eq!(s.grid, TemperatureGrid::default());
    }

    #[test]
    fn defaults_are_applied() {
        let text = r#"
            [molecule]
            name = "x"
            rotational_constants_ghz = { A = 3.0, B = 2.0, C = 1.0 }
            [ctls]
            mode = "purely_rotational"
            levels = [{ vib = 0, J = 0, tau = 0, M = 0 }, { vib = 0, J = 1, tau = -1, M = 0 }, { vib = 0, J = 1, tau = 1, M = 0 }]
            [temperatures]
            t_rot_k = 4.0
        "#;
        let s = Scenario::from_text(text, ScenarioSource::Bundled).unwrap();
        assert_eq!(s.temperatures.t_vib(), 300.0);
        assert_eq!(s.file.labeling, LabelingKey::Tau);
        assert_eq!(s.file.sweep, SweepSection::default());
        assert!(s.config.vibrational_modes().is_empty());
    }

    #[test]
    fn round_trip() {
        let s = Scenario::bundled();
        let again = ScenarioFile::parse(&s.file.to_toml()).unwrap();
        assert_eq!(again, s.file);
    }

    fn with(edit: impl Fn(&mut ScenarioFile)) -> Result<(CtlsConfig, Temperatures, TemperatureGrid), CliError> {
        let mut f = Scenario::bundled().file;
        edit(&mut f);
        f.validate()
    }

    fn message(r: Result<(CtlsConfig, Temperatures, TemperatureGrid), CliError>) -> String {
        match r {
            Err(CliError::Validation(m)) => m,
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn validation_names_fields() {
        let m = message(with(|f| f.molecule.rotational_constants_ghz.a = 1.0));
        assert!(m.contains("ordering rule"), "{m}");
        let m = message(with(|f| f.molecule.rotational_constants_ghz.c = -1.0));
        assert!(m.starts_with("molecule.rotational_constants_ghz.C"), "{m}");
        let m = message(with(|f| f.molecule.vibrational_modes[0].frequency_thz = f64::NAN));
        assert!(m.starts_with("molecule.vibrational_modes[0].frequency_thz"), "{m}");
        let m = message(with(|f| {
            f.ctls.levels.pop();
        }));
        assert!(m.starts_with("ctls.levels"), "{m}");
        let m = message(with(|f| f.ctls.mode = ModeKey::PurelyRotational));
        assert!(m.starts_with("ctls"), "{m}");
        let m = message(with(|f| f.temperatures.t_rot_k = -3.0));
        assert!(m.starts_with("temperatures.t_rot_k"), "{m}");
        let m = message(with(|f| f.sweep.points = 0));
        assert!(m.starts_with("sweep"), "{m}");
        assert!(with(|f| {
            f.ctls.mode = ModeKey::PurelyRotational;
            f.molecule.vibrational_modes.clear();
            for l in &mut f.ctls.levels {
                l.vib = 0;
            }
        })
        .is_ok());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = BUNDLED_PROPANEDIOL.replace("t_vib_k", "t_vibe_k");
        let err = ScenarioFile::parse(&text).unwrap_err();
        assert!(matches!(err, CliError::Validation(ref m) if m.contains("t_vibe_k")), "{err}");
    }
}
