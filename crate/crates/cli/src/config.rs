//! JSON run configuration. Units are carried in the key names.
//!
//! ```json
//! {
//!   "pump": { "power_mw": 1.0, "wavelength_nm": 351.1, "waist_um": 82.0 },
//!   "signal": { "waist_um": 82.0 },
//!   "idler": { "waist_um": 82.0 },
//!   "crystal": { "material": "BBO", "length_mm": 2.0, "theta_c_deg": 49.7, "phi_c_deg": 60.0 },
//!   "external_collection_angle_deg": 3.1,
//!   "angle_convention": "paper_external_as_internal",
//!   "polarization_assignment": "signal_ordinary"
//! }
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use spdc_core::materials::MaterialDb;
use spdc_core::rates::{AngleConvention, ExperimentParams, PolarizationAssignment, SourceConfig, SourceSetup};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpConfig {
    pub power_mw: f64,
    pub wavelength_nm: f64,
    pub waist_um: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    pub waist_um: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrystalConfig {
    pub material: String,
    pub length_mm: f64,
    pub theta_c_deg: f64,
    pub phi_c_deg: f64,
}

/// Published values to compare against; all optional.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceValues {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walk_off: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable_rate_per_mw_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub efficiency_per_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub efficiency_per_mm_sr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured_rate_per_mw_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub pair_to_singles_ratio: f64,
    pub decay_paths: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collection_solid_angle_sr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceValues>,
}

impl ExperimentConfig {
    pub fn params(&self) -> ExperimentParams {
        ExperimentParams {
            pair_to_singles_ratio: self.pair_to_singles_ratio,
            decay_paths: self.decay_paths,
            collection_solid_angle: self.collection_solid_angle_sr,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub pump: PumpConfig,
    pub signal: BeamConfig,
    pub idler: BeamConfig,
    pub crystal: CrystalConfig,
    pub external_collection_angle_deg: f64,
    pub angle_convention: AngleConvention,
    pub polarization_assignment: PolarizationAssignment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracy_epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentConfig>,
}

#[derive(Clone, Copy)]
enum Kind {
    Object,
    Number,
    Text,
    Choice(&'static [&'static str]),
}

const ANGLE_CONVENTIONS: &[&str] = &["internal_physics", "paper_external_as_internal"];
const POLARIZATIONS: &[&str] = &["signal_ordinary", "signal_extraordinary"];

/// (path, kind, required)
const SCHEMA: &[(&str, Kind, bool)] = &[
    ("pump", Kind::Object, true),
    ("pump.power_mw", Kind::Number, true),
    ("pump.wavelength_nm", Kind::Number, true),
    ("pump.waist_um", Kind::Number, true),
    ("signal", Kind::Object, true),
    ("signal.waist_um", Kind::Number, true),
    ("idler", Kind::Object, true),
    ("idler.waist_um", Kind::Number, true),
    ("crystal", Kind::Object, true),
    ("crystal.material", Kind::Text, true),
    ("crystal.length_mm", Kind::Number, true),
    ("crystal.theta_c_deg", Kind::Number, true),
    ("crystal.phi_c_deg", Kind::Number, true),
    ("external_collection_angle_deg", Kind::Number, true),
    ("angle_convention", Kind::Choice(ANGLE_CONVENTIONS), true),
    ("polarization_assignment", Kind::Choice(POLARIZATIONS), true),
    ("degeneracy_epsilon", Kind::Number, false),
    ("experiment", Kind::Object, false),
    ("experiment.pair_to_singles_ratio", Kind::Number, true),
    ("experiment.decay_paths", Kind::Number, true),
    ("experiment.collection_solid_angle_sr", Kind::Number, false),
    ("experiment.reference", Kind::Object, false),
    ("experiment.reference.walk_off", Kind::Number, false),
    ("experiment.reference.observable_rate_per_mw_s", Kind::Number, false),
    ("experiment.reference.efficiency_per_mm", Kind::Number, false),
    ("experiment.reference.efficiency_per_mm_sr", Kind::Number, false),
    ("experiment.reference.measured_rate_per_mw_s", Kind::Number, false),
];

fn lookup<'a>(root: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(root, |v, key| v.get(key))
}

fn parent(path: &str) -> Option<&str> {
    path.rsplit_once('.').map(|(p, _)| p)
}

fn check_schema(root: &Value) -> Result<()> {
    if !root.is_object() {
        return Err(CliError::validation("<root>", "expected a JSON object"));
    }
    for &(path, kind, required) in SCHEMA {
        // Children of an absent optional section are not required.
        if let Some(p) = parent(path) {
            if lookup(root, p).is_none() {
                continue;
            }
        }
        let Some(value) = lookup(root, path) else {
            if required {
                let hint = match kind {
                    Kind::Choice(allowed) => format!("missing; expected one of {}", allowed.join(", ")),
                    _ => "missing".to_string(),
                };
                return Err(CliError::validation(path, hint));
            }
            continue;
        };
        let ok = match kind {
            Kind::Object => value.is_object(),
            Kind::Number => value.is_number(),
            Kind::Text => value.is_string(),
            Kind::Choice(allowed) => value.as_str().is_some_and(|s| allowed.contains(&s)),
        };
        if !ok {
            let expected = match kind {
                Kind::Object => "an object".to_string(),
                Kind::Number => "a number".to_string(),
                Kind::Text => "a string".to_string(),
                Kind::Choice(allowed) => format!("one of {}", allowed.join(", ")),
            };
            return Err(CliError::validation(path, format!("expected {expected}, got {value}")));
        }
    }
    check_unknown_keys(root, "")
}

fn check_unknown_keys(value: &Value, prefix: &str) -> Result<()> {
    let Value::Object(map) = value else { return Ok(()) };
    for (key, child) in map {
        let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
        match SCHEMA.iter().find(|(p, _, _)| *p == path) {
            None => return Err(CliError::validation(path, "unknown field")),
            Some((_, Kind::Object, _)) => check_unknown_keys(child, &path)?,
            Some(_) => {}
        }
    }
    Ok(())
}

fn positive(field: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CliError::validation(field, format!("{value} must be > 0")))
    }
}

impl Config {
    /// Range checks that do not need the material database.
    pub fn validate(&self) -> Result<()> {
        positive("pump.power_mw", self.pump.power_mw)?;
        positive("pump.wavelength_nm", self.pump.wavelength_nm)?;
        positive("pump.waist_um", self.pump.waist_um)?;
        positive("signal.waist_um", self.signal.waist_um)?;
        positive("idler.waist_um", self.idler.waist_um)?;
        positive("crystal.length_mm", self.crystal.length_mm)?;
        let angle = self.external_collection_angle_deg;
        if !(0.0..90.0).contains(&angle) {
            return Err(CliError::validation(
                "external_collection_angle_deg",
                format!("{angle} must lie in [0, 90)"),
            ));
        }
        if let Some(eps) = self.degeneracy_epsilon {
            positive("degeneracy_epsilon", eps)?;
        }
        if let Some(exp) = &self.experiment {
            let r = exp.pair_to_singles_ratio;
            if !(r > 0.0 && r <= 1.0) {
                return Err(CliError::validation(
                    "experiment.pair_to_singles_ratio",
                    format!("{r} must lie in (0, 1]"),
                ));
            }
            if !(exp.decay_paths >= 1.0) {
                return Err(CliError::validation(
                    "experiment.decay_paths",
                    format!("{} must be ≥ 1", exp.decay_paths),
                ));
            }
            if let Some(sr) = exp.collection_solid_angle_sr {
                positive("experiment.collection_solid_angle_sr", sr)?;
            }
        }
        Ok(())
    }

    pub fn from_value(value: Value) -> Result<Self> {
        check_schema(&value)?;
        let config: Config =
            serde_json::from_value(value).map_err(|e| CliError::validation("<root>", e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }

    pub fn to_file(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    /// Resolves the material and builds the core source description.
    pub fn source(&self, db: &MaterialDb) -> Result<SourceConfig> {
        let entry = db.get(&self.crystal.material).ok_or_else(|| CliError::UnknownMaterial {
            name: self.crystal.material.clone(),
            available: db.names().collect::<Vec<_>>().join(", "),
        })?;
        let crystal = entry.crystal(
            self.crystal.length_mm * 1e-3,
            self.crystal.theta_c_deg.to_radians(),
            self.crystal.phi_c_deg.to_radians(),
        )?;
        let mut source = SourceConfig::new(SourceSetup {
            pump_power: self.pump.power_mw * 1e-3,
            pump_wavelength: self.pump.wavelength_nm * 1e-9,
            pump_waist: self.pump.waist_um * 1e-6,
            signal_waist: self.signal.waist_um * 1e-6,
            idler_waist: self.idler.waist_um * 1e-6,
            crystal,
            external_collection_angle: self.external_collection_angle_deg.to_radians(),
            angle_convention: self.angle_convention,
            polarization_assignment: self.polarization_assignment,
        })?;
        if let Some(eps) = self.degeneracy_epsilon {
            source.degeneracy_epsilon = eps;
        }
        Ok(source)
    }
}

/// Applies `KEY=VALUE` overrides, where `KEY` is a dotted path. `VALUE` is
/// parsed as JSON when possible and taken as a string otherwise.
pub fn apply_overrides(root: &mut Value, overrides: &[String]) -> Result<()> {
    for item in overrides {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| CliError::validation("--set", format!("`{item}` is not KEY=VALUE")))?;
        if key.is_empty() || key.split('.').any(str::is_empty) {
            return Err(CliError::validation("--set", format!("bad key `{key}`")));
        }
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        let mut node = &mut *root;
        let mut parts = key.split('.').peekable();
        while let Some(part) = parts.next() {
            if !node.is_object() {
                *node = Value::Object(Map::new());
            }
            let map = node.as_object_mut().expect("object");
            if parts.peek().is_none() {
                map.insert(part.to_string(), value);
                break;
            }
            node = map.entry(part.to_string()).or_insert_with(|| Value::Object(Map::new()));
        }
    }
    Ok(())
}

pub fn parse_config_text(text: &str, path: &Path, overrides: &[String]) -> Result<Config> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    apply_overrides(&mut value, overrides)?;
    Config::from_value(value)
}

pub fn load_config(path: &Path, overrides: &[String]) -> Result<Config> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_text(&text, path, overrides)
}

pub fn load_material_db(path: Option<&Path>) -> Result<MaterialDb> {
    match path {
        None => Ok(MaterialDb::builtin()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            Ok(MaterialDb::from_json(&text)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHIPPED: &str = include_str!("../configs/bbo_branciard.json");

    fn shipped_value() -> Value {
        serde_json::from_str(SHIPPED).unwrap()
    }

    #[test]
    fn shipped_config_loads() {
        let config = Config::from_value(shipped_value()).unwrap();
        assert_eq!(config.crystal.material, "BBO");
        assert_eq!(config.polarization_assignment, PolarizationAssignment::SignalOrdinary);
        let source = config.source(&MaterialDb::builtin()).unwrap();
        assert_eq!(source.pump.waist, 82e-6);
    }

    #[test]
    fn round_trip() {
        let config = Config::from_value(shipped_value()).unwrap();
        let again = Config::from_value(serde_json::from_str(&config.to_json()).unwrap()).unwrap();
        assert_eq!(config, again);
    }

    #[test]
    fn non_positive_waist_names_field() {
        let mut v = shipped_value();
        apply_overrides(&mut v, &["pump.waist_um=0".into()]).unwrap();
        let err = Config::from_value(v).unwrap_err();
        assert!(matches!(&err, CliError::Validation { field, .. } if field == "pump.waist_um"), "{err}");
    }

    #[test]
    fn missing_polarization_lists_choices() {
        let mut v = shipped_value();
        v.as_object_mut().unwrap().remove("polarization_assignment");
        let err = Config::from_value(v).unwrap_err().to_string();
        assert!(err.starts_with("polarization_assignment"), "{err}");
        assert!(err.contains("signal_ordinary") && err.contains("signal_extraordinary"), "{err}");
    }

    #[test]
    fn unknown_field_rejected() {
        let mut v = shipped_value();
        apply_overrides(&mut v, &["pump.colour=\"green\"".into()]).unwrap();
        let err = Config::from_value(v).unwrap_err().to_string();
        assert!(err.starts_with("pump.colour: unknown field"), "{err}");
    }

    #[test]
    fn overrides_parse_json_or_string() {
        let mut v = shipped_value();
        apply_overrides(
            &mut v,
            &["crystal.length_mm=3.5".into(), "angle_convention=internal_physics".into()],
        )
        .unwrap();
        let config = Config::from_value(v).unwrap();
        assert_eq!(config.crystal.length_mm, 3.5);
        assert_eq!(config.angle_convention, AngleConvention::InternalPhysics);
        let mut v = shipped_value();
        assert!(apply_overrides(&mut v, &["nokey".into()]).is_err());
    }

    #[test]
    fn parse_error_has_position() {
        let err = parse_config_text("{\n  \"pump\": ,\n}", Path::new("x.json"), &[]).unwrap_err();
        match err {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (2, 11)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_material() {
        let mut v = shipped_value();
        apply_overrides(&mut v, &["crystal.material=unobtainium".into()]).unwrap();
        let config = Config::from_value(v).unwrap();
        let err = config.source(&MaterialDb::builtin()).unwrap_err();
        assert!(matches!(err, CliError::UnknownMaterial { .. }));
        assert_eq!(err.exit_code(), 2);
    }
}
