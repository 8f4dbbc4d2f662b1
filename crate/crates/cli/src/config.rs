//! Run configuration: flat `key = value` text or a JSON object, in external
//! units (Hz for frequencies and rates, K, T, m³).

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use magnomech::model::{self_consistent_detuning, DriveParams};
use magnomech::{baseline, ParamField, Params};
use serde_json::{Map, Value};

use crate::error::CliError;

const DRIVE_KEYS: [&str; 5] = [
    "rabi_omega",
    "g0_bare",
    "delta_m_bare",
    "field_amplitude",
    "sphere_volume",
];
const OTHER_KEYS: [&str; 4] = ["output", "format", "axis1", "axis2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Usage(format!(
                "unknown format `{s}` (valid: text, csv, json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Drive inputs in external units: Hz for Ω, G₀, Δ_m; tesla; m³.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DriveConfig {
    pub rabi_omega: Option<f64>,
    pub g0_bare: Option<f64>,
    pub delta_m_bare: Option<f64>,
    pub field_amplitude: Option<f64>,
    pub sphere_volume: Option<f64>,
}

impl DriveConfig {
    fn slot(&mut self, key: &str) -> Option<&mut Option<f64>> {
        match key {
            "rabi_omega" => Some(&mut self.rabi_omega),
            "g0_bare" => Some(&mut self.g0_bare),
            "delta_m_bare" => Some(&mut self.delta_m_bare),
            "field_amplitude" => Some(&mut self.field_amplitude),
            "sphere_volume" => Some(&mut self.sphere_volume),
            _ => None,
        }
    }

    fn entries(&self) -> [(&'static str, Option<f64>); 5] {
        [
            ("rabi_omega", self.rabi_omega),
            ("g0_bare", self.g0_bare),
            ("delta_m_bare", self.delta_m_bare),
            ("field_amplitude", self.field_amplitude),
            ("sphere_volume", self.sphere_volume),
        ]
    }

    pub fn is_empty(&self) -> bool {
        self.entries().iter().all(|(_, v)| v.is_none())
    }
}

/// Result of the drive-derived effective detuning and coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSummary {
    pub rabi_omega: f64,
    pub delta_m_eff: f64,
    pub coupling_g: f64,
    pub magnon_amplitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// External values in [`ParamField::ALL`] order.
    system: [f64; 15],
    explicit: BTreeSet<ParamField>,
    pub drive: DriveConfig,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub axes: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::from_params(&baseline())
    }
}

fn slot_of(field: ParamField) -> usize {
    ParamField::ALL
        .iter()
        .position(|f| *f == field)
        .expect("field is listed")
}

impl RunConfig {
    /// Configuration reproducing `params` (converted to external units).
    pub fn from_params(params: &Params) -> Self {
        RunConfig {
            system: ParamField::ALL.map(|f| params.get_external(f)),
            explicit: BTreeSet::new(),
            drive: DriveConfig::default(),
            output: None,
            format: None,
            axes: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut config = RunConfig::default();
        config.merge(text)?;
        Ok(config)
    }

    /// Applies every key of `text` on top of the current values.
    pub fn merge(&mut self, text: &str) -> Result<(), CliError> {
        let mut seen = BTreeSet::new();
        if text.trim_start().starts_with('{') {
            let object: Map<String, Value> = serde_json::from_str(text)
                .map_err(|e| CliError::Usage(format!("invalid JSON config: {e}")))?;
            for (key, value) in &object {
                let raw = match value {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    other => {
                        return Err(CliError::Usage(format!(
                            "key `{key}`: unsupported value {other}"
                        )));
                    }
                };
                self.set(key, &raw)?;
            }
            return Ok(());
        }
        for (number, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    number + 1
                ))
            })?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(CliError::Usage(format!(
                    "line {}: duplicate key `{key}`",
                    number + 1
                )));
            }
            self.set(key, value.trim())
                .map_err(|e| CliError::Usage(format!("line {}: {e}", number + 1)))?;
        }
        Ok(())
    }

    /// Sets one key from its textual value. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let number = || -> Result<f64, CliError> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("key `{key}`: invalid number `{value}`")))
        };
        if let Ok(field) = key.parse::<ParamField>() {
            self.system[slot_of(field)] = number()?;
            self.explicit.insert(field);
            return Ok(());
        }
        if DRIVE_KEYS.contains(&key) {
            let v = number()?;
            *self.drive.slot(key).expect("drive key") = Some(v);
            return Ok(());
        }
        match key {
            "output" => self.output = Some(PathBuf::from(value)),
            "format" => self.format = Some(value.parse()?),
            "axis1" | "axis2" => {
                let i = if key == "axis1" { 0 } else { 1 };
                if self.axes.len() <= i {
                    self.axes.resize(i + 1, String::new());
                }
                self.axes[i] = value.to_string();
            }
            _ => {
                let mut valid: Vec<&str> = ParamField::ALL.iter().map(|f| f.name()).collect();
                valid.extend(DRIVE_KEYS);
                valid.extend(OTHER_KEYS);
                return Err(CliError::Usage(format!(
                    "unknown key `{key}` (valid keys: {})",
                    valid.join(", ")
                )));
            }
        }
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn set_pair(&mut self, pair: &str) -> Result<(), CliError> {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{pair}`")))?;
        self.set(key.trim(), value.trim())
    }

    #[cfg(test)]
    pub fn external(&self, field: ParamField) -> f64 {
        self.system[slot_of(field)]
    }

    /// Axis specs in order, skipping unset entries.
    pub fn axis_specs(&self) -> Vec<&str> {
        self.axes
            .iter()
            .map(String::as_str)
            .filter(|s| !s.is_empty())
            .collect()
    }

    fn drive_active(&self) -> bool {
        !self.drive.is_empty()
    }

    /// System parameters in internal units, with Δ̃_m and G derived from the
    /// drive when drive keys are present.
    pub fn resolve(&self) -> Result<(Params, Option<DriveSummary>), CliError> {
        let mut params = baseline::<f64>();
        for (field, value) in ParamField::ALL.iter().zip(self.system) {
            params.set_external(*field, value);
        }
        if !self.drive_active() {
            return Ok((params, None));
        }
        for field in [ParamField::CouplingG, ParamField::DeltaMEff] {
            if self.explicit.contains(&field) {
                return Err(CliError::Usage(format!(
                    "`{field}` is derived from the drive and cannot be set with it"
                )));
            }
        }
        let d = &self.drive;
        let hz = |v: f64| ParamField::OmegaB.from_external(v);
        let require = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| CliError::Usage(format!("drive configuration requires `{key}`")))
        };
        let g0 = hz(require(d.g0_bare, "g0_bare")?);
        let delta_m = hz(require(d.delta_m_bare, "delta_m_bare")?);
        let drive = match (d.rabi_omega, d.field_amplitude) {
            (Some(rabi), None) => DriveParams::new(hz(rabi), g0, delta_m),
            (None, Some(b0)) => DriveParams::from_field(
                b0,
                require(d.sphere_volume, "sphere_volume")?,
                g0,
                delta_m,
            )?,
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "set either `rabi_omega` or `field_amplitude`, not both".into(),
                ));
            }
            (None, None) => {
                return Err(CliError::Usage(
                    "drive configuration requires `rabi_omega` or `field_amplitude`".into(),
                ));
            }
        };
        drive.validate()?;
        let (delta_m_eff, m) = self_consistent_detuning(&drive, &params)?;
        let magnon_amplitude = m.norm();
        params.delta_m_eff = delta_m_eff;
        params.coupling_g = 2f64.sqrt() * drive.g0_bare * magnon_amplitude;
        Ok((
            params,
            Some(DriveSummary {
                rabi_omega: drive.rabi_omega,
                delta_m_eff,
                coupling_g: params.coupling_g,
                magnon_amplitude,
            }),
        ))
    }

    /// Normalized key/value pairs. Drive-derived fields are omitted when a
    /// drive is configured so the output parses back.
    pub fn entries(&self) -> Vec<(&'static str, Value)> {
        let mut out = Vec::new();
        for (field, value) in ParamField::ALL.iter().zip(self.system) {
            let derived = matches!(field, ParamField::CouplingG | ParamField::DeltaMEff);
            if !(self.drive_active() && derived) {
                out.push((field.name(), Value::from(value)));
            }
        }
        for (key, value) in self.drive.entries() {
            if let Some(v) = value {
                out.push((key, Value::from(v)));
            }
        }
        if let Some(path) = &self.output {
            out.push(("output", Value::from(path.display().to_string())));
        }
        if let Some(format) = self.format {
            out.push(("format", Value::from(format.name())));
        }
        for (key, spec) in ["axis1", "axis2"].into_iter().zip(&self.axes) {
            if !spec.is_empty() {
                out.push((key, Value::from(spec.as_str())));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let object: Map<String, Value> = self
            .entries()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        serde_json::to_string_pretty(&Value::Object(object)).expect("config serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        self.entries()
            .into_iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k} = {s}\n"),
                other => format!("{k} = {other}\n"),
            })
            .collect()
    }
}
