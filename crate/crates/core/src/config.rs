//! Experiment configuration files.
//!
//! A flat TOML table. Every key is optional; absent keys keep the defaults of
//! [`ExperimentConfig::default`]. Unknown keys and badly typed values are
//! rejected with an error naming the key.
//!
//! ```toml
//! model = "both"            # redundant | degenerate | both
//! task_count = 16
//! fleet_size = 32
//! base_fleet_size = 32      # vehicles past this index start unallocated
//! capacity = 12
//! load_rule = "at_most"     # at_most | exact
//! threshold_rule = "relative_shortfall"   # or demand_squared
//! mutation_mode = "delete"  # delete | replace
//! init_state_max = 10
//! degenerate_init = "random"              # random | ring
//! alpha = 5.0
//! max_steps = 20000
//! runs = 50
//! seed = 12345
//! fleet_sizes = [32, 36, 40, 44, 48]
//! alphas = [0.0, 2.0, 5.0, 10.0]
//! ```

use std::path::Path;
use std::str::FromStr;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::explorer::DEFAULT_MAX_STEPS;
use crate::model::{Alpha, LoadRule, ThresholdRule};
use crate::space::{DegenerateInit, FleetConfig, ModelKind, MutationMode};

/// Master seed used when none is given.
pub const DEFAULT_SEED: u64 = 12_345;
pub const DEFAULT_RUNS: usize = 50;
pub const DEFAULT_ALPHA_PERCENT: u64 = 5;
pub const DEFAULT_FLEET_SIZES: [usize; 5] = [32, 36, 40, 44, 48];
pub const DEFAULT_ALPHAS: [u64; 4] = [0, 2, 5, 10];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Fleet parameters; `fleet.model` is the first entry of `models`.
    pub fleet: FleetConfig,
    pub models: Vec<ModelKind>,
    pub alpha: Alpha,
    pub max_steps: usize,
    pub runs: usize,
    pub seed: u64,
    pub fleet_sizes: Vec<usize>,
    pub alphas: Vec<Alpha>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            fleet: FleetConfig::standard(ModelKind::Redundant),
            models: ModelKind::ALL.to_vec(),
            alpha: Alpha::percent(DEFAULT_ALPHA_PERCENT),
            max_steps: DEFAULT_MAX_STEPS,
            runs: DEFAULT_RUNS,
            seed: DEFAULT_SEED,
            fleet_sizes: DEFAULT_FLEET_SIZES.to_vec(),
            alphas: DEFAULT_ALPHAS.iter().map(|&a| Alpha::percent(a)).collect(),
        }
    }
}

impl ExperimentConfig {
    /// Sets the fleet size. Unless the file pinned it, the base fleet stays at
    /// `2 * task_count` (capped by the fleet size), so larger fleets carry
    /// excess, initially idle vehicles.
    pub fn set_fleet_size(&mut self, size: usize) {
        self.fleet.fleet_size = size;
        self.fleet.base_fleet_size = size.min(2 * self.fleet.task_count);
    }

    pub fn set_models(&mut self, models: Vec<ModelKind>) {
        if let Some(&first) = models.first() {
            self.fleet.model = first;
        }
        self.models = models;
    }

    /// Checks every model's fleet configuration and the run parameters.
    pub fn validate(&self) -> Result<()> {
        if self.models.is_empty() {
            return Err(Error::config("model", "no model selected"));
        }
        for &m in &self.models {
            self.fleet.with_model(m).validate()?;
        }
        if self.max_steps == 0 {
            return Err(Error::config("max_steps", "must be at least 1"));
        }
        if self.runs == 0 {
            return Err(Error::config("runs", "must be at least 1"));
        }
        if self.fleet_sizes.is_empty() {
            return Err(Error::config("fleet_sizes", "must not be empty"));
        }
        if self.alphas.is_empty() {
            return Err(Error::config("alphas", "must not be empty"));
        }
        Ok(())
    }

    /// TOML text that [`parse_config_str`] maps back to `self`.
    pub fn to_toml(&self) -> String {
        let f = &self.fleet;
        let mut t = Table::new();
        let model = match self.models.as_slice() {
            [m] => m.name(),
            _ => "both",
        };
        t.insert("model".into(), model.into());
        t.insert("task_count".into(), int(f.task_count));
        t.insert("fleet_size".into(), int(f.fleet_size));
        t.insert("base_fleet_size".into(), int(f.base_fleet_size));
        t.insert("capacity".into(), int(f.capacity));
        t.insert("load_rule".into(), f.load_rule.name().into());
        t.insert("threshold_rule".into(), f.threshold_rule.name().into());
        t.insert("mutation_mode".into(), f.mutation_mode.name().into());
        t.insert("init_state_max".into(), int(f.init_state_max));
        t.insert("degenerate_init".into(), f.degenerate_init.name().into());
        t.insert("alpha".into(), self.alpha.as_f64().into());
        t.insert("max_steps".into(), int(self.max_steps));
        t.insert("runs".into(), int(self.runs));
        // TOML integers are signed 64-bit; larger seeds go out as strings.
        t.insert(
            "seed".into(),
            i64::try_from(self.seed).map_or_else(|_| Value::from(self.seed.to_string()), Value::from),
        );
        t.insert(
            "fleet_sizes".into(),
            Value::Array(self.fleet_sizes.iter().map(|&s| int(s)).collect()),
        );
        t.insert(
            "alphas".into(),
            Value::Array(self.alphas.iter().map(|a| a.as_f64().into()).collect()),
        );
        toml::to_string(&t).expect("a flat table always serializes")
    }
}

fn int<T: TryInto<i64>>(v: T) -> Value {
    Value::Integer(v.try_into().unwrap_or(i64::MAX))
}

pub fn parse_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<ExperimentConfig> {
    let table: Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::config(error_key(&e, text), e.message()))?;
    let mut cfg = ExperimentConfig::default();
    let mut base_fleet_size = None;

    for (key, value) in &table {
        let key = key.as_str();
        match key {
            "model" => {
                let s = string(key, value)?;
                let models = if s == "both" {
                    ModelKind::ALL.to_vec()
                } else {
                    vec![s.parse::<ModelKind>()?]
                };
                cfg.set_models(models);
            }
            "task_count" => cfg.fleet.task_count = unsigned(key, value)?,
            "fleet_size" => cfg.fleet.fleet_size = unsigned(key, value)?,
            "base_fleet_size" => base_fleet_size = Some(unsigned(key, value)?),
            "capacity" => cfg.fleet.capacity = unsigned(key, value)?,
            "load_rule" => cfg.fleet.load_rule = string(key, value)?.parse::<LoadRule>()?,
            "threshold_rule" => {
                cfg.fleet.threshold_rule = string(key, value)?.parse::<ThresholdRule>()?
            }
            "mutation_mode" => {
                cfg.fleet.mutation_mode = string(key, value)?.parse::<MutationMode>()?
            }
            "init_state_max" => cfg.fleet.init_state_max = unsigned(key, value)?,
            "degenerate_init" => {
                cfg.fleet.degenerate_init = string(key, value)?.parse::<DegenerateInit>()?
            }
            "alpha" => cfg.alpha = alpha(key, value)?,
            "max_steps" => cfg.max_steps = unsigned(key, value)?,
            "runs" => cfg.runs = unsigned(key, value)?,
            "seed" => {
                cfg.seed = match value {
                    Value::String(s) => parsed::<u64>(key, s)?,
                    other => unsigned(key, other)?,
                }
            }
            "fleet_sizes" => {
                cfg.fleet_sizes = array(key, value)?
                    .iter()
                    .map(|v| unsigned(key, v))
                    .collect::<Result<_>>()?
            }
            "alphas" => {
                cfg.alphas = array(key, value)?
                    .iter()
                    .map(|v| alpha(key, v))
                    .collect::<Result<_>>()?
            }
            other => return Err(Error::config(other, "unknown key")),
        }
    }

    let task_count = cfg.fleet.task_count;
    cfg.fleet.base_fleet_size =
        base_fleet_size.unwrap_or_else(|| cfg.fleet.fleet_size.min(2 * task_count));
    cfg.validate()?;
    Ok(cfg)
}

// Best effort: name the key on the line the parser stopped at.
fn error_key(e: &toml::de::Error, text: &str) -> String {
    e.span()
        .and_then(|span| {
            let line_start = text[..span.start].rfind('\n').map_or(0, |i| i + 1);
            let line = text[line_start..].lines().next()?;
            let key = line.split('=').next()?.trim();
            (!key.is_empty() && !key.starts_with('#')).then(|| key.to_string())
        })
        .unwrap_or_else(|| "<file>".to_string())
}

fn type_error(key: &str, expected: &str, value: &Value) -> Error {
    Error::config(key, format!("expected {expected}, got {}", value.type_str()))
}

fn string<'a>(key: &str, value: &'a Value) -> Result<&'a str> {
    value.as_str().ok_or_else(|| type_error(key, "a string", value))
}

fn array<'a>(key: &str, value: &'a Value) -> Result<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| type_error(key, "an array", value))
}

fn unsigned<T: TryFrom<i64>>(key: &str, value: &Value) -> Result<T> {
    let i = value
        .as_integer()
        .ok_or_else(|| type_error(key, "a non-negative integer", value))?;
    T::try_from(i).map_err(|_| Error::config(key, format!("{i} is out of range")))
}

fn alpha(key: &str, value: &Value) -> Result<Alpha> {
    let pct = match value {
        Value::Integer(i) => *i as f64,
        Value::Float(f) => *f,
        other => return Err(type_error(key, "a number", other)),
    };
    Alpha::from_f64(pct).map_err(|e| Error::config(key, e.to_string()))
}

fn parsed<T: FromStr>(key: &str, s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.parse::<T>()
        .map_err(|e| Error::config(key, format!("invalid value `{s}`: {e}")))
}
