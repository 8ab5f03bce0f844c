//! Scenario configuration files (TOML).
//!
//! Every numeric weight can be written as an integer, a float, or a string
//! (`alpha = 4`, `alpha = 4.0`, `alpha = "4"`); all three resolve to the same
//! exact rational. Floats go through their shortest decimal representation,
//! so the rational is exactly the number as written, not a binary
//! approximation of it. All fields are optional — the command line supplies
//! anything missing — and unknown keys are rejected to catch typos.

use std::path::Path;

use serde::Deserialize;

use crate::numeric::{parse_decimal, DecimalError, Rational};

/// A number that may appear in TOML as an integer, a float, or a quoted
/// decimal string, resolved to an exact rational on demand.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum NumOrStr {
    Int(i64),
    Float(f64),
    Str(String),
}

impl NumOrStr {
    /// Converts to an exact rational; `field` names the offender in errors.
    pub fn to_rational(&self, field: &str) -> Result<Rational, ConfigError> {
        let text = match self {
            NumOrStr::Int(i) => i.to_string(),
            NumOrStr::Float(f) => {
                if !f.is_finite() {
                    return Err(ConfigError::NonFinite {
                        field: field.to_string(),
                    });
                }
                format!("{f}")
            }
            NumOrStr::Str(s) => s.clone(),
        };
        parse_decimal(&text).map_err(|source| ConfigError::Number {
            field: field.to_string(),
            source,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub delta_minutes: Option<u32>,
    pub num_slots: Option<usize>,
    pub day_start_minute: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostSection {
    pub alpha: Option<NumOrStr>,
    pub beta: Option<NumOrStr>,
    pub gamma: Option<NumOrStr>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemandSection {
    pub load_factor: Option<NumOrStr>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacitySection {
    /// Uniform per-slot capacity.
    pub uniform: Option<u64>,
    /// Path to a per-slot capacity CSV (relative paths resolve against the
    /// process working directory).
    pub file: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeSection {
    pub lambda1: Option<NumOrStr>,
    pub lambda2: Option<NumOrStr>,
    pub max_capacity: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplianceSection {
    /// `"gaussian"` or `"bernoulli"`.
    pub model: Option<String>,
    /// Sigma in minutes, or the compliance probability.
    pub parameter: Option<f64>,
    pub trials: Option<usize>,
    /// Parameter values for a sweep.
    pub points: Option<Vec<f64>>,
}

/// A scenario file: every section and field optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Master seed for synthetic generation and Monte Carlo trials.
    pub seed: Option<u64>,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub costs: CostSection,
    #[serde(default)]
    pub demand: DemandSection,
    #[serde(default)]
    pub capacity: CapacitySection,
    #[serde(default)]
    pub optimize: OptimizeSection,
    #[serde(default)]
    pub compliance: ComplianceSection,
}

impl ScenarioConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_str(&text)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_str(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(ConfigError::Toml)
    }
}

/// Errors from reading scenario files.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid value for {field}: {source}")]
    Number { field: String, source: DecimalError },
    #[error("{field} must be a finite number")]
    NonFinite { field: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_parses() {
        let text = r#"
            [grid]
            delta_minutes = 15
            num_slots = 96

            [costs]
            alpha = 4
            beta = 1.0
            gamma = "200"

            [demand]
            load_factor = "0.85"

            [capacity]
            uniform = 900

            [optimize]
            lambda1 = 0
            lambda2 = 10
            max_capacity = 1200

            [compliance]
            model = "gaussian"
            parameter = 30.0
            trials = 200
            points = [0.0, 15.0, 30.0]
        "#;
        let config = ScenarioConfig::from_str(text).unwrap();
        assert_eq!(config.grid.delta_minutes, Some(15));
        assert_eq!(config.grid.day_start_minute, None);
        assert_eq!(
            config.costs.alpha.unwrap().to_rational("alpha").unwrap(),
            Rational::from_integer(4)
        );
        assert_eq!(
            config.costs.beta.unwrap().to_rational("beta").unwrap(),
            Rational::from_integer(1)
        );
        assert_eq!(
            config.costs.gamma.unwrap().to_rational("gamma").unwrap(),
            Rational::from_integer(200)
        );
        assert_eq!(
            config
                .demand
                .load_factor
                .unwrap()
                .to_rational("load_factor")
                .unwrap(),
            Rational::new(17, 20)
        );
        assert_eq!(config.capacity.uniform, Some(900));
        assert_eq!(config.compliance.points, Some(vec![0.0, 15.0, 30.0]));
    }

    #[test]
    fn empty_config_is_all_defaults() {
        let config = ScenarioConfig::from_str("").unwrap();
        assert_eq!(config, ScenarioConfig::default());
    }

    #[test]
    fn floats_resolve_to_their_printed_decimal() {
        // 0.1 has no exact binary form, but its shortest decimal is "0.1",
        // which resolves to exactly one tenth.
        let value = NumOrStr::Float(0.1);
        assert_eq!(value.to_rational("x").unwrap(), Rational::new(1, 10));
        let value = NumOrStr::Float(-2.5);
        assert_eq!(value.to_rational("x").unwrap(), Rational::new(-5, 2));
    }

    #[test]
    fn bad_numbers_name_the_field() {
        let err = NumOrStr::Str("4,5".into())
            .to_rational("alpha")
            .unwrap_err();
        match err {
            ConfigError::Number { field, .. } => assert_eq!(field, "alpha"),
            other => panic!("expected Number, got {other:?}"),
        }
        match NumOrStr::Float(f64::INFINITY)
            .to_rational("beta")
            .unwrap_err()
        {
            ConfigError::NonFinite { field } => assert_eq!(field, "beta"),
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(ScenarioConfig::from_str("[grid]\ndelta = 15\n").is_err());
        assert!(ScenarioConfig::from_str("[nonsense]\nx = 1\n").is_err());
    }
}
