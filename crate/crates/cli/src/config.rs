//! Job configuration: an optional TOML/JSON file overlaid by command-line flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use harness_core::GeneratorTag;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Comma-separated list of reals; the empty string is the empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffList(pub Vec<f64>);

impl FromStr for CoeffList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        s.split(',')
            .map(|item| {
                item.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("invalid coefficient {item:?}: {e}"))
            })
            .collect::<Result<_, _>>()
            .map(Self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Fields as they appear in a config file; every field is optional so that files and
/// flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub b: Option<Vec<f64>>,
    pub beta: Option<Vec<f64>>,
    #[serde(rename = "K")]
    pub depth: Option<usize>,
    pub order: Option<usize>,
    #[serde(rename = "T")]
    pub length: Option<usize>,
    pub reps: Option<usize>,
    pub seed: Option<u64>,
    pub grid: Option<usize>,
    pub format: Option<OutputFormat>,
    pub generator: Option<GeneratorTag>,
}

impl PartialConfig {
    /// Values from `other` win where present.
    pub fn overlay(mut self, other: PartialConfig) -> Self {
        macro_rules! take {
            ($($field:ident),*) => { $( if other.$field.is_some() { self.$field = other.$field; } )* };
        }
        take!(b, beta, depth, order, length, reps, seed, grid, format, generator);
        self
    }

    /// Reads a TOML file, a JSON file, or the `config` block of a JSON report.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        let is_json =
            path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
        if is_json {
            let mut value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
            if let Some(inner) = value.get_mut("config") {
                value = inner.take();
            }
            serde_json::from_value(value)
                .map_err(|e| ConfigError(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
        }
    }
}

/// The symbol to analyze, given directly or through one-sided coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolInput {
    B(Vec<f64>),
    Beta(Vec<f64>),
}

/// Validated job configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    /// `None` selects the depth automatically.
    #[serde(rename = "K")]
    pub depth: Option<usize>,
    /// `None` uses `N + 2`.
    pub order: Option<usize>,
    #[serde(rename = "T")]
    pub length: usize,
    pub reps: usize,
    pub seed: u64,
    pub grid: usize,
    pub format: OutputFormat,
    pub generator: GeneratorTag,
}

pub const DEFAULT_LENGTH: usize = 100_000;
pub const DEFAULT_REPS: usize = 4;
pub const DEFAULT_GRID: usize = 4096;

impl JobConfig {
    pub fn resolve(partial: PartialConfig) -> Result<Self, ConfigError> {
        match (&partial.b, &partial.beta) {
            (Some(_), Some(_)) => {
                return Err(ConfigError(
                    "give exactly one of --b and --beta, not both".into(),
                ))
            }
            (None, None) => return Err(ConfigError("one of --b or --beta is required".into())),
            _ => {}
        }
        let positive = |name: &str, v: Option<usize>| match v {
            Some(0) => Err(ConfigError(format!("{name} must be positive"))),
            _ => Ok(()),
        };
        positive("K", partial.depth)?;
        positive("order", partial.order)?;
        positive("T", partial.length)?;
        positive("reps", partial.reps)?;
        let grid = partial.grid.unwrap_or(DEFAULT_GRID);
        if !grid.is_power_of_two() || grid < 4 {
            return Err(ConfigError(format!(
                "grid must be a power of two >= 4, got {grid}"
            )));
        }
        Ok(Self {
            b: partial.b,
            beta: partial.beta,
            depth: partial.depth,
            order: partial.order,
            length: partial.length.unwrap_or(DEFAULT_LENGTH),
            reps: partial.reps.unwrap_or(DEFAULT_REPS),
            seed: partial.seed.unwrap_or(0),
            grid,
            format: partial.format.unwrap_or_default(),
            generator: partial.generator.unwrap_or(GeneratorTag::Ar),
        })
    }

    pub fn symbol_input(&self) -> SymbolInput {
        match (&self.b, &self.beta) {
            (Some(b), _) => SymbolInput::B(b.clone()),
            (_, Some(beta)) => SymbolInput::Beta(beta.clone()),
            _ => unreachable!("validated in resolve"),
        }
    }
}
