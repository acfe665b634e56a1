//! User scenario files: a TOML document that names a built-in base dataset
//! and overrides a subset of its parameters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flowsheet::DistributionKind;
use crate::scenario::{apply_parameter, load_builtin, Scenario};

pub const SCHEMA_VERSION: u32 = 1;

/// An override for one parameter: either a bare number (new baseline, range
/// widened to include it) or an explicit `{ baseline, low, high }` triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OverrideValue {
    Baseline(f64),
    Range { baseline: f64, low: f64, high: f64 },
}

impl OverrideValue {
    pub fn baseline(&self) -> f64 {
        match *self {
            OverrideValue::Baseline(b) => b,
            OverrideValue::Range { baseline, .. } => baseline,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: u32,
    /// Name of the built-in dataset to start from.
    pub base: String,
    #[serde(default)]
    pub overrides: BTreeMap<String, OverrideValue>,
    #[serde(default)]
    pub finance: Option<FinanceOverrides>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinanceOverrides {
    pub required_irr: Option<f64>,
    pub payback_years: Option<u32>,
}

/// Parses a scenario file, reporting the offending line on malformed input.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| line_of_offset(text, s.start)).unwrap_or(0);
        Error::Parse { line, message: e.message().to_string() }
    })?;
    if file.schema != SCHEMA_VERSION {
        return Err(Error::validation(format!(
            "unsupported scenario schema {} (expected {SCHEMA_VERSION})",
            file.schema
        )));
    }
    Ok(file)
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

/// Applies one override to a scenario, keeping its parameter registry
/// consistent (a bare baseline widens the range to include it).
pub fn apply_override(scenario: &mut Scenario, id: &str, value: OverrideValue) -> Result<()> {
    if scenario.parameter(id).is_none() {
        return Err(Error::UnknownParameter(id.to_string()));
    }
    apply_parameter(scenario, id, value.baseline())?;
    let p = scenario.parameter_mut(id).expect("checked above");
    match value {
        OverrideValue::Baseline(b) => {
            p.baseline = b;
            p.low = p.low.min(b);
            p.high = p.high.max(b);
        }
        OverrideValue::Range { baseline, low, high } => {
            p.baseline = baseline;
            p.low = low;
            p.high = high;
        }
    }
    p.distribution = if p.low < p.high {
        DistributionKind::Uniform
    } else {
        DistributionKind::Fixed
    };
    p.validate()
}

/// Loads the base dataset and applies the file's overrides. Every override
/// key must name a parameter of the base scenario.
pub fn resolve_scenario(file: &ScenarioFile) -> Result<Scenario> {
    let mut scenario = load_builtin(&file.base)?;
    for (id, value) in &file.overrides {
        apply_override(&mut scenario, id, *value)?;
    }
    if let Some(fin) = &file.finance {
        if let Some(irr) = fin.required_irr {
            scenario.finance.required_irr = irr;
        }
        if let Some(years) = fin.payback_years {
            scenario.finance.payback_years = years;
        }
    }
    scenario.validate()?;
    Ok(scenario)
}
