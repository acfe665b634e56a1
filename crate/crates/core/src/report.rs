//! Deterministic result serialization. All numeric output is rounded to six
//! significant digits, in both CSV and JSON, so the two formats always agree
//! and repeated runs are byte-identical.

use serde::Serialize;
use serde_json::Value;

use crate::analysis::{DisruptionResult, IsoPriceContour, LadderStep};
use crate::costing::{CategoryCosts, CostBreakdown};
use crate::error::{Error, Result};
use crate::montecarlo::MonteCarloSummary;
use crate::scenario::AdjustedProject;

pub const SIG_DIGITS: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {

    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::validation(format!("unknown format '{other}'"))),
        }
    }
}

/// Rounds to `sig` significant digits (ties away from zero).
pub fn round_sig(x: f64, sig: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(sig - 1 - magnitude);
    (x * factor).round() / factor
}

/// Plain-decimal rendering of a value rounded to `sig` significant digits.
pub fn format_sig(x: f64, sig: i32) -> String {
    let r = round_sig(x, sig);
    if r == 0.0 {
        return "0".to_string();
    }
    let magnitude = r.abs().log10().floor() as i32;
    let decimals = (sig - 1 - magnitude).max(0) as usize;
    let mut s = format!("{r:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn round_json_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round_sig(f, SIG_DIGITS)) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json_value),
        Value::Object(map) => map.values_mut().for_each(round_json_value),
        _ => {}
    }
}

/// Serializes any payload as pretty JSON with all floats rounded to six
/// significant digits.
pub fn to_rounded_json<T: Serialize>(payload: &T) -> Result<String> {
    let mut value = serde_json::to_value(payload)
        .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
    round_json_value(&mut value);
    let mut text = serde_json::to_string_pretty(&value)
        .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn n(x: f64) -> String {
    format_sig(x, SIG_DIGITS)
}

fn category_fields(c: &CategoryCosts) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        n(c.annualized_capex),
        n(c.feedstock),
        n(c.electricity),
        n(c.labor),
        n(c.consumables),
        n(c.maintenance),
        n(c.overhead)
    )
}

/// One row per stage, a plant-level row, then a totals row whose `total`
/// column is the break-even price.
pub fn emit_breakdown_csv(bd: &CostBreakdown) -> String {
    let mut out = String::from("# schema: breakdown.v1\n");
    out.push_str(
        "row,lines,annualized_capex,feedstock,electricity,labor,consumables,maintenance,overhead,sales,total\n",
    );
    let mut total = CategoryCosts::default();
    for sc in &bd.per_stage {
        out.push_str(&format!(
            "{},{},{},0,{}\n",
            sc.stage_id,
            sc.lines,
            category_fields(&sc.costs),
            n(sc.costs.total())
        ));
        total.add(&sc.costs);
    }
    out.push_str(&format!(
        "plant,,{},0,{}\n",
        category_fields(&bd.plant_level),
        n(bd.plant_level.total())
    ));
    total.add(&bd.plant_level);
    out.push_str(&format!(
        "total,,{},{},{}\n",
        category_fields(&total),
        n(bd.sales_per_tonne),
        n(bd.breakeven_price)
    ));
    out.push_str(&format!("# total_capex,{}\n", n(bd.total_capex)));
    out.push_str(&format!("# capital_intensity,{}\n", n(bd.capital_intensity)));
    out.push_str(&format!("# opex_per_tonne,{}\n", n(bd.total_opex_per_tonne)));
    out
}

pub fn emit_samples_csv(summary: &MonteCarloSummary) -> String {
    let mut out = String::from("# schema: samples.v1\n");
    out.push_str(&format!(
        "# scenario,{} seed,{} n,{}\n",
        summary.scenario_id, summary.seed, summary.n_samples
    ));
    out.push_str("index,capital_intensity,opex_per_tonne,breakeven_price\n");
    for s in &summary.samples {
        out.push_str(&format!(
            "{},{},{},{}\n",
            s.index,
            n(s.capital_intensity),
            n(s.opex_per_tonne),
            n(s.breakeven_price)
        ));
    }
    for (name, p) in [
        ("capital_intensity", &summary.capital_intensity),
        ("opex_per_tonne", &summary.opex_per_tonne),
        ("breakeven_price", &summary.breakeven_price),
    ] {
        out.push_str(&format!(
            "# percentiles,{name},{},{},{},{},{}\n",
            n(p.p5),
            n(p.p25),
            n(p.p50),
            n(p.p75),
            n(p.p95)
        ));
    }
    for (price, fraction) in &summary.competitive {
        out.push_str(&format!("# competitive,{},{}\n", n(*price), n(*fraction)));
    }
    out
}

pub fn emit_ladder_csv(steps: &[LadderStep]) -> String {
    let mut out = String::from("# schema: ladder.v1\n");
    out.push_str("step,parameter,from,to,price_before,price_after\n");
    for (i, s) in steps.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i + 1,
            s.parameter,
            n(s.from_value),
            n(s.to_value),
            n(s.price_before),
            n(s.price_after)
        ));
    }
    out
}

pub fn emit_contour_csv(contours: &[IsoPriceContour]) -> String {
    let mut out = String::from("# schema: contour.v1\n");
    out.push_str("price,slope,opex_at_zero_capital\n");
    for c in contours {
        out.push_str(&format!("{},{},{}\n", n(c.price), n(c.slope), n(c.opex_at(0.0))));
    }
    out
}

pub fn emit_projects_csv(projects: &[AdjustedProject]) -> String {
    let mut out = String::from("# schema: projects.v1\n");
    out.push_str("owner,report_year,location,process_type,capacity,capex,opex_per_tonne,total_cost\n");
    for p in projects {
        out.push_str(&format!(
            "{},{},\"{}\",{},{},{},{},{}\n",
            p.owner,
            p.report_year,
            p.location,
            p.process_type,
            n(p.capacity),
            n(p.capex),
            n(p.opex_per_tonne),
            n(p.total_cost)
        ));
    }
    out
}

pub fn emit_disruption_csv(r: &DisruptionResult) -> String {
    format!(
        "# schema: disruption.v1\nev_cost_delta,sales_drop_fraction,producer_delta,consumer_delta\n{},{},{},{}\n",
        n(r.ev_cost_delta),
        n(r.sales_drop_fraction),
        n(r.producer_delta),
        n(r.consumer_delta)
    )
}
