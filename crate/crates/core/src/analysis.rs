//! Sensitivity ladders, iso-IRR price contours, furnace variants,
//! alternative-route headroom and supply-disruption impact.

use serde::{Deserialize, Serialize};

use crate::costing::{plant_cost, CostBreakdown};
use crate::error::{Error, Result};
use crate::finance::{crf, FinanceSpec};
use crate::flowsheet::{DistributionKind, Material, RouteId, Technology};
use crate::scenario::{apply_parameter, Scenario};

/// One rung of a cumulative cost-reduction ladder.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LadderStep {
    pub parameter: String,
    pub from_value: f64,
    pub to_value: f64,
    pub price_before: f64,
    pub price_after: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LadderTarget {
    pub parameter: String,
    pub best_value: f64,
}

impl LadderTarget {
    pub fn new(parameter: &str, best_value: f64) -> Self {
        LadderTarget { parameter: parameter.to_string(), best_value }
    }
}

/// The published cost-reduction pathway for a route: each parameter is moved
/// to its cost-minimizing end, left to right, holding earlier moves in place.
pub fn published_ladder_targets(route: RouteId) -> Vec<LadderTarget> {
    if route.is_synthetic() {
        vec![
            LadderTarget::new("finance.required_irr", 0.05),
            LadderTarget::new("plant.capacity", 80_000.0),
            LadderTarget::new("factors.electricity_price", 0.03),
            LadderTarget::new("price.needle_coke", 350.0),
            LadderTarget::new("spheronization.yield", 0.80),
            LadderTarget::new("acheson.throughput", 0.30),
        ]
    } else {
        vec![
            LadderTarget::new("finance.required_irr", 0.05),
            LadderTarget::new("plant.capacity", 80_000.0),
            LadderTarget::new("price.graphite_concentrate", 500.0),
            LadderTarget::new("spheronization.yield", 0.80),
            LadderTarget::new("carbochlorination.throughput", 0.80),
        ]
    }
}

/// Evaluates a cumulative one-at-a-time ladder: step k moves parameter k
/// from its current value to `best_value` with parameters 1..k-1 already
/// fixed at theirs.
pub fn sensitivity_ladder(base: &Scenario, targets: &[LadderTarget]) -> Result<Vec<LadderStep>> {
    let mut scenario = base.clone();
    let mut price_before = plant_cost(&scenario)?.breakeven_price;
    let mut steps = Vec::with_capacity(targets.len());
    for target in targets {
        let param = scenario
            .parameter(&target.parameter)
            .ok_or_else(|| Error::UnknownParameter(target.parameter.clone()))?;
        if !target.best_value.is_finite() {
            return Err(Error::validation(format!(
                "ladder target '{}' is not finite",
                target.parameter
            )));
        }
        let from_value = param.baseline;
        apply_parameter(&mut scenario, &target.parameter, target.best_value)?;
        if let Some(p) = scenario.parameter_mut(&target.parameter) {
            p.baseline = target.best_value;
            p.low = p.low.min(target.best_value);
            p.high = p.high.max(target.best_value);
            if p.low < p.high {
                p.distribution = DistributionKind::Uniform;
            }
        }
        let price_after = plant_cost(&scenario)?.breakeven_price;
        steps.push(LadderStep {
            parameter: target.parameter.clone(),
            from_value,
            to_value: target.best_value,
            price_before,
            price_after,
        });
        price_before = price_after;
    }
    Ok(steps)
}

/// The iso-IRR line in (capital intensity, OpEx) space: every point on it
/// has break-even price `price`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IsoPriceContour {
    pub price: f64,
    /// d(opex)/d(capital intensity) = -crf.
    pub slope: f64,
}

pub fn iso_price_contour(price: f64, fin: &FinanceSpec) -> Result<IsoPriceContour> {
    if price < 0.0 {
        return Err(Error::validation("price must be >= 0"));
    }
    Ok(IsoPriceContour { price, slope: -crf(fin.required_irr, fin.payback_years)? })
}

impl IsoPriceContour {
    /// OpEx per tonne at a given capital intensity.
    pub fn opex_at(&self, capital_intensity: f64) -> f64 {
        self.price + self.slope * capital_intensity
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FurnaceVariant {
    Box,
    Continuous,
}

/// Swaps the Acheson graphitization stage for a box or continuous furnace.
///
/// Box: no packing material or crucibles, 10% higher effective throughput,
/// 40% lower power draw. Continuous: 7,000 kWh/t, 25% higher per-line
/// CapEx, no packing or crucibles.
pub fn apply_furnace_variant(base: &Scenario, variant: FurnaceVariant) -> Result<Scenario> {
    if !base.route.is_synthetic() {
        return Err(Error::validation(
            "furnace variants apply only to synthetic graphite routes",
        ));
    }
    let mut scenario = base.clone();
    let idx = scenario.flowsheet.stage_index("acheson").map_err(|_| {
        Error::validation("furnace variant requires an Acheson graphitization stage")
    })?;

    let new_id = match variant {
        FurnaceVariant::Box => "box",
        FurnaceVariant::Continuous => "continuous",
    };
    {
        let stage = &mut scenario.flowsheet.stages[idx];
        stage.id = new_id.to_string();
        for c in &mut stage.consumables {
            if matches!(c.material, Material::Crucible | Material::PackingMaterial) {
                c.rate = 0.0;
            }
        }
        match variant {
            FurnaceVariant::Box => {
                stage.technology = Technology::Box;
                stage.throughput_per_line *= 1.10;
                stage.electricity *= 0.60;
            }
            FurnaceVariant::Continuous => {
                stage.technology = Technology::Continuous;
                stage.electricity = 7000.0;
                stage.equipment_cost_per_line *= 1.25;
                stage.other_capex_per_line *= 1.25;
                stage.construction_hours_per_line *= 1.25;
                stage.total_capex_per_line_override =
                    stage.total_capex_per_line_override.map(|v| v * 1.25);
            }
        }
    }
    scenario.route = match variant {
        FurnaceVariant::Box => RouteId::SgBox,
        FurnaceVariant::Continuous => RouteId::SgContinuous,
    };
    scenario.flowsheet.route_id = scenario.route;

    // keep the parameter list consistent with the mutated stage
    for p in &mut scenario.parameters {
        if let Some(field) = p.id.strip_prefix("acheson.").map(str::to_string) {
            p.id = format!("{new_id}.{field}");
            let field = field.as_str();
            match (variant, field) {
                (_, "crucible_rate") | (_, "packing_rate") => {
                    p.baseline = 0.0;
                    p.low = 0.0;
                    p.high = 0.0;
                    p.distribution = DistributionKind::Fixed;
                }
                (FurnaceVariant::Box, "throughput") => {
                    p.baseline *= 1.10;
                    p.low *= 1.10;
                    p.high *= 1.10;
                }
                (FurnaceVariant::Box, "electricity") => {
                    p.baseline *= 0.60;
                    p.low *= 0.60;
                    p.high *= 0.60;
                }
                (FurnaceVariant::Continuous, "electricity") => {
                    p.baseline = 7000.0;
                    p.low = 6000.0;
                    p.high = 8000.0;
                }
                (FurnaceVariant::Continuous, "equipment_cost")
                | (FurnaceVariant::Continuous, "other_capex")
                | (FurnaceVariant::Continuous, "construction_hours")
                | (FurnaceVariant::Continuous, "capex_override") => {
                    p.baseline *= 1.25;
                    p.low *= 1.25;
                    p.high *= 1.25;
                }
                _ => {}
            }
        }
    }
    Ok(scenario)
}

/// Ceiling production cost for an alternative feedstock step: the target
/// price minus the direct cost (annualized capital plus direct operating
/// cost) of every non-avoided downstream stage and, unless avoided, the
/// plant overhead. Maintenance and sales overlays are excluded: they are
/// plant-wide rates on a capital base that includes the avoided stages.
pub fn alt_route_headroom(
    reference: &CostBreakdown,
    target_price: f64,
    avoided_stages: &[&str],
) -> Result<f64> {
    for id in avoided_stages {
        if *id != "plant" && reference.stage(id).is_none() {
            return Err(Error::UnknownStage(id.to_string()));
        }
    }
    let direct = |c: &crate::costing::CategoryCosts| {
        c.annualized_capex + c.feedstock + c.electricity + c.labor + c.consumables + c.overhead
    };
    let mut downstream = 0.0;
    for sc in &reference.per_stage {
        if !avoided_stages.contains(&sc.stage_id.as_str()) {
            downstream += direct(&sc.costs);
        }
    }
    if !avoided_stages.contains(&"plant") {
        downstream += direct(&reference.plant_level);
    }
    Ok(target_price - downstream)
}

/// Market response calibration for the disruption analysis, anchored on the
/// modeled effect of removing a $7,500/vehicle subsidy.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarketCalibration {
    pub reference_subsidy: f64,
    pub sales_drop_at_reference: f64,
    pub producer_surplus_at_reference: f64,
    pub consumer_surplus_at_reference: f64,
}

impl Default for MarketCalibration {
    fn default() -> Self {
        MarketCalibration {
            reference_subsidy: 7500.0,
            sales_drop_at_reference: 0.37,
            producer_surplus_at_reference: 3e9,
            consumer_surplus_at_reference: 5e9,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DisruptionResult {
    /// $ per vehicle.
    pub ev_cost_delta: f64,
    pub sales_drop_fraction: f64,
    /// $/yr, negative = loss.
    pub producer_delta: f64,
    /// $/yr, negative = loss.
    pub consumer_delta: f64,
}

/// First-order impact of a graphite price shock on the EV market. All
/// outputs scale linearly with the per-vehicle cost increase.
pub fn disruption_impact(
    price_before_per_kg: f64,
    price_after_per_kg: f64,
    kg_per_ev: f64,
    cal: &MarketCalibration,
) -> Result<DisruptionResult> {
    if price_before_per_kg < 0.0 || price_after_per_kg < price_before_per_kg {
        return Err(Error::validation("prices must satisfy 0 <= before <= after"));
    }
    if kg_per_ev <= 0.0 {
        return Err(Error::validation("kg per EV must be > 0"));
    }
    let ev_cost_delta = (price_after_per_kg - price_before_per_kg) * kg_per_ev;
    let scale = ev_cost_delta / cal.reference_subsidy;
    Ok(DisruptionResult {
        ev_cost_delta,
        sales_drop_fraction: scale * cal.sales_drop_at_reference,
        producer_delta: -scale * cal.producer_surplus_at_reference,
        consumer_delta: -scale * cal.consumer_surplus_at_reference,
    })
}
