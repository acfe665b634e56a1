//! Stage-by-stage CapEx/OpEx breakdown for a route x region x capacity
//! scenario.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finance::crf;
use crate::flowsheet::{
    feed_per_tonne, line_count, stage_feed_tonnage, Flowsheet, Material, PlantSpec, Region,
    StageSpec,
};
use crate::scenario::Scenario;

/// A region's price environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostFactors {
    pub region: Region,
    /// $/kWh.
    pub electricity_price: f64,
    /// $/FTE-year.
    pub salary: f64,
    /// $/construction-hour.
    pub construction_rate: f64,
    /// Fraction of initial CapEx spent on maintenance per year.
    pub maintenance_rate: f64,
    /// Fraction of OpEx spent on sales.
    pub sales_rate: f64,
    /// Power-law exponent for plant-level capital scaling.
    pub scaling_exponent: f64,
    pub material_prices: BTreeMap<Material, f64>,
}

impl CostFactors {
    pub fn validate(&self) -> Result<()> {
        if self.electricity_price < 0.0 || self.salary < 0.0 || self.construction_rate < 0.0 {
            return Err(Error::validation("prices and rates must be >= 0"));
        }
        if !(0.0..1.0).contains(&self.maintenance_rate) || !(0.0..1.0).contains(&self.sales_rate) {
            return Err(Error::validation("maintenance and sales rates must be in [0, 1)"));
        }
        if !(self.scaling_exponent > 0.0 && self.scaling_exponent <= 1.0) {
            return Err(Error::validation("scaling exponent must be in (0, 1]"));
        }
        if self.material_prices.values().any(|p| *p < 0.0) {
            return Err(Error::validation("material prices must be >= 0"));
        }
        Ok(())
    }

    pub fn price(&self, material: Material) -> Result<f64> {
        self.material_prices
            .get(&material)
            .copied()
            .ok_or_else(|| Error::MissingPrice(material.name().to_string()))
    }
}

/// Per-tonne-of-product costs split by category. `overhead` carries plant
/// G&A; stages leave it at zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CategoryCosts {
    pub annualized_capex: f64,
    pub feedstock: f64,
    pub electricity: f64,
    pub labor: f64,
    pub consumables: f64,
    pub maintenance: f64,
    pub overhead: f64,
}

impl CategoryCosts {
    pub fn add(&mut self, other: &CategoryCosts) {
        self.annualized_capex += other.annualized_capex;
        self.feedstock += other.feedstock;
        self.electricity += other.electricity;
        self.labor += other.labor;
        self.consumables += other.consumables;
        self.maintenance += other.maintenance;
        self.overhead += other.overhead;
    }

    pub fn opex(&self) -> f64 {
        self.feedstock + self.electricity + self.labor + self.consumables + self.maintenance + self.overhead
    }

    pub fn total(&self) -> f64 {
        self.annualized_capex + self.opex()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageCost {
    pub stage_id: String,
    pub lines: u64,
    /// Initial capital for this stage, not annualized.
    pub capex: f64,
    pub costs: CategoryCosts,
}

/// Full cost structure of a scenario; the engine output behind the
/// per-tonne waterfalls and the (capital intensity, OpEx) scatter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub per_stage: Vec<StageCost>,
    pub plant_level: CategoryCosts,
    /// Plant-level initial capital (scaled lump), not annualized.
    pub plant_capex: f64,
    /// 3% of all other OpEx, kept as its own line so totals stay exact.
    pub sales_per_tonne: f64,
    /// Initial CapEx per tonne-per-annum of capacity.
    pub capital_intensity: f64,
    pub total_opex_per_tonne: f64,
    pub total_capex: f64,
    pub breakeven_price: f64,
}

impl CostBreakdown {
    pub fn stage(&self, stage_id: &str) -> Option<&StageCost> {
        self.per_stage.iter().find(|s| s.stage_id == stage_id)
    }
}

/// Initial capital for a stage. A lump per-line override (the China path)
/// wins when present; otherwise equipment + other + construction hours at
/// the regional labor rate, per line.
pub fn stage_capex(stage: &StageSpec, lines: u64, cf: &CostFactors) -> Result<f64> {
    stage.validate()?;
    let per_line = match stage.total_capex_per_line_override {
        Some(lump) => lump,
        None => {
            stage.equipment_cost_per_line
                + stage.other_capex_per_line
                + stage.construction_hours_per_line * cf.construction_rate
        }
    };
    Ok(lines as f64 * per_line)
}

/// Direct operating costs of one stage, per tonne of product. Feedstock is
/// charged only at the first stage. Maintenance is attributed later by
/// `plant_cost` (pro-rata by CapEx share), not here.
pub fn stage_opex(
    stage: &StageSpec,
    flowsheet: &Flowsheet,
    plant: &PlantSpec,
    cf: &CostFactors,
    lines: u64,
) -> Result<CategoryCosts> {
    let fpt = feed_per_tonne(flowsheet, &stage.id)?;
    let mut costs = CategoryCosts {
        electricity: stage.electricity * fpt * cf.electricity_price,
        labor: lines as f64 * stage.line_fte * cf.salary / plant.capacity,
        ..Default::default()
    };
    for c in &stage.consumables {
        costs.consumables += c.effective_rate() * cf.price(c.material)? * fpt;
    }
    if flowsheet.stages.first().map(|s| s.id.as_str()) == Some(stage.id.as_str()) {
        costs.feedstock = cf.price(flowsheet.feed_material)? * fpt;
    }
    Ok(costs)
}

/// Plant-level lump capital, scaled by the power law around the reference
/// capacity.
pub fn plant_lump_capex(plant: &PlantSpec, cf: &CostFactors) -> Result<f64> {
    plant.validate()?;
    let unscaled = plant.plant_equipment
        + plant.plant_other_capex
        + plant.plant_construction_hours * cf.construction_rate;
    Ok(unscaled * (plant.capacity / plant.reference_capacity).powf(cf.scaling_exponent))
}

/// Composes the yield cascade, line sizing, stage capital/operating costs,
/// plant lump capital and plant overheads into a full breakdown.
pub fn plant_cost(scenario: &Scenario) -> Result<CostBreakdown> {
    scenario.validate()?;
    let flowsheet = &scenario.flowsheet;
    let plant = &scenario.plant;
    let cf = &scenario.cost_factors;
    let fin = &scenario.finance;
    let annuity = crf(fin.required_irr, fin.payback_years)?;

    let mut per_stage = Vec::with_capacity(flowsheet.stages.len());
    let mut total_capex = 0.0;
    for stage in &flowsheet.stages {
        let feed = stage_feed_tonnage(plant, flowsheet, &stage.id)?;
        let lines = line_count(stage, feed, plant.uptime)?;
        let capex = stage_capex(stage, lines, cf)?;
        let costs = stage_opex(stage, flowsheet, plant, cf, lines)?;
        total_capex += capex;
        per_stage.push(StageCost { stage_id: stage.id.clone(), lines, capex, costs });
    }

    let plant_capex = plant_lump_capex(plant, cf)?;
    total_capex += plant_capex;

    // Plant staffing, G&A and consumables are annual lumps quoted at the
    // reference capacity; like plant capital they follow the economy-of-
    // scale power law rather than staying flat from 20 to 80 ktpa.
    let overhead_scale = (plant.capacity / plant.reference_capacity).powf(cf.scaling_exponent);
    let mut plant_level = CategoryCosts {
        electricity: plant.plant_electricity * cf.electricity_price,
        labor: plant.plant_fte * overhead_scale * cf.salary / plant.capacity,
        consumables: plant.annual_consumables * overhead_scale / plant.capacity,
        overhead: plant.annual_ga * overhead_scale / plant.capacity,
        ..CategoryCosts::default()
    };

    // Maintenance on initial CapEx, attributed pro-rata by CapEx share so
    // the parts sum exactly to maintenance_rate * total_capex / capacity.
    let annual_maintenance_per_tonne = cf.maintenance_rate * total_capex / plant.capacity;
    if total_capex > 0.0 {
        for sc in &mut per_stage {
            sc.costs.maintenance = annual_maintenance_per_tonne * (sc.capex / total_capex);
        }
        plant_level.maintenance = annual_maintenance_per_tonne * (plant_capex / total_capex);
    }

    for sc in &mut per_stage {
        sc.costs.annualized_capex = sc.capex * annuity / plant.capacity;
    }
    plant_level.annualized_capex = plant_capex * annuity / plant.capacity;

    let opex_before_sales: f64 =
        per_stage.iter().map(|s| s.costs.opex()).sum::<f64>() + plant_level.opex();
    let sales_per_tonne = cf.sales_rate * opex_before_sales;
    let total_opex_per_tonne = opex_before_sales + sales_per_tonne;

    let capital_intensity = total_capex / plant.capacity;
    let breakeven_price = total_opex_per_tonne + capital_intensity * annuity;

    Ok(CostBreakdown {
        per_stage,
        plant_level,
        plant_capex,
        sales_per_tonne,
        capital_intensity,
        total_opex_per_tonne,
        total_capex,
        breakeven_price,
    })
}
