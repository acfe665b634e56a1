//! Scenario assembly: built-in datasets, declarative scenario files and the
//! reported-project cost adjuster.

mod builtin;
mod file;
mod projects;

pub use builtin::{builtin_names, load_builtin, manifest_counts};
pub use file::{
    apply_override, parse_scenario, resolve_scenario, FinanceOverrides, OverrideValue,
    ScenarioFile,
};
pub use projects::{adjust_reported, builtin_projects, AdjustedProject, Adjustment, ReportedProject};

use serde::{Deserialize, Serialize};

use crate::costing::CostFactors;
use crate::error::{Error, Result};
use crate::finance::FinanceSpec;
use crate::flowsheet::{Flowsheet, Material, ParameterSpec, PlantSpec, Region, RouteId};

/// A fully concrete model input: route, region, plant, price environment,
/// financing, plus the ordered list of uncertain parameters that the Monte
/// Carlo samples over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub route: RouteId,
    pub region: Region,
    pub flowsheet: Flowsheet,
    pub plant: PlantSpec,
    pub cost_factors: CostFactors,
    pub finance: FinanceSpec,
    pub parameters: Vec<ParameterSpec>,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.flowsheet.validate()?;
        self.plant.validate()?;
        self.cost_factors.validate()?;
        self.finance.validate()?;
        for p in &self.parameters {
            p.validate()?;
        }
        Ok(())
    }

    pub fn parameter(&self, id: &str) -> Option<&ParameterSpec> {
        self.parameters.iter().find(|p| p.id == id)
    }

    pub fn parameter_mut(&mut self, id: &str) -> Option<&mut ParameterSpec> {
        self.parameters.iter_mut().find(|p| p.id == id)
    }
}

fn material_from_name(name: &str) -> Option<Material> {
    Some(match name {
        "needle_coke" => Material::NeedleCoke,
        "graphite_concentrate" => Material::GraphiteConcentrate,
        "pitch" => Material::Pitch,
        "nitrogen" => Material::Nitrogen,
        "chlorine" => Material::Chlorine,
        "lime" => Material::Lime,
        "hcl" => Material::Hcl,
        "hno3" => Material::Hno3,
        "hf" => Material::Hf,
        "water" => Material::Water,
        "natural_gas" => Material::NaturalGas,
        "crucible" => Material::Crucible,
        "packing" | "packing_material" => Material::PackingMaterial,
        _ => return None,
    })
}

fn consumable_material_from_suffix(suffix: &str) -> Option<Material> {
    suffix.strip_suffix("_rate").and_then(material_from_name)
}

/// Writes one parameter value into the scenario. Ids follow the
/// `<section>.<field>` convention used by the built-in parameter lists,
/// e.g. `acheson.throughput`, `price.needle_coke`, `plant.capacity`.
pub fn apply_parameter(scenario: &mut Scenario, id: &str, value: f64) -> Result<()> {
    let (prefix, field) = id
        .split_once('.')
        .ok_or_else(|| Error::UnknownParameter(id.to_string()))?;
    match prefix {
        "finance" => match field {
            "required_irr" => scenario.finance.required_irr = value,
            "payback_years" => {
                if value < 1.0 {
                    return Err(Error::validation("payback_years must be >= 1"));
                }
                scenario.finance.payback_years = value.round() as u32;
            }
            _ => return Err(Error::UnknownParameter(id.to_string())),
        },
        "factors" => {
            let cf = &mut scenario.cost_factors;
            match field {
                "electricity_price" => cf.electricity_price = value,
                "salary" => cf.salary = value,
                "construction_rate" => cf.construction_rate = value,
                "maintenance_rate" => cf.maintenance_rate = value,
                "sales_rate" => cf.sales_rate = value,
                "scaling_exponent" => cf.scaling_exponent = value,
                _ => return Err(Error::UnknownParameter(id.to_string())),
            }
        }
        "price" => {
            let material =
                material_from_name(field).ok_or_else(|| Error::UnknownParameter(id.to_string()))?;
            scenario.cost_factors.material_prices.insert(material, value);
        }
        "plant" => {
            let plant = &mut scenario.plant;
            match field {
                "capacity" => plant.capacity = value,
                "uptime" => plant.uptime = value,
                "fte" => plant.plant_fte = value,
                "equipment" => plant.plant_equipment = value,
                "other_capex" => plant.plant_other_capex = value,
                "construction_hours" => plant.plant_construction_hours = value,
                "consumables" => plant.annual_consumables = value,
                "ga" => plant.annual_ga = value,
                "electricity" => plant.plant_electricity = value,
                _ => return Err(Error::UnknownParameter(id.to_string())),
            }
        }
        stage_id => {
            let idx = scenario
                .flowsheet
                .stage_index(stage_id)
                .map_err(|_| Error::UnknownParameter(id.to_string()))?;
            let stage = &mut scenario.flowsheet.stages[idx];
            match field {
                "throughput" => stage.throughput_per_line = value,
                "electricity" => stage.electricity = value,
                "line_fte" => stage.line_fte = value,
                "yield" => stage.yield_fraction = value,
                "equipment_cost" => stage.equipment_cost_per_line = value,
                "other_capex" => stage.other_capex_per_line = value,
                "construction_hours" => stage.construction_hours_per_line = value,
                "capex_override" => stage.total_capex_per_line_override = Some(value),
                "crucible_lifetime" => match stage.consumable_mut(Material::Crucible) {
                    Some(c) => c.lifetime_uses = value,
                    None => return Err(Error::UnknownParameter(id.to_string())),
                },
                _ => {
                    let material = consumable_material_from_suffix(field)
                        .ok_or_else(|| Error::UnknownParameter(id.to_string()))?;
                    match stage.consumable_mut(material) {
                        Some(c) => c.rate = value,
                        None => return Err(Error::UnknownParameter(id.to_string())),
                    }
                }
            }
        }
    }
    Ok(())
}
