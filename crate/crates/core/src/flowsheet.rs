//! Process routes, yield cascades and production-line sizing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Production region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    US,
    China,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::US => write!(f, "US"),
            Region::China => write!(f, "China"),
        }
    }
}

/// Scope of a parameter: some inputs only apply to one region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionScope {
    US,
    China,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistributionKind {
    Uniform,
    Fixed,
}

/// One uncertain model input: baseline value plus its sampling range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterSpec {
    pub id: String,
    pub unit: String,
    pub baseline: f64,
    pub low: f64,
    pub high: f64,
    pub distribution: DistributionKind,
    pub region: RegionScope,
}

impl ParameterSpec {
    pub fn uniform(
        id: &str,
        unit: &str,
        baseline: f64,
        low: f64,
        high: f64,
        region: RegionScope,
    ) -> Self {
        ParameterSpec {
            id: id.to_string(),
            unit: unit.to_string(),
            baseline,
            low,
            high,
            distribution: DistributionKind::Uniform,
            region,
        }
    }

    /// Uniform range given as a relative fraction of the baseline.
    pub fn uniform_rel(id: &str, unit: &str, baseline: f64, frac: f64, region: RegionScope) -> Self {
        Self::uniform(
            id,
            unit,
            baseline,
            baseline * (1.0 - frac),
            baseline * (1.0 + frac),
            region,
        )
    }

    /// Uniform range given as an absolute +/- amount.
    pub fn uniform_abs(id: &str, unit: &str, baseline: f64, delta: f64, region: RegionScope) -> Self {
        Self::uniform(id, unit, baseline, baseline - delta, baseline + delta, region)
    }

    pub fn fixed(id: &str, unit: &str, baseline: f64, region: RegionScope) -> Self {
        ParameterSpec {
            id: id.to_string(),
            unit: unit.to_string(),
            baseline,
            low: baseline,
            high: baseline,
            distribution: DistributionKind::Fixed,
            region,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.low <= self.baseline && self.baseline <= self.high) {
            return Err(Error::validation(format!(
                "parameter '{}': range ({}, {}) does not bracket baseline {}",
                self.id, self.low, self.high, self.baseline
            )));
        }
        if self.distribution == DistributionKind::Fixed
            && (self.low != self.baseline || self.high != self.baseline)
        {
            return Err(Error::validation(format!(
                "parameter '{}': fixed distribution requires low = baseline = high",
                self.id
            )));
        }
        Ok(())
    }
}

/// Materials consumed by process stages or charged as feedstock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Material {
    NeedleCoke,
    GraphiteConcentrate,
    Pitch,
    Nitrogen,
    Chlorine,
    Lime,
    Hcl,
    Hno3,
    Hf,
    Water,
    NaturalGas,
    Crucible,
    PackingMaterial,
}

impl Material {
    pub fn name(&self) -> &'static str {
        match self {
            Material::NeedleCoke => "needle_coke",
            Material::GraphiteConcentrate => "graphite_concentrate",
            Material::Pitch => "pitch",
            Material::Nitrogen => "nitrogen",
            Material::Chlorine => "chlorine",
            Material::Lime => "lime",
            Material::Hcl => "hcl",
            Material::Hno3 => "hno3",
            Material::Hf => "hf",
            Material::Water => "water",
            Material::NaturalGas => "natural_gas",
            Material::Crucible => "crucible",
            Material::PackingMaterial => "packing_material",
        }
    }
}

/// Consumption of one material per tonne of stage feed. `lifetime_uses`
/// divides the rate for reusable items (crucibles survive ~5 cycles).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsumableRate {
    pub material: Material,
    pub rate: f64,
    pub lifetime_uses: f64,
}

impl ConsumableRate {
    pub fn new(material: Material, rate: f64) -> Self {
        ConsumableRate { material, rate, lifetime_uses: 1.0 }
    }

    pub fn with_lifetime(material: Material, rate: f64, lifetime_uses: f64) -> Self {
        ConsumableRate { material, rate, lifetime_uses }
    }

    /// Tonnes (or units) consumed per tonne of stage feed.
    pub fn effective_rate(&self) -> f64 {
        self.rate / self.lifetime_uses
    }

    pub fn validate(&self) -> Result<()> {
        if self.rate < 0.0 {
            return Err(Error::validation(format!(
                "consumable {}: rate must be >= 0",
                self.material.name()
            )));
        }
        if self.lifetime_uses < 1.0 {
            return Err(Error::validation(format!(
                "consumable {}: lifetime_uses must be >= 1",
                self.material.name()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageFunction {
    Shaping,
    Graphitization,
    Purification,
    Coating,
}

impl StageFunction {
    /// Position in the canonical process order.
    fn rank(&self) -> u8 {
        match self {
            StageFunction::Shaping => 0,
            StageFunction::Graphitization | StageFunction::Purification => 1,
            StageFunction::Coating => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Technology {
    Spheronization,
    Acheson,
    Box,
    Continuous,
    Carbochlorination,
    AcidLeach,
    PitchCoat,
}

/// One process stage: throughput, yield, energy, labor and per-line capital.
///
/// All rates (electricity, consumables, throughput) are per tonne of stage
/// FEED; per-tonne-of-product figures emerge through the yield cascade.
/// Capital comes either from the per-component fields (equipment + other +
/// construction hours at the regional rate) or from
/// `total_capex_per_line_override` when a region reports only a lump figure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageSpec {
    pub id: String,
    pub function: StageFunction,
    pub technology: Technology,
    /// Tonnes of feed per hour per line.
    pub throughput_per_line: f64,
    pub yield_fraction: f64,
    /// kWh per tonne of feed.
    pub electricity: f64,
    /// Persons per line.
    pub line_fte: f64,
    pub equipment_cost_per_line: f64,
    pub construction_hours_per_line: f64,
    pub other_capex_per_line: f64,
    pub total_capex_per_line_override: Option<f64>,
    pub consumables: Vec<ConsumableRate>,
}

impl StageSpec {
    pub fn validate(&self) -> Result<()> {
        if self.throughput_per_line <= 0.0 {
            return Err(Error::validation(format!(
                "stage '{}': throughput_per_line must be > 0",
                self.id
            )));
        }
        if !(self.yield_fraction > 0.0 && self.yield_fraction <= 1.0) {
            return Err(Error::validation(format!(
                "stage '{}': yield_fraction must be in (0, 1]",
                self.id
            )));
        }
        if self.electricity < 0.0
            || self.line_fte < 0.0
            || self.equipment_cost_per_line < 0.0
            || self.construction_hours_per_line < 0.0
            || self.other_capex_per_line < 0.0
        {
            return Err(Error::validation(format!(
                "stage '{}': negative rate or capital field",
                self.id
            )));
        }
        if let Some(v) = self.total_capex_per_line_override {
            if v < 0.0 {
                return Err(Error::validation(format!(
                    "stage '{}': negative capex override",
                    self.id
                )));
            }
        }
        for c in &self.consumables {
            c.validate()?;
        }
        Ok(())
    }

    pub fn consumable_mut(&mut self, material: Material) -> Option<&mut ConsumableRate> {
        self.consumables.iter_mut().find(|c| c.material == material)
    }

    pub fn consumable(&self, material: Material) -> Option<&ConsumableRate> {
        self.consumables.iter().find(|c| c.material == material)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RouteId {
    SgAcheson,
    SgBox,
    SgContinuous,
    NgCarbochlorination,
    NgAcidLeach,
}

impl RouteId {
    pub fn is_synthetic(&self) -> bool {
        matches!(self, RouteId::SgAcheson | RouteId::SgBox | RouteId::SgContinuous)
    }
}

/// An ordered process route from feedstock to coated product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flowsheet {
    pub route_id: RouteId,
    pub feed_material: Material,
    pub stages: Vec<StageSpec>,
}

impl Flowsheet {
    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::validation("flowsheet has no stages"));
        }
        let mut prev_rank = 0u8;
        for (i, stage) in self.stages.iter().enumerate() {
            stage.validate()?;
            let rank = stage.function.rank();
            if i == 0 && stage.function != StageFunction::Shaping {
                return Err(Error::validation("flowsheet must start with a shaping stage"));
            }
            if i > 0 && rank < prev_rank {
                return Err(Error::validation(format!(
                    "stage '{}' violates the shaping -> graphitization/purification -> coating order",
                    stage.id
                )));
            }
            prev_rank = rank;
        }
        let last = self.stages.last().unwrap();
        if last.function != StageFunction::Coating {
            return Err(Error::validation("flowsheet must end with a coating stage"));
        }
        Ok(())
    }

    pub fn stage_index(&self, stage_id: &str) -> Result<usize> {
        self.stages
            .iter()
            .position(|s| s.id == stage_id)
            .ok_or_else(|| Error::UnknownStage(stage_id.to_string()))
    }

    pub fn stage(&self, stage_id: &str) -> Result<&StageSpec> {
        Ok(&self.stages[self.stage_index(stage_id)?])
    }
}

/// Plant-wide parameters not attributable to a single stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantSpec {
    /// Tonnes of product per year.
    pub capacity: f64,
    pub uptime: f64,
    pub plant_fte: f64,
    pub plant_equipment: f64,
    pub plant_other_capex: f64,
    pub plant_construction_hours: f64,
    pub annual_consumables: f64,
    pub annual_ga: f64,
    /// kWh per tonne of product, additive to stage electricity.
    pub plant_electricity: f64,
    /// Anchor capacity for power-law capital scaling.
    pub reference_capacity: f64,
}

impl PlantSpec {
    pub fn validate(&self) -> Result<()> {
        if self.capacity <= 0.0 {
            return Err(Error::validation("plant capacity must be > 0"));
        }
        if !(self.uptime > 0.0 && self.uptime <= 1.0) {
            return Err(Error::validation("plant uptime must be in (0, 1]"));
        }
        if self.reference_capacity <= 0.0 {
            return Err(Error::validation("reference capacity must be > 0"));
        }
        Ok(())
    }
}

/// Tonnes of feed entering `down_to_stage` required per tonne of final
/// product: the reciprocal of the product of that stage's yield and all
/// downstream yields.
pub fn feed_per_tonne(flowsheet: &Flowsheet, down_to_stage: &str) -> Result<f64> {
    let start = flowsheet.stage_index(down_to_stage)?;
    let mut product = 1.0;
    for stage in &flowsheet.stages[start..] {
        if stage.yield_fraction <= 0.0 {
            return Err(Error::validation(format!(
                "stage '{}': yield must be > 0",
                stage.id
            )));
        }
        product *= stage.yield_fraction;
    }
    Ok(1.0 / product)
}

/// Annual tonnes of feed entering a stage at the plant's capacity.
pub fn stage_feed_tonnage(plant: &PlantSpec, flowsheet: &Flowsheet, stage_id: &str) -> Result<f64> {
    Ok(plant.capacity * feed_per_tonne(flowsheet, stage_id)?)
}

/// Number of parallel lines needed to push `annual_feed` tonnes through a
/// stage, given available hours = 8760 x uptime. Zero feed needs zero lines.
pub fn line_count(stage: &StageSpec, annual_feed: f64, uptime: f64) -> Result<u64> {
    if stage.throughput_per_line <= 0.0 {
        return Err(Error::validation(format!(
            "stage '{}': throughput_per_line must be > 0",
            stage.id
        )));
    }
    if !(uptime > 0.0 && uptime <= 1.0) {
        return Err(Error::validation("uptime must be in (0, 1]"));
    }
    if annual_feed < 0.0 {
        return Err(Error::validation("annual feed must be >= 0"));
    }
    if annual_feed == 0.0 {
        return Ok(0);
    }
    let per_line = stage.throughput_per_line * HOURS_PER_YEAR * uptime;
    Ok((annual_feed / per_line).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::load_builtin;

    fn sg_flowsheet() -> Flowsheet {
        load_builtin("US_SG").unwrap().flowsheet
    }

    fn ng_flowsheet() -> Flowsheet {
        load_builtin("US_NG").unwrap().flowsheet
    }

    #[test]
    fn feed_per_tonne_sg_first_stage() {
        let fs = sg_flowsheet();
        let f = feed_per_tonne(&fs, "spheronization").unwrap();
        assert!((f - 1.4286).abs() < 1e-3, "got {f}");
        // at $650/t needle coke the feedstock charge is ~$929/t
        assert!((650.0 * f - 928.6).abs() < 1.0);
    }

    #[test]
    fn feed_per_tonne_unit_yields() {
        let mut fs = sg_flowsheet();
        for s in &mut fs.stages {
            s.yield_fraction = 1.0;
        }
        assert_eq!(feed_per_tonne(&fs, "spheronization").unwrap(), 1.0);
    }

    #[test]
    fn feed_per_tonne_ng_first_stage() {
        let fs = ng_flowsheet();
        let f = feed_per_tonne(&fs, "spheronization").unwrap();
        assert!((f - 2.1053).abs() < 1e-3, "got {f}");
    }

    #[test]
    fn feed_per_tonne_unknown_stage() {
        let fs = sg_flowsheet();
        assert!(matches!(
            feed_per_tonne(&fs, "nope"),
            Err(Error::UnknownStage(_))
        ));
    }

    #[test]
    fn stage_feed_examples() {
        let sc = load_builtin("US_SG").unwrap();
        let sph = stage_feed_tonnage(&sc.plant, &sc.flowsheet, "spheronization").unwrap();
        assert!((sph - 64_285.7).abs() < 1.0, "got {sph}");
        let coat = stage_feed_tonnage(&sc.plant, &sc.flowsheet, "coating").unwrap();
        assert!((coat - 45_000.0).abs() < 1e-6);

        let ng = load_builtin("US_NG").unwrap();
        let carbo = stage_feed_tonnage(&ng.plant, &ng.flowsheet, "carbochlorination").unwrap();
        assert!((carbo - 47_368.4).abs() < 1.0, "got {carbo}");
    }

    #[test]
    fn line_count_examples() {
        let sc = load_builtin("US_SG").unwrap();
        let acheson = sc.flowsheet.stage("acheson").unwrap();
        assert_eq!(line_count(acheson, 45_000.0, 0.9).unwrap(), 26);
        assert_eq!(line_count(acheson, 0.0, 0.9).unwrap(), 0);
        let sph = sc.flowsheet.stage("spheronization").unwrap();
        assert_eq!(line_count(sph, 64_286.0, 0.9).unwrap(), 4);
    }

    #[test]
    fn line_count_rejects_bad_throughput() {
        let sc = load_builtin("US_SG").unwrap();
        let mut stage = sc.flowsheet.stage("acheson").unwrap().clone();
        stage.throughput_per_line = 0.0;
        assert!(line_count(&stage, 1000.0, 0.9).is_err());
    }

    #[test]
    fn flowsheet_ordering_rejected() {
        let mut fs = sg_flowsheet();
        fs.stages.swap(0, 1);
        assert!(fs.validate().is_err());

        let mut fs2 = sg_flowsheet();
        fs2.stages.pop();
        assert!(fs2.validate().is_err(), "route must end with coating");
    }

    #[test]
    fn parameter_spec_invariants() {
        let p = ParameterSpec::uniform("x", "t", 5.0, 6.0, 7.0, RegionScope::Both);
        assert!(p.validate().is_err());
        let mut f = ParameterSpec::fixed("x", "t", 5.0, RegionScope::Both);
        f.low = 4.0;
        assert!(f.validate().is_err());
    }
}
