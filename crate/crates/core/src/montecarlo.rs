//! Uncertainty propagation: independent uniform sampling of every declared
//! parameter range, with counter-based streams so results are reproducible
//! regardless of thread count or execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::costing::plant_cost;
use crate::error::{Error, Result};
use crate::flowsheet::DistributionKind;
use crate::scenario::{apply_parameter, Scenario};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplePlan {
    pub n_samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SamplePoint {
    pub index: u64,
    pub capital_intensity: f64,
    pub opex_per_tonne: f64,
    pub breakeven_price: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Percentiles {
    pub p5: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub p95: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub scenario_id: String,
    pub n_samples: u64,
    pub seed: u64,
    pub capital_intensity: Percentiles,
    pub opex_per_tonne: Percentiles,
    pub breakeven_price: Percentiles,
    /// (reference price, fraction of samples with break-even at or below it)
    pub competitive: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub samples: Vec<SamplePoint>,
}

/// Draws sample `index` of the plan: each uniform parameter is sampled
/// independently from its [low, high] range, fixed parameters stay at
/// baseline. The draw depends only on (seed, index) and the scenario's
/// parameter order.
pub fn sample_scenario(base: &Scenario, seed: u64, index: u64) -> Result<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut scenario = base.clone();
    let params: Vec<(String, f64, f64, DistributionKind)> = base
        .parameters
        .iter()
        .map(|p| (p.id.clone(), p.low, p.high, p.distribution))
        .collect();
    for (id, low, high, dist) in params {
        if dist == DistributionKind::Uniform && low < high {
            let value = rng.gen_range(low..=high);
            apply_parameter(&mut scenario, &id, value).map_err(|e| {
                Error::validation(format!("sample {index}, parameter '{id}': {e}"))
            })?;
        }
    }
    Ok(scenario)
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    if sorted.len() == 1 {
        return sorted[0];
    }
    let pos = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

fn percentiles(values: &mut [f64]) -> Percentiles {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite metric"));
    Percentiles {
        p5: percentile(values, 5.0),
        p25: percentile(values, 25.0),
        p50: percentile(values, 50.0),
        p75: percentile(values, 75.0),
        p95: percentile(values, 95.0),
    }
}

/// Fraction of samples whose break-even price is at or below `price`.
pub fn competitive_fraction(samples: &[SamplePoint], price: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let n = samples.iter().filter(|s| s.breakeven_price <= price).count();
    n as f64 / samples.len() as f64
}

/// Runs the full Monte Carlo study. Samples are evaluated in parallel but
/// collected in index order, so output is byte-identical for a given
/// (scenario, plan) no matter how many threads run it.
pub fn run_monte_carlo(
    base: &Scenario,
    plan: &SamplePlan,
    reference_prices: &[f64],
) -> Result<MonteCarloSummary> {
    if plan.n_samples == 0 {
        return Err(Error::validation("sample count must be >= 1"));
    }
    let samples: Vec<SamplePoint> = (0..plan.n_samples)
        .into_par_iter()
        .map(|index| {
            let scenario = sample_scenario(base, plan.seed, index)?;
            let bd = plant_cost(&scenario)
                .map_err(|e| Error::validation(format!("sample {index}: {e}")))?;
            Ok(SamplePoint {
                index,
                capital_intensity: bd.capital_intensity,
                opex_per_tonne: bd.total_opex_per_tonne,
                breakeven_price: bd.breakeven_price,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut ci: Vec<f64> = samples.iter().map(|s| s.capital_intensity).collect();
    let mut opex: Vec<f64> = samples.iter().map(|s| s.opex_per_tonne).collect();
    let mut price: Vec<f64> = samples.iter().map(|s| s.breakeven_price).collect();
    let competitive = reference_prices
        .iter()
        .map(|&p| (p, competitive_fraction(&samples, p)))
        .collect();
    Ok(MonteCarloSummary {
        scenario_id: base.id.clone(),
        n_samples: plan.n_samples,
        seed: plan.seed,
        capital_intensity: percentiles(&mut ci),
        opex_per_tonne: percentiles(&mut opex),
        breakeven_price: percentiles(&mut price),
        competitive,
        samples,
    })
}
