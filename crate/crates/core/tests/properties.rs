//! Property-based tests over the costing and finance kernels.

use proptest::prelude::*;

use graphtec::analysis::{disruption_impact, iso_price_contour, MarketCalibration};
use graphtec::costing::plant_cost;
use graphtec::finance::{breakeven_price, irr_from_price, FinanceSpec};
use graphtec::flowsheet::{feed_per_tonne, line_count, Material};
use graphtec::montecarlo::{competitive_fraction, SamplePoint};
use graphtec::scenario::{load_builtin, parse_scenario, OverrideValue, ScenarioFile};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn feed_requirement_is_product_of_downstream_yields(
        yields in prop::collection::vec(0.2f64..1.0, 8),
    ) {
        let mut sc = load_builtin("US_SG").unwrap();
        for (stage, y) in sc.flowsheet.stages.iter_mut().zip(&yields) {
            stage.yield_fraction = *y;
        }
        let first = sc.flowsheet.stages[0].id.clone();
        let fpt = feed_per_tonne(&sc.flowsheet, &first).unwrap();
        let product: f64 = yields.iter().take(sc.flowsheet.stages.len()).product();
        prop_assert!((fpt - 1.0 / product).abs() < 1e-9 * fpt);
    }

    #[test]
    fn line_count_is_smallest_sufficient_integer(
        tph in 0.05f64..10.0,
        feed in 100.0f64..500_000.0,
        uptime in 0.5f64..1.0,
    ) {
        let mut stage = load_builtin("US_SG").unwrap().flowsheet.stages[0].clone();
        stage.throughput_per_line = tph;
        let lines = line_count(&stage, feed, uptime).unwrap();
        let per_line = tph * 8760.0 * uptime;
        prop_assert!(lines as f64 * per_line >= feed - 1e-6);
        prop_assert!((lines as f64 - 1.0) * per_line < feed);
    }

    #[test]
    fn breakeven_is_affine_in_capital(
        capex in 0.0f64..2e9,
        extra in 0.0f64..1e9,
        opex in 0.0f64..9000.0,
        capacity in 100.0f64..100_000.0,
    ) {
        let fin = FinanceSpec::default();
        let p0 = breakeven_price(capex, opex, capacity, &fin).unwrap();
        let p1 = breakeven_price(capex + extra, opex, capacity, &fin).unwrap();
        let slope = (p1 - p0) * capacity / extra.max(f64::MIN_POSITIVE);
        if extra > 1.0 {
            prop_assert!((slope - fin.crf()).abs() < 1e-6);
        }
        prop_assert!(p1 >= p0);
    }

    #[test]
    fn irr_inverts_breakeven(
        capex in 1e6f64..1e9,
        opex in 500.0f64..8000.0,
        capacity in 1000.0f64..100_000.0,
        rate in 0.01f64..0.5,
        years in 2u32..30,
    ) {
        let fin = FinanceSpec { required_irr: rate, payback_years: years, ..Default::default() };
        let price = breakeven_price(capex, opex, capacity, &fin).unwrap();
        let back = irr_from_price(price, capex, opex, capacity, years).unwrap();
        prop_assert!((back - rate).abs() < 1e-6 * rate.max(1.0));
    }

    #[test]
    fn raising_a_material_price_never_lowers_the_breakeven(
        which in 0usize..5,
        bump in 0.0f64..3.0,
    ) {
        let materials = [
            Material::NeedleCoke,
            Material::Pitch,
            Material::Nitrogen,
            Material::Crucible,
            Material::PackingMaterial,
        ];
        let base = load_builtin("US_SG").unwrap();
        let reference = plant_cost(&base).unwrap().breakeven_price;
        let mut sc = base;
        let material = materials[which];
        let current = sc.cost_factors.price(material).unwrap();
        sc.cost_factors.material_prices.insert(material, current * (1.0 + bump));
        prop_assert!(plant_cost(&sc).unwrap().breakeven_price >= reference - 1e-9);
    }

    #[test]
    fn competitive_fraction_is_a_cdf(
        prices in prop::collection::vec(1000.0f64..20_000.0, 1..60),
        a in 0.0f64..25_000.0,
        b in 0.0f64..25_000.0,
    ) {
        let samples: Vec<SamplePoint> = prices
            .iter()
            .enumerate()
            .map(|(i, p)| SamplePoint {
                index: i as u64,
                capital_intensity: 0.0,
                opex_per_tonne: 0.0,
                breakeven_price: *p,
            })
            .collect();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let f_lo = competitive_fraction(&samples, lo);
        let f_hi = competitive_fraction(&samples, hi);
        prop_assert!((0.0..=1.0).contains(&f_lo));
        prop_assert!(f_lo <= f_hi);
    }

    #[test]
    fn scenario_file_roundtrips_through_toml(
        baseline in 0.01f64..1000.0,
        spread in 0.001f64..0.5,
        bare in 0.01f64..1000.0,
    ) {
        let mut file = ScenarioFile {
            schema: 1,
            base: "US_SG".to_string(),
            overrides: Default::default(),
            finance: None,
        };
        file.overrides.insert(
            "acheson.throughput".to_string(),
            OverrideValue::Range {
                baseline,
                low: baseline * (1.0 - spread),
                high: baseline * (1.0 + spread),
            },
        );
        file.overrides.insert(
            "factors.electricity_price".to_string(),
            OverrideValue::Baseline(bare),
        );
        let text = toml::to_string(&file).unwrap();
        let back = parse_scenario(&text).unwrap();
        prop_assert_eq!(back.base, file.base);
        prop_assert_eq!(back.schema, file.schema);
        prop_assert_eq!(back.overrides, file.overrides);
    }

    #[test]
    fn disruption_scales_linearly_in_the_shock(
        shock in 0.0f64..100.0,
        scale in 0.1f64..5.0,
        kg in 10.0f64..300.0,
    ) {
        let cal = MarketCalibration::default();
        let one = disruption_impact(7.0, 7.0 + shock, kg, &cal).unwrap();
        let scaled = disruption_impact(7.0, 7.0 + shock * scale, kg, &cal).unwrap();
        prop_assert!((scaled.ev_cost_delta - one.ev_cost_delta * scale).abs() < 1e-6 * (1.0 + scaled.ev_cost_delta.abs()));
        prop_assert!((scaled.sales_drop_fraction - one.sales_drop_fraction * scale).abs() < 1e-9);
    }

    #[test]
    fn contour_opex_is_affine_with_slope_minus_crf(
        price in 2000.0f64..15_000.0,
        ci in 0.0f64..30_000.0,
        extra in 0.0f64..10_000.0,
    ) {
        let fin = FinanceSpec::default();
        let contour = iso_price_contour(price, &fin).unwrap();
        prop_assert!((contour.opex_at(0.0) - price).abs() < 1e-9 * price);
        let drop = contour.opex_at(ci) - contour.opex_at(ci + extra);
        prop_assert!((drop - extra * fin.crf()).abs() < 1e-6 * (1.0 + drop.abs()));
    }
}
