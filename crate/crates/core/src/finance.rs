//! Capital annuitization, break-even pricing and IRR inversion.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bisection tolerance on the rate for IRR inversion.
const IRR_TOL: f64 = 1e-9;

/// Financing assumptions plus the market reference prices used to judge
/// competitiveness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinanceSpec {
    pub required_irr: f64,
    pub payback_years: u32,
    /// e.g. "SG_2024" -> 7500 $/t.
    pub reference_prices: BTreeMap<String, f64>,
}

impl Default for FinanceSpec {
    fn default() -> Self {
        let mut reference_prices = BTreeMap::new();
        reference_prices.insert("SG_2024".to_string(), 7500.0);
        reference_prices.insert("NG_2024".to_string(), 7000.0);
        reference_prices.insert("SG_2022".to_string(), 11000.0);
        reference_prices.insert("NG_2022".to_string(), 9000.0);
        FinanceSpec { required_irr: 0.15, payback_years: 10, reference_prices }
    }
}

impl FinanceSpec {
    pub fn validate(&self) -> Result<()> {
        if self.required_irr < 0.0 {
            return Err(Error::validation("required IRR must be >= 0"));
        }
        if self.payback_years < 1 {
            return Err(Error::validation("payback period must be >= 1 year"));
        }
        Ok(())
    }

    pub fn crf(&self) -> f64 {
        crf(self.required_irr, self.payback_years).expect("validated finance spec")
    }
}

/// Capital recovery factor: the constant annual payment per unit of upfront
/// capital that repays it over `years` at `rate`.
pub fn crf(rate: f64, years: u32) -> Result<f64> {
    if years < 1 {
        return Err(Error::validation("years must be >= 1"));
    }
    if rate < 0.0 {
        return Err(Error::validation("rate must be >= 0"));
    }
    if rate == 0.0 {
        return Ok(1.0 / years as f64);
    }
    let growth = (1.0 + rate).powi(years as i32);
    Ok(rate * growth / (growth - 1.0))
}

/// Product price at which the project earns exactly the required IRR over
/// the payback period: opex plus annualized capital per tonne.
pub fn breakeven_price(capex: f64, opex_per_tonne: f64, capacity: f64, fin: &FinanceSpec) -> Result<f64> {
    if capacity <= 0.0 {
        return Err(Error::validation("capacity must be > 0"));
    }
    fin.validate()?;
    Ok(opex_per_tonne + capex * crf(fin.required_irr, fin.payback_years)? / capacity)
}

/// Rate r such that `breakeven_price` at r equals `price`. Bisection on
/// [0, 10]; the annuity relation is strictly monotone in the rate, so the
/// root is unique when it exists.
pub fn irr_from_price(
    price: f64,
    capex: f64,
    opex_per_tonne: f64,
    capacity: f64,
    years: u32,
) -> Result<f64> {
    if capacity <= 0.0 {
        return Err(Error::validation("capacity must be > 0"));
    }
    if capex <= 0.0 {
        return Err(Error::validation("capex must be > 0"));
    }
    if price <= opex_per_tonne {
        return Err(Error::Numeric("margin non-positive".to_string()));
    }
    let margin = (price - opex_per_tonne) * capacity;
    // f(r) = margin - capex * crf(r, years); strictly decreasing in r.
    let f = |r: f64| margin - capex * crf(r, years).unwrap();
    let (mut lo, mut hi) = (0.0_f64, 10.0_f64);
    if f(lo) < 0.0 {
        return Err(Error::Numeric(
            "price below the zero-rate break-even; no IRR in [0, 10]".to_string(),
        ));
    }
    if f(hi) > 0.0 {
        return Err(Error::Numeric("IRR exceeds bracket [0, 10]".to_string()));
    }
    while hi - lo > IRR_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: the annual payment per unit capital found by
    /// bisecting on the year-by-year discounted cash flow sum.
    fn crf_oracle(rate: f64, years: u32) -> f64 {
        let npv = |payment: f64| -> f64 {
            let mut v = -1.0;
            for y in 1..=years {
                v += payment / (1.0 + rate).powi(y as i32);
            }
            v
        };
        let (mut lo, mut hi) = (0.0, 2.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if npv(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn crf_matches_npv_oracle() {
        let got = crf(0.15, 10).unwrap();
        assert!((got - 0.199252).abs() < 1e-6, "got {got}");
        assert!((got - crf_oracle(0.15, 10)).abs() < 1e-9);
    }

    #[test]
    fn crf_zero_rate() {
        assert_eq!(crf(0.0, 10).unwrap(), 0.1);
    }

    #[test]
    fn crf_matches_falcon_back_solve() {
        // (4005 - 3193) * 26,000 / 106e6 from the Falcon project row.
        let implied = (4005.0 - 3193.0) * 26_000.0 / 106e6;
        assert!((crf(0.15, 10).unwrap() - implied).abs() < 1e-3);
    }

    #[test]
    fn crf_rejects_zero_years() {
        assert!(crf(0.15, 0).is_err());
    }

    #[test]
    fn crf_limits() {
        // crf(r, 1) = 1 + r; crf(r, n) -> r for large n
        assert!((crf(0.2, 1).unwrap() - 1.2).abs() < 1e-12);
        assert!((crf(0.2, 500).unwrap() - 0.2).abs() < 1e-9);
    }

    #[test]
    fn breakeven_falcon() {
        let fin = FinanceSpec::default();
        let p = breakeven_price(106e6, 3193.0, 26_000.0, &fin).unwrap();
        assert!((p - 4005.0).abs() < 1.0, "got {p}");
    }

    #[test]
    fn breakeven_zero_capex() {
        let fin = FinanceSpec::default();
        assert_eq!(breakeven_price(0.0, 1234.0, 1000.0, &fin).unwrap(), 1234.0);
    }

    #[test]
    fn breakeven_nmg() {
        let fin = FinanceSpec::default();
        let p = breakeven_price(673e6, 4031.0, 42_000.0, &fin).unwrap();
        assert!((p - 7224.0).abs() < 2.0, "got {p}");
    }

    #[test]
    fn breakeven_npv_identity() {
        // NPV of (price - opex) * capacity over the payback years minus
        // capex is zero at the break-even price.
        let fin = FinanceSpec::default();
        let (capex, opex, capacity) = (500e6, 4000.0, 45_000.0);
        let price = breakeven_price(capex, opex, capacity, &fin).unwrap();
        let mut npv = -capex;
        for y in 1..=fin.payback_years {
            npv += (price - opex) * capacity / (1.0 + fin.required_irr).powi(y as i32);
        }
        assert!(npv.abs() / capex < 1e-6, "relative npv {}", npv / capex);
    }

    #[test]
    fn irr_falcon() {
        let r = irr_from_price(4005.0, 106e6, 3193.0, 26_000.0, 10).unwrap();
        assert!((r - 0.150).abs() < 1e-3, "got {r}");
    }

    #[test]
    fn irr_undiscounted_payback_is_zero() {
        let (capex, opex, capacity, years) = (100e6, 3000.0, 20_000.0, 10u32);
        let price = opex + capex / (years as f64 * capacity);
        let r = irr_from_price(price, capex, opex, capacity, years).unwrap();
        assert!(r.abs() < 1e-6, "got {r}");
    }

    #[test]
    fn irr_syrah() {
        let r = irr_from_price(8011.0, 209e6, 4310.0, 11_250.0, 10).unwrap();
        assert!((r - 0.150).abs() < 1e-3, "got {r}");
    }

    #[test]
    fn irr_rejects_non_positive_margin() {
        let err = irr_from_price(3000.0, 100e6, 3000.0, 20_000.0, 10).unwrap_err();
        assert!(err.to_string().contains("margin non-positive"));
    }
}
