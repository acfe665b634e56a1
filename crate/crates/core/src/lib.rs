//! Techno-economic model of battery-grade graphite production.
//!
//! The crate models multi-stage process routes (shaping, graphitization or
//! purification, coating) with per-line equipment sizing, regional cost
//! factors, annualized-capital finance, Monte Carlo uncertainty
//! propagation, sensitivity ladders, and market-disruption estimates.

pub mod analysis;
pub mod costing;
pub mod error;
pub mod finance;
pub mod flowsheet;
pub mod montecarlo;
pub mod report;
pub mod scenario;

pub use error::{Error, Result};
