//! False discovery and false confirmation rates.
//!
//! With prior odds `r = P(H1)/P(H0)`, Bayes' rule gives
//!
//! ```text
//! FDR = P(H0 | p_δ = 0) = [1 + r · P(p_δ = 0 | H1) / P(p_δ = 0 | H0)]⁻¹
//! FCR = P(H1 | p_δ = 1) = [1 + (1/r) · P(p_δ = 1 | H0) / P(p_δ = 1 | H1)]⁻¹
//! ```
//!
//! `H0` is represented by the point null `θ0` and `H1` by a single
//! alternative `θ1`.

use serde::Serialize;

use crate::design::{classical_power, prob_alt, prob_null, DesignConfig};
use crate::error::{Result, SgpvError};

/// Prior odds of a real effect, `P(H1)/P(H0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PriorOdds(f64);

impl PriorOdds {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r.is_finite() {
            Ok(PriorOdds(r))
        } else {
            Err(SgpvError::InvalidOdds(r))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `P(H1) = r / (1 + r)`.
    pub fn prob_alternative(self) -> f64 {
        self.0 / (1.0 + self.0)
    }
}

pub fn fdr_sgpv(theta1: f64, cfg: &DesignConfig, odds: PriorOdds) -> Result<f64> {
    let under_null = prob_alt(cfg.theta0, cfg);
    if under_null <= 0.0 {
        return Err(SgpvError::DegenerateDesign("P(p_delta = 0 | H0) underflows to zero"));
    }
    let under_alt = prob_alt(theta1, cfg);
    Ok(1.0 / (1.0 + under_alt / under_null * odds.get()))
}

/// `None` when `p_δ = 1` cannot occur because the interval estimate is
/// always wider than the null.
pub fn fcr_sgpv(theta1: f64, cfg: &DesignConfig, odds: PriorOdds) -> Option<f64> {
    if !cfg.null_reachable() {
        return None;
    }
    let under_alt = prob_null(theta1, cfg);
    if under_alt <= 0.0 {
        return Some(0.0);
    }
    let under_null = prob_null(cfg.theta0, cfg);
    Some(1.0 / (1.0 + under_null / under_alt / odds.get()))
}

fn check_rates(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(SgpvError::InvalidProbability(alpha));
    }
    // β = 0 is the limit of an infinitely powered test; allow it.
    if !(0.0..1.0).contains(&beta) {
        return Err(SgpvError::InvalidProbability(beta));
    }
    Ok(())
}

/// `P(H0 | rejected) = [1 + r(1 − β)/α]⁻¹` for a level-α test with Type II rate β.
pub fn fdr_test(odds: PriorOdds, alpha: f64, beta: f64) -> Result<f64> {
    check_rates(alpha, beta)?;
    Ok(1.0 / (1.0 + odds.get() * (1.0 - beta) / alpha))
}

/// `P(H1 | not rejected) = [1 + (1 − α)/(β r)]⁻¹`.
pub fn fnr_test(odds: PriorOdds, alpha: f64, beta: f64) -> Result<f64> {
    check_rates(alpha, beta)?;
    if beta == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (1.0 + (1.0 - alpha) / (beta * odds.get())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReliabilityPoint {
    pub theta1: f64,
    pub fdr_sgpv: f64,
    pub fcr_sgpv: Option<f64>,
    pub fdr_test: f64,
    pub fnr_test: f64,
}

pub const RELIABILITY_HEADER: [&str; 5] = ["theta1", "fdr_sgpv", "fcr_sgpv", "fdr_test", "fnr_test"];

/// One point of the comparison; the test's β is one minus the classical
/// two-sided power at `theta1` under the same `(n, V, α)`.
pub fn reliability_point(theta1: f64, cfg: &DesignConfig, odds: PriorOdds) -> Result<ReliabilityPoint> {
    let beta = (1.0 - classical_power(theta1, cfg)).clamp(0.0, 1.0 - f64::EPSILON);
    Ok(ReliabilityPoint {
        theta1,
        fdr_sgpv: fdr_sgpv(theta1, cfg, odds)?,
        fcr_sgpv: fcr_sgpv(theta1, cfg, odds),
        fdr_test: fdr_test(odds, cfg.alpha, beta)?,
        fnr_test: fnr_test(odds, cfg.alpha, beta)?,
    })
}

pub fn emit_reliability_curve(
    cfg: &DesignConfig,
    odds: PriorOdds,
    theta1_grid: &[f64],
) -> Result<Vec<ReliabilityPoint>> {
    cfg.validate()?;
    if theta1_grid.is_empty() {
        return Err(SgpvError::EmptyInput("theta1 grid"));
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        theta1_grid.par_iter().map(|&t| reliability_point(t, cfg, odds)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        theta1_grid.iter().map(|&t| reliability_point(t, cfg, odds)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_config(n: f64) -> DesignConfig {
        DesignConfig::new(0.0, 0.5, n, 1.0, 0.05).unwrap()
    }

    fn odds(r: f64) -> PriorOdds {
        PriorOdds::new(r).unwrap()
    }

    #[test]
    fn odds_validation() {
        assert!(PriorOdds::new(0.0).is_err());
        assert!(PriorOdds::new(-1.0).is_err());
        assert!(PriorOdds::new(f64::INFINITY).is_err());
        assert_eq!(odds(3.0).prob_alternative(), 0.75);
    }

    #[test]
    fn identical_hypotheses() {
        let c = figure_config(16.0);
        for &r in &[0.25, 1.0, 4.0] {
            let f = fdr_sgpv(0.0, &c, odds(r)).unwrap();
            assert!((f - 1.0 / (1.0 + r)).abs() < 1e-14);
            let g = fcr_sgpv(0.0, &c, odds(r)).unwrap();
            assert!((g - 1.0 / (1.0 + 1.0 / r)).abs() < 1e-14);
        }
    }

    #[test]
    fn far_alternative_has_tiny_fdr() {
        let c = figure_config(16.0);
        let theta1 = c.delta + 5.0 * c.std_error();
        assert!(fdr_sgpv(theta1, &c, odds(1.0)).unwrap() < 1e-3);
        assert!(fdr_sgpv(-theta1, &c, odds(1.0)).unwrap() < 1e-3);
    }

    #[test]
    fn fcr_absent_when_gate_closed() {
        let c = figure_config(5.0);
        assert!(!c.null_reachable());
        assert_eq!(fcr_sgpv(1.0, &c, odds(1.0)), None);
    }

    #[test]
    fn test_rates() {
        let r = odds(1.0);
        assert!((fdr_test(r, 0.05, 0.0).unwrap() - 1.0 / 21.0).abs() < 1e-15);
        assert!((fdr_test(r, 0.05, 0.5).unwrap() - 1.0 / 11.0).abs() < 1e-15);
        assert!(fdr_test(odds(1e12), 0.05, 0.2).unwrap() < 1e-10);
        assert_eq!(fnr_test(r, 0.05, 0.0).unwrap(), 0.0);
        assert!((fnr_test(r, 0.05, 0.95).unwrap() - 0.5).abs() < 1e-15);
        assert!(fdr_test(r, 0.0, 0.5).is_err());
        assert!(fnr_test(r, 0.05, 1.0).is_err());
    }

    #[test]
    fn degenerate_design() {
        let c = DesignConfig::new(0.0, 10.0, 1e6, 1.0, 0.05).unwrap();
        assert!(matches!(fdr_sgpv(20.0, &c, odds(1.0)), Err(SgpvError::DegenerateDesign(_))));
    }

    #[test]
    fn curve_at_point_null() {
        let c = figure_config(16.0);
        let rows = emit_reliability_curve(&c, odds(2.0), &[0.0]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].fdr_sgpv - 1.0 / 3.0).abs() < 1e-14);
        assert!(emit_reliability_curve(&c, odds(2.0), &[]).is_err());
    }

    #[test]
    fn fdr_decreases_away_from_null() {
        let c = figure_config(16.0);
        let grid: Vec<f64> = (0..200).map(|k| 0.5 + k as f64 * 0.01).collect();
        let rows = emit_reliability_curve(&c, odds(1.0), &grid).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].fdr_sgpv <= w[0].fdr_sgpv);
            assert!(w[1].fdr_test <= w[0].fdr_test);
        }
    }

    #[test]
    fn fcr_can_exceed_fnr_inside_null_at_large_n() {
        let c = figure_config(400.0);
        let p = reliability_point(0.25, &c, odds(1.0)).unwrap();
        assert!(p.fcr_sgpv.unwrap() > p.fnr_test, "{p:?}");
    }
}
