//! Frequency properties of `p_δ` under the normal model.
//!
//! The estimator satisfies `√n(θ̂ − θ) ~ N(0, V)`, so the standard error of
//! `θ̂` is `√(V/n)`; `V` is *not* the variance of `θ̂` itself. The interval
//! estimate is the `(1 − α)` z-interval `θ̂ ± Z·√(V/n)` with
//! `Z = Φ⁻¹(1 − α/2)`, and the null is `[θ0 − δ, θ0 + δ]`.
//!
//! Writing `s = √(V/n)`:
//!
//! ```text
//! P(p_δ = 0)     = Φ((θ0 − δ − θ)/s − Z) + Φ((θ − θ0 − δ)/s − Z)
//! P(p_δ = 1)     = Φ((θ0 + δ − θ)/s − Z) − Φ((θ0 − δ − θ)/s + Z)   if δ > Z·s, else 0
//! P(0 < p_δ < 1) = 1 − P(p_δ = 0) − P(p_δ = 1)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Result, SgpvError};
use crate::normal::{std_normal_cdf, std_normal_quantile, two_sided_critical};

/// Design parameters `(θ0, δ, n, V, α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignConfig {
    pub theta0: f64,
    /// Null half-width. Zero recovers the classical point-null test.
    pub delta: f64,
    pub n: f64,
    /// Variance of `√n(θ̂ − θ)`.
    pub variance: f64,
    pub alpha: f64,
}

impl DesignConfig {
    pub fn new(theta0: f64, delta: f64, n: f64, variance: f64, alpha: f64) -> Result<Self> {
        let cfg = DesignConfig { theta0, delta, n, variance, alpha };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.theta0.is_finite() {
            return Err(SgpvError::InvalidDesign("theta0 must be finite"));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(SgpvError::InvalidDesign("delta must be nonnegative and finite"));
        }
        if !(self.n > 0.0 && self.n.is_finite()) {
            return Err(SgpvError::InvalidDesign("n must be positive"));
        }
        if !(self.variance > 0.0 && self.variance.is_finite()) {
            return Err(SgpvError::InvalidDesign("variance must be positive"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(SgpvError::InvalidProbability(self.alpha));
        }
        Ok(())
    }

    /// Standard error `√(V/n)`.
    pub fn std_error(&self) -> f64 {
        (self.variance / self.n).sqrt()
    }

    /// `Z_{1-α/2}`.
    pub fn critical(&self) -> f64 {
        two_sided_critical(self.alpha).expect("alpha validated at construction")
    }

    /// Whether an interval estimate can fit inside the null: `δ > Z·√(V/n)`.
    pub fn null_reachable(&self) -> bool {
        self.delta > self.critical() * self.std_error()
    }

    /// Same design with a different sample size.
    pub fn with_n(&self, n: f64) -> Result<Self> {
        DesignConfig::new(self.theta0, self.delta, n, self.variance, self.alpha)
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        DesignConfig::new(self.theta0, delta, self.n, self.variance, self.alpha)
    }
}

/// Probabilities of the three outcomes at a fixed true effect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeProbs {
    pub p_alt: f64,
    pub p_null: f64,
    pub p_inconclusive: f64,
}

impl OutcomeProbs {
    pub fn total(&self) -> f64 {
        self.p_alt + self.p_null + self.p_inconclusive
    }
}

/// The four standardized arguments shared by the three outcome formulas.
struct Args {
    below: f64,
    above: f64,
    inner_hi: f64,
    inner_lo: f64,
}

fn args(theta: f64, cfg: &DesignConfig) -> Args {
    let s = cfg.std_error();
    let z = cfg.critical();
    let lo = (cfg.theta0 - cfg.delta - theta) / s;
    let hi = (cfg.theta0 + cfg.delta - theta) / s;
    Args { below: lo - z, above: -hi - z, inner_hi: hi - z, inner_lo: lo + z }
}

/// `P_θ(p_δ = 0)`, the analogue of power.
pub fn prob_alt(theta: f64, cfg: &DesignConfig) -> f64 {
    let a = args(theta, cfg);
    (std_normal_cdf(a.below) + std_normal_cdf(a.above)).min(1.0)
}

/// `P_θ(p_δ = 1)`. Exactly zero unless `δ > Z·√(V/n)`.
pub fn prob_null(theta: f64, cfg: &DesignConfig) -> f64 {
    if !cfg.null_reachable() {
        return 0.0;
    }
    let a = args(theta, cfg);
    (std_normal_cdf(a.inner_hi) - std_normal_cdf(a.inner_lo)).max(0.0)
}

/// `P_θ(0 < p_δ < 1)`.
pub fn prob_inconclusive(theta: f64, cfg: &DesignConfig) -> f64 {
    let a = args(theta, cfg);
    let mut p = 1.0 - std_normal_cdf(a.below) - std_normal_cdf(a.above);
    if cfg.null_reachable() {
        p += -std_normal_cdf(a.inner_hi) + std_normal_cdf(a.inner_lo);
    }
    p.clamp(0.0, 1.0)
}

pub fn outcome_probs(theta: f64, cfg: &DesignConfig) -> OutcomeProbs {
    OutcomeProbs {
        p_alt: prob_alt(theta, cfg),
        p_null: prob_null(theta, cfg),
        p_inconclusive: prob_inconclusive(theta, cfg),
    }
}

/// Classical two-sided z-test power at `theta` (the `δ = 0` case of [`prob_alt`]).
pub fn classical_power(theta: f64, cfg: &DesignConfig) -> f64 {
    let point = DesignConfig { delta: 0.0, ..*cfg };
    prob_alt(theta, &point)
}

/// `|I| / |H0|` implied by a design with the given size and power at δ.
pub fn required_interval_ratio(alpha: f64, power: f64) -> Result<f64> {
    if !(power > 0.0 && power < 1.0) {
        return Err(SgpvError::InvalidProbability(power));
    }
    let za = two_sided_critical(alpha)?;
    let zb = std_normal_quantile(power)?;
    Ok(za / (za + zb))
}

/// Power below which the small-sample correction starts to apply, i.e. where
/// [`required_interval_ratio`] reaches 2.
pub fn correction_trigger_power(alpha: f64) -> Result<f64> {
    let za = two_sided_critical(alpha)?;
    Ok(std_normal_cdf(-0.5 * za))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub theta: f64,
    pub p_alt: f64,
    pub p_null: f64,
    pub p_inconclusive: f64,
}

pub const POWER_CURVE_HEADER: [&str; 4] = ["theta", "p_alt", "p_null", "p_inconclusive"];

/// Outcome probabilities at each grid point, in grid order.
pub fn emit_power_curve(cfg: &DesignConfig, theta_grid: &[f64]) -> Result<Vec<CurveRow>> {
    cfg.validate()?;
    if theta_grid.is_empty() {
        return Err(SgpvError::EmptyInput("theta grid"));
    }
    let row = |&theta: &f64| {
        let o = outcome_probs(theta, cfg);
        CurveRow { theta, p_alt: o.p_alt, p_null: o.p_null, p_inconclusive: o.p_inconclusive }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(theta_grid.par_iter().map(row).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(theta_grid.iter().map(row).collect())
    }
}
