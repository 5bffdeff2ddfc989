//! Seeded Monte Carlo check of the closed-form outcome probabilities.
//!
//! Replicate `i` draws from its own ChaCha8 stream: the generator is keyed by
//! the run seed and the stream id is `i`, so a replicate's draws depend only
//! on `(seed, i)`. Tallies are sums, so any parallel schedule gives the same
//! counts as a sequential loop. Normal variates are produced by inverting
//! [`std_normal_quantile`].
//!
//! Stream layout is part of the output contract: changing it changes every
//! seeded result.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::design::{outcome_probs, DesignConfig, OutcomeProbs};
use crate::error::{Result, SgpvError};
use crate::intervals::ExtendedInterval;
use crate::normal::std_normal_quantile;
use crate::reliability::PriorOdds;
use crate::sgpv::{second_gen_p, Classification, NullSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub design: DesignConfig,
    /// True effect generating the data.
    pub theta: f64,
    pub replicates: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.design.validate()?;
        if self.replicates == 0 {
            return Err(SgpvError::InvalidDesign("replicates must be at least 1"));
        }
        if !self.theta.is_finite() {
            return Err(SgpvError::InvalidDesign("theta must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OutcomeCounts {
    pub n_alt: u64,
    pub n_null: u64,
    pub n_inconclusive: u64,
}

impl OutcomeCounts {
    pub fn total(&self) -> u64 {
        self.n_alt + self.n_null + self.n_inconclusive
    }

    fn add(mut self, other: OutcomeCounts) -> OutcomeCounts {
        self.n_alt += other.n_alt;
        self.n_null += other.n_null;
        self.n_inconclusive += other.n_inconclusive;
        self
    }

    fn record(&mut self, c: Classification) {
        match c {
            Classification::AlternativeCompatible => self.n_alt += 1,
            Classification::NullCompatible => self.n_null += 1,
            Classification::Inconclusive => self.n_inconclusive += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimResult {
    pub empirical: OutcomeProbs,
    pub counts: OutcomeCounts,
    /// `√(p̂(1 − p̂)/R)` per outcome.
    pub binomial_se: OutcomeProbs,
}

/// Empirical frequencies next to the closed form, with z-scores computed
/// from the closed-form binomial standard error `√(p(1 − p)/R)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimComparison {
    pub empirical: OutcomeProbs,
    pub closed_form: OutcomeProbs,
    pub z_scores: OutcomeProbs,
    pub counts: OutcomeCounts,
    pub replicates: u64,
}

impl SimComparison {
    /// Largest |z| over the three outcomes. An outcome whose closed-form
    /// probability is exactly 0 or 1 must match exactly.
    pub fn max_abs_z(&self) -> f64 {
        [self.z_scores.p_alt, self.z_scores.p_null, self.z_scores.p_inconclusive]
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }
}

/// Uniform on the open interval (0, 1) from the top 53 bits.
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn draw_normal(rng: &mut ChaCha8Rng) -> f64 {
    std_normal_quantile(open_unit(rng)).expect("open_unit is strictly inside (0, 1)")
}

/// Interval estimate from one simulated study and its outcome.
///
/// With `δ = 0` the null is a single point; `p_δ` then takes its limiting
/// value ½ when the interval covers `θ0` (inconclusive) and 0 otherwise.
fn classify_study(estimate: f64, cfg: &DesignConfig, half_width: f64, null: Option<&NullSpec>) -> Classification {
    let lo = estimate - half_width;
    let hi = estimate + half_width;
    match null {
        Some(h0) => {
            let i = ExtendedInterval::new(lo, hi).expect("finite simulated interval");
            second_gen_p(&i, h0).expect("finite interval against finite null").classification
        }
        None => {
            if lo <= cfg.theta0 && cfg.theta0 <= hi {
                Classification::Inconclusive
            } else {
                Classification::AlternativeCompatible
            }
        }
    }
}

fn null_for(cfg: &DesignConfig) -> Result<Option<NullSpec>> {
    if cfg.delta > 0.0 {
        Ok(Some(NullSpec::symmetric(cfg.theta0, cfg.delta)?))
    } else {
        Ok(None)
    }
}

fn tally<F>(replicates: u64, per_replicate: F) -> OutcomeCounts
where
    F: Fn(u64) -> OutcomeCounts + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..replicates)
            .into_par_iter()
            .map(per_replicate)
            .reduce(OutcomeCounts::default, OutcomeCounts::add)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..replicates).map(per_replicate).fold(OutcomeCounts::default(), OutcomeCounts::add)
    }
}

fn proportions(counts: &OutcomeCounts, replicates: u64) -> OutcomeProbs {
    let r = replicates as f64;
    OutcomeProbs {
        p_alt: counts.n_alt as f64 / r,
        p_null: counts.n_null as f64 / r,
        p_inconclusive: counts.n_inconclusive as f64 / r,
    }
}

pub fn simulate_outcomes(cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let design = cfg.design;
    let null = null_for(&design)?;
    let se = design.std_error();
    let half_width = design.critical() * se;

    let counts = tally(cfg.replicates, |i| {
        let mut rng = replicate_rng(cfg.seed, i);
        let estimate = cfg.theta + se * draw_normal(&mut rng);
        let mut c = OutcomeCounts::default();
        c.record(classify_study(estimate, &design, half_width, null.as_ref()));
        c
    });

    let empirical = proportions(&counts, cfg.replicates);
    let r = cfg.replicates as f64;
    let se_of = |p: f64| (p * (1.0 - p) / r).sqrt();
    Ok(SimResult {
        empirical,
        counts,
        binomial_se: OutcomeProbs {
            p_alt: se_of(empirical.p_alt),
            p_null: se_of(empirical.p_null),
            p_inconclusive: se_of(empirical.p_inconclusive),
        },
    })
}

fn z_score(empirical: f64, expected: f64, replicates: u64) -> f64 {
    let se = (expected * (1.0 - expected) / replicates as f64).sqrt();
    let diff = empirical - expected;
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

/// Simulate and compare against [`outcome_probs`].
pub fn compare_outcomes(cfg: &SimConfig) -> Result<SimComparison> {
    let sim = simulate_outcomes(cfg)?;
    let closed = outcome_probs(cfg.theta, &cfg.design);
    let z = |e: f64, p: f64| z_score(e, p, cfg.replicates);
    Ok(SimComparison {
        empirical: sim.empirical,
        closed_form: closed,
        z_scores: OutcomeProbs {
            p_alt: z(sim.empirical.p_alt, closed.p_alt),
            p_null: z(sim.empirical.p_null, closed.p_null),
            p_inconclusive: z(sim.empirical.p_inconclusive, closed.p_inconclusive),
        },
        counts: sim.counts,
        replicates: cfg.replicates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimReliability {
    /// `#(H0 and p_δ = 0) / #(p_δ = 0)`; absent with no discoveries.
    pub empirical_fdr: Option<f64>,
    /// `#(H1 and p_δ = 1) / #(p_δ = 1)`; absent with no confirmations.
    pub empirical_fcr: Option<f64>,
    pub discoveries: u64,
    pub false_discoveries: u64,
    pub confirmations: u64,
    pub false_confirmations: u64,
}

impl SimReliability {
    /// Binomial standard error of the FDR estimate at probability `p`.
    pub fn fdr_se(&self, p: f64) -> Option<f64> {
        (self.discoveries > 0).then(|| (p * (1.0 - p) / self.discoveries as f64).sqrt())
    }

    pub fn fcr_se(&self, p: f64) -> Option<f64> {
        (self.confirmations > 0).then(|| (p * (1.0 - p) / self.confirmations as f64).sqrt())
    }
}

#[derive(Default, Clone, Copy)]
struct ReliabilityTally {
    discoveries: u64,
    false_discoveries: u64,
    confirmations: u64,
    false_confirmations: u64,
}

/// Each replicate first draws its truth, `θ1` with probability `r/(1 + r)`
/// and `θ0` otherwise, then simulates one study. `cfg.theta` is ignored.
pub fn simulate_reliability(cfg: &SimConfig, odds: PriorOdds, theta1: f64) -> Result<SimReliability> {
    cfg.validate()?;
    if !theta1.is_finite() {
        return Err(SgpvError::InvalidDesign("theta1 must be finite"));
    }
    let design = cfg.design;
    let null = null_for(&design)?;
    let se = design.std_error();
    let half_width = design.critical() * se;
    let p_h1 = odds.prob_alternative();

    let one = |i: u64| {
        let mut rng = replicate_rng(cfg.seed, i);
        let alt_true = open_unit(&mut rng) < p_h1;
        let theta = if alt_true { theta1 } else { design.theta0 };
        let estimate = theta + se * draw_normal(&mut rng);
        let mut t = ReliabilityTally::default();
        match classify_study(estimate, &design, half_width, null.as_ref()) {
            Classification::AlternativeCompatible => {
                t.discoveries = 1;
                t.false_discoveries = u64::from(!alt_true);
            }
            Classification::NullCompatible => {
                t.confirmations = 1;
                t.false_confirmations = u64::from(alt_true);
            }
            Classification::Inconclusive => {}
        }
        t
    };
    let merge = |a: ReliabilityTally, b: ReliabilityTally| ReliabilityTally {
        discoveries: a.discoveries + b.discoveries,
        false_discoveries: a.false_discoveries + b.false_discoveries,
        confirmations: a.confirmations + b.confirmations,
        false_confirmations: a.false_confirmations + b.false_confirmations,
    };

    #[cfg(feature = "parallel")]
    let t = {
        use rayon::prelude::*;
        (0..cfg.replicates).into_par_iter().map(one).reduce(ReliabilityTally::default, merge)
    };
    #[cfg(not(feature = "parallel"))]
    let t = (0..cfg.replicates).map(one).fold(ReliabilityTally::default(), merge);

    let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
    Ok(SimReliability {
        empirical_fdr: ratio(t.false_discoveries, t.discoveries),
        empirical_fcr: ratio(t.false_confirmations, t.confirmations),
        discoveries: t.discoveries,
        false_discoveries: t.false_discoveries,
        confirmations: t.confirmations,
        false_confirmations: t.false_confirmations,
    })
}
