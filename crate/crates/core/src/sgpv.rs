//! Second-generation p-values.
//!
//! For an interval estimate `I` and an interval null `H0`,
//!
//! ```text
//! p_δ = |I ∩ H0| / |I| · max{ |I| / (2|H0|), 1 }
//! ```
//!
//! so `p_δ` is the overlap fraction when `I` is reasonably precise and
//! `0.5 · |I ∩ H0| / |H0|` (at most ½) when `|I| > 2|H0|`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SgpvError};
use crate::intervals::ExtendedInterval;
use crate::normal::std_normal_cdf;

/// An interval null hypothesis with its half-width `delta` and center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullSpec {
    interval: ExtendedInterval,
    delta: f64,
    point_null: f64,
}

impl NullSpec {
    /// `[point_null - delta, point_null + delta]`.
    pub fn symmetric(point_null: f64, delta: f64) -> Result<Self> {
        if !point_null.is_finite() {
            return Err(SgpvError::InvalidNull("point null must be finite"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(SgpvError::InvalidNull("delta must be positive and finite"));
        }
        let interval = ExtendedInterval::new(point_null - delta, point_null + delta)?;
        Ok(NullSpec { interval, delta, point_null })
    }

    /// Arbitrary finite null `[lo, hi]`; `delta` is half its length and the
    /// point null is its midpoint.
    pub fn from_bounds(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(SgpvError::InvalidNull("null interval must have finite endpoints"));
        }
        if !(lo < hi) {
            return Err(SgpvError::InvalidNull("null interval must have positive length"));
        }
        let interval = ExtendedInterval::new(lo, hi)?;
        Ok(NullSpec { interval, delta: 0.5 * (hi - lo), point_null: 0.5 * (lo + hi) })
    }

    /// Fold-change null on the log10 scale: ratios between `1/fold` and `fold`.
    pub fn log10_fold_change(fold: f64) -> Result<Self> {
        if !(fold > 1.0 && fold.is_finite()) {
            return Err(SgpvError::InvalidNull("fold change bound must exceed 1"));
        }
        NullSpec::symmetric(0.0, fold.log10())
    }

    #[inline]
    pub fn interval(&self) -> &ExtendedInterval {
        &self.interval
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    #[inline]
    pub fn point_null(&self) -> f64 {
        self.point_null
    }

    pub fn lo(&self) -> f64 {
        self.interval.lo()
    }

    pub fn hi(&self) -> f64 {
        self.interval.hi()
    }
}

/// Tri-state reading of `p_δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    /// `p_δ = 0`: the data support only meaningful effects.
    AlternativeCompatible,
    /// `p_δ = 1`: the data support only null effects.
    NullCompatible,
    /// `0 < p_δ < 1`.
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::AlternativeCompatible => "alternative",
            Classification::NullCompatible => "null",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SgpvResult {
    pub p_delta: f64,
    pub classification: Classification,
    /// The small-sample correction (`|I| > 2|H0|`) set the value.
    pub correction_applied: bool,
    /// Signed gap in δ units; present exactly when `p_delta == 0`.
    pub delta_gap: Option<f64>,
}

/// Map a proportion onto the three outcomes.
pub fn classify(p_delta: f64) -> Result<Classification> {
    if !(0.0..=1.0).contains(&p_delta) {
        return Err(SgpvError::InvalidProportion(p_delta));
    }
    Ok(if p_delta == 0.0 {
        Classification::AlternativeCompatible
    } else if p_delta == 1.0 {
        Classification::NullCompatible
    } else {
        Classification::Inconclusive
    })
}

/// Proportion and correction flag for an arbitrary null interval, which may
/// itself be infinite.
pub fn overlap_proportion(i: &ExtendedInterval, h0: &ExtendedInterval) -> Result<(f64, bool)> {
    let len_i = i.length().get();
    let len_h = h0.length().get();
    if len_h == 0.0 {
        return Err(SgpvError::InvalidNull("null interval must have positive length"));
    }
    if i.is_real_line() && h0.is_finite() {
        return Err(SgpvError::UnboundedEstimate);
    }
    let overlap = match i.intersect(h0) {
        None => return Ok((0.0, len_i > 2.0 * len_h)),
        Some(o) => o.length().get(),
    };
    if i.is_subset_of(h0) {
        return Ok((1.0, false));
    }
    if overlap == 0.0 {
        return Ok((0.0, len_i > 2.0 * len_h));
    }

    if len_i.is_infinite() && len_h.is_infinite() {
        // Neither interval has finite length: all or nothing.
        let p = if overlap.is_infinite() { 1.0 } else { 0.0 };
        return Ok((p, false));
    }
    if len_i.is_infinite() {
        // One-sided estimate against a finite null: the wide-interval branch.
        return Ok(((0.5 * overlap / len_h).min(0.5), true));
    }
    if len_i > 2.0 * len_h {
        return Ok(((0.5 * overlap / len_h).min(0.5), true));
    }
    Ok(((overlap / len_i).clamp(0.0, 1.0), false))
}

/// Uncorrected share of `i` lying inside `h0`, `|I ∩ H0| / |I|`. `None` when
/// `|I|` is zero or infinite.
pub fn overlap_fraction(i: &ExtendedInterval, h0: &ExtendedInterval) -> Option<f64> {
    let len_i = i.length().get();
    if len_i == 0.0 || len_i.is_infinite() {
        return None;
    }
    let overlap = i.intersect(h0).map_or(0.0, |o| o.length().get());
    Some(overlap / len_i)
}

/// Second-generation p-value of interval estimate `i` against null `h0`.
pub fn second_gen_p(i: &ExtendedInterval, h0: &NullSpec) -> Result<SgpvResult> {
    let (p_delta, correction_applied) = overlap_proportion(i, h0.interval())?;
    let classification = classify(p_delta)?;
    let delta_gap = if p_delta == 0.0 { delta_gap(i, h0) } else { None };
    Ok(SgpvResult { p_delta, classification, correction_applied, delta_gap })
}

/// Distance between a non-overlapping estimate and the null, in δ units.
///
/// Positive when `i` lies above the null, negative when below. Intervals that
/// only touch the null at an endpoint have a gap of zero. `None` whenever the
/// overlap has positive length or `i` sits inside the null.
pub fn delta_gap(i: &ExtendedInterval, h0: &NullSpec) -> Option<f64> {
    if i.is_subset_of(h0.interval()) {
        return None;
    }
    if i.lo() >= h0.hi() {
        Some((i.lo() - h0.hi()) / h0.delta())
    } else if i.hi() <= h0.lo() {
        Some((i.hi() - h0.lo()) / h0.delta())
    } else {
        None
    }
}

/// Two-sided z-test p-value against the point null `theta0`.
pub fn traditional_p(estimate: f64, se: f64, theta0: f64) -> Result<f64> {
    check_se(se)?;
    Ok((2.0 * std_normal_cdf(-(estimate - theta0).abs() / se)).min(1.0))
}

/// Largest two-sided z-test p-value over every point in the null interval.
pub fn max_p_over_null(estimate: f64, se: f64, h0: &NullSpec) -> Result<f64> {
    check_se(se)?;
    if h0.interval().contains_point(estimate) {
        return Ok(1.0);
    }
    let d = if estimate < h0.lo() { h0.lo() - estimate } else { estimate - h0.hi() };
    Ok((2.0 * std_normal_cdf(-d / se)).min(1.0))
}

fn check_se(se: f64) -> Result<()> {
    if se > 0.0 && se.is_finite() {
        Ok(())
    } else {
        Err(SgpvError::InvalidScale(se))
    }
}

/// Round half away from zero to `digits` decimals.
pub fn round_decimals(x: f64, digits: u32) -> f64 {
    let scale = 10f64.powi(digits as i32);
    (x * scale).round() / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> ExtendedInterval {
        ExtendedInterval::new(lo, hi).unwrap()
    }

    fn sbp_null() -> NullSpec {
        NullSpec::symmetric(146.0, 2.0).unwrap()
    }

    #[test]
    fn null_spec_construction() {
        let n = NullSpec::from_bounds(0.0, 0.025).unwrap();
        assert_eq!(n.delta(), 0.0125);
        assert_eq!(n.point_null(), 0.0125);
        assert!(NullSpec::symmetric(0.0, 0.0).is_err());
        assert!(NullSpec::symmetric(0.0, -1.0).is_err());
        assert!(NullSpec::from_bounds(1.0, 1.0).is_err());
        assert!(NullSpec::from_bounds(0.0, f64::INFINITY).is_err());
        let fc = NullSpec::log10_fold_change(2.0).unwrap();
        assert!((fc.hi() - std::f64::consts::LOG10_2).abs() < 1e-15);
    }

    #[test]
    fn study_three_overlap_fraction() {
        let r = second_gen_p(&iv(142.55, 147.45), &sbp_null()).unwrap();
        assert_eq!(round_decimals(r.p_delta, 4), 0.7041);
        assert_eq!(r.classification, Classification::Inconclusive);
        assert!(!r.correction_applied);
        assert_eq!(r.delta_gap, None);
    }

    #[test]
    fn study_four_correction() {
        let r = second_gen_p(&iv(141.59, 150.41), &sbp_null()).unwrap();
        assert!((r.p_delta - 0.5).abs() < 1e-12);
        assert!(r.correction_applied);
        assert_eq!(r.classification, Classification::Inconclusive);
    }

    #[test]
    fn null_and_alternative_compatible() {
        let r = second_gen_p(&iv(145.02, 146.98), &sbp_null()).unwrap();
        assert_eq!(r.p_delta, 1.0);
        assert_eq!(r.classification, Classification::NullCompatible);
        let r = second_gen_p(&iv(140.04, 143.96), &sbp_null()).unwrap();
        assert_eq!(r.p_delta, 0.0);
        assert_eq!(r.classification, Classification::AlternativeCompatible);
        assert!((r.delta_gap.unwrap() + 0.02).abs() < 1e-9);
    }

    #[test]
    fn supplementary_fixtures() {
        // |I| = 1.14 exceeds 2|H0| = 0.4, so the corrected form applies; the
        // bare overlap fraction is 0.05/1.14.
        let log_or = NullSpec::from_bounds(-0.1, 0.1).unwrap();
        let r = second_gen_p(&iv(0.05, 1.19), &log_or).unwrap();
        assert!(r.correction_applied);
        assert!((r.p_delta - 0.125).abs() < 1e-12);
        assert_eq!(r.classification, Classification::Inconclusive);
        let frac = overlap_fraction(&iv(0.05, 1.19), log_or.interval()).unwrap();
        assert!((frac - 0.0439).abs() < 5e-4);
        let r2 = NullSpec::from_bounds(0.0, 0.025).unwrap();
        let r = second_gen_p(&iv(0.0231, 0.0427), &r2).unwrap();
        assert!((r.p_delta - 0.097).abs() < 1e-3);
    }

    #[test]
    fn delta_gaps() {
        let h0 = NullSpec::symmetric(0.0, 0.3).unwrap();
        assert!((delta_gap(&iv(2.11, 2.87), &h0).unwrap() - 6.03).abs() < 0.01);
        assert!((delta_gap(&iv(1.22, 1.64), &h0).unwrap() - 3.07).abs() < 0.01);
        assert!(delta_gap(&iv(-2.87, -2.11), &h0).unwrap() < 0.0);
        assert_eq!(delta_gap(&iv(142.55, 147.45), &sbp_null()), None);
    }

    #[test]
    fn touching_endpoint_is_zero_with_zero_gap() {
        let h0 = NullSpec::symmetric(0.0, 1.0).unwrap();
        let r = second_gen_p(&iv(1.0, 3.0), &h0).unwrap();
        assert_eq!(r.p_delta, 0.0);
        assert_eq!(r.delta_gap, Some(0.0));
    }

    #[test]
    fn degenerate_point_estimate() {
        let h0 = NullSpec::symmetric(0.0, 1.0).unwrap();
        assert_eq!(second_gen_p(&iv(0.5, 0.5), &h0).unwrap().p_delta, 1.0);
        assert_eq!(second_gen_p(&iv(1.5, 1.5), &h0).unwrap().p_delta, 0.0);
    }

    #[test]
    fn infinite_cases() {
        let h0 = NullSpec::symmetric(0.0, 1.0).unwrap();
        // One-sided estimate overlapping half the null.
        let r = second_gen_p(&iv(0.0, f64::INFINITY), &h0).unwrap();
        assert!((r.p_delta - 0.25).abs() < 1e-15);
        assert!(r.correction_applied);
        // Covering the null entirely gives the ½ ceiling.
        let r = second_gen_p(&iv(-5.0, f64::INFINITY), &h0).unwrap();
        assert_eq!(r.p_delta, 0.5);
        // Disjoint one-sided estimate.
        let r = second_gen_p(&iv(2.0, f64::INFINITY), &h0).unwrap();
        assert_eq!(r.p_delta, 0.0);
        assert_eq!(r.delta_gap, Some(1.0));
        assert_eq!(
            second_gen_p(&ExtendedInterval::real_line(), &h0),
            Err(SgpvError::UnboundedEstimate)
        );
    }

    #[test]
    fn two_infinite_intervals() {
        let c = 1.0;
        let d = 4.0;
        let (p, _) = overlap_proportion(&iv(c, f64::INFINITY), &iv(f64::NEG_INFINITY, d)).unwrap();
        assert_eq!(p, 0.0);
        let (p, _) = overlap_proportion(&iv(c, f64::INFINITY), &iv(0.0, f64::INFINITY)).unwrap();
        assert_eq!(p, 1.0);
        let (p, _) = overlap_proportion(&iv(-1.0, f64::INFINITY), &iv(0.0, f64::INFINITY)).unwrap();
        assert_eq!(p, 1.0);
        // Finite estimate against an infinite null is just the overlap fraction.
        let (p, _) = overlap_proportion(&iv(-1.0, 3.0), &iv(0.0, f64::INFINITY)).unwrap();
        assert_eq!(p, 0.75);
    }

    #[test]
    fn classify_values() {
        assert_eq!(classify(0.0).unwrap(), Classification::AlternativeCompatible);
        assert_eq!(classify(1.0).unwrap(), Classification::NullCompatible);
        assert_eq!(classify(0.7041).unwrap(), Classification::Inconclusive);
        assert_eq!(classify(1.5), Err(SgpvError::InvalidProportion(1.5)));
        assert!(classify(f64::NAN).is_err());
    }

    #[test]
    fn comparison_p_values() {
        assert_eq!(round_decimals(traditional_p(145.5, 0.25, 146.0).unwrap(), 4), 0.0455);
        assert_eq!(traditional_p(146.0, 0.5, 146.0).unwrap(), 1.0);
        assert_eq!(round_decimals(traditional_p(144.0, 1.0, 146.0).unwrap(), 4), 0.0455);
        assert_eq!(traditional_p(1.0, 0.0, 0.0), Err(SgpvError::InvalidScale(0.0)));

        let h0 = sbp_null();
        assert_eq!(max_p_over_null(145.0, 1.25, &h0).unwrap(), 1.0);
        assert_eq!(round_decimals(max_p_over_null(143.5, 0.5, &h0).unwrap(), 4), 0.3173);
        assert_eq!(round_decimals(max_p_over_null(142.0, 1.0, &h0).unwrap(), 4), 0.0455);
        assert!(max_p_over_null(1.0, -2.0, &h0).is_err());
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round_decimals(0.00005, 4), 0.0001);
        assert_eq!(round_decimals(-0.00005, 4), -0.0001);
        assert_eq!(round_decimals(0.70408, 4), 0.7041);
    }

    fn finite_interval() -> impl Strategy<Value = ExtendedInterval> {
        (-10.0..10.0f64, 0.0..8.0f64).prop_map(|(a, w)| iv(a, a + w))
    }

    fn null_spec() -> impl Strategy<Value = NullSpec> {
        (-3.0..3.0f64, 0.01..3.0f64).prop_map(|(c, d)| NullSpec::symmetric(c, d).unwrap())
    }

    proptest! {
        #[test]
        fn result_invariants(i in finite_interval(), h0 in null_spec()) {
            let r = second_gen_p(&i, &h0).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.p_delta));
            prop_assert_eq!(r.classification, classify(r.p_delta).unwrap());
            prop_assert_eq!(r.delta_gap.is_some(), r.p_delta == 0.0);
            if r.correction_applied {
                prop_assert!(r.p_delta <= 0.5);
            }
            let overlap = i.intersect(h0.interval());
            let empty = overlap.is_none_or(|o| o.length().get() == 0.0) && !i.is_subset_of(h0.interval());
            prop_assert_eq!(r.p_delta == 0.0, empty);
            prop_assert_eq!(r.p_delta == 1.0, i.is_subset_of(h0.interval()));
        }

        #[test]
        fn correction_branch(i in finite_interval(), h0 in null_spec()) {
            let r = second_gen_p(&i, &h0).unwrap();
            let wide = i.length().get() > 2.0 * h0.interval().length().get();
            if !i.is_subset_of(h0.interval()) {
                prop_assert_eq!(r.correction_applied, wide);
            }
            if wide {
                let covers = h0.interval().is_subset_of(&i);
                prop_assert_eq!((r.p_delta - 0.5).abs() < 1e-12, covers);
            }
        }

        #[test]
        fn gap_sign_flips_under_negation(i in finite_interval(), h0 in null_spec()) {
            let neg_h0 = NullSpec::symmetric(-h0.point_null(), h0.delta()).unwrap();
            let a = delta_gap(&i, &h0);
            let b = delta_gap(&i.negate(), &neg_h0);
            match (a, b) {
                (Some(x), Some(y)) => prop_assert!((x + y).abs() < 1e-9),
                (None, None) => {}
                _ => prop_assert!(false, "gap presence differs under negation"),
            }
        }
    }
}
