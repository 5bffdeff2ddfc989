//! Second-generation p-values (`p_δ`) for interval estimates against interval
//! null hypotheses, their frequency properties under the normal model, false
//! discovery and confirmation rates, and a batch screening workflow.
//!
//! ```
//! use sgpv::{second_gen_p, ExtendedInterval, NullSpec};
//!
//! let estimate = ExtendedInterval::new(142.55, 147.45).unwrap();
//! let null = NullSpec::symmetric(146.0, 2.0).unwrap();
//! let r = second_gen_p(&estimate, &null).unwrap();
//! assert!((r.p_delta - 0.7041).abs() < 1e-4);
//! ```

// `!(a < b)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod design;
pub mod error;
pub mod intervals;
pub mod normal;
pub mod reliability;
pub mod screening;
pub mod sgpv;
pub mod simulate;

pub use design::{
    correction_trigger_power, emit_power_curve, outcome_probs, prob_alt, prob_inconclusive, prob_null,
    required_interval_ratio, CurveRow, DesignConfig, OutcomeProbs,
};
pub use error::{Result, SgpvError};
pub use intervals::{z_interval, ExtReal, ExtendedInterval, IntervalLength};
pub use normal::{std_normal_cdf, std_normal_quantile};
pub use reliability::{
    emit_reliability_curve, fcr_sgpv, fdr_sgpv, fdr_test, fnr_test, PriorOdds, ReliabilityPoint,
};
pub use screening::{
    batch_sgpv, bh_qvalues, bonferroni_flags, cross_tab, pointwise_track, rank_findings, two_sample_ci,
    CrossTab, GroupSummary, ScreenReport, StudyRow, TrackPoint, TwoSampleMethod,
};
pub use sgpv::{
    classify, delta_gap, max_p_over_null, overlap_fraction, round_decimals, second_gen_p, traditional_p, Classification,
    NullSpec, SgpvResult,
};
pub use simulate::{compare_outcomes, simulate_outcomes, simulate_reliability, SimConfig, SimResult};
