//! Closed intervals over the extended reals.
//!
//! Both the interval estimate and the interval null are [`ExtendedInterval`]s.
//! Endpoints may be infinite, which is how one-sided estimates such as
//! `[c, +inf)` are represented. NaN is rejected at construction, and an
//! interval may not collapse to a single point at infinity, so `inf - inf`
//! never arises when taking lengths.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SgpvError};
use crate::normal::std_normal_quantile;

/// A real number or one of the two infinities. Never NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const POS_INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            Err(SgpvError::NotANumber)
        } else {
            Ok(ExtReal(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl Eq for ExtReal {}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is unrepresentable, so the partial order is total.
        self.0.partial_cmp(&other.0).expect("ExtReal is never NaN")
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<f64> for ExtReal {
    type Error = SgpvError;

    fn try_from(value: f64) -> Result<Self> {
        ExtReal::new(value)
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        ExtReal::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Length of an interval on the effect scale. Nonnegative, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct IntervalLength(f64);

impl IntervalLength {
    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

/// Nonempty closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedInterval {
    lo: ExtReal,
    hi: ExtReal,
}

impl ExtendedInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let (lo_x, hi_x) = match (ExtReal::new(lo), ExtReal::new(hi)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Err(SgpvError::InvalidInterval { lo, hi, reason: "endpoint is NaN" }),
        };
        if lo_x > hi_x {
            return Err(SgpvError::InvalidInterval { lo, hi, reason: "lower bound exceeds upper bound" });
        }
        if lo == hi && lo.is_infinite() {
            return Err(SgpvError::InvalidInterval { lo, hi, reason: "single point at infinity" });
        }
        Ok(ExtendedInterval { lo: lo_x, hi: hi_x })
    }

    /// The whole real line `(-inf, +inf)`.
    pub fn real_line() -> Self {
        ExtendedInterval { lo: ExtReal::NEG_INFINITY, hi: ExtReal::POS_INFINITY }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo.get()
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi.get()
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo() + self.hi())
    }

    pub fn length(&self) -> IntervalLength {
        IntervalLength(self.hi() - self.lo())
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_real_line(&self) -> bool {
        self.lo == ExtReal::NEG_INFINITY && self.hi == ExtReal::POS_INFINITY
    }

    pub fn contains_point(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    /// True when `self` is a subset of `other`.
    pub fn is_subset_of(&self, other: &ExtendedInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Overlap of two intervals. Touching endpoints give a zero-length interval.
    pub fn intersect(&self, other: &ExtendedInterval) -> Option<ExtendedInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(ExtendedInterval { lo, hi })
    }

    /// Clip `self` to `bounds`, typically the range of effects that are
    /// physically possible.
    pub fn truncate(&self, bounds: &ExtendedInterval) -> Result<ExtendedInterval> {
        self.intersect(bounds).ok_or(SgpvError::TruncationEmpty)
    }

    /// Apply a strictly increasing map to both endpoints.
    pub fn map_monotone(&self, f: impl Fn(f64) -> f64) -> Result<ExtendedInterval> {
        ExtendedInterval::new(f(self.lo()), f(self.hi()))
    }

    /// Reflect about zero.
    pub fn negate(&self) -> ExtendedInterval {
        ExtendedInterval { lo: ExtReal(-self.hi()), hi: ExtReal(-self.lo()) }
    }
}

impl fmt::Display for ExtendedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Normal-theory interval `estimate ± z·se` at the given coverage level.
pub fn z_interval(estimate: f64, se: f64, level: f64) -> Result<ExtendedInterval> {
    if !(se > 0.0 && se.is_finite()) {
        return Err(SgpvError::InvalidScale(se));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(SgpvError::InvalidProbability(level));
    }
    let q = std_normal_quantile(0.5 * (1.0 + level))?;
    ExtendedInterval::new(estimate - q * se, estimate + q * se)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> ExtendedInterval {
        ExtendedInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(ExtendedInterval::new(f64::NAN, 1.0).is_err());
        assert!(ExtendedInterval::new(2.0, 1.0).is_err());
        assert!(ExtendedInterval::new(f64::INFINITY, f64::INFINITY).is_err());
        assert!(ExtendedInterval::new(f64::NEG_INFINITY, f64::NEG_INFINITY).is_err());
        assert!(ExtReal::new(f64::NAN).is_err());
    }

    #[test]
    fn lengths() {
        assert!((iv(142.55, 147.45).length().get() - 4.9).abs() < 1e-12);
        assert_eq!(iv(3.0, 3.0).length().get(), 0.0);
        assert_eq!(iv(0.0, f64::INFINITY).length().get(), f64::INFINITY);
        assert_eq!(ExtendedInterval::real_line().length().get(), f64::INFINITY);
    }

    #[test]
    fn intersections() {
        let h0 = iv(144.0, 148.0);
        assert_eq!(iv(142.55, 147.45).intersect(&h0), Some(iv(144.0, 147.45)));
        assert_eq!(iv(140.04, 143.96).intersect(&h0), None);
        assert_eq!(iv(1.0, 2.0).intersect(&iv(0.0, 3.0)), Some(iv(1.0, 2.0)));
        let touch = iv(0.0, 1.0).intersect(&iv(1.0, 2.0)).unwrap();
        assert_eq!(touch.length().get(), 0.0);
    }

    #[test]
    fn truncation() {
        let c = 1.5;
        let m = 10.0;
        assert_eq!(iv(c, f64::INFINITY).truncate(&iv(c, m)).unwrap(), iv(c, m));
        assert_eq!(iv(f64::NEG_INFINITY, 4.0).truncate(&iv(-2.0, 7.0)).unwrap(), iv(-2.0, 4.0));
        assert_eq!(iv(0.0, 1.0).truncate(&iv(2.0, 3.0)), Err(SgpvError::TruncationEmpty));
    }

    #[test]
    fn z_interval_table_one_bounds() {
        let i = z_interval(146.0, 0.5, 0.95).unwrap();
        assert!((i.lo() - 145.02).abs() < 0.005 && (i.hi() - 146.98).abs() < 0.005);
        let i = z_interval(145.0, 1.25, 0.95).unwrap();
        assert!((i.lo() - 142.55).abs() < 0.005 && (i.hi() - 147.45).abs() < 0.005);
    }

    #[test]
    fn z_interval_errors_and_limit() {
        assert_eq!(z_interval(0.0, 0.0, 0.95), Err(SgpvError::InvalidScale(0.0)));
        assert_eq!(z_interval(0.0, -1.0, 0.95), Err(SgpvError::InvalidScale(-1.0)));
        assert!(z_interval(0.0, 1.0, 1.0).is_err());
        let narrow = z_interval(7.0, 2.0, 1e-9).unwrap();
        assert!(narrow.length().get() < 1e-8);
        assert!(narrow.contains_point(7.0));
    }

    fn finite_interval() -> impl Strategy<Value = ExtendedInterval> {
        (-100.0..100.0f64, 0.0..50.0f64).prop_map(|(a, w)| iv(a, a + w))
    }

    proptest! {
        #[test]
        fn intersect_is_commutative_and_idempotent(a in finite_interval(), b in finite_interval()) {
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
            prop_assert_eq!(a.intersect(&a), Some(a));
        }

        #[test]
        fn intersect_is_associative(a in finite_interval(), b in finite_interval(), c in finite_interval()) {
            let left = a.intersect(&b).and_then(|ab| ab.intersect(&c));
            let right = b.intersect(&c).and_then(|bc| a.intersect(&bc));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn overlap_no_longer_than_either(a in finite_interval(), b in finite_interval()) {
            if let Some(o) = a.intersect(&b) {
                prop_assert!(o.length() <= a.length());
                prop_assert!(o.length() <= b.length());
            }
        }

        #[test]
        fn z_interval_symmetric(est in -1e3..1e3f64, se in 1e-3..1e2f64, level in 0.01..0.999f64) {
            let i = z_interval(est, se, level).unwrap();
            let q = std_normal_quantile(0.5 * (1.0 + level)).unwrap();
            let tol = 1e-12 * (est.abs() + q * se).max(1.0);
            prop_assert!(((est - i.lo()) - (i.hi() - est)).abs() <= tol);
            prop_assert!((i.length().get() - 2.0 * q * se).abs() <= tol);
        }
    }
}
