//! Batch screening of many interval estimates against one interval null.
//!
//! Each row gets its `p_δ` and delta-gap; when raw p-values are available the
//! report also carries Bonferroni and Benjamini–Hochberg adjustments so the
//! two ways of selecting findings can be cross-tabulated.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Result, SgpvError};
use crate::intervals::ExtendedInterval;
use crate::sgpv::{second_gen_p, Classification, NullSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub id: String,
    pub estimate: f64,
    pub interval: ExtendedInterval,
    pub p_value: Option<f64>,
}

impl StudyRow {
    pub fn new(id: impl Into<String>, estimate: f64, interval: ExtendedInterval, p_value: Option<f64>) -> Self {
        StudyRow { id: id.into(), estimate, interval, p_value }
    }

    /// Move a ratio-scale row (fold change, hazard ratio) onto the log10 scale.
    pub fn to_log10(&self) -> Result<StudyRow> {
        if !(self.estimate > 0.0 && self.interval.lo() > 0.0) {
            return Err(SgpvError::InvalidInterval {
                lo: self.interval.lo(),
                hi: self.interval.hi(),
                reason: "log10 scale needs strictly positive values",
            });
        }
        Ok(StudyRow {
            id: self.id.clone(),
            estimate: self.estimate.log10(),
            interval: self.interval.map_monotone(f64::log10)?,
            p_value: self.p_value,
        })
    }
}

/// Per-group sample summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: u64,
    pub mean: f64,
    pub sd: f64,
}

impl GroupSummary {
    pub fn new(n: u64, mean: f64, sd: f64) -> Result<Self> {
        let g = GroupSummary { n, mean, sd };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(SgpvError::InvalidSummary("each group needs at least two observations"));
        }
        if !(self.sd > 0.0 && self.sd.is_finite()) {
            return Err(SgpvError::InvalidSummary("standard deviation must be positive"));
        }
        if !self.mean.is_finite() {
            return Err(SgpvError::InvalidSummary("mean must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum TwoSampleMethod {
    #[default]
    Pooled,
    Welch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSampleResult {
    /// `mean(a) − mean(b)`.
    pub estimate: f64,
    pub interval: ExtendedInterval,
    pub p_value: f64,
    pub t_statistic: f64,
    pub df: f64,
}

/// Difference in means with a t interval and two-sided t-test p-value.
pub fn two_sample_ci(
    a: &GroupSummary,
    b: &GroupSummary,
    level: f64,
    method: TwoSampleMethod,
) -> Result<TwoSampleResult> {
    a.validate()?;
    b.validate()?;
    if !(level > 0.0 && level < 1.0) {
        return Err(SgpvError::InvalidProbability(level));
    }
    let (na, nb) = (a.n as f64, b.n as f64);
    let (va, vb) = (a.sd * a.sd / na, b.sd * b.sd / nb);
    let (se, df) = match method {
        TwoSampleMethod::Pooled => {
            let df = na + nb - 2.0;
            let pooled = ((na - 1.0) * a.sd * a.sd + (nb - 1.0) * b.sd * b.sd) / df;
            ((pooled * (1.0 / na + 1.0 / nb)).sqrt(), df)
        }
        TwoSampleMethod::Welch => {
            let df = (va + vb).powi(2) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
            ((va + vb).sqrt(), df)
        }
    };
    let t = StudentsT::new(0.0, 1.0, df).map_err(|_| SgpvError::InvalidSummary("degrees of freedom"))?;
    let estimate = a.mean - b.mean;
    let q = t.inverse_cdf(0.5 * (1.0 + level));
    let t_statistic = estimate / se;
    let p_value = (2.0 * t.sf(t_statistic.abs())).min(1.0);
    Ok(TwoSampleResult {
        estimate,
        interval: ExtendedInterval::new(estimate - q * se, estimate + q * se)?,
        p_value,
        t_statistic,
        df,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowFlag {
    /// The estimate spans the whole real line; no `p_δ` was computed.
    UnboundedEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreenRow {
    pub id: String,
    pub p_delta: Option<f64>,
    pub classification: Option<Classification>,
    pub delta_gap: Option<f64>,
    pub p_raw: Option<f64>,
    pub p_bonferroni: Option<f64>,
    pub q_bh: Option<f64>,
    pub flags: Vec<RowFlag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ClassCounts {
    pub alternative: usize,
    pub null: usize,
    pub inconclusive: usize,
    pub flagged: usize,
}

impl ClassCounts {
    pub fn total(&self) -> usize {
        self.alternative + self.null + self.inconclusive + self.flagged
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreenReport {
    pub rows: Vec<ScreenRow>,
    pub counts: ClassCounts,
}

/// Counts of rows selected by each rule at level α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecisionCounts {
    pub sgpv_zero: usize,
    pub raw: usize,
    pub bonferroni: usize,
    pub bh: usize,
}

impl ScreenReport {
    pub fn has_p_values(&self) -> bool {
        self.rows.iter().all(|r| r.p_raw.is_some())
    }

    pub fn decision_counts(&self, alpha: f64) -> Result<DecisionCounts> {
        let mut c = DecisionCounts {
            sgpv_zero: self.rows.iter().filter(|r| r.p_delta == Some(0.0)).count(),
            raw: 0,
            bonferroni: 0,
            bh: 0,
        };
        if self.rows.is_empty() {
            return Ok(c);
        }
        let p = raw_p_values(self)?;
        c.raw = p.iter().filter(|&&x| x < alpha).count();
        c.bonferroni = bonferroni_flags(&p, alpha)?.into_iter().filter(|&f| f).count();
        c.bh = self.rows.iter().filter(|r| r.q_bh.is_some_and(|q| q < alpha)).count();
        Ok(c)
    }
}

fn raw_p_values(report: &ScreenReport) -> Result<Vec<f64>> {
    report
        .rows
        .iter()
        .map(|r| r.p_raw.ok_or_else(|| SgpvError::MissingComparator(r.id.clone())))
        .collect()
}

fn check_p_values(p_values: &[f64]) -> Result<()> {
    match p_values.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
        Some(&bad) => Err(SgpvError::InvalidProbability(bad)),
        None => Ok(()),
    }
}

/// `p_i < α/m`.
pub fn bonferroni_flags(p_values: &[f64], alpha: f64) -> Result<Vec<bool>> {
    check_p_values(p_values)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(SgpvError::InvalidProbability(alpha));
    }
    let threshold = alpha / p_values.len() as f64;
    Ok(p_values.iter().map(|&p| p < threshold).collect())
}

/// `min(1, m·p)` for each p-value.
pub fn bonferroni_adjust(p_values: &[f64]) -> Result<Vec<f64>> {
    check_p_values(p_values)?;
    let m = p_values.len() as f64;
    Ok(p_values.iter().map(|&p| (m * p).min(1.0)).collect())
}

/// Benjamini–Hochberg step-up q-values, in input order.
pub fn bh_qvalues(p_values: &[f64]) -> Result<Vec<f64>> {
    check_p_values(p_values)?;
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));

    let mut q = vec![0.0; m];
    let mut running = 1.0f64;
    for (rank0, &idx) in order.iter().enumerate().rev() {
        let candidate = p_values[idx] * m as f64 / (rank0 + 1) as f64;
        running = running.min(candidate);
        q[idx] = running;
    }
    Ok(q)
}

/// Score every row against `h0`, preserving input order.
pub fn batch_sgpv(rows: &[StudyRow], h0: &NullSpec) -> Result<ScreenReport> {
    if rows.is_empty() {
        return Err(SgpvError::EmptyInput("screening rows"));
    }
    let score = |row: &StudyRow| -> Result<ScreenRow> {
        let mut out = ScreenRow {
            id: row.id.clone(),
            p_delta: None,
            classification: None,
            delta_gap: None,
            p_raw: row.p_value,
            p_bonferroni: None,
            q_bh: None,
            flags: Vec::new(),
        };
        match second_gen_p(&row.interval, h0) {
            Ok(r) => {
                out.p_delta = Some(r.p_delta);
                out.classification = Some(r.classification);
                out.delta_gap = r.delta_gap;
            }
            Err(SgpvError::UnboundedEstimate) => out.flags.push(RowFlag::UnboundedEstimate),
            Err(e) => return Err(e),
        }
        Ok(out)
    };

    #[cfg(feature = "parallel")]
    let mut scored: Vec<ScreenRow> = {
        use rayon::prelude::*;
        rows.par_iter().map(score).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let mut scored: Vec<ScreenRow> = rows.iter().map(score).collect::<Result<_>>()?;

    if let Some(p) = rows.iter().map(|r| r.p_value).collect::<Option<Vec<f64>>>() {
        let bonf = bonferroni_adjust(&p)?;
        let q = bh_qvalues(&p)?;
        for ((row, b), q) in scored.iter_mut().zip(bonf).zip(q) {
            row.p_bonferroni = Some(b);
            row.q_bh = Some(q);
        }
    }

    let mut counts = ClassCounts::default();
    for row in &scored {
        match row.classification {
            Some(Classification::AlternativeCompatible) => counts.alternative += 1,
            Some(Classification::NullCompatible) => counts.null += 1,
            Some(Classification::Inconclusive) => counts.inconclusive += 1,
            None => counts.flagged += 1,
        }
    }
    Ok(ScreenReport { rows: scored, counts })
}

/// 2×2 table of `p_δ = 0` against Bonferroni significance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CrossTab {
    pub zero_significant: usize,
    pub positive_significant: usize,
    pub zero_not_significant: usize,
    pub positive_not_significant: usize,
}

impl CrossTab {
    pub fn total(&self) -> usize {
        self.zero_significant + self.positive_significant + self.zero_not_significant + self.positive_not_significant
    }

    pub fn zero_total(&self) -> usize {
        self.zero_significant + self.zero_not_significant
    }

    pub fn significant_total(&self) -> usize {
        self.zero_significant + self.positive_significant
    }
}

/// Flagged rows (no `p_δ`) count on the `p_δ > 0` side, since their
/// estimate covers the null.
pub fn cross_tab(report: &ScreenReport, alpha: f64) -> Result<CrossTab> {
    let mut tab = CrossTab::default();
    if report.rows.is_empty() {
        return Ok(tab);
    }
    let p = raw_p_values(report)?;
    let significant = bonferroni_flags(&p, alpha)?;
    for (row, sig) in report.rows.iter().zip(significant) {
        let zero = row.p_delta == Some(0.0);
        match (zero, sig) {
            (true, true) => tab.zero_significant += 1,
            (false, true) => tab.positive_significant += 1,
            (true, false) => tab.zero_not_significant += 1,
            (false, false) => tab.positive_not_significant += 1,
        }
    }
    Ok(tab)
}

/// Row ids ordered by `p_δ` ascending, then by |delta-gap| descending among
/// `p_δ = 0`; ties keep input order. Flagged rows go last.
pub fn rank_findings(report: &ScreenReport) -> Vec<String> {
    let mut idx: Vec<usize> = (0..report.rows.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ra, rb) = (&report.rows[a], &report.rows[b]);
        let pa = ra.p_delta.unwrap_or(f64::INFINITY);
        let pb = rb.p_delta.unwrap_or(f64::INFINITY);
        pa.total_cmp(&pb).then_with(|| {
            let ga = ra.delta_gap.map_or(0.0, f64::abs);
            let gb = rb.delta_gap.map_or(0.0, f64::abs);
            gb.total_cmp(&ga)
        })
    });
    idx.into_iter().map(|i| report.rows[i].id.clone()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrackPoint {
    pub t: f64,
    pub p_delta: f64,
    pub classification: Classification,
    /// Grey intensity for inconclusive points, `p_δ` mapped linearly onto
    /// `[0, 1]`; `None` for the two definitive outcomes.
    pub grey_level: Option<f64>,
}

impl TrackPoint {
    /// Rug-plot color name.
    pub fn color(&self) -> &'static str {
        match self.classification {
            Classification::AlternativeCompatible => "green",
            Classification::NullCompatible => "red",
            Classification::Inconclusive => "grey",
        }
    }
}

/// `p_δ` at every point of a series of intervals indexed by `t`.
pub fn pointwise_track(series: &[(f64, ExtendedInterval)], h0: &NullSpec) -> Result<Vec<TrackPoint>> {
    if series.is_empty() {
        return Err(SgpvError::InvalidSeries("series is empty".into()));
    }
    for (k, w) in series.windows(2).enumerate() {
        if !(w[1].0 > w[0].0) {
            return Err(SgpvError::InvalidSeries(format!(
                "t must be strictly increasing (point {}: {} after {})",
                k + 2,
                w[1].0,
                w[0].0
            )));
        }
    }
    if let Some((t, _)) = series.iter().find(|(t, _)| !t.is_finite()) {
        return Err(SgpvError::InvalidSeries(format!("non-finite t {t}")));
    }
    series
        .iter()
        .map(|(t, interval)| {
            let r = second_gen_p(interval, h0)?;
            let grey_level = (r.classification == Classification::Inconclusive).then_some(r.p_delta);
            Ok(TrackPoint { t: *t, p_delta: r.p_delta, classification: r.classification, grey_level })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> ExtendedInterval {
        ExtendedInterval::new(lo, hi).unwrap()
    }

    fn row(id: &str, lo: f64, hi: f64, p: Option<f64>) -> StudyRow {
        StudyRow::new(id, 0.5 * (lo + hi), iv(lo, hi), p)
    }

    #[test]
    fn identical_groups() {
        let g = GroupSummary::new(12, 3.0, 1.5).unwrap();
        let r = two_sample_ci(&g, &g, 0.95, TwoSampleMethod::Pooled).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!((r.interval.lo() + r.interval.hi()).abs() < 1e-15);
    }

    #[test]
    fn doubling_sd_scales_interval() {
        let a = GroupSummary::new(10, 1.0, 1.0).unwrap();
        let b = GroupSummary::new(14, 0.2, 1.3).unwrap();
        let a2 = GroupSummary::new(10, 1.0, 2.0).unwrap();
        let b2 = GroupSummary::new(14, 0.2, 2.6).unwrap();
        for m in [TwoSampleMethod::Pooled, TwoSampleMethod::Welch] {
            let r1 = two_sample_ci(&a, &b, 0.95, m).unwrap();
            let r2 = two_sample_ci(&a2, &b2, 0.95, m).unwrap();
            let w1 = r1.interval.length().get();
            let w2 = r2.interval.length().get();
            assert!((w2 / w1 - 2.0).abs() < 1e-12);
            assert!((r2.t_statistic * 2.0 - r1.t_statistic).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_summaries() {
        assert!(GroupSummary::new(1, 0.0, 1.0).is_err());
        assert!(GroupSummary::new(5, 0.0, 0.0).is_err());
        let bad = GroupSummary { n: 1, mean: 0.0, sd: 1.0 };
        let ok = GroupSummary::new(5, 0.0, 1.0).unwrap();
        assert!(matches!(
            two_sample_ci(&bad, &ok, 0.95, TwoSampleMethod::Pooled),
            Err(SgpvError::InvalidSummary(_))
        ));
    }

    #[test]
    fn bonferroni() {
        assert_eq!(bonferroni_flags(&[0.04], 0.05).unwrap(), vec![true]);
        assert_eq!(bonferroni_flags(&[0.01, 0.02, 0.5], 0.05).unwrap(), vec![true, false, false]);
        assert_eq!(bonferroni_flags(&[1.0, 1.0], 0.05).unwrap(), vec![false, false]);
        assert!(bonferroni_flags(&[0.0], 0.05).is_err());
        assert!(bonferroni_flags(&[1.2], 0.05).is_err());
    }

    #[test]
    fn benjamini_hochberg() {
        assert_eq!(bh_qvalues(&[0.3]).unwrap(), vec![0.3]);
        let q = bh_qvalues(&[0.01, 0.04]).unwrap();
        assert!((q[0] - 0.02).abs() < 1e-15 && (q[1] - 0.04).abs() < 1e-15);
        let q = bh_qvalues(&[0.04, 0.01]).unwrap();
        assert!((q[0] - 0.04).abs() < 1e-15 && (q[1] - 0.02).abs() < 1e-15);
        assert!(bh_qvalues(&[f64::NAN]).is_err());
    }

    #[test]
    fn screening_fixtures() {
        let hr = NullSpec::from_bounds(0.9, 1.1).unwrap();
        let rep = batch_sgpv(&[row("hr", 1.23, 2.36, None)], &hr).unwrap();
        assert_eq!(rep.rows[0].p_delta, Some(0.0));

        let fc = NullSpec::log10_fold_change(2.0).unwrap();
        let gene350 = StudyRow::new("350", 1.62, iv(1.36, 1.94), None).to_log10().unwrap();
        let gene6345 = StudyRow::new("6345", 7.75, iv(2.02, 29.74), None).to_log10().unwrap();
        let rep = batch_sgpv(&[gene350, gene6345], &fc).unwrap();
        assert_eq!(rep.rows[0].p_delta, Some(1.0));
        assert_eq!(rep.rows[1].p_delta, Some(0.0));
        assert_eq!(rep.counts.null, 1);
        assert_eq!(rep.counts.alternative, 1);
    }

    #[test]
    fn unbounded_rows_are_flagged() {
        let h0 = NullSpec::symmetric(0.0, 1.0).unwrap();
        let rows = vec![
            StudyRow::new("all", 0.0, ExtendedInterval::real_line(), Some(0.5)),
            row("ok", 2.0, 3.0, Some(0.01)),
        ];
        let rep = batch_sgpv(&rows, &h0).unwrap();
        assert_eq!(rep.rows[0].flags, vec![RowFlag::UnboundedEstimate]);
        assert_eq!(rep.rows[0].p_delta, None);
        assert_eq!(rep.counts.flagged, 1);
        assert_eq!(rep.counts.total(), 2);
        assert_eq!(rank_findings(&rep), vec!["ok".to_string(), "all".to_string()]);
    }

    #[test]
    fn log10_requires_positive() {
        assert!(row("x", -1.0, 2.0, None).to_log10().is_err());
    }

    #[test]
    fn ranking_by_gap() {
        let h0 = NullSpec::symmetric(0.0, 0.3).unwrap();
        let rows = vec![
            row("3252", 1.22, 1.64, Some(1e-9)),
            row("inc", 0.2, 0.6, Some(0.01)),
            row("2288", 2.11, 2.87, Some(1e-8)),
            row("null", -0.1, 0.1, Some(0.9)),
        ];
        let rep = batch_sgpv(&rows, &h0).unwrap();
        assert_eq!(rank_findings(&rep), vec!["2288", "3252", "inc", "null"]);
    }

    #[test]
    fn cross_tab_edges() {
        let h0 = NullSpec::symmetric(0.0, 1.0).unwrap();
        let rows = vec![row("a", 2.0, 3.0, Some(1e-6)), row("b", -5.0, -4.0, Some(1e-7))];
        let rep = batch_sgpv(&rows, &h0).unwrap();
        let tab = cross_tab(&rep, 0.05).unwrap();
        assert_eq!(tab.zero_significant, 2);
        assert_eq!(tab.positive_significant + tab.zero_not_significant, 0);

        let empty = ScreenReport { rows: vec![], counts: ClassCounts::default() };
        assert_eq!(cross_tab(&empty, 0.05).unwrap(), CrossTab::default());

        let rep = batch_sgpv(&[row("a", 2.0, 3.0, None)], &h0).unwrap();
        assert!(matches!(cross_tab(&rep, 0.05), Err(SgpvError::MissingComparator(_))));
    }

    #[test]
    fn track_points() {
        let h0 = NullSpec::symmetric(0.0, 0.05).unwrap();
        let series = vec![(1.0, iv(-0.01, 0.01)), (2.0, iv(0.07, 0.20)), (3.0, iv(0.02, 0.10))];
        let pts = pointwise_track(&series, &h0).unwrap();
        assert_eq!(pts[0].classification, Classification::NullCompatible);
        assert_eq!(pts[0].color(), "red");
        assert_eq!(pts[1].classification, Classification::AlternativeCompatible);
        assert_eq!(pts[1].color(), "green");
        assert_eq!(pts[2].classification, Classification::Inconclusive);
        assert!((pts[2].p_delta - 0.375).abs() < 1e-12);
        assert_eq!(pts[2].grey_level, Some(pts[2].p_delta));

        let bad = vec![(2.0, iv(0.0, 1.0)), (2.0, iv(0.0, 1.0))];
        assert!(matches!(pointwise_track(&bad, &h0), Err(SgpvError::InvalidSeries(_))));
        assert!(pointwise_track(&[], &h0).is_err());
        assert_eq!(pointwise_track(&series[..1], &h0).unwrap().len(), 1);
    }

    proptest! {
        #[test]
        fn bh_properties(p in prop::collection::vec(1e-6..=1.0f64, 1..40)) {
            let q = bh_qvalues(&p).unwrap();
            let m = p.len() as f64;
            let mut order: Vec<usize> = (0..p.len()).collect();
            order.sort_by(|&a, &b| p[a].total_cmp(&p[b]));
            for w in order.windows(2) {
                prop_assert!(q[w[0]] <= q[w[1]]);
            }
            for (k, &i) in order.iter().enumerate() {
                prop_assert!(q[i] >= p[i] - 1e-15);
                prop_assert!(q[i] <= (p[i] * m / (k + 1) as f64) + 1e-15);
                prop_assert!(q[i] <= 1.0);
            }
        }

        #[test]
        fn batch_is_rowwise(
            spans in prop::collection::vec((-3.0..3.0f64, 0.0..2.0f64), 1..20),
            seed in any::<u64>(),
        ) {
            let h0 = NullSpec::symmetric(0.0, 0.5).unwrap();
            let rows: Vec<StudyRow> = spans.iter().enumerate()
                .map(|(k, &(a, w))| row(&k.to_string(), a, a + w, None)).collect();
            let mut perm: Vec<usize> = (0..rows.len()).collect();
            // Deterministic shuffle from the seed.
            let mut s = seed;
            for i in (1..perm.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let shuffled: Vec<StudyRow> = perm.iter().map(|&i| rows[i].clone()).collect();
            let a = batch_sgpv(&rows, &h0).unwrap();
            let b = batch_sgpv(&shuffled, &h0).unwrap();
            for (k, &i) in perm.iter().enumerate() {
                prop_assert_eq!(&b.rows[k], &a.rows[i]);
            }
            prop_assert_eq!(a.counts, b.counts);
            // Every p_δ = 0 row ranks ahead of every p_δ > 0 row.
            let ranked = rank_findings(&a);
            let zero: Vec<bool> = ranked.iter()
                .map(|id| a.rows.iter().find(|r| &r.id == id).unwrap().p_delta == Some(0.0)).collect();
            prop_assert!(zero.windows(2).all(|w| w[0] || !w[1]));
        }
    }
}
