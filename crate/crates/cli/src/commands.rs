use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};
use sgpv::design::{emit_power_curve, DesignConfig, POWER_CURVE_HEADER};
use sgpv::reliability::{emit_reliability_curve, fcr_sgpv, fdr_sgpv, PriorOdds, RELIABILITY_HEADER};
use sgpv::screening::{
    batch_sgpv, cross_tab, pointwise_track, rank_findings, two_sample_ci, GroupSummary, StudyRow, TwoSampleMethod,
};
use sgpv::simulate::{compare_outcomes, simulate_reliability, SimConfig};
use sgpv::{second_gen_p, z_interval, ExtendedInterval, NullSpec, SgpvError};

use crate::config::{parse_grid, FileConfig, RunConfig};
use crate::error::CliError;
use crate::table::{emit, round_json, Cell, Input, Table};

pub const COMPUTE_HEADER: [&str; 7] = ["id", "lo", "hi", "p_delta", "classification", "correction_applied", "delta_gap"];
pub const SCREEN_HEADER: [&str; 8] = ["id", "p_delta", "classification", "delta_gap", "p_raw", "p_bonferroni", "q_bh", "rank"];
pub const TRACK_HEADER: [&str; 4] = ["t", "p_delta", "classification", "grey_level"];

fn input_err(line: u64, e: SgpvError) -> CliError {
    CliError::Input(format!("line {line}: {e}"))
}

fn config_err(e: SgpvError) -> CliError {
    CliError::Config(e.to_string())
}

fn row_id(input: &Input, rec: &csv::StringRecord, line: u64) -> String {
    input.optional(rec, "id").map_or_else(|| line.to_string(), str::to_string)
}

fn to_log10(interval: &ExtendedInterval, line: u64) -> Result<ExtendedInterval, CliError> {
    if !(interval.lo() > 0.0) {
        return Err(CliError::Input(format!(
            "line {line}: --log10 needs positive endpoints, got [{}, {}]",
            interval.lo(),
            interval.hi()
        )));
    }
    interval.map_monotone(f64::log10).map_err(|e| input_err(line, e))
}

pub fn compute(input_path: Option<&Path>, cfg: &RunConfig) -> Result<(), CliError> {
    let null = cfg.null.to_spec()?;
    let input = Input::read(input_path)?;
    let mut table = Table::new(&COMPUTE_HEADER);
    if !input.is_empty() {
        let intervals = input.has(&["lo", "hi"]);
        if !intervals && !input.has(&["estimate", "se"]) {
            return Err(CliError::Input("input needs columns lo,hi or estimate,se".into()));
        }
        if cfg.log10 && !intervals {
            return Err(CliError::Config("--log10 applies to lo,hi input only".into()));
        }
        for (line, rec) in &input.records {
            let line = *line;
            let interval = if intervals {
                let iv = ExtendedInterval::new(input.number(line, rec, "lo")?, input.number(line, rec, "hi")?)
                    .map_err(|e| input_err(line, e))?;
                if cfg.log10 {
                    to_log10(&iv, line)?
                } else {
                    iv
                }
            } else {
                let est = input.number(line, rec, "estimate")?;
                let se = input.number(line, rec, "se")?;
                z_interval(est, se, cfg.level).map_err(|e| input_err(line, e))?
            };
            let r = second_gen_p(&interval, &null).map_err(|e| input_err(line, e))?;
            table.push(vec![
                Cell::Text(row_id(&input, rec, line)),
                Cell::Exact(interval.lo()),
                Cell::Exact(interval.hi()),
                Cell::Num(r.p_delta),
                Cell::Text(r.classification.as_str().into()),
                Cell::Bool(r.correction_applied),
                r.delta_gap.into(),
            ]);
        }
    }
    emit(&table, cfg.format, cfg.digits, cfg.out.as_ref(), None)
}

pub struct DesignArgs {
    pub n: Option<f64>,
    pub variance: Option<f64>,
    pub grid: Option<String>,
}

fn design_config(cfg: &RunConfig, n: Option<f64>, variance: Option<f64>) -> Result<DesignConfig, CliError> {
    let (theta0, delta) = cfg.null.center_and_delta();
    let n = n.ok_or_else(|| CliError::Config("--n is required".into()))?;
    DesignConfig::new(theta0, delta, n, variance.unwrap_or(1.0), cfg.alpha).map_err(config_err)
}

/// Default grid: 201 points over `θ0 ± (2δ + 4·SE)`.
fn default_grid(d: &DesignConfig) -> Vec<f64> {
    let half = 2.0 * d.delta + 4.0 * d.std_error();
    (0..=200).map(|k| d.theta0 - half + half * k as f64 / 100.0).collect()
}

pub fn design(args: &DesignArgs, file: &FileConfig, cfg: &RunConfig) -> Result<(), CliError> {
    let d = design_config(cfg, args.n.or(file.n), args.variance.or(file.variance))?;
    let grid = match args.grid.as_deref().or(file.grid.as_deref()) {
        Some(spec) => parse_grid(spec)?,
        None => default_grid(&d),
    };
    let rows = emit_power_curve(&d, &grid).map_err(config_err)?;
    let mut table = Table::new(&POWER_CURVE_HEADER);
    for r in rows {
        table.push(vec![Cell::Num(r.theta), Cell::Num(r.p_alt), Cell::Num(r.p_null), Cell::Num(r.p_inconclusive)]);
    }
    emit(&table, cfg.format, cfg.digits, cfg.out.as_ref(), None)
}

pub struct ReliabilityArgs {
    pub n: Option<f64>,
    pub variance: Option<f64>,
    pub odds: Option<f64>,
    pub grid: Option<String>,
}

pub fn reliability(args: &ReliabilityArgs, file: &FileConfig, cfg: &RunConfig) -> Result<(), CliError> {
    let d = design_config(cfg, args.n.or(file.n), args.variance.or(file.variance))?;
    let odds = PriorOdds::new(args.odds.or(file.odds).unwrap_or(1.0)).map_err(config_err)?;
    let grid = match args.grid.as_deref().or(file.grid.as_deref()) {
        Some(spec) => parse_grid(spec)?,
        None => default_grid(&d),
    };
    let rows = emit_reliability_curve(&d, odds, &grid).map_err(config_err)?;
    let mut table = Table::new(&RELIABILITY_HEADER);
    for r in rows {
        table.push(vec![
            Cell::Num(r.theta1),
            Cell::Num(r.fdr_sgpv),
            r.fcr_sgpv.into(),
            Cell::Num(r.fdr_test),
            Cell::Num(r.fnr_test),
        ]);
    }
    emit(&table, cfg.format, cfg.digits, cfg.out.as_ref(), None)
}

pub struct ScreenArgs {
    pub welch: bool,
    pub crosstab: bool,
}

fn read_study_rows(input: &Input, cfg: &RunConfig, method: TwoSampleMethod) -> Result<Vec<StudyRow>, CliError> {
    let precomputed = input.has(&["estimate", "lo", "hi"]);
    let grouped = input.has(&["n1", "mean1", "sd1", "n2", "mean2", "sd2"]);
    if !precomputed && !grouped {
        return Err(CliError::Input(
            "input needs columns id,estimate,lo,hi[,p_value] or id,n1,mean1,sd1,n2,mean2,sd2".into(),
        ));
    }
    let mut rows = Vec::with_capacity(input.records.len());
    for (line, rec) in &input.records {
        let line = *line;
        let id = row_id(input, rec, line);
        let row = if precomputed {
            let interval = ExtendedInterval::new(input.number(line, rec, "lo")?, input.number(line, rec, "hi")?)
                .map_err(|e| input_err(line, e))?;
            let p_value = match input.optional(rec, "p_value") {
                Some(s) => Some(
                    crate::table::parse_number(s)
                        .filter(|p| (0.0..=1.0).contains(p))
                        .ok_or_else(|| CliError::Input(format!("line {line}: p_value must lie in [0, 1], got '{s}'")))?,
                ),
                None => None,
            };
            let row = StudyRow::new(id, input.number(line, rec, "estimate")?, interval, p_value);
            if cfg.log10 {
                row.to_log10().map_err(|e| input_err(line, e))?
            } else {
                row
            }
        } else {
            let group = |n: &str, m: &str, s: &str| -> Result<GroupSummary, CliError> {
                let count = input.number(line, rec, n)?;
                if !(count >= 0.0 && count.fract() == 0.0) {
                    return Err(CliError::Input(format!("line {line}: {n} must be a whole number")));
                }
                GroupSummary::new(count as u64, input.number(line, rec, m)?, input.number(line, rec, s)?)
                    .map_err(|e| input_err(line, e))
            };
            let a = group("n1", "mean1", "sd1")?;
            let b = group("n2", "mean2", "sd2")?;
            let r = two_sample_ci(&a, &b, cfg.level, method).map_err(|e| input_err(line, e))?;
            StudyRow::new(id, r.estimate, r.interval, Some(r.p_value))
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn screen(input_path: Option<&Path>, args: &ScreenArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let null = cfg.null.to_spec()?;
    let input = Input::read(input_path)?;
    let mut table = Table::new(&SCREEN_HEADER);
    if input.records.is_empty() {
        return emit(&table, cfg.format, cfg.digits, cfg.out.as_ref(), None);
    }
    let method = if args.welch { TwoSampleMethod::Welch } else { TwoSampleMethod::Pooled };
    let rows = read_study_rows(&input, cfg, method)?;
    let report = batch_sgpv(&rows, &null).map_err(|e| CliError::Input(e.to_string()))?;

    let mut extra = None;
    if args.crosstab {
        if let Some(missing) = report.rows.iter().find(|r| r.p_raw.is_none()) {
            return Err(CliError::Config(format!("--crosstab needs a p_value for every row; '{}' has none", missing.id)));
        }
        let tab = cross_tab(&report, cfg.alpha).map_err(config_err)?;
        let decisions = report.decision_counts(cfg.alpha).map_err(config_err)?;
        let summary = json!({
            "alpha": cfg.alpha,
            "crosstab": tab,
            "decisions": decisions,
            "classes": report.counts,
        });
        eprintln!("cross-tabulation at alpha = {} (Bonferroni over {} rows)", cfg.alpha, report.rows.len());
        eprintln!("                 significant  not significant");
        eprintln!("p_delta = 0      {:>11}  {:>15}", tab.zero_significant, tab.zero_not_significant);
        eprintln!("p_delta > 0      {:>11}  {:>15}", tab.positive_significant, tab.positive_not_significant);
        eprintln!(
            "decisions: p_delta = 0 {}, raw {}, Bonferroni {}, BH {}",
            decisions.sgpv_zero, decisions.raw, decisions.bonferroni, decisions.bh
        );
        if let Value::Object(map) = summary {
            extra = Some(map);
        }
    }

    let order = rank_findings(&report);
    let rank_of: std::collections::HashMap<&str, usize> =
        order.iter().enumerate().map(|(k, id)| (id.as_str(), k + 1)).collect();
    for r in &report.rows {
        let class = r.classification.map_or("flagged", |c| c.as_str());
        table.push(vec![
            Cell::Text(r.id.clone()),
            r.p_delta.into(),
            Cell::Text(class.into()),
            r.delta_gap.into(),
            r.p_raw.into(),
            r.p_bonferroni.into(),
            r.q_bh.into(),
            Cell::Int(rank_of[r.id.as_str()] as u64),
        ]);
    }
    emit(&table, cfg.format, cfg.digits, cfg.out.as_ref(), extra)
}

pub fn track(input_path: Option<&Path>, cfg: &RunConfig) -> Result<(), CliError> {
    let null: NullSpec = cfg.null.to_spec()?;
    let input = Input::read(input_path)?;
    let mut table = Table::new(&TRACK_HEADER);
    if input.records.is_empty() {
        return emit(&table, cfg.format, cfg.digits, cfg.out.as_ref(), None);
    }
    if !input.has(&["t", "lo", "hi"]) {
        return Err(CliError::Input("input needs columns t,lo,hi".into()));
    }
    let mut series = Vec::with_capacity(input.records.len());
    for (line, rec) in &input.records {
        let line = *line;
        let t = input.number(line, rec, "t")?;
        let iv = ExtendedInterval::new(input.number(line, rec, "lo")?, input.number(line, rec, "hi")?)
            .map_err(|e| input_err(line, e))?;
        let iv = if cfg.log10 { to_log10(&iv, line)? } else { iv };
        series.push((t, iv));
    }
    let points = pointwise_track(&series, &null).map_err(|e| CliError::Input(e.to_string()))?;
    for p in points {
        table.push(vec![
            Cell::Num(p.t),
            Cell::Num(p.p_delta),
            Cell::Text(p.classification.as_str().into()),
            p.grey_level.into(),
        ]);
    }
    emit(&table, cfg.format, cfg.digits, cfg.out.as_ref(), None)
}

pub struct SimulateArgs {
    pub n: Option<f64>,
    pub variance: Option<f64>,
    pub theta: Option<f64>,
    pub replicates: Option<u64>,
    pub odds: Option<f64>,
    pub theta1: Option<f64>,
}

pub fn simulate(args: &SimulateArgs, file: &FileConfig, cfg: &RunConfig) -> Result<(), CliError> {
    let design = design_config(cfg, args.n.or(file.n), args.variance.or(file.variance))?;
    let sim = SimConfig {
        design,
        theta: args.theta.or(file.theta).unwrap_or(design.theta0),
        replicates: args.replicates.or(file.replicates).unwrap_or(100_000),
        seed: cfg.seed,
    };
    sim.validate().map_err(config_err)?;
    let cmp = compare_outcomes(&sim).map_err(config_err)?;
    let probs = |p: sgpv::OutcomeProbs| json!({"p_alt": p.p_alt, "p_null": p.p_null, "p_inconclusive": p.p_inconclusive});
    let mut out = Map::new();
    out.insert("empirical".into(), probs(cmp.empirical));
    out.insert("closed_form".into(), probs(cmp.closed_form));
    out.insert("z_scores".into(), probs(cmp.z_scores));
    out.insert("counts".into(), serde_json::to_value(cmp.counts).expect("counts serialize"));
    out.insert("replicates".into(), json!(sim.replicates));
    out.insert("seed".into(), json!(sim.seed));
    out.insert("theta".into(), json!(sim.theta));

    if let Some(theta1) = args.theta1.or(file.theta1) {
        let odds = PriorOdds::new(args.odds.or(file.odds).unwrap_or(1.0)).map_err(config_err)?;
        let rel = simulate_reliability(&sim, odds, theta1).map_err(config_err)?;
        let fdr = fdr_sgpv(theta1, &design, odds).ok();
        let fcr = fcr_sgpv(theta1, &design, odds);
        out.insert(
            "reliability".into(),
            json!({
                "theta1": theta1,
                "odds": odds.get(),
                "empirical_fdr": rel.empirical_fdr,
                "closed_form_fdr": fdr,
                "empirical_fcr": rel.empirical_fcr,
                "closed_form_fcr": fcr,
                "discoveries": rel.discoveries,
                "confirmations": rel.confirmations,
            }),
        );
    }

    let mut w = crate::table::open_output(cfg.out.as_ref())?;
    serde_json::to_writer_pretty(&mut w, &round_json(Value::Object(out), cfg.digits)).map_err(|e| CliError::Output(e.into()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
