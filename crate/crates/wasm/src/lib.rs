//! Browser bindings: three calls that return JSON text for the demo page in
//! `www/`. The `*_json` functions are plain Rust so they can be tested natively.

use serde_json::json;
use sgpv::design::{emit_power_curve, DesignConfig};
use sgpv::reliability::{emit_reliability_curve, PriorOdds};
use sgpv::{second_gen_p, ExtendedInterval, NullSpec};
use wasm_bindgen::prelude::*;

fn evenly(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let points = points.clamp(2, 2001);
    (0..points).map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64).collect()
}

pub fn sgpv_json(lo: f64, hi: f64, null_lo: f64, null_hi: f64) -> Result<String, String> {
    let interval = ExtendedInterval::new(lo, hi).map_err(|e| e.to_string())?;
    let null = NullSpec::from_bounds(null_lo, null_hi).map_err(|e| e.to_string())?;
    let r = second_gen_p(&interval, &null).map_err(|e| e.to_string())?;
    Ok(json!({
        "p_delta": r.p_delta,
        "classification": r.classification.as_str(),
        "correction_applied": r.correction_applied,
        "delta_gap": r.delta_gap,
    })
    .to_string())
}

/// Outcome probabilities over `θ0 ± span`.
pub fn outcome_curve_json(
    theta0: f64,
    delta: f64,
    n: f64,
    variance: f64,
    alpha: f64,
    span: f64,
    points: usize,
) -> Result<String, String> {
    let cfg = DesignConfig::new(theta0, delta, n, variance, alpha).map_err(|e| e.to_string())?;
    let grid = evenly(theta0 - span, theta0 + span, points);
    let rows = emit_power_curve(&cfg, &grid).map_err(|e| e.to_string())?;
    Ok(json!({ "null_reachable": cfg.null_reachable(), "rows": rows }).to_string())
}

/// FDR and FCR of `p_δ` next to the classical test over `θ0 ± span`.
#[allow(clippy::too_many_arguments)]
pub fn reliability_curve_json(
    theta0: f64,
    delta: f64,
    n: f64,
    variance: f64,
    alpha: f64,
    odds: f64,
    span: f64,
    points: usize,
) -> Result<String, String> {
    let cfg = DesignConfig::new(theta0, delta, n, variance, alpha).map_err(|e| e.to_string())?;
    let odds = PriorOdds::new(odds).map_err(|e| e.to_string())?;
    let grid = evenly(theta0 - span, theta0 + span, points);
    let rows = emit_reliability_curve(&cfg, odds, &grid).map_err(|e| e.to_string())?;
    Ok(json!({ "rows": rows }).to_string())
}

#[wasm_bindgen(js_name = secondGenP)]
pub fn second_gen_p_js(lo: f64, hi: f64, null_lo: f64, null_hi: f64) -> Result<String, JsValue> {
    sgpv_json(lo, hi, null_lo, null_hi).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = outcomeCurve)]
pub fn outcome_curve_js(
    theta0: f64,
    delta: f64,
    n: f64,
    variance: f64,
    alpha: f64,
    span: f64,
    points: usize,
) -> Result<String, JsValue> {
    outcome_curve_json(theta0, delta, n, variance, alpha, span, points).map_err(|e| JsValue::from_str(&e))
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen(js_name = reliabilityCurve)]
pub fn reliability_curve_js(
    theta0: f64,
    delta: f64,
    n: f64,
    variance: f64,
    alpha: f64,
    odds: f64,
    span: f64,
    points: usize,
) -> Result<String, JsValue> {
    reliability_curve_json(theta0, delta, n, variance, alpha, odds, span, points).map_err(|e| JsValue::from_str(&e))
}
