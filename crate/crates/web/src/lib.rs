//! WebAssembly bindings behind `www/index.html`.
//!
//! Each exported function takes plain strings and numbers and returns JSON.
//! The `*_impl` functions carry the logic and are what the native tests call.

use qzeros::bounds::{self, BoundRegion, Containment};
use qzeros::harness::{verify_one, CampaignConfig, SideSelection};
use qzeros::poly::parse_coefficient_list;
use qzeros::{CoefficientSide, HolderPair, QPolynomial, ZeroClass};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Campaigns from the page are capped so the tab stays responsive.
pub const MAX_WEB_TRIALS: usize = 2000;

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub polynomial: String,
    pub degree: usize,
    pub zeros: Vec<ZeroClass>,
    pub unresolved: usize,
    pub bounds: Vec<CheckedRegion>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckedRegion {
    #[serde(flatten)]
    pub region: BoundRegion,
    pub contains_all: bool,
}

#[derive(Debug, Serialize)]
pub struct CampaignDigest {
    pub status: qzeros::harness::CampaignStatus,
    pub trials: usize,
    pub not_contained: usize,
    pub isolated_zeros: usize,
    pub spherical_zeros: usize,
    pub two_ball_checked: usize,
    pub mean_tightness: Vec<(String, f64)>,
}

fn parse_side(side: &str) -> Result<CoefficientSide, String> {
    match side {
        "left" => Ok(CoefficientSide::Left),
        "right" => Ok(CoefficientSide::Right),
        other => Err(format!("side must be left or right, got {other:?}")),
    }
}

pub fn parse_poly(text: &str, side: &str) -> Result<QPolynomial, String> {
    let side = parse_side(side)?;
    let coeffs = parse_coefficient_list(text).map_err(|e| e.to_string())?;
    QPolynomial::monic_normalize(coeffs, side).map_err(|e| e.to_string())
}

/// Zeros of the polynomial, each region, and whether the region holds them all.
pub fn analyze_impl(text: &str, side: &str, holder_r: f64) -> Result<Analysis, String> {
    let p = parse_poly(text, side)?;
    let h = HolderPair::from_r(holder_r).map_err(|e| e.to_string())?;
    let cfg = CampaignConfig {
        holder_pairs: vec![h],
        ..CampaignConfig::default()
    };
    let record = verify_one(&p, &cfg);
    let mut notes = Vec::new();
    if let Some(e) = &record.error {
        notes.push(format!("oracle failed: {e}"));
    }
    match record.theorem_e {
        qzeros::harness::TheoremEOutcome::Infeasible => {
            notes.push("two-ball region: no r satisfies the coefficient ordering".into())
        }
        qzeros::harness::TheoremEOutcome::NotApplicable => notes.push("two-ball region needs degree ≥ 2".into()),
        _ => {}
    }
    Ok(Analysis {
        polynomial: p.to_string(),
        degree: p.degree(),
        unresolved: record.inconsistencies.len(),
        bounds: record
            .bounds
            .into_iter()
            .map(|b| CheckedRegion {
                contains_all: b.verdict != Containment::NotContained,
                region: b.region,
            })
            .collect(),
        zeros: record.zeros,
        notes,
    })
}

/// The two-ball region for a chosen `r` (not necessarily the smallest).
pub fn two_ball_impl(text: &str, side: &str, r: f64) -> Result<BoundRegion, String> {
    let p = parse_poly(text, side)?;
    bounds::rather_region(&p, r).map_err(|e| e.to_string())
}

pub fn campaign_impl(seed: u64, trials: usize, degree_max: usize, coeff_norm_max: f64) -> Result<CampaignDigest, String> {
    let cfg = CampaignConfig {
        seed,
        trials: trials.min(MAX_WEB_TRIALS),
        degree_max,
        coeff_norm_max,
        side: SideSelection::Both,
        ..CampaignConfig::default()
    };
    let report = qzeros::run_campaign(&cfg).map_err(|e| e.to_string())?;
    let s = report.summary;
    Ok(CampaignDigest {
        status: report.status,
        trials: s.trials,
        not_contained: s.not_contained(),
        isolated_zeros: s.isolated_zeros,
        spherical_zeros: s.spherical_zeros,
        two_ball_checked: s.theorem_e_checked,
        mean_tightness: s
            .per_bound
            .iter()
            .filter_map(|(label, b)| b.mean_tightness().map(|t| (label.clone(), t)))
            .collect(),
    })
}

fn to_json<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn analyze(text: &str, side: &str, holder_r: f64) -> Result<String, JsError> {
    to_json(analyze_impl(text, side, holder_r))
}

#[wasm_bindgen]
pub fn two_ball(text: &str, side: &str, r: f64) -> Result<String, JsError> {
    to_json(two_ball_impl(text, side, r))
}

#[wasm_bindgen]
pub fn campaign(seed: u32, trials: u32, degree_max: u32, coeff_norm_max: f64) -> Result<String, JsError> {
    to_json(campaign_impl(seed.into(), trials as usize, degree_max as usize, coeff_norm_max))
}
