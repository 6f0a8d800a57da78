//! Seeded verification campaigns: random polynomials, their zeros, and a
//! containment verdict for every (bound, zero) pair.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundRegion, Containment, HolderPair};
use crate::error::{Error, Result};
use crate::oracle::{self, Inconsistency, ZeroClass};
use crate::poly::{CoefficientSide, PolyJson, QPolynomial};
use crate::quat::Quaternion;

/// Degree range accepted by campaigns (companion degree up to 16).
pub const MAX_CAMPAIGN_DEGREE: usize = 8;

/// Probability that a coefficient of a sparse trial is zeroed.
pub const SPARSE_ZERO_PROBABILITY: f64 = 0.2;

/// Origin-ball tightness may exceed 1 by at most this much.
pub const TIGHTNESS_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSelection {
    Left,
    Right,
    /// Even trials right, odd trials left.
    Both,
}

impl SideSelection {
    fn for_trial(self, index: usize) -> CoefficientSide {
        match self {
            Self::Left => CoefficientSide::Left,
            Self::Right => CoefficientSide::Right,
            Self::Both if index.is_multiple_of(2) => CoefficientSide::Right,
            Self::Both => CoefficientSide::Left,
        }
    }
}

impl From<CoefficientSide> for SideSelection {
    fn from(side: CoefficientSide) -> Self {
        match side {
            CoefficientSide::Left => Self::Left,
            CoefficientSide::Right => Self::Right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: usize,
    pub degree_min: usize,
    pub degree_max: usize,
    pub coeff_norm_max: f64,
    pub side: SideSelection,
    pub holder_pairs: Vec<HolderPair>,
    pub include_theorem_e: bool,
    /// Fixed two-ball parameter; `None` picks the smallest feasible one.
    pub theorem_e_r: Option<f64>,
    /// Share of trials whose coefficients are zeroed at random.
    pub sparse_fraction: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 100,
            degree_min: 1,
            degree_max: MAX_CAMPAIGN_DEGREE,
            coeff_norm_max: 10.0,
            side: SideSelection::Both,
            holder_pairs: vec![
                HolderPair::EUCLIDEAN,
                HolderPair::new(3.0, 1.5).expect("valid pair"),
                HolderPair::new(1.5, 3.0).expect("valid pair"),
            ],
            include_theorem_e: true,
            theorem_e_r: None,
            sparse_fraction: 0.5,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.degree_min < 1 || self.degree_max > MAX_CAMPAIGN_DEGREE || self.degree_min > self.degree_max {
            return bad("need 1 <= degree_min <= degree_max <= 8");
        }
        if !(self.coeff_norm_max > 0.0) || !self.coeff_norm_max.is_finite() {
            return bad("coeff_norm_max must be positive");
        }
        if !(0.0..=1.0).contains(&self.sparse_fraction) {
            return bad("sparse_fraction must lie in [0, 1]");
        }
        if let Some(r) = self.theorem_e_r {
            if !(r > 0.0) {
                return bad("theorem_e_r must be positive");
            }
        }
        Ok(())
    }
}

/// Seed of trial `index`'s private random stream.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A coefficient with uniformly random direction (from the cube `[-1, 1]⁴`,
/// normalized) and norm uniform in `[0, norm_max]`.
pub fn random_coefficient<R: Rng + ?Sized>(rng: &mut R, norm_max: f64) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        let n = q.norm();
        if n > 1e-12 {
            let radius = rng.gen_range(0.0..=norm_max);
            return q.scale(radius / n);
        }
    }
}

/// Monic random polynomial; each lower coefficient is zeroed with
/// probability `zero_probability`.
pub fn gen_random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    coeff_norm_max: f64,
    side: CoefficientSide,
    zero_probability: f64,
) -> QPolynomial {
    let lower: Vec<Quaternion> = (0..degree)
        .map(|_| {
            let c = random_coefficient(rng, coeff_norm_max);
            if zero_probability > 0.0 && rng.gen_bool(zero_probability) {
                Quaternion::ZERO
            } else {
                c
            }
        })
        .collect();
    QPolynomial::from_lower(&lower, side).expect("monic polynomial of valid degree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialStatus {
    Verified,
    /// The oracle left companion roots unresolved.
    Inconsistent,
    /// The oracle failed to converge; no zeros were checked.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub region: BoundRegion,
    pub verdict: Containment,
    /// One verdict per zero class, in the order of the trial's zeros.
    pub per_zero: Vec<Containment>,
    /// Largest zero norm over the radius, for origin balls; 1 when the
    /// radius is 0.
    pub tightness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TheoremEOutcome {
    Checked,
    NotApplicable,
    Infeasible,
    OrderingViolated { r: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub degree: usize,
    pub sparse: bool,
    pub polynomial: PolyJson,
    pub status: TrialStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub zeros: Vec<ZeroClass>,
    pub inconsistencies: Vec<Inconsistency>,
    pub eval_tol: f64,
    pub companion_deviation: f64,
    pub max_zero_norm: f64,
    pub bounds: Vec<BoundCheck>,
    pub theorem_e: TheoremEOutcome,
}

fn check_bound(region: BoundRegion, zeros: &[ZeroClass], max_zero_norm: f64) -> BoundCheck {
    let per_zero: Vec<Containment> = zeros.iter().map(|z| bounds::region_contains(&region, z)).collect();
    let verdict = if per_zero.contains(&Containment::NotContained) {
        Containment::NotContained
    } else if per_zero.contains(&Containment::SampledContained) {
        Containment::SampledContained
    } else {
        Containment::Contained
    };
    let tightness = region
        .radius()
        .map(|r| if r == 0.0 { 1.0 } else { max_zero_norm / r });
    BoundCheck {
        region,
        verdict,
        per_zero,
        tightness,
    }
}

/// Every configured bound for `p`, plus the outcome of the two-ball region.
pub fn configured_bounds(p: &QPolynomial, cfg: &CampaignConfig) -> (Vec<BoundRegion>, TheoremEOutcome) {
    let mut regions = vec![bounds::cauchy_bound(p)];
    for &h in &cfg.holder_pairs {
        regions.push(bounds::kmt_bound(p, h));
        regions.push(bounds::kmt_bound_simplified(p, h));
    }
    regions.push(bounds::euclidean_bound(p));
    regions.push(bounds::montel_bound(p));

    let outcome = if !cfg.include_theorem_e || p.degree() < 2 {
        TheoremEOutcome::NotApplicable
    } else {
        let r = match cfg.theorem_e_r {
            Some(r) => Some(r),
            None => bounds::feasible_r(p).expect("degree >= 2"),
        };
        match r {
            None => TheoremEOutcome::Infeasible,
            Some(r) => match bounds::rather_region(p, r) {
                Ok(region) => {
                    regions.push(region);
                    TheoremEOutcome::Checked
                }
                Err(_) => TheoremEOutcome::OrderingViolated { r },
            },
        }
    };
    (regions, outcome)
}

/// Finds all zeros of `p` and checks each against every configured bound.
pub fn verify_one(p: &QPolynomial, cfg: &CampaignConfig) -> TrialRecord {
    let (regions, theorem_e) = configured_bounds(p, cfg);
    let mut record = TrialRecord {
        index: 0,
        degree: p.degree(),
        sparse: false,
        polynomial: PolyJson::from(p),
        status: TrialStatus::Verified,
        error: None,
        zeros: Vec::new(),
        inconsistencies: Vec::new(),
        eval_tol: oracle::eval_tolerance(p),
        companion_deviation: 0.0,
        max_zero_norm: 0.0,
        bounds: Vec::new(),
        theorem_e,
    };
    let zero_set = match oracle::all_zeros(p) {
        Ok(z) => z,
        Err(e) => {
            record.status = TrialStatus::Unverified;
            record.error = Some(e.to_string());
            record.bounds = regions
                .into_iter()
                .map(|region| BoundCheck {
                    region,
                    verdict: Containment::Contained,
                    per_zero: Vec::new(),
                    tightness: None,
                })
                .collect();
            return record;
        }
    };
    if !zero_set.inconsistencies.is_empty() {
        record.status = TrialStatus::Inconsistent;
    }
    record.max_zero_norm = zero_set.max_norm();
    record.companion_deviation = zero_set.companion_deviation;
    record.bounds = regions
        .into_iter()
        .map(|r| check_bound(r, &zero_set.classes, record.max_zero_norm))
        .collect();
    record.zeros = zero_set.classes;
    record.inconsistencies = zero_set.inconsistencies;
    record
}

fn run_trial(cfg: &CampaignConfig, index: usize) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, index as u64));
    // sampled as u32 so that 32- and 64-bit targets draw the same stream
    let degree = rng.gen_range(cfg.degree_min as u32..=cfg.degree_max as u32) as usize;
    let sparse = cfg.sparse_fraction > 0.0 && rng.gen_bool(cfg.sparse_fraction);
    let zero_probability = if sparse { SPARSE_ZERO_PROBABILITY } else { 0.0 };
    let side = cfg.side.for_trial(index);
    let p = gen_random_poly(&mut rng, degree, cfg.coeff_norm_max, side, zero_probability);
    let mut record = verify_one(&p, cfg);
    record.index = index;
    record.sparse = sparse;
    record
}

/// Fixed-point scale for tightness sums, so that summing is exact and the
/// summary does not depend on trial order.
const TIGHTNESS_FIXED_POINT: f64 = (1u64 << 52) as f64;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub contained: usize,
    pub sampled_contained: usize,
    pub not_contained: usize,
    /// Verified origin-ball trials contributing to the tightness stats.
    pub tightness_count: usize,
    tightness_fixed_sum: i128,
    pub max_tightness: f64,
}

impl BoundSummary {
    pub fn mean_tightness(&self) -> Option<f64> {
        (self.tightness_count > 0)
            .then(|| self.tightness_fixed_sum as f64 / TIGHTNESS_FIXED_POINT / self.tightness_count as f64)
    }

    fn merge(&mut self, other: &Self) {
        self.contained += other.contained;
        self.sampled_contained += other.sampled_contained;
        self.not_contained += other.not_contained;
        self.tightness_count += other.tightness_count;
        self.tightness_fixed_sum += other.tightness_fixed_sum;
        self.max_tightness = self.max_tightness.max(other.max_tightness);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignStatus {
    Passed,
    /// Some zero escaped some bound.
    Failed,
    /// No bound failed, but the oracle did not resolve every trial.
    Unverified,
}

/// Aggregate over trial records. Merging is commutative and associative.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub trials: usize,
    pub verified: usize,
    pub inconsistent: usize,
    pub oracle_failures: usize,
    pub theorem_e_checked: usize,
    pub theorem_e_infeasible: usize,
    pub theorem_e_ordering_violated: usize,
    pub spherical_zeros: usize,
    pub isolated_zeros: usize,
    pub max_companion_deviation: f64,
    /// Largest `residual / eval_tol` over all zeros.
    pub max_residual_ratio: f64,
    pub per_bound: BTreeMap<String, BoundSummary>,
}

impl CampaignSummary {
    pub fn from_trial(t: &TrialRecord) -> Self {
        let mut s = Self {
            trials: 1,
            ..Self::default()
        };
        match t.status {
            TrialStatus::Verified => s.verified = 1,
            TrialStatus::Inconsistent => s.inconsistent = 1,
            TrialStatus::Unverified => s.oracle_failures = 1,
        }
        match t.theorem_e {
            TheoremEOutcome::Checked => s.theorem_e_checked = 1,
            TheoremEOutcome::Infeasible => s.theorem_e_infeasible = 1,
            TheoremEOutcome::OrderingViolated { .. } => s.theorem_e_ordering_violated = 1,
            TheoremEOutcome::NotApplicable => {}
        }
        s.spherical_zeros = t.zeros.iter().filter(|z| z.is_spherical()).count();
        s.isolated_zeros = t.zeros.len() - s.spherical_zeros;
        s.max_companion_deviation = t.companion_deviation;
        s.max_residual_ratio = t.zeros.iter().map(|z| z.residual() / t.eval_tol).fold(0.0, f64::max);
        if t.status == TrialStatus::Unverified {
            return s;
        }
        for check in &t.bounds {
            let entry = s.per_bound.entry(check.region.label.clone()).or_default();
            match check.verdict {
                Containment::Contained => entry.contained += 1,
                Containment::SampledContained => entry.sampled_contained += 1,
                Containment::NotContained => entry.not_contained += 1,
            }
            if let Some(tight) = check.tightness {
                entry.tightness_count += 1;
                entry.tightness_fixed_sum += (tight * TIGHTNESS_FIXED_POINT).round() as i128;
                entry.max_tightness = entry.max_tightness.max(tight);
            }
        }
        s
    }

    pub fn merge(mut self, other: &Self) -> Self {
        self.trials += other.trials;
        self.verified += other.verified;
        self.inconsistent += other.inconsistent;
        self.oracle_failures += other.oracle_failures;
        self.theorem_e_checked += other.theorem_e_checked;
        self.theorem_e_infeasible += other.theorem_e_infeasible;
        self.theorem_e_ordering_violated += other.theorem_e_ordering_violated;
        self.spherical_zeros += other.spherical_zeros;
        self.isolated_zeros += other.isolated_zeros;
        self.max_companion_deviation = self.max_companion_deviation.max(other.max_companion_deviation);
        self.max_residual_ratio = self.max_residual_ratio.max(other.max_residual_ratio);
        for (label, b) in &other.per_bound {
            self.per_bound.entry(label.clone()).or_default().merge(b);
        }
        self
    }

    pub fn not_contained(&self) -> usize {
        self.per_bound.values().map(|b| b.not_contained).sum()
    }

    pub fn status(&self) -> CampaignStatus {
        if self.not_contained() > 0 {
            CampaignStatus::Failed
        } else if self.oracle_failures > 0 || self.inconsistent > 0 {
            CampaignStatus::Unverified
        } else {
            CampaignStatus::Passed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: CampaignConfig,
    pub status: CampaignStatus,
    pub summary: CampaignSummary,
    pub trials: Vec<TrialRecord>,
}

impl VerificationReport {
    pub fn from_trials(config: CampaignConfig, trials: Vec<TrialRecord>) -> Self {
        let summary = trials
            .iter()
            .map(CampaignSummary::from_trial)
            .fold(CampaignSummary::default(), |acc, s| acc.merge(&s));
        Self {
            config,
            status: summary.status(),
            summary,
            trials,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// One row per (trial, bound).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        for t in &self.trials {
            for b in &t.bounds {
                w.serialize(CsvRow {
                    trial: t.index,
                    degree: t.degree,
                    side: t.polynomial.side,
                    bound: &b.region.label,
                    radius: b.region.radius(),
                    max_zero_norm: t.max_zero_norm,
                    tightness: b.tightness,
                    verdict: b.verdict,
                })?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    trial: usize,
    degree: usize,
    side: CoefficientSide,
    bound: &'a str,
    radius: Option<f64>,
    max_zero_norm: f64,
    tightness: Option<f64>,
    verdict: Containment,
}

/// Runs every trial of the campaign. Trials are independent and, with the
/// `parallel` feature, run concurrently; the report is the same either way.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    #[cfg(feature = "parallel")]
    let trials: Vec<TrialRecord> = {
        use rayon::prelude::*;
        (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let trials: Vec<TrialRecord> = (0..cfg.trials).map(|i| run_trial(cfg, i)).collect();
    Ok(VerificationReport::from_trials(cfg.clone(), trials))
}
