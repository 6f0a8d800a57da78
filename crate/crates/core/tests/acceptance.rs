//! Acceptance checks, one line per criterion. Runs as a plain binary so the
//! verdict lines always reach the test log.

mod common;

use std::time::{Duration, Instant};

use common::*;
use qzeros::bounds::*;
use qzeros::harness::{verify_one, CampaignConfig, SideSelection};
use qzeros::oracle::{eval_tolerance, sphere_residual, SPHERE_CHECK_SAMPLES};
use qzeros::{all_zeros, run_campaign, CoefficientSide, HolderPair, QPolynomial, Quaternion, ZeroClass};
use rand::Rng;

const CAMPAIGN_TIME_LIMIT: Duration = Duration::from_secs(60);
const CONTAINMENT_RTOL: f64 = 1e-9;
const LIMIT_RTOL: f64 = 1e-3;
const ORDERING_RTOL: f64 = 1e-12;
const CLOSED_FORM_TOL: f64 = 1e-10;
const COMPANION_TOL: f64 = 1e-12;
const LOWER_BOUND_SLACK: f64 = 1e-9;
const SPHERE_MAX_RTOL: f64 = 1e-6;
const SPHERE_MAX_SAMPLES: usize = 100_000;
const EXAMPLE_RESIDUAL_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn campaign_config() -> CampaignConfig {
    CampaignConfig {
        seed: 1,
        trials: 1000,
        degree_min: 1,
        degree_max: 8,
        coeff_norm_max: 10.0,
        side: SideSelection::Both,
        holder_pairs: vec![
            HolderPair::new(2.0, 2.0).unwrap(),
            HolderPair::new(3.0, 1.5).unwrap(),
            HolderPair::new(1.5, 3.0).unwrap(),
        ],
        include_theorem_e: true,
        theorem_e_r: None,
        ..CampaignConfig::default()
    }
}

fn containment_campaign() -> Outcome {
    let start = Instant::now();
    let report = run_campaign(&campaign_config()).expect("valid config");
    let elapsed = start.elapsed();
    let s = &report.summary;
    // the containment tolerance is fixed inside region_contains
    let tol_ok = containment_tol(0.0) == CONTAINMENT_RTOL && containment_tol(1.0) == 2.0 * CONTAINMENT_RTOL;
    let pass = s.not_contained() == 0
        && s.oracle_failures == 0
        && s.inconsistent == 0
        && tol_ok
        && elapsed < CAMPAIGN_TIME_LIMIT;
    outcome(
        pass,
        format!(
            "{} trials, not_contained={}, oracle_failures={}, inconsistent={}, two-ball checked={}, runtime={:.2?}",
            s.trials, s.not_contained(), s.oracle_failures, s.inconsistent, s.theorem_e_checked, elapsed
        ),
    )
}

fn large_r_limit() -> Outcome {
    let mut rng = rng(2002);
    let h = HolderPair::from_r(1e6).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let degree = rng.gen_range(1..=8);
        let side = random_side(&mut rng);
        let p = random_poly(&mut rng, degree, 10.0, side);
        let kmt = kmt_bound(&p, h).radius().unwrap();
        let cauchy = cauchy_bound(&p).radius().unwrap();
        worst = worst.max((kmt - cauchy).abs() / cauchy);
    }
    outcome(worst <= LIMIT_RTOL, format!("100 polynomials, max relative gap {worst:.3e}"))
}

fn bound_ordering() -> Outcome {
    let cfg = campaign_config();
    let report = run_campaign(&cfg).expect("valid config");
    let mut compared = 0;
    let mut violations = 0;
    for trial in &report.trials {
        for h in &cfg.holder_pairs {
            let find = |label: String| {
                trial
                    .bounds
                    .iter()
                    .find(|b| b.region.label == label)
                    .and_then(|b| b.region.radius())
                    .expect("configured bound present")
            };
            let kmt = find(format!("kmt({h})"));
            let simplified = find(format!("kmt_simplified({h})"));
            compared += 1;
            if kmt > simplified * (1.0 + ORDERING_RTOL) {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("{compared} comparisons, {violations} violations"))
}

fn oracle_soundness() -> Outcome {
    // residuals on the campaign
    let report = run_campaign(&campaign_config()).expect("valid config");
    let mut isolated = 0;
    let mut bad_residuals = 0;
    for trial in &report.trials {
        for zc in &trial.zeros {
            isolated += usize::from(!zc.is_spherical());
            if zc.residual() > trial.eval_tol {
                bad_residuals += 1;
            }
        }
    }

    // spherical classes need real coefficients
    let mut rng = rng(2004);
    let mut spheres = 0;
    let mut bad_spheres = 0;
    for _ in 0..300 {
        let degree = rng.gen_range(2..=8);
        let side = random_side(&mut rng);
        let p = random_real_poly(&mut rng, degree, 10.0, side);
        for zc in all_zeros(&p).expect("oracle converges").classes {
            if let ZeroClass::Spherical { re, im_radius, .. } = zc {
                spheres += 1;
                if sphere_residual(&p, re, im_radius, SPHERE_CHECK_SAMPLES) > eval_tolerance(&p) {
                    bad_spheres += 1;
                }
            } else if zc.residual() > eval_tolerance(&p) {
                bad_residuals += 1;
            }
        }
    }

    let mut closed_form_cases = 0;
    let mut mismatches = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let degree = rng.gen_range(1..=3);
        let side = random_side(&mut rng);
        let p = random_real_poly(&mut rng, degree, 10.0, side);
        let lower: Vec<f64> = p.lower().iter().map(|a| a.w).collect();
        let mut want = closed_form_roots(&lower);
        want.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut got: Vec<(f64, f64)> = all_zeros(&p)
            .expect("oracle converges")
            .classes
            .iter()
            .map(ZeroClass::similarity_data)
            .collect();
        got.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        closed_form_cases += 1;
        if got.len() != want.len() {
            mismatches += 1;
            continue;
        }
        for (g, w) in got.iter().zip(&want) {
            let err = (g.0 - w.0).abs().max((g.1 - w.1).abs()) / (1.0 + w.0.hypot(w.1));
            worst = worst.max(err);
            if err > CLOSED_FORM_TOL {
                mismatches += 1;
            }
        }
    }
    outcome(
        bad_residuals == 0 && bad_spheres == 0 && mismatches == 0 && spheres > 0,
        format!(
            "{isolated} campaign zeros, {bad_residuals} residual failures; {spheres} spheres, {bad_spheres} failures; \
             {closed_form_cases} closed-form cases, {mismatches} mismatches, worst {worst:.1e}"
        ),
    )
}

fn companion_realness() -> Outcome {
    let report = run_campaign(&campaign_config()).expect("valid config");
    let worst = report.summary.max_companion_deviation;
    outcome(worst <= COMPANION_TOL, format!("max non-scalar part {worst:.2e}"))
}

fn proof_inequality() -> Outcome {
    let mut rng = rng(2006);
    let mut failures = 0;
    for _ in 0..1000 {
        let degree = rng.gen_range(1..=8);
        let side = random_side(&mut rng);
        let p = random_poly(&mut rng, degree, 10.0, side);
        let h = HolderPair::from_r(rng.gen_range(1.05..12.0)).unwrap();
        let radius = kmt_bound(&p, h).radius().unwrap();
        let q = random_unit(&mut rng).scale(radius * (1.0 + rng.gen_range(1e-3..2.0)));
        let lb = proof_lower_bound(&p, q, h).expect("|q| > 1");
        let scale = abs_scale(&p, q.norm());
        if !(lb > 0.0 && lb <= p.evaluate(q).norm() + LOWER_BOUND_SLACK * scale) {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("1000 samples, {failures} failures"))
}

/// Largest `‖d + ρu‖` found by sampling: half the budget on random directions,
/// half on shrinking caps around the best direction so far.
fn sampled_sphere_max(rng: &mut impl Rng, d: Quaternion, rho: f64, samples: usize) -> f64 {
    let f = |u: Quaternion| (d + u.scale(rho)).norm();
    let mut best_u = random_unit_pure(rng);
    let mut best = f(best_u);
    let global = samples / 2;
    for _ in 1..global {
        let u = random_unit_pure(rng);
        let v = f(u);
        if v > best {
            best = v;
            best_u = u;
        }
    }
    let rounds = 50;
    let per_round = (samples - global) / rounds;
    let mut width = 0.05;
    for _ in 0..rounds {
        for _ in 0..per_round {
            let u = best_u + random_unit_pure(rng).scale(width * rng.gen::<f64>());
            let u = u.scale(1.0 / u.norm());
            let v = f(u);
            if v > best {
                best = v;
                best_u = u;
            }
        }
        width *= 0.6;
    }
    best
}

fn sphere_max_formula() -> Outcome {
    let mut rng = rng(2007);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let d = random_unit(&mut rng).scale(rng.gen_range(0.0..10.0));
        let rho = rng.gen_range(0.0..10.0);
        let formula = sphere_max_distance(d, rho);
        let sampled = sampled_sphere_max(&mut rng, d, rho, SPHERE_MAX_SAMPLES);
        worst = worst.max((formula - sampled).abs() / formula);
    }
    // fixed case: d = 1 + 2i, radius 1, maximum sqrt(10)
    let d = Quaternion::new(1.0, 2.0, 0.0, 0.0);
    let fixed = sampled_sphere_max(&mut rng, d, 1.0, SPHERE_MAX_SAMPLES);
    let fixed_gap = (fixed - 10f64.sqrt()).abs() / 10f64.sqrt();
    let formula_gap = (sphere_max_distance(d, 1.0) - 10f64.sqrt()).abs();
    outcome(
        worst <= SPHERE_MAX_RTOL && fixed_gap <= SPHERE_MAX_RTOL && formula_gap <= 1e-15,
        format!("50 random cases, max relative gap {worst:.2e}; d=1+2i: gap {fixed_gap:.2e}"),
    )
}

fn fixed_examples() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let p = QPolynomial::from_lower(&[Quaternion::ONE, Quaternion::ZERO], CoefficientSide::Right).unwrap();
    let zeros = all_zeros(&p).unwrap();
    let sphere_ok = matches!(
        zeros.classes.as_slice(),
        [ZeroClass::Spherical { re, im_radius, .. }] if re.abs() <= 1e-12 && (im_radius - 1.0).abs() <= 1e-12
    );
    let cauchy = cauchy_bound(&p).radius().unwrap();
    let montel = montel_bound(&p).radius().unwrap();
    pass &= sphere_ok && cauchy == 2.0 && montel == 1.0;
    notes.push(format!("q^2+1: sphere={sphere_ok}, cauchy={cauchy}, montel={montel}"));

    let p = QPolynomial::from_lower(
        &[Quaternion::new(1.0, 0.0, 0.0, -1.0), Quaternion::J],
        CoefficientSide::Right,
    )
    .unwrap();
    let record = verify_one(&p, &CampaignConfig::default());
    // i − j is a second zero: (i − j)² + (i − j)j + 1 − k = 0
    let isolated = record.zeros.iter().any(|zc| match *zc {
        ZeroClass::Isolated { point, .. } => {
            let (re, im) = point.similarity_data();
            re.abs() <= 1e-10 && (im - 1.0).abs() <= 1e-10
        }
        _ => false,
    });
    let residuals_ok = record.zeros.iter().all(|zc| zc.residual() <= EXAMPLE_RESIDUAL_TOL);
    let all_contained = record.bounds.iter().all(|b| b.verdict.is_contained());
    pass &= isolated && residuals_ok && all_contained && record.inconsistencies.is_empty();
    notes.push(format!(
        "q^2+qj+(1-k): {} zeros, similarity (0,1) found={isolated}, residuals ok={residuals_ok}, contained in {}/{} bounds",
        record.zeros.len(),
        record.bounds.iter().filter(|b| b.verdict.is_contained()).count(),
        record.bounds.len()
    ));
    outcome(pass, notes.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 containment campaign", containment_campaign),
        ("2 large-r limit", large_r_limit),
        ("3 bound ordering", bound_ordering),
        ("4 oracle soundness", oracle_soundness),
        ("5 companion realness", companion_realness),
        ("6 proof inequality", proof_inequality),
        ("7 sphere-maximum formula", sphere_max_formula),
        ("8 fixed examples", fixed_examples),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
