mod common;

use common::*;
use qzeros::oracle::{eval_tolerance, sphere_residual, SPHERE_CHECK_SAMPLES};
use qzeros::{all_zeros, CoefficientSide, Quaternion, ZeroClass};
use rand::Rng;

#[test]
fn quaternion_algebra_on_seeded_pairs() {
    let mut rng = rng(11);
    for _ in 0..10_000 {
        let p = random_coefficient_like(&mut rng);
        let q = random_coefficient_like(&mut rng);
        let pq = p * q;
        let scale = p.norm() * q.norm();
        assert!((pq.norm() - scale).abs() <= 1e-12 * scale.max(1.0));
        assert!(pq.conj().approx_eq(q.conj() * p.conj(), 1e-12, 1e-12));
        if !p.is_zero() {
            let inv = p.inverse().unwrap();
            assert!((p * inv).approx_eq(Quaternion::ONE, 1e-12, 0.0));
            assert!((inv * p).approx_eq(Quaternion::ONE, 1e-12, 0.0));
        }
        let r = random_coefficient_like(&mut rng);
        let bound = 1e-12 * (p.norm() * q.norm() * r.norm()).max(1.0);
        assert!(((p * q) * r - p * (q * r)).norm() <= bound);
    }
}

fn random_coefficient_like(rng: &mut impl Rng) -> Quaternion {
    random_unit(rng).scale(rng.gen_range(0.0..10.0))
}

#[test]
fn horner_matches_naive_powers() {
    let mut rng = rng(12);
    for _ in 0..1000 {
        let side = random_side(&mut rng);
        let degree = rng.gen_range(1..=8);
        let p = random_poly(&mut rng, degree, 10.0, side);
        let q = random_unit(&mut rng).scale(rng.gen_range(0.0..3.0));
        let horner = p.evaluate(q);
        let naive = naive_eval(&p, q);
        let diff = (horner - naive).norm();
        assert!(diff <= 1e-11 * abs_scale(&p, q.norm()), "{p} at {q}: {diff:e}");
    }
}

#[test]
fn companion_is_real_and_has_doubled_degree() {
    let mut rng = rng(13);
    for _ in 0..1000 {
        let side = random_side(&mut rng);
        let degree = rng.gen_range(1..=8);
        let p = random_poly(&mut rng, degree, 10.0, side);
        let (b, worst) = p.companion_with_deviation();
        assert_eq!(b.degree(), Some(2 * degree));
        assert!(worst.map_or(0.0, |(_, d)| d) <= 1e-12);
        assert!(p.companion().is_ok());
    }
}

#[test]
fn real_coefficients_are_side_independent() {
    let mut rng = rng(14);
    for _ in 0..1000 {
        let degree = rng.gen_range(1..=8);
        let p = random_real_poly(&mut rng, degree, 10.0, CoefficientSide::Right);
        let left = p.to_side(CoefficientSide::Left);
        let q = random_unit(&mut rng).scale(rng.gen_range(0.0..3.0));
        let diff = (p.evaluate(q) - left.evaluate(q)).norm();
        assert!(diff <= 1e-12 * abs_scale(&p, q.norm()));
    }
}

#[test]
fn zeros_of_right_polynomial_conjugate_to_zeros_of_left() {
    let mut rng = rng(15);
    let mut checked = 0;
    for _ in 0..300 {
        let degree = rng.gen_range(1..=8);
        let p = random_poly(&mut rng, degree, 10.0, CoefficientSide::Right);
        let left = p.to_side(CoefficientSide::Left);
        let zeros = all_zeros(&p).unwrap();
        for zc in &zeros.classes {
            if let ZeroClass::Isolated { point, .. } = zc {
                let res = left.evaluate(point.conj()).norm();
                assert!(res <= eval_tolerance(&p), "{p}: {res:e}");
                checked += 1;
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn planted_zero_is_recovered() {
    let mut rng = rng(16);
    for _ in 0..500 {
        let degree = rng.gen_range(1..=7);
        let g: Vec<Quaternion> = (0..degree - 1).map(|_| random_coefficient_like(&mut rng)).collect();
        let z = random_unit(&mut rng).scale(rng.gen_range(0.1..5.0));
        let p = right_poly_with_zero(z, &g);
        assert!(p.evaluate(z).norm() <= 1e-10 * abs_scale(&p, z.norm()));
        let zeros = all_zeros(&p).unwrap();
        assert!(zeros.inconsistencies.is_empty(), "{p}: {:?}", zeros.inconsistencies);
        let hit = zeros.classes.iter().any(|zc| match zc {
            ZeroClass::Isolated { point, .. } => point.approx_eq(z, 1e-6, 1e-6),
            ZeroClass::Spherical { re, im_radius, .. } => {
                let (zr, zi) = z.similarity_data();
                (re - zr).abs() <= 1e-6 * z.norm().max(1.0) && (im_radius - zi).abs() <= 1e-6 * z.norm().max(1.0)
            }
        });
        assert!(hit, "{p}: planted {z} not among {:?}", zeros.classes);
    }
}

#[test]
fn real_coefficient_zeros_match_closed_form() {
    let mut rng = rng(17);
    for _ in 0..3000 {
        let degree = rng.gen_range(1..=3);
        let side = random_side(&mut rng);
        let p = random_real_poly(&mut rng, degree, 10.0, side);
        let lower: Vec<f64> = p.lower().iter().map(|a| a.w).collect();
        let mut want: Vec<(f64, f64)> = closed_form_roots(&lower);
        want.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

        let zeros = all_zeros(&p).unwrap();
        assert!(zeros.inconsistencies.is_empty(), "{p}");
        let mut got: Vec<(f64, f64)> = zeros.classes.iter().map(|zc| zc.similarity_data()).collect();
        got.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        assert_eq!(got.len(), want.len(), "{p}: {got:?} vs {want:?}");
        for (g, w) in got.iter().zip(&want) {
            let tol = 1e-10 * (1.0 + w.0.hypot(w.1));
            assert!((g.0 - w.0).abs() <= tol && (g.1 - w.1).abs() <= tol, "{p}: {g:?} vs {w:?}");
        }
        for zc in &zeros.classes {
            if let ZeroClass::Spherical { re, im_radius, .. } = *zc {
                assert!(sphere_residual(&p, re, im_radius, SPHERE_CHECK_SAMPLES) <= eval_tolerance(&p));
            } else {
                assert!(zc.residual() <= eval_tolerance(&p));
            }
        }
    }
}

#[test]
fn classes_account_for_every_companion_root() {
    let mut rng = rng(18);
    for _ in 0..500 {
        let degree = rng.gen_range(1..=8);
        let side = random_side(&mut rng);
        let p = random_poly(&mut rng, degree, 10.0, side);
        let zeros = all_zeros(&p).unwrap();
        assert_eq!(
            zeros.classes.len() + zeros.inconsistencies.len(),
            zeros.companion_roots.len(),
            "{p}"
        );
        let multiplicity: usize = zeros.companion_roots.iter().map(|r| r.multiplicity).sum();
        let doubled: usize = zeros
            .companion_roots
            .iter()
            .map(|r| if r.im > 0.0 { 2 * r.multiplicity } else { r.multiplicity })
            .sum();
        assert!(multiplicity <= 2 * degree);
        assert_eq!(doubled, 2 * degree);
    }
}

#[test]
fn real_coefficient_spheres_hold_everywhere() {
    let mut rng = rng(19);
    let mut spheres = 0;
    for _ in 0..300 {
        let degree = rng.gen_range(2..=8);
        let side = random_side(&mut rng);
        let p = random_real_poly(&mut rng, degree, 10.0, side);
        for zc in all_zeros(&p).unwrap().classes {
            if let ZeroClass::Spherical { re, im_radius, .. } = zc {
                spheres += 1;
                for _ in 0..20 {
                    let q = Quaternion::real(re) + random_unit_pure(&mut rng).scale(im_radius);
                    assert!(p.evaluate(q).norm() <= eval_tolerance(&p));
                }
            }
        }
    }
    assert!(spheres > 100);
}
