#![allow(dead_code)]

use qzeros::harness::random_coefficient;
use qzeros::{CoefficientSide, QPolynomial, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_side(rng: &mut impl Rng) -> CoefficientSide {
    if rng.gen_bool(0.5) {
        CoefficientSide::Left
    } else {
        CoefficientSide::Right
    }
}

pub fn random_poly(rng: &mut impl Rng, degree: usize, norm_max: f64, side: CoefficientSide) -> QPolynomial {
    let lower: Vec<Quaternion> = (0..degree).map(|_| random_coefficient(rng, norm_max)).collect();
    QPolynomial::from_lower(&lower, side).unwrap()
}

pub fn random_real_poly(rng: &mut impl Rng, degree: usize, bound: f64, side: CoefficientSide) -> QPolynomial {
    let lower: Vec<Quaternion> = (0..degree)
        .map(|_| Quaternion::real(rng.gen_range(-bound..bound)))
        .collect();
    QPolynomial::from_lower(&lower, side).unwrap()
}

pub fn random_unit(rng: &mut impl Rng) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return q.scale(1.0 / n);
        }
    }
}

pub fn random_unit_pure(rng: &mut impl Rng) -> Quaternion {
    loop {
        let q = Quaternion::new(
            0.0,
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return q.scale(1.0 / n);
        }
    }
}

/// `Σ qᵛ aᵥ` or `Σ aᵥ qᵛ` with every power formed explicitly.
pub fn naive_eval(p: &QPolynomial, q: Quaternion) -> Quaternion {
    let mut power = Quaternion::ONE;
    let mut acc = Quaternion::ZERO;
    for &a in p.coeffs() {
        acc += match p.side() {
            CoefficientSide::Right => power * a,
            CoefficientSide::Left => a * power,
        };
        power = power * q;
    }
    acc
}

/// `Σ ‖aᵥ‖ |q|ᵛ`
pub fn abs_scale(p: &QPolynomial, q_norm: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, a| acc * q_norm + a.norm())
}

/// Right polynomial `(x - z)·g(x)` with `x` central; it vanishes at `q = z`.
pub fn right_poly_with_zero(z: Quaternion, g_lower: &[Quaternion]) -> QPolynomial {
    let mut g = g_lower.to_vec();
    g.push(Quaternion::ONE);
    let n = g.len();
    let mut f = vec![Quaternion::ZERO; n + 1];
    for (v, &gv) in g.iter().enumerate() {
        f[v + 1] += gv;
        f[v] += -(z * gv);
    }
    QPolynomial::monic_normalize(f, CoefficientSide::Right).unwrap()
}

/// Complex roots of a real monic polynomial of degree 1, 2 or 3 (ascending
/// coefficients, leading 1 omitted), by the closed-form formulas. Returned as
/// `(re, im)` with `im >= 0`, one entry per conjugate pair.
pub fn closed_form_roots(lower: &[f64]) -> Vec<(f64, f64)> {
    match *lower {
        [c0] => vec![(-c0, 0.0)],
        [c0, c1] => {
            let disc = c1 * c1 - 4.0 * c0;
            if disc >= 0.0 {
                // stable form avoiding cancellation
                let t = -0.5 * (c1 + c1.signum() * disc.sqrt());
                let (r1, r2) = if t == 0.0 { (0.0, 0.0) } else { (t, c0 / t) };
                vec![(r1, 0.0), (r2, 0.0)]
            } else {
                vec![(-c1 / 2.0, (-disc).sqrt() / 2.0)]
            }
        }
        [c0, c1, c2] => {
            // x = t - c2/3, t³ + pt + q = 0
            let shift = c2 / 3.0;
            let p = c1 - c2 * c2 / 3.0;
            let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
            let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
            if disc > 0.0 {
                let sq = disc.sqrt();
                let u = (-q / 2.0 + sq).cbrt();
                let v = (-q / 2.0 - sq).cbrt();
                let real = u + v - shift;
                let re = -(u + v) / 2.0 - shift;
                let im = (3f64.sqrt() / 2.0 * (u - v)).abs();
                vec![(real, 0.0), (re, im)]
            } else {
                let m = 2.0 * (-p / 3.0).sqrt();
                let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
                (0..3)
                    .map(|k| {
                        let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
                        (t - shift, 0.0)
                    })
                    .collect()
            }
        }
        _ => panic!("closed form only for degree 1..=3"),
    }
}
