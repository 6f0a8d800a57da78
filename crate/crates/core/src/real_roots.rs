//! All complex roots of a real polynomial by Aberth–Ehrlich simultaneous
//! iteration.
//!
//! Exact zero roots (vanishing trailing coefficients) are split off first.
//! The remaining roots are iterated together without deflation, then
//! clustered so that multiple roots come back once with their multiplicity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;

pub const MAX_ITERATIONS: usize = 1000;

/// Required final residual, relative to `Σ |bₘ| max(1, |z|)ᵐ`.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// Roots closer than this (relative to `max(1, |z|)`) are one root.
pub const CLUSTER_TOL: f64 = 1e-7;

const ANGLE_OFFSET: f64 = 0.7;

/// A root of a real polynomial with conjugate pairs folded to `im >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl ComplexRoot {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Folded, clustered roots sorted by `(re, im)`.
pub fn real_poly_roots(b: &RealPolynomial) -> Result<Vec<ComplexRoot>> {
    let (zero_count, raw) = aberth_roots(b)?;
    let mut out = Vec::new();
    if zero_count > 0 {
        out.push(ComplexRoot { re: 0.0, im: 0.0, multiplicity: zero_count });
    }
    let reduced = RealPolynomial::new(b.coeffs[zero_count..].to_vec());
    for (center, m) in cluster(&reduced, &raw) {
        let tol = CLUSTER_TOL * center.norm().max(1.0);
        if center.im.abs() <= tol {
            out.push(ComplexRoot { re: center.re, im: 0.0, multiplicity: m });
        } else if center.im > 0.0 {
            out.push(ComplexRoot { re: center.re, im: center.im, multiplicity: m });
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// Unfolded root approximations of the polynomial with its exact zero roots
/// removed, together with the number of removed zero roots.
pub fn aberth_roots(b: &RealPolynomial) -> Result<(usize, Vec<Complex64>)> {
    let degree = match b.degree() {
        Some(d) if d >= 1 => d,
        d => return Err(Error::DegreeTooLow(d.unwrap_or(0))),
    };
    let zero_count = b.coeffs.iter().take_while(|&&c| c == 0.0).count();
    let lead = b.coeffs[degree];
    let monic: Vec<f64> = b.coeffs[zero_count..=degree].iter().map(|c| c / lead).collect();
    let poly = RealPolynomial::new(monic);
    let d = degree - zero_count;
    if d == 0 {
        return Ok((zero_count, Vec::new()));
    }
    if d == 1 {
        return Ok((zero_count, vec![Complex64::new(-poly.coeffs[0], 0.0)]));
    }

    let radius = 1.0 + poly.coeffs[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / d as f64 + ANGLE_OFFSET;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; d];
    let floor = 4.0 * (d as f64) * f64::EPSILON;

    for _ in 0..MAX_ITERATIONS {
        if done.iter().all(|&c| c) {
            break;
        }
        for i in 0..d {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let (p, dp) = poly.eval_with_derivative(zi);
            if p.norm() <= floor * poly.abs_eval(zi.norm()) {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &zj)| (zi - zj).inv())
                .sum();
            let newton = p / dp;
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.is_finite() {
                // dp == 0 or a collision; nudge and retry next sweep
                z[i] = zi * Complex64::from_polar(1.0 + 1e-3, 0.1) + 1e-8;
                continue;
            }
            z[i] = zi - step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
    }

    let failed: Vec<usize> = z
        .iter()
        .enumerate()
        .filter(|&(_, &zi)| {
            let scale = poly.abs_eval(zi.norm().max(1.0));
            !(poly.eval(zi).norm() <= RESIDUAL_TOL * scale)
        })
        .map(|(i, _)| i)
        .collect();
    if !failed.is_empty() {
        return Err(Error::NoConvergence {
            failed,
            total: d,
            iterations: MAX_ITERATIONS,
        });
    }
    Ok((zero_count, z))
}

/// Groups root approximations whose inclusion discs overlap. The disc
/// around `zᵢ` has radius `d·|Wᵢ|`, `Wᵢ = p(zᵢ) / Π_{j≠i} (zᵢ - zⱼ)`, floored
/// at [`CLUSTER_TOL`]; a connected component of `k` discs holds exactly `k`
/// roots. Each cluster of size `m > 1` is re-centered on the nearby root of
/// the `(m-1)`-th derivative, which is simple where the cluster's root has
/// multiplicity `m`.
fn cluster(poly: &RealPolynomial, roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let zi = roots[i];
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| zi - roots[j]).product();
            let w = (poly.eval(zi) / denom).norm();
            let floor = CLUSTER_TOL * zi.norm().max(1.0);
            if w.is_finite() { (n as f64 * w).max(floor) } else { floor }
        })
        .collect();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if (roots[i] - roots[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (label[i], label[j]);
                if a != b {
                    label.iter_mut().filter(|l| **l == b).for_each(|l| *l = a);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| *g == l) {
            Some((_, members)) => members.push(roots[i]),
            None => groups.push((l, vec![roots[i]])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let m = members.len();
            let centroid = members.iter().sum::<Complex64>() / m as f64;
            let spread = members.iter().map(|z| (z - centroid).norm()).fold(0.0, f64::max);
            let center = if m > 1 { refine_multiple(poly, centroid, m, spread) } else { centroid };
            (center, m)
        })
        .collect()
}

fn refine_multiple(poly: &RealPolynomial, start: Complex64, multiplicity: usize, spread: f64) -> Complex64 {
    let mut deriv = poly.clone();
    for _ in 1..multiplicity {
        deriv = deriv.derivative();
    }
    let tol = (2.0 * spread).max(CLUSTER_TOL * start.norm().max(1.0));
    let mut z = start;
    for _ in 0..50 {
        let (p, dp) = deriv.eval_with_derivative(z);
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 2.0 * f64::EPSILON * z.norm() {
            break;
        }
    }
    if (z - start).norm() <= tol && z.is_finite() {
        z
    } else {
        start
    }
}
