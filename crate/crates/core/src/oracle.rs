//! Every zero of a monic one-sided quaternionic polynomial, found
//! independently of the coefficient bounds.
//!
//! The pipeline is companion polynomial → complex roots → one zero class per
//! folded root. For a right polynomial and a root `α + iβ`, every `q` with
//! `Re q = α` and `|q|² = α² + β²` satisfies `qᵛ = Aᵥ + Bᵥ q` for real
//! sequences `A`, `B`, so `p(q) = c + q d` with quaternions
//! `c = Σ Aᵥ aᵥ`, `d = Σ Bᵥ aᵥ`. Then either `d ≠ 0` and the class holds the
//! single zero `-c d⁻¹`, or `c = d = 0` and the whole class is a sphere of
//! zeros.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::{CoefficientSide, QPolynomial};
use crate::quat::{unit_pure_samples, Quaternion};
use crate::real_roots::{real_poly_roots, ComplexRoot};

/// Points at which a spherical class is spot-checked.
pub const SPHERE_CHECK_SAMPLES: usize = 16;

/// Tolerance on the similarity data of a recovered isolated zero.
pub const SIMILARITY_TOL: f64 = 1e-6;

/// Classes with similarity data this close are the same class.
pub const DEDUP_TOL: f64 = 1e-7;

/// A zero of a quaternionic polynomial: a single point, or a whole sphere
/// `{re + im_radius·u : u² = -1}` of points sharing real part and norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ZeroClass {
    Isolated { point: Quaternion, residual: f64 },
    Spherical { re: f64, im_radius: f64, residual: f64 },
}

impl ZeroClass {
    /// Norm shared by every point of the class.
    pub fn norm(&self) -> f64 {
        match *self {
            Self::Isolated { point, .. } => point.norm(),
            Self::Spherical { re, im_radius, .. } => re.hypot(im_radius),
        }
    }

    pub fn similarity_data(&self) -> (f64, f64) {
        match *self {
            Self::Isolated { point, .. } => point.similarity_data(),
            Self::Spherical { re, im_radius, .. } => (re, im_radius),
        }
    }

    pub fn residual(&self) -> f64 {
        match *self {
            Self::Isolated { residual, .. } | Self::Spherical { residual, .. } => residual,
        }
    }

    pub fn is_spherical(&self) -> bool {
        matches!(self, Self::Spherical { .. })
    }
}

/// Why a companion root did not yield a zero class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Inconsistency {
    /// Real root `α` with `p(α) ≠ 0`.
    RealRootNotZero { root: ComplexRoot, residual: f64 },
    /// `d ≈ 0` but `c` is not.
    SingularClass { root: ComplexRoot, c_norm: f64, d_norm: f64 },
    /// `-c d⁻¹` is not in the class of the root.
    SimilarityMismatch { root: ComplexRoot, re: f64, im_norm: f64 },
    /// The candidate class does not evaluate to zero.
    ResidualTooLarge { root: ComplexRoot, residual: f64, tol: f64 },
}

/// Output of [`all_zeros`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub classes: Vec<ZeroClass>,
    pub inconsistencies: Vec<Inconsistency>,
    /// Distinct folded companion roots the classes were derived from.
    pub companion_roots: Vec<ComplexRoot>,
    /// Worst relative non-scalar residue seen while forming the companion.
    pub companion_deviation: f64,
}

impl ZeroSet {
    pub fn max_norm(&self) -> f64 {
        self.classes.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Residual tolerance `1e-8·(1 + max ‖aᵥ‖)` over the non-leading coefficients.
pub fn eval_tolerance(p: &QPolynomial) -> f64 {
    1e-8 * (1.0 + p.max_lower_norm())
}

/// A priori rounding bound `8n·ε·Σ ‖aᵥ‖ |q|ᵛ` for Horner evaluation at a
/// point of norm `q_norm`.
pub fn rounding_floor(p: &QPolynomial, q_norm: f64) -> f64 {
    let n = p.degree() as f64;
    let scale = p.coeffs().iter().rev().fold(0.0, |acc, a| acc * q_norm + a.norm());
    8.0 * n * f64::EPSILON * scale
}

/// Residual a class must meet to be accepted: [`eval_tolerance`], or the
/// rounding floor where that is larger (large coefficients and zeros).
pub fn acceptance_tolerance(p: &QPolynomial, q_norm: f64) -> f64 {
    eval_tolerance(p).max(rounding_floor(p, q_norm))
}

/// Sequences `Aᵥ`, `Bᵥ` with `qᵛ = Aᵥ + Bᵥ q` for every `q` in the class of
/// `re + i·im`.
pub fn power_reduction(re: f64, im: f64, degree: usize) -> (Vec<f64>, Vec<f64>) {
    let norm_sqr = re * re + im * im;
    let mut a = Vec::with_capacity(degree + 1);
    let mut b = Vec::with_capacity(degree + 1);
    a.push(1.0);
    b.push(0.0);
    for v in 0..degree {
        a.push(-norm_sqr * b[v]);
        b.push(a[v] + 2.0 * re * b[v]);
    }
    (a, b)
}

/// Largest `‖p(re + im·u)‖` over the deterministic sphere samples.
pub fn sphere_residual(p: &QPolynomial, re: f64, im_radius: f64, samples: usize) -> f64 {
    unit_pure_samples(samples)
        .into_iter()
        .map(|u| p.evaluate(Quaternion::real(re) + u.scale(im_radius)).norm())
        .fold(0.0, f64::max)
}

/// Resolves the similarity class of one folded companion root of a right
/// polynomial into its zero class.
pub fn class_to_zero(p: &QPolynomial, root: ComplexRoot) -> Result<ZeroClass, Inconsistency> {
    debug_assert_eq!(p.side(), CoefficientSide::Right);
    let (alpha, beta) = (root.re, root.im);
    let tol_eval = acceptance_tolerance(p, root.modulus());

    if beta == 0.0 {
        let point = Quaternion::real(alpha);
        let residual = p.evaluate(point).norm();
        return if residual <= tol_eval {
            Ok(ZeroClass::Isolated { point, residual })
        } else {
            Err(Inconsistency::RealRootNotZero { root, residual })
        };
    }

    let (a_seq, b_seq) = power_reduction(alpha, beta, p.degree());
    let mut c = Quaternion::ZERO;
    let mut d = Quaternion::ZERO;
    for ((&av, &bv), &coeff) in a_seq.iter().zip(&b_seq).zip(p.coeffs()) {
        c += coeff.scale(av);
        d += coeff.scale(bv);
    }
    let reduction_scale: f64 = a_seq.iter().zip(&b_seq).map(|(a, b)| a.abs() + b.abs()).sum();
    let tol_sing = 1e-9 * reduction_scale * p.max_lower_norm().max(1.0);

    if d.norm() > tol_sing {
        let raw = -(c * d.inverse().expect("d is nonzero"));
        let point = polish(p, raw);
        let (re, im_norm) = point.similarity_data();
        let sim_tol = SIMILARITY_TOL * root.modulus().max(1.0);
        if (re - alpha).abs() > sim_tol || (im_norm - beta).abs() > sim_tol {
            return Err(Inconsistency::SimilarityMismatch { root, re, im_norm });
        }
        let residual = p.evaluate(point).norm();
        if residual > tol_eval {
            return Err(Inconsistency::ResidualTooLarge { root, residual, tol: tol_eval });
        }
        Ok(ZeroClass::Isolated { point, residual })
    } else if c.norm() <= tol_sing {
        let residual = sphere_residual(p, alpha, beta, SPHERE_CHECK_SAMPLES);
        if residual > tol_eval {
            return Err(Inconsistency::ResidualTooLarge { root, residual, tol: tol_eval });
        }
        Ok(ZeroClass::Spherical { re: alpha, im_radius: beta, residual })
    } else {
        Err(Inconsistency::SingularClass {
            root,
            c_norm: c.norm(),
            d_norm: d.norm(),
        })
    }
}

/// All zero classes of `p`. Left polynomials are handled through the right
/// polynomial with conjugated coefficients, whose zeros are the conjugates.
pub fn all_zeros(p: &QPolynomial) -> Result<ZeroSet> {
    let right = p.to_side(CoefficientSide::Right);
    let (companion, worst) = right.companion_with_deviation();
    let companion_deviation = worst.map_or(0.0, |(_, d)| d);
    let roots = real_poly_roots(&companion)?;

    let mut classes: Vec<ZeroClass> = Vec::new();
    let mut inconsistencies = Vec::new();
    for &root in &roots {
        match class_to_zero(&right, root) {
            Ok(zc) => {
                let zc = match (p.side(), zc) {
                    (CoefficientSide::Left, ZeroClass::Isolated { point, .. }) => {
                        let point = point.conj();
                        ZeroClass::Isolated { point, residual: p.evaluate(point).norm() }
                    }
                    (CoefficientSide::Left, ZeroClass::Spherical { re, im_radius, .. }) => {
                        let residual = sphere_residual(p, re, im_radius, SPHERE_CHECK_SAMPLES);
                        ZeroClass::Spherical { re, im_radius, residual }
                    }
                    (CoefficientSide::Right, zc) => zc,
                };
                let (re, im) = zc.similarity_data();
                let duplicate = classes.iter().any(|other| {
                    let (ore, oim) = other.similarity_data();
                    (ore - re).abs() <= DEDUP_TOL && (oim - im).abs() <= DEDUP_TOL
                });
                if !duplicate {
                    classes.push(zc);
                }
            }
            Err(inc) => inconsistencies.push(inc),
        }
    }
    Ok(ZeroSet {
        classes,
        inconsistencies,
        companion_roots: roots,
        companion_deviation,
    })
}

/// A few Newton steps on `q ↦ p(q)` viewed as a map of `ℝ⁴`, kept only while
/// they reduce the residual.
fn polish(p: &QPolynomial, start: Quaternion) -> Quaternion {
    let mut q = start;
    let mut res = p.evaluate(q);
    for _ in 0..3 {
        let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        let mut jac = [[0.0; 4]; 4];
        for (col, h) in basis.into_iter().enumerate() {
            let dir = directional_derivative(p, q, h).to_array();
            for row in 0..4 {
                jac[row][col] = dir[row];
            }
        }
        let Some(step) = solve4(jac, (-res).to_array()) else {
            break;
        };
        let next = q + Quaternion::from(step);
        let next_res = p.evaluate(next);
        if next_res.norm() < res.norm() {
            q = next;
            res = next_res;
        } else {
            break;
        }
    }
    q
}

/// `d/dt p(q + t·h)` at `t = 0`, by the product rule through Horner's scheme.
fn directional_derivative(p: &QPolynomial, q: Quaternion, h: Quaternion) -> Quaternion {
    let mut it = p.coeffs().iter().rev();
    let mut acc = *it.next().expect("degree >= 1");
    let mut dacc = Quaternion::ZERO;
    for &a in it {
        match p.side() {
            CoefficientSide::Right => {
                dacc = h * acc + q * dacc;
                acc = q * acc + a;
            }
            CoefficientSide::Left => {
                dacc = dacc * q + acc * h;
                acc = acc * q + a;
            }
        }
    }
    dacc
}

fn solve4(mut m: [[f64; 4]; 4], mut rhs: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let pivot = (col..4).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col] == 0.0 || !m[pivot][col].is_finite() {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (i, row) in rest.iter_mut().enumerate() {
            let f = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
            rhs[col + 1 + i] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let tail: f64 = ((row + 1)..4).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
