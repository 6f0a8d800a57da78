//! Zero-containment regions computed from coefficient norms.
//!
//! Every radius here depends on the coefficients only through their norms,
//! so the same numbers apply to left and right polynomials alike.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::ZeroClass;
use crate::poly::QPolynomial;
use crate::quat::{unit_pure_samples, Quaternion};

/// Lower clamp on the two-ball parameter `r` so that it stays positive.
pub const MIN_THEOREM_E_R: f64 = 1e-9;

/// Sphere samples used when neither ball of a union holds a whole sphere.
pub const UNION_SPHERE_SAMPLES: usize = 1024;

const HOLDER_TOL: f64 = 1e-12;
const ORDERING_RTOL: f64 = 1e-12;

/// Conjugate exponents `r, s > 1` with `1/r + 1/s = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct HolderPair {
    r: f64,
    s: f64,
}

impl HolderPair {
    pub const EUCLIDEAN: Self = Self { r: 2.0, s: 2.0 };

    pub fn new(r: f64, s: f64) -> Result<Self> {
        let valid = r > 1.0 && s > 1.0 && r.is_finite() && s.is_finite() && (1.0 / r + 1.0 / s - 1.0).abs() <= HOLDER_TOL;
        if valid {
            Ok(Self { r, s })
        } else {
            Err(Error::InvalidHolderPair { r, s })
        }
    }

    /// The pair `(r, r / (r - 1))`.
    pub fn from_r(r: f64) -> Result<Self> {
        Self::new(r, r / (r - 1.0))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

impl TryFrom<(f64, f64)> for HolderPair {
    type Error = Error;
    fn try_from((r, s): (f64, f64)) -> Result<Self> {
        Self::new(r, s)
    }
}

impl From<HolderPair> for (f64, f64) {
    fn from(h: HolderPair) -> Self {
        (h.r, h.s)
    }
}

impl fmt::Display for HolderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.r, self.s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionShape {
    /// `{ |q| ≤ radius }`
    OriginBall { radius: f64 },
    /// `{ |q| ≤ radius1 } ∪ { |q - center2| ≤ radius2 }`
    Union {
        radius1: f64,
        center2: Quaternion,
        radius2: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRegion {
    pub label: String,
    #[serde(flatten)]
    pub shape: RegionShape,
}

impl BoundRegion {
    pub fn origin_ball(label: impl Into<String>, radius: f64) -> Self {
        Self {
            label: label.into(),
            shape: RegionShape::OriginBall { radius },
        }
    }

    /// Radius for origin balls, `None` for unions.
    pub fn radius(&self) -> Option<f64> {
        match self.shape {
            RegionShape::OriginBall { radius } => Some(radius),
            RegionShape::Union { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Contained,
    /// Every sampled point of a sphere lies in the union, but no single ball
    /// holds the whole sphere.
    SampledContained,
    NotContained,
}

impl Containment {
    pub fn is_contained(self) -> bool {
        self != Self::NotContained
    }
}

impl fmt::Display for Containment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Contained => "contained",
            Self::SampledContained => "sampled_contained",
            Self::NotContained => "not_contained",
        })
    }
}

fn lower_norms(p: &QPolynomial) -> impl Iterator<Item = f64> + Clone + '_ {
    p.lower().iter().map(|a| a.norm())
}

/// `(Σ xᵢʳ)^{1/r}`, scaled by the largest entry so huge `r` cannot overflow.
fn power_mean_norm(values: impl Iterator<Item = f64> + Clone, r: f64) -> f64 {
    let max = values.clone().fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    max * values.map(|x| (x / max).powf(r)).sum::<f64>().powf(1.0 / r)
}

/// `(1 + aˢ)^{1/s}` without overflow for large `a`.
fn one_plus_power_root(a: f64, s: f64) -> f64 {
    if a <= 1.0 {
        (1.0 + a.powf(s)).powf(1.0 / s)
    } else {
        a * (1.0 + a.powf(-s)).powf(1.0 / s)
    }
}

/// Ball of radius `1 + max ‖aᵥ‖`.
pub fn cauchy_bound(p: &QPolynomial) -> BoundRegion {
    BoundRegion::origin_ball("cauchy", 1.0 + p.max_lower_norm())
}

/// `A_r = (Σ ‖aᵥ‖ʳ)^{1/r}` over the non-leading coefficients.
pub fn coefficient_r_norm(p: &QPolynomial, r: f64) -> f64 {
    power_mean_norm(lower_norms(p), r)
}

/// Ball of radius `(1 + (Σ ‖aᵥ‖ʳ)^{s/r})^{1/s}`.
pub fn kmt_bound(p: &QPolynomial, h: HolderPair) -> BoundRegion {
    let radius = one_plus_power_root(coefficient_r_norm(p, h.r), h.s);
    BoundRegion::origin_ball(format!("kmt({h})"), radius)
}

/// Ball of radius `(1 + n^{s/r} Mˢ)^{1/s}`, `M = max ‖aᵥ‖`. Never smaller
/// than [`kmt_bound`] for the same pair.
pub fn kmt_bound_simplified(p: &QPolynomial, h: HolderPair) -> BoundRegion {
    let n = p.degree() as f64;
    let radius = one_plus_power_root(n.powf(1.0 / h.r) * p.max_lower_norm(), h.s);
    BoundRegion::origin_ball(format!("kmt_simplified({h})"), radius)
}

/// [`kmt_bound`] at `r = s = 2`: radius `(1 + Σ ‖aᵥ‖²)^{1/2}`.
pub fn euclidean_bound(p: &QPolynomial) -> BoundRegion {
    let mut region = kmt_bound(p, HolderPair::EUCLIDEAN);
    region.label = "euclidean".into();
    region
}

/// Ball of radius `max(L, L^{1/n})` with `L = Σ ‖aᵥ‖`. For `L = 0` this is
/// the degenerate ball `{0}`.
pub fn montel_bound(p: &QPolynomial) -> BoundRegion {
    let l: f64 = lower_norms(p).sum();
    let radius = l.max(l.powf(1.0 / p.degree() as f64));
    BoundRegion::origin_ball("montel", radius)
}

/// Coefficient norms in reversed order: entry `k` is `‖bₖ‖ = ‖a_{n-k}‖`,
/// `k = 0..=n` (so entry 0 is the leading 1).
fn theorem_e_norms(p: &QPolynomial) -> Vec<f64> {
    p.coeffs().iter().rev().map(|a| a.norm()).collect()
}

/// Smallest `r > 0` with `α₂ ≥ α₃ ≥ ⋯ ≥ αₙ`, `αₖ = ‖bₖ‖ / rᵏ`, clamped below
/// at [`MIN_THEOREM_E_R`]. `None` when no `r` works, which happens exactly
/// when some `bₖ` (`k ≥ 2`) vanishes but a later one does not.
pub fn feasible_r(p: &QPolynomial) -> Result<Option<f64>> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::NeedsDegreeTwo);
    }
    let b = theorem_e_norms(p);
    let mut r = MIN_THEOREM_E_R;
    for k in 2..n {
        let (den, num) = (b[k], b[k + 1]);
        if den == 0.0 {
            if num != 0.0 {
                return Ok(None);
            }
        } else {
            r = r.max(num / den);
        }
    }
    Ok(Some(r))
}

fn ordering_holds(b: &[f64], r: f64) -> bool {
    let n = b.len() - 1;
    (2..n).all(|k| {
        let this = b[k] / r.powi(k as i32);
        let next = b[k + 1] / r.powi(k as i32 + 1);
        if this == 0.0 {
            next == 0.0
        } else {
            this >= next * (1.0 - ORDERING_RTOL)
        }
    })
}

/// Union of `|q| ≤ r(1 + α₂)` and `|q + b₁| ≤ r`, where
/// `b₁ = a_{n-1}` and `α₂ = ‖a_{n-2}‖ / r²`.
pub fn rather_region(p: &QPolynomial, r: f64) -> Result<BoundRegion> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::NeedsDegreeTwo);
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::NonPositiveR(r));
    }
    let b = theorem_e_norms(p);
    if !ordering_holds(&b, r) {
        return Err(Error::OrderingViolated(r));
    }
    let b1 = p.coeffs()[n - 1];
    let alpha2 = b[2] / (r * r);
    Ok(BoundRegion {
        label: "theorem_e".into(),
        shape: RegionShape::Union {
            radius1: r * (1.0 + alpha2),
            center2: -b1,
            radius2: r,
        },
    })
}

/// Slack allowed on a ball of the given radius.
pub fn containment_tol(radius: f64) -> f64 {
    1e-9 * (1.0 + radius)
}

/// Largest `‖d + ρu‖` over unit pure `u`: `sqrt((Re d)² + (‖Im d‖ + ρ)²)`.
pub fn sphere_max_distance(d: Quaternion, im_radius: f64) -> f64 {
    d.w.hypot(d.vector_norm() + im_radius)
}

pub fn region_contains(region: &BoundRegion, zc: &ZeroClass) -> Containment {
    let verdict = |inside: bool| {
        if inside {
            Containment::Contained
        } else {
            Containment::NotContained
        }
    };
    match region.shape {
        RegionShape::OriginBall { radius } => verdict(zc.norm() <= radius + containment_tol(radius)),
        RegionShape::Union { radius1, center2, radius2 } => {
            let in1 = |q: Quaternion| q.norm() <= radius1 + containment_tol(radius1);
            let in2 = |q: Quaternion| (q - center2).norm() <= radius2 + containment_tol(radius2);
            match *zc {
                ZeroClass::Isolated { point, .. } => verdict(in1(point) || in2(point)),
                ZeroClass::Spherical { re, im_radius, .. } => {
                    if zc.norm() <= radius1 + containment_tol(radius1) {
                        return Containment::Contained;
                    }
                    let d = Quaternion::real(re) - center2;
                    if sphere_max_distance(d, im_radius) <= radius2 + containment_tol(radius2) {
                        return Containment::Contained;
                    }
                    let all_in = unit_pure_samples(UNION_SPHERE_SAMPLES)
                        .into_iter()
                        .map(|u| Quaternion::real(re) + u.scale(im_radius))
                        .all(|q| in1(q) || in2(q));
                    if all_in {
                        Containment::SampledContained
                    } else {
                        Containment::NotContained
                    }
                }
            }
        }
    }
}

/// `|q|ⁿ (1 - A_r / (|q|ˢ - 1)^{1/s})`, a lower bound on `‖p(q)‖` for
/// `|q| > 1` obtained from Hölder's inequality and the geometric series in
/// `1/|q|ˢ`.
pub fn proof_lower_bound(p: &QPolynomial, q: Quaternion, h: HolderPair) -> Result<f64> {
    let m = q.norm();
    if !(m > 1.0) {
        return Err(Error::NormNotAboveOne(m));
    }
    let a_r = coefficient_r_norm(p, h.r);
    let tail = (m.powf(h.s) - 1.0).powf(1.0 / h.s);
    Ok(m.powi(p.degree() as i32) * (1.0 - a_r / tail))
}
