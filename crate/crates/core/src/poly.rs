//! Monic one-sided quaternionic polynomials and their real companion
//! polynomials.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Largest supported degree. The companion polynomial has twice this degree.
pub const MAX_DEGREE: usize = 16;

/// Relative tolerance on the non-scalar part of a companion coefficient.
pub const COMPANION_REALNESS_TOL: f64 = 1e-12;

/// Which side of the variable's powers the coefficients sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientSide {
    /// `p(q) = Σ aᵥ qᵛ`
    Left,
    /// `p(q) = Σ qᵛ aᵥ`
    Right,
}

impl CoefficientSide {
    pub fn other(self) -> Self {
        match self {
            Self::Left => Self::Right,
            Self::Right => Self::Left,
        }
    }
}

impl fmt::Display for CoefficientSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Left => "left",
            Self::Right => "right",
        })
    }
}

/// A monic polynomial `Σ₀ⁿ qᵛ aᵥ` (right) or `Σ₀ⁿ aᵥ qᵛ` (left) with
/// `aₙ = 1` and `n ≥ 1`. Coefficients are stored in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct QPolynomial {
    side: CoefficientSide,
    coeffs: Vec<Quaternion>,
}

impl QPolynomial {
    /// Scales `coeffs` by the inverse of the leading coefficient, on the side
    /// that leaves the zero set unchanged: `p(q)·c` for right polynomials and
    /// `c·p(q)` for left ones.
    pub fn monic_normalize(coeffs: Vec<Quaternion>, side: CoefficientSide) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::DegreeTooLow(coeffs.len().saturating_sub(1)));
        }
        let degree = coeffs.len() - 1;
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooHigh(degree));
        }
        let lead = coeffs[degree];
        if lead.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let mut coeffs = coeffs;
        if lead != Quaternion::ONE {
            let inv = lead.inverse()?;
            for c in coeffs.iter_mut() {
                *c = match side {
                    CoefficientSide::Right => *c * inv,
                    CoefficientSide::Left => inv * *c,
                };
            }
            coeffs[degree] = Quaternion::ONE;
        }
        Ok(Self { side, coeffs })
    }

    /// Builds a polynomial from its non-leading coefficients `a₀ … aₙ₋₁`.
    pub fn from_lower(lower: &[Quaternion], side: CoefficientSide) -> Result<Self> {
        let mut coeffs = lower.to_vec();
        coeffs.push(Quaternion::ONE);
        Self::monic_normalize(coeffs, side)
    }

    /// The monomial `qⁿ`.
    pub fn monomial(degree: usize, side: CoefficientSide) -> Result<Self> {
        Self::from_lower(&vec![Quaternion::ZERO; degree], side)
    }

    pub fn side(&self) -> CoefficientSide {
        self.side
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All coefficients `a₀ … aₙ`, the last being exactly 1.
    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// The non-leading coefficients `a₀ … aₙ₋₁`.
    pub fn lower(&self) -> &[Quaternion] {
        &self.coeffs[..self.degree()]
    }

    /// `max ‖aᵥ‖` over the non-leading coefficients.
    pub fn max_lower_norm(&self) -> f64 {
        self.lower().iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.coeffs.iter().all(|a| a.vector().is_zero())
    }

    /// Horner evaluation honoring the coefficient side.
    pub fn evaluate(&self, q: Quaternion) -> Quaternion {
        let mut it = self.coeffs.iter().rev();
        let mut acc = *it.next().expect("degree >= 1");
        match self.side {
            CoefficientSide::Right => it.for_each(|&a| acc = q * acc + a),
            CoefficientSide::Left => it.for_each(|&a| acc = acc * q + a),
        }
        acc
    }

    /// The same coefficients, conjugated, on the other side. `q` is a zero
    /// of `self` iff `conj(q)` is a zero of the result.
    pub fn to_side(&self, target: CoefficientSide) -> Self {
        if target == self.side {
            return self.clone();
        }
        Self {
            side: target,
            coeffs: self.coeffs.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Replaces the coefficients with a transformed copy; the leading
    /// coefficient is kept at 1.
    pub fn map_lower(&self, mut f: impl FnMut(usize, Quaternion) -> Quaternion) -> Self {
        let n = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(v, &a)| if v == n { a } else { f(v, a) })
            .collect();
        Self { side: self.side, coeffs }
    }

    /// Real polynomial `b` of degree `2n` with `bₘ = Σ_{j+k=m} Re(conj(aⱼ)·aₖ)`.
    ///
    /// Every zero of `self` is similar to some complex root of `b`.
    pub fn companion(&self) -> Result<RealPolynomial> {
        let (b, deviation) = self.companion_with_deviation();
        match deviation {
            Some((index, dev)) if dev > COMPANION_REALNESS_TOL => {
                Err(Error::CompanionNotReal { index, deviation: dev })
            }
            _ => Ok(b),
        }
    }

    /// Companion polynomial together with the index and size of its worst
    /// relative non-scalar residue.
    pub fn companion_with_deviation(&self) -> (RealPolynomial, Option<(usize, f64)>) {
        let n = self.degree();
        let a = &self.coeffs;
        let mut b = vec![0.0; 2 * n + 1];
        let mut worst: Option<(usize, f64)> = None;
        for (m, bm) in b.iter_mut().enumerate() {
            let lo = m.saturating_sub(n);
            let hi = m.min(n);
            let mut acc = Quaternion::ZERO;
            let mut scale = 0.0;
            for j in lo..=hi {
                let k = m - j;
                acc += a[j].conj() * a[k];
                scale += a[j].norm() * a[k].norm();
            }
            let dev = if scale > 0.0 { acc.vector_norm() / scale } else { 0.0 };
            if worst.is_none_or(|(_, w)| dev > w) {
                worst = Some((m, dev));
            }
            *bm = acc.scalar();
        }
        (RealPolynomial::new(b), worst)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let power = match v {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{v}"),
            };
            if *a == Quaternion::ONE && v > 0 {
                f.write_str(&power)?;
            } else if v == 0 {
                write!(f, "({a})")?;
            } else {
                match self.side {
                    CoefficientSide::Right => write!(f, "{power}({a})")?,
                    CoefficientSide::Left => write!(f, "({a}){power}")?,
                }
            }
        }
        Ok(())
    }
}

/// On-disk polynomial format: `{"side": "right", "coeffs": [[w,x,y,z], ...]}`
/// in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub side: CoefficientSide,
    pub coeffs: Vec<Quaternion>,
}

impl From<&QPolynomial> for PolyJson {
    fn from(p: &QPolynomial) -> Self {
        Self {
            side: p.side,
            coeffs: p.coeffs.clone(),
        }
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        QPolynomial::monic_normalize(raw.coeffs, raw.side).map_err(serde::de::Error::custom)
    }
}

/// Real polynomial in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    pub coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// Degree ignoring trailing zero coefficients; `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        self.coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
    }

    /// `Σ |bₘ| |z|ᵐ`, the natural scale of rounding error in `eval(z)`.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &c)| m as f64 * c)
                .collect(),
        )
    }
}

/// Parses `w,x,y,z;w,x,y,z;…` (ascending powers). An entry without commas
/// is read as a quaternion literal such as `1-2i+k`. A trailing `;` is
/// allowed. Error positions are 0-based byte offsets into `text`.
pub fn parse_coefficient_list(text: &str) -> Result<Vec<Quaternion>> {
    let err = |position: usize, message: String| Error::Parse { position, message };
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for entry in text.split(';') {
        let start = offset;
        offset += entry.len() + 1;
        if entry.trim().is_empty() {
            if offset > text.len() && !coeffs.is_empty() {
                break;
            }
            return Err(err(start, "empty coefficient".into()));
        }
        if !entry.contains(',') {
            let lead = entry.len() - entry.trim_start().len();
            let q = entry.trim().parse::<Quaternion>().map_err(|e| match e {
                Error::Parse { position, message } => err(start + lead + position, message),
                other => err(start, other.to_string()),
            })?;
            coeffs.push(q);
            continue;
        }
        let mut parts = [0.0; 4];
        let mut count = 0;
        let mut pos = start;
        for field in entry.split(',') {
            if count == 4 {
                return Err(err(pos, "more than 4 components".into()));
            }
            let value = field.trim();
            parts[count] = value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(pos, format!("not a finite number: {value:?}")))?;
            count += 1;
            pos += field.len() + 1;
        }
        if count != 4 {
            return Err(err(start, format!("expected 4 components w,x,y,z, got {count}")));
        }
        coeffs.push(Quaternion::new(parts[0], parts[1], parts[2], parts[3]));
    }
    Ok(coeffs)
}
