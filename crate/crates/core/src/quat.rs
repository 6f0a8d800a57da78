//! Real quaternions `w + xi + yj + zk` in double precision.
//!
//! Multiplication is the Hamilton product (`ij = k`, `ji = -k`), so operand
//! order matters everywhere in this crate.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute and relative tolerance used by [`Quaternion::approx_eq`].
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm `sqrt(w² + x² + y² + z²)`.
    ///
    /// Computed with `hypot` so that very large or very small components do
    /// not overflow or flush to zero.
    pub fn norm(self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    /// `conj(q) / |q|²`.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn scalar(self) -> f64 {
        self.w
    }

    /// The pure part `xi + yj + zk`.
    pub fn vector(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn vector_norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    /// `(Re q, |Im q|)`. Two quaternions are similar (conjugate under some
    /// unit quaternion) iff these pairs agree.
    pub fn similarity_data(self) -> (f64, f64) {
        (self.w, self.vector_norm())
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Componentwise `|a - b| <= atol + rtol * max(|a|, |b|)`.
    pub fn approx_eq(self, other: Self, atol: f64, rtol: f64) -> bool {
        let scale = self.norm().max(other.norm());
        self.to_array()
            .iter()
            .zip(other.to_array())
            .all(|(a, b)| (a - b).abs() <= atol + rtol * scale)
    }
}

/// `n` deterministic, roughly evenly spread unit pure quaternions
/// (a Fibonacci lattice on the sphere of imaginary units).
pub fn unit_pure_samples(n: usize) -> Vec<Quaternion> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let y = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - y * y).max(0.0).sqrt();
            let phi = golden * k as f64;
            Quaternion::new(0.0, r * phi.cos(), y, r * phi.sin())
        })
        .collect()
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        self.scale(1.0 / s)
    }
}

/// Renders as `w+xi+yj+zk` with every sign explicit, e.g. `1-2i+0j+0.5k`.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

/// Accepts the [`Display`](fmt::Display) grammar as well as any sum of signed
/// terms such as `3`, `-i`, `2j - 0.5`, `1e-3k`. Repeated units accumulate.
impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut out = Quaternion::ZERO;
        let mut terms = 0;
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(0, "empty quaternion"));
        }
        while pos < bytes.len() {
            let term_start = pos;
            let mut sign = 1.0;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1.0;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if terms > 0 {
                return Err(err(pos, "expected '+' or '-' between terms"));
            }

            let num_start = pos;
            while pos < bytes.len() {
                let c = bytes[pos];
                let exp_sign = (c == b'+' || c == b'-')
                    && pos > num_start
                    && matches!(bytes[pos - 1], b'e' | b'E');
                if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                    pos += 1;
                } else {
                    break;
                }
            }
            let magnitude = if pos == num_start {
                1.0
            } else {
                s[num_start..pos]
                    .parse::<f64>()
                    .map_err(|_| err(num_start, "malformed number"))?
            };

            skip_ws(&mut pos);
            let value = sign * magnitude;
            match bytes.get(pos) {
                Some(b'i') => {
                    out.x += value;
                    pos += 1;
                }
                Some(b'j') => {
                    out.y += value;
                    pos += 1;
                }
                Some(b'k') => {
                    out.z += value;
                    pos += 1;
                }
                _ if pos == num_start => return Err(err(term_start, "expected a number or unit")),
                _ => out.w += value,
            }
            terms += 1;
            skip_ws(&mut pos);
        }
        Ok(out)
    }
}
