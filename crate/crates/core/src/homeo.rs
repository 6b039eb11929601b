//! Bounded homeomorphisms `φ: ℝ → (−a, a)` with `φ(0) = 0` and closed-form
//! inverses.

use std::f64::consts::FRAC_PI_2;

use crate::error::{BvpError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Homeomorphism {
    /// Mean-curvature operator `s/√(1+s²)`, range `(−1, 1)`.
    Curvature,
    /// `(2a/π)·atan(s)`, range `(−a, a)`.
    ScaledAtan { a: f64 },
}

/// Which way [`Homeomorphism::apply_to_function`] maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Homeomorphism {
    pub fn curvature() -> Self {
        Homeomorphism::Curvature
    }

    pub fn scaled_atan(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(BvpError::InvalidInput(format!(
                "atan half-width a must be positive, got {a}"
            )));
        }
        Ok(Homeomorphism::ScaledAtan { a })
    }

    /// Catalog lookup by configuration name (`"curvature"`, `"atan"`).
    pub fn from_name(name: &str, a: Option<f64>) -> Result<Self> {
        match name {
            "curvature" => match a {
                None => Ok(Self::curvature()),
                Some(a) if a == 1.0 => Ok(Self::curvature()),
                Some(a) => Err(BvpError::InvalidInput(format!(
                    "curvature operator has fixed a = 1, got a = {a}"
                ))),
            },
            "atan" => Self::scaled_atan(a.unwrap_or(1.0)),
            other => Err(BvpError::InvalidInput(format!(
                "unknown homeomorphism '{other}' (expected curvature or atan)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Homeomorphism::Curvature => "curvature",
            Homeomorphism::ScaledAtan { .. } => "atan",
        }
    }

    /// Half-width of the range.
    pub fn a(&self) -> f64 {
        match *self {
            Homeomorphism::Curvature => 1.0,
            Homeomorphism::ScaledAtan { a } => a,
        }
    }

    pub fn forward(&self, s: f64) -> f64 {
        let y = match *self {
            Homeomorphism::Curvature => {
                if s.abs() > 1.0 {
                    s.signum() / (1.0 + (1.0 / s).powi(2)).sqrt()
                } else {
                    s / (1.0 + s * s).sqrt()
                }
            }
            Homeomorphism::ScaledAtan { a } => a / FRAC_PI_2 * s.atan(),
        };
        // Rounding can land exactly on ±a for huge |s|; stay inside the open range.
        let a = self.a();
        if y.abs() >= a {
            a.next_down().copysign(s)
        } else {
            y
        }
    }

    /// `φ⁻¹(y)`, or `RangeViolation` when `|y| ≥ a`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if y.abs() < self.a() {
            Ok(self.inverse_unchecked(y))
        } else {
            Err(BvpError::RangeViolation {
                node: 0,
                value: y,
                limit: self.a(),
            })
        }
    }

    /// `φ⁻¹(y)` for `|y| < a`; meaningless otherwise.
    pub fn inverse_unchecked(&self, y: f64) -> f64 {
        match *self {
            Homeomorphism::Curvature => y / ((1.0 - y) * (1.0 + y)).sqrt(),
            Homeomorphism::ScaledAtan { a } => (FRAC_PI_2 * y / a).tan(),
        }
    }

    /// Pointwise application. In the inverse direction every sample must lie
    /// in `(−a, a)`; otherwise the sample of largest modulus is reported.
    pub fn apply_to_function(&self, direction: Direction, v: &[f64]) -> Result<Vec<f64>> {
        match direction {
            Direction::Forward => Ok(v.iter().map(|&s| self.forward(s)).collect()),
            Direction::Inverse => {
                self.check_range(v)?;
                Ok(v.iter().map(|&y| self.inverse_unchecked(y)).collect())
            }
        }
    }

    /// Errors with the worst node when some `|v_i| ≥ a` (or is NaN).
    pub fn check_range(&self, v: &[f64]) -> Result<()> {
        let a = self.a();
        let mut worst: Option<(usize, f64)> = None;
        for (i, &y) in v.iter().enumerate() {
            if !(y.abs() < a) && worst.is_none_or(|(_, w)| y.abs() > w.abs() || y.is_nan()) {
                worst = Some((i, y));
            }
        }
        match worst {
            None => Ok(()),
            Some((node, value)) => Err(BvpError::RangeViolation {
                node,
                value,
                limit: a,
            }),
        }
    }
}
