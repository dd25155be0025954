//! Field points outside the solenoid, with locked polar/Cartesian views.
//!
//! A [`FieldPoint`] stores both representations of the same location:
//! `(r, θ)` with `θ` normalised to `[0, 2π)`, and `(x, y)`. The pair that the
//! constructor received is stored exactly; the other is derived once, so the
//! two views stay consistent to rounding (`x ≈ r·cosθ`, `y ≈ r·sinθ` within a
//! couple of ulp) and reconversion is stable.

use crate::config::SolenoidConfig;
use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// Wrap an angle into `[0, 2π)`. Idempotent: angles already in range are
/// returned unchanged, bit for bit.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A location in the plane perpendicular to the solenoid axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    r: f64,
    theta: f64,
    x: f64,
    y: f64,
}

impl FieldPoint {
    /// Build a point from polar coordinates. `r` must be finite and ≥ 0;
    /// `theta` may be any finite angle and is normalised to `[0, 2π)`.
    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "polar radius must be finite and >= 0, got {r}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("polar angle must be finite, got {theta}")));
        }
        let theta = normalize_angle(theta);
        Ok(FieldPoint { r, theta, x: r * theta.cos(), y: r * theta.sin() })
    }

    /// Build a point from Cartesian coordinates. The origin maps to
    /// `(r, θ) = (0, 0)`.
    pub fn from_cartesian(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "cartesian coordinates must be finite, got ({x}, {y})"
            )));
        }
        let r = x.hypot(y);
        let theta = normalize_angle(y.atan2(x));
        Ok(FieldPoint { r, theta, x, y })
    }

    /// Radial distance from the solenoid axis \[m\].
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Polar angle in `[0, 2π)` \[rad\], measured from the +x axis.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Cartesian x \[m\].
    pub fn x(&self) -> f64 {
        self.x
    }

    /// Cartesian y \[m\].
    pub fn y(&self) -> f64 {
        self.y
    }
}

/// True when the point lies in the field region `r ≥ R` (the boundary
/// belongs to the field region).
pub fn validate_outside(point: &FieldPoint, solenoid: &SolenoidConfig) -> bool {
    point.r >= solenoid.radius
}

/// Error unless the point lies in the field region `r ≥ R`.
pub(crate) fn ensure_outside(point: &FieldPoint, solenoid: &SolenoidConfig) -> Result<()> {
    if validate_outside(point, solenoid) {
        Ok(())
    } else {
        Err(Error::InsideSolenoid { r: point.r, radius: solenoid.radius })
    }
}
