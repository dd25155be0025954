//! Vector potential outside the solenoid and the potential-flow beam.
//!
//! In the Coulomb gauge the confined flux `Φ_B` leaves a purely azimuthal
//! vector potential outside the solenoid, `A_θ = Φ_B/(2πr)`, with `B = 0`
//! everywhere in the field region. The electron beam is modelled as
//! irrotational, incompressible flow past the impenetrable cylinder with a
//! superposed vortex whose circulation is locked to the flux,
//! `Γ_v = −(e/m)·Φ_B`:
//!
//! ```text
//! φ_v(r,θ) = v₀·cosθ·(r + R²/r) + (Γ_v/2π)·θ
//! v_r      = v₀·cosθ·(1 − R²/r²)
//! v_θ      = −v₀·sinθ·(1 + R²/r²) + Γ_v/(2πr)
//! ```
//!
//! `v_r` vanishes identically on `r = R` (impenetrability), and both fields
//! are divergence-free; the velocity is additionally curl-free away from the
//! axis, so its gradient — like the vector potential's — is pure shear plus
//! nothing.

use crate::config::{BeamConfig, SolenoidConfig};
use crate::error::Result;
use crate::geometry::{ensure_outside, FieldPoint};
use std::f64::consts::TAU;

/// Vector with components along the local polar unit vectors `(r̂, θ̂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarVector {
    pub vr: f64,
    pub vtheta: f64,
}

impl PolarVector {
    /// Rotate into Cartesian components at polar angle `theta`.
    pub fn to_cartesian(&self, theta: f64) -> CartesianVector {
        let (sin, cos) = theta.sin_cos();
        CartesianVector {
            vx: self.vr * cos - self.vtheta * sin,
            vy: self.vr * sin + self.vtheta * cos,
        }
    }

    /// Euclidean magnitude.
    pub fn magnitude(&self) -> f64 {
        self.vr.hypot(self.vtheta)
    }
}

/// Vector with Cartesian components `(x̂, ŷ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianVector {
    pub vx: f64,
    pub vy: f64,
}

impl CartesianVector {
    /// Euclidean magnitude.
    pub fn magnitude(&self) -> f64 {
        self.vx.hypot(self.vy)
    }
}

/// Azimuthal vector potential `A_θ = Φ_B/(2πr)` [T·m] at a field point
/// (`A_r = 0`). Errors inside the solenoid.
pub fn vector_potential(point: &FieldPoint, solenoid: &SolenoidConfig) -> Result<PolarVector> {
    ensure_outside(point, solenoid)?;
    Ok(PolarVector { vr: 0.0, vtheta: solenoid.flux / (TAU * point.r()) })
}

/// The same potential in Cartesian components,
/// `A = Φ_B/(2πr²)·(−y, x)` [T·m].
pub fn vector_potential_cartesian(
    point: &FieldPoint,
    solenoid: &SolenoidConfig,
) -> Result<CartesianVector> {
    ensure_outside(point, solenoid)?;
    let k = solenoid.flux / (TAU * point.r() * point.r());
    Ok(CartesianVector { vx: -point.y() * k, vy: point.x() * k })
}

/// Flux-locked beam circulation `Γ_v = −(e/m)·Φ_B` \[m²/s\].
pub fn circulation_gamma(solenoid: &SolenoidConfig) -> f64 {
    -crate::constants::PhysicalConstants::CODATA.charge_to_mass() * solenoid.flux
}

/// Velocity potential `φ_v` \[m²/s\] of the beam flow. The vortex term uses
/// the point's normalised angle in `[0, 2π)`, so the potential is
/// single-valued on that branch.
pub fn velocity_potential(
    point: &FieldPoint,
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<f64> {
    ensure_outside(point, solenoid)?;
    let r = point.r();
    let gamma = circulation_gamma(solenoid);
    Ok(beam.speed * point.theta().cos() * (r + solenoid.radius * solenoid.radius / r)
        + gamma / TAU * point.theta())
}

/// Beam velocity in polar components \[m/s\]. `v_r` is exactly zero on the
/// solenoid surface.
pub fn velocity_field(
    point: &FieldPoint,
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<PolarVector> {
    ensure_outside(point, solenoid)?;
    let (sin, cos) = point.theta().sin_cos();
    let ratio = solenoid.radius / point.r();
    let ratio2 = ratio * ratio;
    let gamma = circulation_gamma(solenoid);
    Ok(PolarVector {
        vr: beam.speed * cos * (1.0 - ratio2),
        vtheta: -beam.speed * sin * (1.0 + ratio2) + gamma / (TAU * point.r()),
    })
}

/// Beam velocity rotated into Cartesian components \[m/s\].
pub fn velocity_cartesian(
    point: &FieldPoint,
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<CartesianVector> {
    Ok(velocity_field(point, beam, solenoid)?.to_cartesian(point.theta()))
}
