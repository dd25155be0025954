//! Shear / rotation / expansion split of a vector-field gradient.
//!
//! Any gradient tensor decomposes uniquely as
//!
//! ```text
//! ∂A_i/∂x_j = σ_ij − ½·ε_ijk·(∇×A)_k + ⅓·δ_ij·(∇·A)
//! ```
//!
//! with `σ` symmetric and traceless. For the solenoid's vector potential the
//! curl and divergence both vanish in the field region, leaving pure shear
//! with the single independent polar component `σ_rθ = −Φ_B/(2πr²)`.
//!
//! The module provides the split and its inverse, a closed-form Jacobian for
//! the vector potential, a central-difference Jacobian for arbitrary sampled
//! fields (the oracle the closed form is verified against), and a masked
//! grid sweep used by the `decompose-grid` subcommand.

use crate::config::SolenoidConfig;
use crate::error::{Error, Result};
use crate::exec;
use crate::fields::CartesianVector;
use crate::geometry::FieldPoint;
use std::f64::consts::TAU;

/// Gradient tensor; `entries[i][j] = ∂A_i/∂x_j` with axes (x, y, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian3 {
    pub entries: [[f64; 3]; 3],
}

impl Jacobian3 {
    /// The zero tensor.
    pub const ZERO: Jacobian3 = Jacobian3 { entries: [[0.0; 3]; 3] };

    /// Largest absolute entry; the natural scale for comparisons.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// Result of the shear/rotation/expansion split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientDecomposition {
    /// Symmetric, traceless shear tensor σ_ij.
    pub shear: [[f64; 3]; 3],
    /// Curl vector (∇×A)_k.
    pub curl: [f64; 3],
    /// Divergence ∇·A.
    pub divergence: f64,
}

/// Split a gradient tensor into shear, rotation, and expansion parts.
pub fn decompose(jacobian: &Jacobian3) -> GradientDecomposition {
    let j = &jacobian.entries;
    let divergence = j[0][0] + j[1][1] + j[2][2];
    let curl = [j[2][1] - j[1][2], j[0][2] - j[2][0], j[1][0] - j[0][1]];
    let iso = divergence / 3.0;
    let mut shear = [[0.0; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            shear[i][k] = 0.5 * (j[i][k] + j[k][i]);
        }
        shear[i][i] -= iso;
    }
    GradientDecomposition { shear, curl, divergence }
}

/// Reassemble the gradient tensor from its parts; exact inverse of
/// [`decompose`] up to rounding.
pub fn recompose(parts: &GradientDecomposition) -> Jacobian3 {
    let s = &parts.shear;
    let c = &parts.curl;
    let iso = parts.divergence / 3.0;
    let entries = [
        [s[0][0] + iso, s[0][1] - 0.5 * c[2], s[0][2] + 0.5 * c[1]],
        [s[1][0] + 0.5 * c[2], s[1][1] + iso, s[1][2] - 0.5 * c[0]],
        [s[2][0] - 0.5 * c[1], s[2][1] + 0.5 * c[0], s[2][2] + iso],
    ];
    Jacobian3 { entries }
}

/// Central-difference Jacobian of a sampled planar field (z row and column
/// are zero). `h` is the stencil half-width in metres. A sample landing
/// inside the solenoid is reported as a stencil-crossing error.
pub fn jacobian_fd<F>(field: F, at: &FieldPoint, h: f64) -> Result<Jacobian3>
where
    F: Fn(&FieldPoint) -> Result<CartesianVector>,
{
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be finite and > 0, got {h}"
        )));
    }
    let sample = |x: f64, y: f64| -> Result<CartesianVector> {
        let p = FieldPoint::from_cartesian(x, y)?;
        field(&p).map_err(|e| match e {
            Error::InsideSolenoid { radius, .. } => {
                Error::StencilCrossesSolenoid { r: at.r(), h, radius }
            }
            other => other,
        })
    };
    let (x, y) = (at.x(), at.y());
    let xp = sample(x + h, y)?;
    let xm = sample(x - h, y)?;
    let yp = sample(x, y + h)?;
    let ym = sample(x, y - h)?;
    // Divide by the realised spacing, not 2h, to cancel the representation
    // error of x ± h.
    let dx = (x + h) - (x - h);
    let dy = (y + h) - (y - h);
    let entries = [
        [(xp.vx - xm.vx) / dx, (yp.vx - ym.vx) / dy, 0.0],
        [(xp.vy - xm.vy) / dx, (yp.vy - ym.vy) / dy, 0.0],
        [0.0, 0.0, 0.0],
    ];
    Ok(Jacobian3 { entries })
}

/// Closed-form Jacobian of the vector potential `A = Φ_B/(2πr²)·(−y, x)`:
///
/// ```text
/// ∂A/∂(x,y) = Φ_B/(2πr⁴) · [ 2xy       2y² − r² ]
///                           [ r² − 2x²  −2xy     ]
/// ```
pub fn vector_potential_jacobian(
    point: &FieldPoint,
    solenoid: &SolenoidConfig,
) -> Result<Jacobian3> {
    crate::geometry::ensure_outside(point, solenoid)?;
    let (x, y) = (point.x(), point.y());
    let r2 = point.r() * point.r();
    let k = solenoid.flux / (TAU * r2 * r2);
    // Sharing the diagonal product keeps the tensor exactly traceless.
    let diag = k * (2.0 * x * y);
    let entries = [
        [diag, k * (2.0 * y * y - r2), 0.0],
        [k * (r2 - 2.0 * x * x), -diag, 0.0],
        [0.0, 0.0, 0.0],
    ];
    Ok(Jacobian3 { entries })
}

/// Closed-form off-diagonal shear of the vector potential in the polar
/// frame, `σ_rθ = −Φ_B/(2πr²)` \[T\].
pub fn shear_rtheta_analytic(r: f64, solenoid: &SolenoidConfig) -> Result<f64> {
    if !r.is_finite() || r < solenoid.radius {
        return Err(Error::InsideSolenoid { r, radius: solenoid.radius });
    }
    Ok(-solenoid.flux / (TAU * r * r))
}

/// Rotation-invariant in-plane shear magnitude,
/// `√(σ_xy² + ((σ_xx − σ_yy)/2)²)`. For the vector potential this equals
/// `|σ_rθ| = |Φ_B|/(2πr²)` at every angle.
pub fn shear_invariant_magnitude(parts: &GradientDecomposition) -> f64 {
    let s = &parts.shear;
    let diag = 0.5 * (s[0][0] - s[1][1]);
    s[0][1].hypot(diag)
}

/// One output row of the decomposition grid sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub x: f64,
    pub y: f64,
    pub div: f64,
    pub curl_z: f64,
    pub sigma_xx: f64,
    pub sigma_xy: f64,
    pub sigma_yy: f64,
    pub shear_mag: f64,
    pub shear_mag_analytic: f64,
}

/// Reduction of a grid sweep for the summary printout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSummary {
    pub rows: usize,
    pub max_abs_div: f64,
    pub max_abs_curl_z: f64,
    /// Largest |shear_mag − shear_mag_analytic| / shear_mag_analytic over
    /// the grid; falls back to the absolute difference where the analytic
    /// magnitude is zero (Φ_B = 0).
    pub max_rel_shear_err: f64,
}

/// Finite-difference decomposition of the vector potential over an `n × n`
/// grid spanning `x_range × y_range`, skipping points with `r < R + 2h`
/// (where the stencil could touch the solenoid). Rows are emitted in
/// row-major order, y varying fastest.
pub fn decompose_grid(
    solenoid: &SolenoidConfig,
    x_range: (f64, f64),
    y_range: (f64, f64),
    n: usize,
    h: f64,
) -> Result<Vec<GridRow>> {
    decompose_grid_impl(solenoid, x_range, y_range, n, h, false)
}

/// Sequential twin of [`decompose_grid`]; baseline for the benchmark suite.
pub fn decompose_grid_seq(
    solenoid: &SolenoidConfig,
    x_range: (f64, f64),
    y_range: (f64, f64),
    n: usize,
    h: f64,
) -> Result<Vec<GridRow>> {
    decompose_grid_impl(solenoid, x_range, y_range, n, h, true)
}

fn decompose_grid_impl(
    solenoid: &SolenoidConfig,
    x_range: (f64, f64),
    y_range: (f64, f64),
    n: usize,
    h: f64,
    sequential: bool,
) -> Result<Vec<GridRow>> {
    if n == 0 {
        return Err(Error::InvalidArgument("grid needs at least 1 point per axis".into()));
    }
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be finite and > 0, got {h}"
        )));
    }
    for (lo, hi) in [x_range, y_range] {
        if !lo.is_finite() || !hi.is_finite() || (n > 1 && hi <= lo) {
            return Err(Error::InvalidArgument(format!(
                "grid range must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
    }
    let coord = |range: (f64, f64), i: usize| {
        if n == 1 {
            range.0
        } else {
            range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
        }
    };
    let mask_radius = solenoid.radius + 2.0 * h;

    let cells = exec::map_indexed_mode(sequential, n * n, |idx| -> Result<Option<GridRow>> {
        let x = coord(x_range, idx / n);
        let y = coord(y_range, idx % n);
        if x.hypot(y) < mask_radius {
            return Ok(None);
        }
        let p = FieldPoint::from_cartesian(x, y)?;
        let jac = jacobian_fd(|q| crate::fields::vector_potential_cartesian(q, solenoid), &p, h)?;
        let parts = decompose(&jac);
        Ok(Some(GridRow {
            x,
            y,
            div: parts.divergence,
            curl_z: parts.curl[2],
            sigma_xx: parts.shear[0][0],
            sigma_xy: parts.shear[0][1],
            sigma_yy: parts.shear[1][1],
            shear_mag: shear_invariant_magnitude(&parts),
            shear_mag_analytic: shear_rtheta_analytic(p.r(), solenoid)?.abs(),
        }))
    });

    let mut rows = Vec::with_capacity(n * n);
    for cell in cells {
        if let Some(row) = cell? {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Sequential reduction of grid rows into the summary statistics.
pub fn grid_summary(rows: &[GridRow]) -> GridSummary {
    let mut summary = GridSummary {
        rows: rows.len(),
        max_abs_div: 0.0,
        max_abs_curl_z: 0.0,
        max_rel_shear_err: 0.0,
    };
    for row in rows {
        summary.max_abs_div = summary.max_abs_div.max(row.div.abs());
        summary.max_abs_curl_z = summary.max_abs_curl_z.max(row.curl_z.abs());
        let diff = (row.shear_mag - row.shear_mag_analytic).abs();
        let err = if row.shear_mag_analytic > 0.0 { diff / row.shear_mag_analytic } else { diff };
        summary.max_rel_shear_err = summary.max_rel_shear_err.max(err);
    }
    summary
}
