//! Deterministic CSV emitters for the standard figures.
//!
//! Every emitter builds the complete file as a string: header line, then one
//! row per sample with floats in 9-significant-digit scientific notation.
//! The pipelines are deterministic (fixed grids, ordered parallel sweeps),
//! so a given config always produces byte-identical output.
//!
//! | figure        | columns                                              |
//! |---------------|------------------------------------------------------|
//! | `fig3a`       | `r_over_R, f_theta_norm` at θ = π                    |
//! | `fig3b`       | `r_over_R, f_r_norm` at θ = π/2 (Γ_v dropped)        |
//! | `figB1`       | `r_over_R, theta0_deg`                               |
//! | `figC1`       | `theta_deg, vx_upper_norm, vx_lower_norm, vtheta_upper_mps, vtheta_lower_mps` |
//! | `streamlines` | `path_id, step, x_m, y_m`                            |
//!
//! Force curves are normalised by `e·v₀·Φ_B/(2πR²)` and surface velocities
//! by `v₀`; radial grids are log-spaced over `[R, rmax·R]`.

use crate::config::RunConfig;
use crate::decomposition::GridRow;
use crate::error::{Error, Result};
use crate::fields;
use crate::forces;
use crate::geometry::FieldPoint;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// The figures the CLI can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Normalised tangential force along the upstream axis vs radius.
    Fig3a,
    /// Normalised radial force above the solenoid vs radius.
    Fig3b,
    /// Zero-lateral-force angle vs radius.
    FigB1,
    /// Upper/lower surface velocities vs angle.
    FigC1,
    /// Streamline bundle past the solenoid.
    Streamlines,
}

impl Figure {
    /// Default output filename.
    pub fn default_filename(&self) -> &'static str {
        match self {
            Figure::Fig3a => "fig3a.csv",
            Figure::Fig3b => "fig3b.csv",
            Figure::FigB1 => "figB1.csv",
            Figure::FigC1 => "figC1.csv",
            Figure::Streamlines => "streamlines.csv",
        }
    }

    /// Default sample count: curve points, angular rows, or seed count.
    pub fn default_samples(&self) -> usize {
        match self {
            Figure::Fig3a | Figure::Fig3b | Figure::FigB1 => 400,
            Figure::FigC1 => 720,
            Figure::Streamlines => 11,
        }
    }
}

/// Canonical float format for CSV cells and `key = value` output lines:
/// nine significant digits, scientific notation.
pub fn sci9(value: f64) -> String {
    format!("{value:.8e}")
}

fn require_normalisable(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.solenoid.flux == 0.0 {
        return Err(Error::Precondition(format!(
            "{what} is normalised by e·v₀·Φ_B/(2πR²) and needs a non-zero flux"
        )));
    }
    require_moving_beam(cfg, what)
}

fn require_moving_beam(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.beam.speed <= 0.0 {
        return Err(Error::Precondition(format!("{what} needs a beam speed v₀ > 0")));
    }
    Ok(())
}

/// Log-spaced radial factors `r/R` from 1 to `rmax_over_r`.
fn log_radii(samples: usize, rmax_over_r: f64) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 radial samples, got {samples}"
        )));
    }
    if !rmax_over_r.is_finite() || rmax_over_r <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "rmax must exceed 1 solenoid radius, got {rmax_over_r}"
        )));
    }
    let span = rmax_over_r.log10();
    Ok((0..samples)
        .map(|i| 10f64.powf(span * i as f64 / (samples - 1) as f64))
        .collect())
}

/// Emit one figure as a CSV string. `samples` and `rmax_over_r` default per
/// figure (400 radial points to 10R for the force/angle curves, 720 angular
/// rows for the velocity split, 11 streamline seeds from x = −10R).
pub fn figure_csv(
    figure: Figure,
    cfg: &RunConfig,
    samples: Option<usize>,
    rmax_over_r: Option<f64>,
) -> Result<String> {
    let samples = samples.unwrap_or_else(|| figure.default_samples());
    let rmax = rmax_over_r.unwrap_or(10.0);
    match figure {
        Figure::Fig3a => fig3a_csv(cfg, samples, rmax),
        Figure::Fig3b => fig3b_csv(cfg, samples, rmax),
        Figure::FigB1 => fig_b1_csv(cfg, samples, rmax),
        Figure::FigC1 => fig_c1_csv(cfg, samples),
        Figure::Streamlines => streamlines_csv(cfg, samples, rmax),
    }
}

fn fig3a_csv(cfg: &RunConfig, samples: usize, rmax: f64) -> Result<String> {
    require_normalisable(cfg, "fig3a")?;
    let norm = crate::constants::ELEMENTARY_CHARGE_C * cfg.beam.speed * cfg.solenoid.flux
        / (TAU * cfg.solenoid.radius * cfg.solenoid.radius);
    let mut out = String::from("r_over_R,f_theta_norm\n");
    for x in log_radii(samples, rmax)? {
        let p = FieldPoint::from_polar(x * cfg.solenoid.radius, PI)?;
        let f = forces::force_tangential(&p, &cfg.beam, &cfg.solenoid)?;
        out.push_str(&format!("{},{}\n", sci9(x), sci9(f / norm)));
    }
    Ok(out)
}

fn fig3b_csv(cfg: &RunConfig, samples: usize, rmax: f64) -> Result<String> {
    require_normalisable(cfg, "fig3b")?;
    let norm = crate::constants::ELEMENTARY_CHARGE_C * cfg.beam.speed * cfg.solenoid.flux
        / (TAU * cfg.solenoid.radius * cfg.solenoid.radius);
    let mut out = String::from("r_over_R,f_r_norm\n");
    for x in log_radii(samples, rmax)? {
        let p = FieldPoint::from_polar(x * cfg.solenoid.radius, FRAC_PI_2)?;
        let f = forces::force_cartesian(&p, &cfg.beam, &cfg.solenoid)?;
        out.push_str(&format!("{},{}\n", sci9(x), sci9(f.f_r / norm)));
    }
    Ok(out)
}

fn fig_b1_csv(cfg: &RunConfig, samples: usize, rmax: f64) -> Result<String> {
    let mut out = String::from("r_over_R,theta0_deg\n");
    for x in log_radii(samples, rmax)? {
        let theta0 = forces::zero_force_angle(x * cfg.solenoid.radius, &cfg.solenoid)?;
        out.push_str(&format!("{},{}\n", sci9(x), sci9(theta0.to_degrees())));
    }
    Ok(out)
}

fn fig_c1_csv(cfg: &RunConfig, samples: usize) -> Result<String> {
    require_moving_beam(cfg, "figC1")?;
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 angle samples, got {samples}"
        )));
    }
    let r = cfg.solenoid.radius;
    let mut out =
        String::from("theta_deg,vx_upper_norm,vx_lower_norm,vtheta_upper_mps,vtheta_lower_mps\n");
    for i in 0..samples {
        let theta_deg = 180.0 * i as f64 / (samples - 1) as f64;
        let theta = theta_deg.to_radians();
        let upper = FieldPoint::from_polar(r, theta)?;
        let lower = FieldPoint::from_polar(r, TAU - theta)?;
        let vu = fields::velocity_cartesian(&upper, &cfg.beam, &cfg.solenoid)?;
        let vl = fields::velocity_cartesian(&lower, &cfg.beam, &cfg.solenoid)?;
        let vtu = fields::velocity_field(&upper, &cfg.beam, &cfg.solenoid)?.vtheta;
        let vtl = fields::velocity_field(&lower, &cfg.beam, &cfg.solenoid)?.vtheta;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sci9(theta_deg),
            sci9(vu.vx / cfg.beam.speed),
            sci9(vl.vx / cfg.beam.speed),
            sci9(vtu),
            sci9(vtl)
        ));
    }
    Ok(out)
}

fn streamlines_csv(cfg: &RunConfig, seeds: usize, rmax: f64) -> Result<String> {
    require_moving_beam(cfg, "streamline tracing")?;
    if seeds == 0 {
        return Err(Error::InvalidArgument("need at least 1 streamline seed".into()));
    }
    if !rmax.is_finite() || rmax <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "rmax must exceed 1 solenoid radius, got {rmax}"
        )));
    }
    let r = cfg.solenoid.radius;
    let half = 0.5 * rmax * r;
    let starts: Vec<FieldPoint> = (0..seeds)
        .map(|k| {
            let y = if seeds == 1 {
                -half
            } else {
                -half + 2.0 * half * k as f64 / (seeds - 1) as f64
            };
            FieldPoint::from_cartesian(-rmax * r, y)
        })
        .collect::<Result<_>>()?;
    let dt = 0.01 * r / cfg.beam.speed;
    let paths = forces::streamline_bundle(&starts, dt, 10_000, &cfg.beam, &cfg.solenoid)?;

    let mut out = String::from("path_id,step,x_m,y_m\n");
    for (id, path) in paths.iter().enumerate() {
        for (step, p) in path.points.iter().enumerate() {
            out.push_str(&format!("{id},{step},{},{}\n", sci9(p.x()), sci9(p.y())));
        }
    }
    Ok(out)
}

/// CSV for a decomposition grid sweep.
pub fn grid_csv(rows: &[GridRow]) -> String {
    let mut out = String::from(
        "x_m,y_m,div,curl_z,sigma_xx,sigma_xy,sigma_yy,shear_mag,shear_mag_analytic\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            sci9(row.x),
            sci9(row.y),
            sci9(row.div),
            sci9(row.curl_z),
            sci9(row.sigma_xx),
            sci9(row.sigma_xy),
            sci9(row.sigma_yy),
            sci9(row.shear_mag),
            sci9(row.shear_mag_analytic)
        ));
    }
    out
}
