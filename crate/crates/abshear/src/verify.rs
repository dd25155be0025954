//! Self-verification suite: every acceptance criterion as a library call.
//!
//! Each criterion function returns a list of [`Check`] rows with the measured
//! value, the reference it is held against, and a pass flag; [`run_all`]
//! concatenates all thirteen into a [`RunReport`]. The CLI `verify` command
//! prints the report and exits non-zero on any failure, and the integration
//! tests drive the same functions, so the shipped binary and the test suite
//! cannot drift apart.
//!
//! Randomised criteria use a fixed-seed ChaCha stream with draws taken
//! sequentially up front; the point sweeps then run on the thread pool with
//! ordered collection, so every report is deterministic.

use crate::config::{BeamConfig, SolenoidConfig};
use crate::constants::{ELECTRON_MASS_KG, ELEMENTARY_CHARGE_C};
use crate::decomposition::{
    self, decompose, jacobian_fd, recompose, shear_invariant_magnitude, Jacobian3,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::fields;
use crate::forces::{self, ForceComponent};
use crate::geometry::FieldPoint;
use crate::phase;
use crate::quad;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

/// How a check row compares its measured value to the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `|actual − expected| ≤ tolerance·|expected|`.
    Relative,
    /// `|actual − expected| ≤ tolerance`.
    Absolute,
    /// `actual ≤ expected` (the reference is an upper bound).
    UpperBound,
    /// `actual == expected` bit for bit (flags and exact zeros).
    Exact,
}

/// One verified quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Row label, prefixed with the acceptance-criterion number.
    pub name: String,
    pub kind: CheckKind,
    /// Reference value or bound.
    pub expected: f64,
    /// Measured value.
    pub actual: f64,
    /// Tolerance; 0 for `UpperBound`/`Exact` rows.
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn relative(name: &str, expected: f64, actual: f64, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            kind: CheckKind::Relative,
            expected,
            actual,
            tolerance,
            pass: (actual - expected).abs() <= tolerance * expected.abs(),
        }
    }

    fn absolute(name: &str, expected: f64, actual: f64, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            kind: CheckKind::Absolute,
            expected,
            actual,
            tolerance,
            pass: (actual - expected).abs() <= tolerance,
        }
    }

    fn upper_bound(name: &str, actual: f64, bound: f64) -> Check {
        Check {
            name: name.into(),
            kind: CheckKind::UpperBound,
            expected: bound,
            actual,
            tolerance: 0.0,
            pass: actual <= bound,
        }
    }

    fn exact(name: &str, expected: f64, actual: f64) -> Check {
        Check {
            name: name.into(),
            kind: CheckKind::Exact,
            expected,
            actual,
            tolerance: 0.0,
            pass: actual.to_bits() == expected.to_bits(),
        }
    }

    fn flag(name: &str, ok: bool) -> Check {
        Check::exact(name, 1.0, if ok { 1.0 } else { 0.0 })
    }
}

/// Full verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub checks: Vec<Check>,
}

impl RunReport {
    /// True when every row passed.
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Plain-text table, one row per check, ending with an `overall:` line.
    pub fn render(&self) -> String {
        let name_width =
            self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<name_width$}  {:>13}  {:>13}  {:>9}  status",
            "check", "expected", "actual", "tolerance"
        );
        for c in &self.checks {
            let tol = match c.kind {
                CheckKind::Relative => format!("{:.0e} rel", c.tolerance),
                CheckKind::Absolute => format!("{:.0e} abs", c.tolerance),
                CheckKind::UpperBound => "bound".into(),
                CheckKind::Exact => "exact".into(),
            };
            let _ = writeln!(
                out,
                "{:<name_width$}  {:>13.6e}  {:>13.6e}  {:>9}  {}",
                c.name,
                c.expected,
                c.actual,
                tol,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(out, "overall: {}", if self.overall() { "PASS" } else { "FAIL" });
        out
    }
}

/// Criterion 1 — at 1000 random points in `r ∈ [1.5R, 50R]` the
/// finite-difference Jacobian of the vector potential decomposes into a pure
/// shear of magnitude `Φ_B/(2πr²)`: relative shear error ≤ 1e-5, residual
/// divergence and curl ≤ 1e-6 of that scale.
pub fn shear_oracle_checks(solenoid: &SolenoidConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA_B01);
    let points: Vec<FieldPoint> = (0..1000)
        .map(|_| {
            let r = solenoid.radius * rng.gen_range(1.5..50.0);
            FieldPoint::from_polar(r, rng.gen_range(0.0..TAU))
        })
        .collect::<Result<_>>()?;

    let rows = exec::map_indexed(points.len(), |i| -> Result<(f64, f64, f64)> {
        let p = &points[i];
        let jac = jacobian_fd(
            |q| fields::vector_potential_cartesian(q, solenoid),
            p,
            1e-4 * p.r(),
        )?;
        let parts = decompose(&jac);
        let scale = decomposition::shear_rtheta_analytic(p.r(), solenoid)?.abs();
        Ok((
            (shear_invariant_magnitude(&parts) - scale).abs() / scale,
            parts.divergence.abs() / scale,
            parts.curl[2].abs() / scale,
        ))
    });

    let (mut shear_err, mut div_ratio, mut curl_ratio) = (0.0_f64, 0.0_f64, 0.0_f64);
    for row in rows {
        let (s, d, c) = row?;
        shear_err = shear_err.max(s);
        div_ratio = div_ratio.max(d);
        curl_ratio = curl_ratio.max(c);
    }
    Ok(vec![
        Check::upper_bound("01a shear magnitude max relative error", shear_err, 1e-5),
        Check::upper_bound("01b max |div| / shear scale", div_ratio, 1e-6),
        Check::upper_bound("01c max |curl_z| / shear scale", curl_ratio, 1e-6),
    ])
}

/// Criterion 2 — decompose/recompose round-trips 1000 random gradient
/// tensors to 1e-12 on every entry.
pub fn roundtrip_checks() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA_B02);
    let jacobians: Vec<Jacobian3> = (0..1000)
        .map(|_| {
            let mut entries = [[0.0; 3]; 3];
            for row in &mut entries {
                for v in row.iter_mut() {
                    *v = rng.gen_range(-1.0..1.0);
                }
            }
            Jacobian3 { entries }
        })
        .collect();

    let errs = exec::map_indexed(jacobians.len(), |i| {
        let back = recompose(&decompose(&jacobians[i]));
        let mut worst = 0.0_f64;
        for r in 0..3 {
            for c in 0..3 {
                worst = worst.max((back.entries[r][c] - jacobians[i].entries[r][c]).abs());
            }
        }
        worst
    });
    let worst = errs.into_iter().fold(0.0_f64, f64::max);
    Ok(vec![Check::upper_bound("02  decompose/recompose max entry error", worst, 1e-12)])
}

/// Criterion 3 — the radial beam velocity vanishes identically on the
/// cylinder surface at 720 sampled angles.
pub fn impenetrability_checks(
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<Vec<Check>> {
    let mut worst = 0.0_f64;
    for k in 0..720 {
        let p = FieldPoint::from_polar(solenoid.radius, TAU * k as f64 / 720.0)?;
        worst = worst.max(fields::velocity_field(&p, beam, solenoid)?.vr.abs());
    }
    Ok(vec![Check::exact("03  max |v_r(R, θ)| over 720 angles", 0.0, worst)])
}

/// Criterion 4 — closed line integrals at `r = 2R` with 10⁴ trapezoid panels
/// recover the flux from `A_θ` and the circulation `Γ_v = −(e/m)Φ_B` from
/// `v_θ`, both to 1e-6 relative.
pub fn circulation_checks(
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<Vec<Check>> {
    let r = 2.0 * solenoid.radius;
    let flux_integral = quad::trapezoid(0.0, TAU, 10_000, |theta| {
        let p = FieldPoint::from_polar(r, theta).expect("r = 2R is outside");
        fields::vector_potential(&p, solenoid).expect("r = 2R is outside").vtheta * r
    })?;
    let gamma_integral = quad::trapezoid(0.0, TAU, 10_000, |theta| {
        let p = FieldPoint::from_polar(r, theta).expect("r = 2R is outside");
        fields::velocity_field(&p, beam, solenoid).expect("r = 2R is outside").vtheta * r
    })?;
    Ok(vec![
        Check::relative("04a ∮A_θ·r dθ recovers Φ_B", solenoid.flux, flux_integral, 1e-6),
        Check::relative(
            "04b ∮v_θ·r dθ recovers Γ_v",
            fields::circulation_gamma(solenoid),
            gamma_integral,
            1e-6,
        ),
    ])
}

/// Criterion 5 — golden-section maximisation of `|F_θ(r, π)|` over `[R, 5R]`
/// lands on `r/R = √2` within 1e-6.
pub fn force_peak_checks(beam: &BeamConfig, solenoid: &SolenoidConfig) -> Result<Vec<Check>> {
    let r_star = forces::tangential_force_peak_radius(
        beam,
        solenoid,
        solenoid.radius,
        5.0 * solenoid.radius,
        1e-8 * solenoid.radius,
    )?;
    Ok(vec![Check::absolute(
        "05  tangential-force peak r/R",
        2.0_f64.sqrt(),
        r_star / solenoid.radius,
        1e-6,
    )])
}

/// Criterion 6 — the trapezoid average of `F_x` over `θ ∈ [0, π]` vanishes
/// at `r ∈ {1.1R, 2R, 10R}` to 1e-12 of the local force scale.
pub fn longitudinal_null_checks(
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (label, factor) in [("1.1R", 1.1), ("2R", 2.0), ("10R", 10.0)] {
        let r = factor * solenoid.radius;
        let avg = forces::angle_average_force(
            r,
            ForceComponent::X,
            (0.0, PI),
            4096,
            beam,
            solenoid,
        )?;
        let scale =
            (ELEMENTARY_CHARGE_C * beam.speed * solenoid.flux / (TAU * r * r)).abs();
        checks.push(Check::upper_bound(
            &format!("06{} |⟨F_x⟩|/scale at r = {label}", (b'a' + checks.len() as u8) as char),
            avg.abs() / scale,
            1e-12,
        ));
    }
    Ok(checks)
}

/// Criterion 7 — the `F_y` average over `θ ∈ [0, π]` at `r = 2R` equals the
/// closed form `e·v₀·(R²/r²)·Φ_B/(2πr²)` to 1e-9 relative, and the
/// half-period `sin²`/`cos²` trapezoid means both equal 0.5 to 1e-12.
pub fn lateral_average_checks(
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<Vec<Check>> {
    let r = 2.0 * solenoid.radius;
    let avg =
        forces::angle_average_force(r, ForceComponent::Y, (0.0, PI), 4096, beam, solenoid)?;
    let q2 = (solenoid.radius / r) * (solenoid.radius / r);
    let closed = ELEMENTARY_CHARGE_C * beam.speed * q2 * solenoid.flux / (TAU * r * r);
    let sin2_mean = quad::trapezoid_mean(0.0, PI, 4095, |t| t.sin() * t.sin())?;
    let cos2_mean = quad::trapezoid_mean(0.0, PI, 4095, |t| t.cos() * t.cos())?;
    Ok(vec![
        Check::relative("07a ⟨F_y⟩ at r = 2R vs closed form", closed, avg, 1e-9),
        Check::absolute("07b half-period mean of sin²", 0.5, sin2_mean, 1e-12),
        Check::absolute("07c half-period mean of cos²", 0.5, cos2_mean, 1e-12),
    ])
}

/// Criterion 8 — the annulus integral `∬F_y·r dr dθ` to `r_max = 10R`
/// equals `e·v₀·Φ_B·(1 − R²/r_max²)/2` to 1e-6 relative, carries the sign of
/// the flux, and flips exactly under a flux sign flip.
pub fn net_lateral_checks(beam: &BeamConfig, solenoid: &SolenoidConfig) -> Result<Vec<Check>> {
    let r_max = 10.0 * solenoid.radius;
    let net = forces::net_lateral_force(r_max, 12_001, 256, beam, solenoid)?;
    let q2 = (solenoid.radius / r_max) * (solenoid.radius / r_max);
    let closed = ELEMENTARY_CHARGE_C * beam.speed * solenoid.flux * (1.0 - q2) / 2.0;

    let flipped = SolenoidConfig::new(-solenoid.flux, solenoid.radius)?;
    let net_flipped = forces::net_lateral_force(r_max, 12_001, 256, beam, &flipped)?;

    Ok(vec![
        Check::relative("08a net lateral force vs closed form", closed, net, 1e-6),
        Check::flag("08b sign(net) = sign(Φ_B)", net.signum() == solenoid.flux.signum()),
        Check::exact("08c flux flip negates the net force", -net, net_flipped),
    ])
}

/// Criterion 9 — the zero-lateral-force locus passes through
/// `θ₀(√2·R) = 30°` and `F_y` vanishes on the locus to 1e-12 of the local
/// force scale at `r ∈ {1.01R, √2R, 10R}`.
pub fn zero_locus_checks(beam: &BeamConfig, solenoid: &SolenoidConfig) -> Result<Vec<Check>> {
    let sqrt2 = 2.0_f64.sqrt();
    let theta0_deg =
        forces::zero_force_angle(sqrt2 * solenoid.radius, solenoid)?.to_degrees();
    let mut checks = vec![Check::relative("09a θ₀(√2·R) = 30°", 30.0, theta0_deg, 1e-12)];

    for (label, factor) in [("1.01R", 1.01), ("√2R", sqrt2), ("10R", 10.0)] {
        let r = factor * solenoid.radius;
        let theta0 = forces::zero_force_angle(r, solenoid)?;
        let p = FieldPoint::from_polar(r, theta0)?;
        let f_y = forces::force_cartesian(&p, beam, solenoid)?.f_y;
        let scale =
            (ELEMENTARY_CHARGE_C * beam.speed * solenoid.flux / (TAU * r * r)).abs();
        checks.push(Check::upper_bound(
            &format!(
                "09{} |F_y(θ₀)|/scale at r = {label}",
                (b'b' + (checks.len() - 1) as u8) as char
            ),
            f_y.abs() / scale,
            1e-12,
        ));
    }
    Ok(checks)
}

/// Criterion 10 — the numeric phase pipeline reproduces `|e·Φ_B/ħ|` to 1e-9
/// relative and is invariant under doubling the beam speed.
pub fn phase_checks(beam: &BeamConfig, solenoid: &SolenoidConfig) -> Result<Vec<Check>> {
    let res = phase::ab_phase_numeric(beam, solenoid, 1000)?;
    let analytic = res.delta_phi_analytic.abs();

    let doubled_beam = BeamConfig::new(2.0 * beam.speed)?;
    let doubled = phase::ab_phase_numeric(&doubled_beam, solenoid, 1000)?;
    let dispersion = (doubled.delta_phi_numeric - res.delta_phi_numeric).abs()
        / res.delta_phi_numeric;

    Ok(vec![
        Check::relative("10a Δφ numeric vs e·Φ_B/ħ", analytic, res.delta_phi_numeric, 1e-9),
        Check::upper_bound("10b Δφ change under v₀ doubling", dispersion, 1e-12),
    ])
}

/// Criterion 11 — the mirrored surface speed difference is constant over
/// 1000 interior angles (relative std ≤ 1e-9) with magnitude
/// `e·Φ_B/(π·m·R)` to 1e-12 relative.
pub fn constancy_checks(beam: &BeamConfig, solenoid: &SolenoidConfig) -> Result<Vec<Check>> {
    let res = phase::ab_phase_numeric(beam, solenoid, 1000)?;
    let expected = ELEMENTARY_CHARGE_C * solenoid.flux.abs()
        / (PI * ELECTRON_MASS_KG * solenoid.radius);
    Ok(vec![
        Check::upper_bound(
            "11a speed-difference std/|mean|",
            res.speed_diff_rel_std(),
            1e-9,
        ),
        Check::relative(
            "11b |speed difference| = e·|Φ_B|/(π·m·R)",
            expected,
            res.speed_diff_mean().abs(),
            1e-12,
        ),
    ])
}

/// Criterion 12 — the peak-velocity asymmetry `2e·A_θ(R)/(m·v₀)` matches the
/// independently written form `e·Φ_B/(π·R·m·v₀)` to 1e-12 relative.
pub fn asymmetry_checks(beam: &BeamConfig, solenoid: &SolenoidConfig) -> Result<Vec<Check>> {
    let asymmetry = phase::peak_velocity_asymmetry(beam, solenoid)?;
    let expected = ELEMENTARY_CHARGE_C * solenoid.flux
        / (PI * solenoid.radius * ELECTRON_MASS_KG * beam.speed);
    Ok(vec![Check::relative(
        "12  asymmetry = e·Φ_B/(π·R·m·v₀)",
        expected,
        asymmetry,
        1e-12,
    )])
}

/// Criterion 13 — with the flux off, the streamline seeded at `(−10R, 2R)`
/// crosses the cylinder fore-aft symmetrically: it reaches the downstream
/// side and returns to its inlet height within `1e-3·R`.
pub fn streamline_symmetry_checks(
    beam: &BeamConfig,
    solenoid: &SolenoidConfig,
) -> Result<Vec<Check>> {
    let no_flux = SolenoidConfig::new(0.0, solenoid.radius)?;
    let start =
        FieldPoint::from_cartesian(-10.0 * solenoid.radius, 2.0 * solenoid.radius)?;
    let dt = 0.005 * solenoid.radius / beam.speed;
    let path = forces::trace_streamline(&start, dt, 20_000, beam, &no_flux)?;
    let last = path.points.last().expect("trace always contains the seed");
    let crossed = !path.hit_boundary && last.x() > start.x().abs();
    Ok(vec![
        Check::flag("13a zero-flux path crosses downstream", crossed),
        Check::upper_bound(
            "13b |y_out − y_in| / R",
            (last.y() - start.y()).abs() / solenoid.radius,
            1e-3,
        ),
    ])
}

/// Run the full thirteen-criterion suite. Requires a non-zero flux and a
/// moving beam: most references are relative to flux- and speed-dependent
/// scales that degenerate to 0/0 otherwise.
pub fn run_all(beam: &BeamConfig, solenoid: &SolenoidConfig) -> Result<RunReport> {
    if solenoid.flux == 0.0 {
        return Err(Error::Precondition(
            "verification needs a non-zero flux; every reference scale carries Φ_B".into(),
        ));
    }
    if beam.speed <= 0.0 {
        return Err(Error::Precondition(
            "verification needs a beam speed v₀ > 0; every force scale carries v₀".into(),
        ));
    }
    let mut checks = Vec::new();
    checks.extend(shear_oracle_checks(solenoid)?);
    checks.extend(roundtrip_checks()?);
    checks.extend(impenetrability_checks(beam, solenoid)?);
    checks.extend(circulation_checks(beam, solenoid)?);
    checks.extend(force_peak_checks(beam, solenoid)?);
    checks.extend(longitudinal_null_checks(beam, solenoid)?);
    checks.extend(lateral_average_checks(beam, solenoid)?);
    checks.extend(net_lateral_checks(beam, solenoid)?);
    checks.extend(zero_locus_checks(beam, solenoid)?);
    checks.extend(phase_checks(beam, solenoid)?);
    checks.extend(constancy_checks(beam, solenoid)?);
    checks.extend(asymmetry_checks(beam, solenoid)?);
    checks.extend(streamline_symmetry_checks(beam, solenoid)?);
    Ok(RunReport { checks })
}
