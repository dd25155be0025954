//! Acceptance gate: the thirteen shipping criteria, one test each, against
//! the default configuration (Φ_B = 1e-15 Wb, R = 1e-6 m, v₀ = 6e7 m/s).
//!
//! Each test prints a single `criterion NN (...): PASS|FAIL` line (visible
//! under `--nocapture`) and then asserts every check row, so a failure names
//! the exact quantity, reference, and tolerance that broke. Where the
//! criterion fixes a decimal value for the defaults, that literal is pinned
//! here with its own tolerance.

use abshear::config::RunConfig;
use abshear::verify::{self, Check};

fn defaults() -> RunConfig {
    RunConfig::default()
}

/// Print the gate line and fail loudly on any broken row.
fn gate(number: &str, label: &str, checks: &[Check]) {
    let pass = checks.iter().all(|c| c.pass);
    println!("criterion {number} ({label}): {}", if pass { "PASS" } else { "FAIL" });
    let failures: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    assert!(failures.is_empty(), "criterion {number} failed:\n{failures:#?}");
}

/// Row lookup by name prefix; panics if the suite ever drops a row.
fn row<'a>(checks: &'a [Check], prefix: &str) -> &'a Check {
    checks
        .iter()
        .find(|c| c.name.starts_with(prefix))
        .unwrap_or_else(|| panic!("no check row named {prefix}*"))
}

fn assert_literal(actual: f64, literal: f64, rel: f64, what: &str) {
    assert!(
        (actual - literal).abs() <= rel * literal.abs(),
        "{what}: {actual:e} differs from the documented {literal:e} by more than {rel:e} relative"
    );
}

#[test]
fn criterion_01_shear_oracle() {
    let cfg = defaults();
    let checks = verify::shear_oracle_checks(&cfg.solenoid).unwrap();
    gate("01", "finite-difference shear oracle", &checks);
}

#[test]
fn criterion_02_decompose_recompose_identity() {
    let checks = verify::roundtrip_checks().unwrap();
    gate("02", "decompose/recompose identity", &checks);
}

#[test]
fn criterion_03_impenetrability() {
    let cfg = defaults();
    let checks = verify::impenetrability_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("03", "surface impenetrability", &checks);
}

#[test]
fn criterion_04_circulation_recovery() {
    let cfg = defaults();
    let checks = verify::circulation_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("04", "flux and circulation line integrals", &checks);
}

#[test]
fn criterion_05_tangential_force_peak() {
    let cfg = defaults();
    let checks = verify::force_peak_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("05", "tangential-force peak at √2·R", &checks);
}

#[test]
fn criterion_06_longitudinal_null() {
    let cfg = defaults();
    let checks = verify::longitudinal_null_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("06", "vanishing half-turn average of F_x", &checks);
}

#[test]
fn criterion_07_lateral_average() {
    let cfg = defaults();
    let checks = verify::lateral_average_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("07", "half-turn average of F_y", &checks);
    assert_literal(
        row(&checks, "07a").actual,
        9.5623e-17,
        1e-4,
        "⟨F_y⟩ at r = 2R for the default config",
    );
}

#[test]
fn criterion_08_net_lateral_positivity() {
    let cfg = defaults();
    let checks = verify::net_lateral_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("08", "net lateral force over the annulus", &checks);
    let net = row(&checks, "08a").actual;
    assert!(net > 0.0, "net lateral force must be strictly positive, got {net:e}");
    assert_literal(net, 4.7585e-27, 1e-4, "net lateral force for the default config");
}

#[test]
fn criterion_09_zero_force_locus() {
    let cfg = defaults();
    let checks = verify::zero_locus_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("09", "zero-lateral-force locus", &checks);
}

#[test]
fn criterion_10_phase() {
    let cfg = defaults();
    let checks = verify::phase_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("10", "interference phase", &checks);
    assert_literal(
        row(&checks, "10a").actual,
        1.51926,
        1e-4,
        "Δφ for the default config",
    );
}

#[test]
fn criterion_11_speed_difference_constancy() {
    let cfg = defaults();
    let checks = verify::constancy_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("11", "surface speed-difference constancy", &checks);
    assert_literal(
        row(&checks, "11b").actual,
        55.99,
        1e-3,
        "|speed difference| for the default config",
    );
}

#[test]
fn criterion_12_asymmetry_scale() {
    let cfg = defaults();
    let checks = verify::asymmetry_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("12", "peak-velocity asymmetry scale", &checks);
    assert_literal(
        row(&checks, "12").actual,
        9.33e-7,
        1e-3,
        "asymmetry for the default config",
    );
}

#[test]
fn criterion_13_streamline_symmetry() {
    let cfg = defaults();
    let checks = verify::streamline_symmetry_checks(&cfg.beam, &cfg.solenoid).unwrap();
    gate("13", "zero-flux streamline fore-aft symmetry", &checks);
}
