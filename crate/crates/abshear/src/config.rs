//! Solenoid and beam parameters, defaults, and the `key=value` config format.
//!
//! A config file is a flat list of `key = value` lines. `#` starts a comment,
//! blank lines are ignored, keys missing from the file keep their defaults,
//! and unknown keys are a hard error. Recognised keys:
//!
//! ```text
//! flux_wb   = 1.0e-15   # confined magnetic flux Φ_B \[Wb\], any sign
//! radius_m  = 1.0e-6    # solenoid radius R \[m\], > 0
//! speed_mps = 6.0e7     # asymptotic beam speed v₀ \[m/s\], ≥ 0
//! ```

use crate::error::{Error, Result};
use std::path::Path;

/// Default confined flux Φ_B \[Wb\].
pub const DEFAULT_FLUX_WB: f64 = 1.0e-15;

/// Default solenoid radius R \[m\].
pub const DEFAULT_RADIUS_M: f64 = 1.0e-6;

/// Default asymptotic beam speed v₀ \[m/s\].
pub const DEFAULT_SPEED_MPS: f64 = 6.0e7;

/// Impenetrable solenoid carrying a confined flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolenoidConfig {
    /// Confined magnetic flux Φ_B \[Wb\]; either sign, zero allowed.
    pub flux: f64,
    /// Solenoid radius R \[m\]; strictly positive.
    pub radius: f64,
}

impl SolenoidConfig {
    /// Validate and build a solenoid configuration.
    pub fn new(flux: f64, radius: f64) -> Result<Self> {
        if !flux.is_finite() {
            return Err(Error::InvalidArgument(format!("flux must be finite, got {flux}")));
        }
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "radius must be finite and > 0, got {radius}"
            )));
        }
        Ok(SolenoidConfig { flux, radius })
    }
}

impl Default for SolenoidConfig {
    fn default() -> Self {
        SolenoidConfig { flux: DEFAULT_FLUX_WB, radius: DEFAULT_RADIUS_M }
    }
}

/// Electron beam streaming past the solenoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamConfig {
    /// Asymptotic beam speed v₀ \[m/s\]; non-negative.
    pub speed: f64,
}

impl BeamConfig {
    /// Validate and build a beam configuration.
    pub fn new(speed: f64) -> Result<Self> {
        if !speed.is_finite() || speed < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "speed must be finite and >= 0, got {speed}"
            )));
        }
        Ok(BeamConfig { speed })
    }
}

impl Default for BeamConfig {
    fn default() -> Self {
        BeamConfig { speed: DEFAULT_SPEED_MPS }
    }
}

/// Full run configuration: one solenoid, one beam.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunConfig {
    pub solenoid: SolenoidConfig,
    pub beam: BeamConfig,
}

impl RunConfig {
    /// Parse the `key=value` format described in the module docs.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut flux = DEFAULT_FLUX_WB;
        let mut radius = DEFAULT_RADIUS_M;
        let mut speed = DEFAULT_SPEED_MPS;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`, got `{line}`", lineno + 1))
            })?;
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Config(format!(
                    "line {}: value for `{key}` is not a number: `{}`",
                    lineno + 1,
                    value.trim()
                ))
            })?;
            match key {
                "flux_wb" => flux = value,
                "radius_m" => radius = value,
                "speed_mps" => speed = value,
                _ => {
                    return Err(Error::Config(format!("line {}: unknown key `{key}`", lineno + 1)))
                }
            }
        }

        let solenoid = SolenoidConfig::new(flux, radius)
            .map_err(|e| Error::Config(e.to_string()))?;
        let beam = BeamConfig::new(speed).map_err(|e| Error::Config(e.to_string()))?;
        Ok(RunConfig { solenoid, beam })
    }

    /// Read and parse a config file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }
}
