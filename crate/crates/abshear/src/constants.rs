//! CODATA 2018 electron constants, compiled in.
//!
//! Every formula in the crate uses these exact values; they are not
//! configurable at run time, so numeric outputs are reproducible bit for bit.

/// Elementary charge e \[C\] (CODATA 2018, exact).
pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;

/// Electron mass m \[kg\] (CODATA 2018).
pub const ELECTRON_MASS_KG: f64 = 9.109_383_701_5e-31;

/// Reduced Planck constant ħ \[J·s\] (CODATA 2018, exact).
pub const REDUCED_PLANCK_JS: f64 = 1.054_571_817e-34;

/// The three electron constants as one value, for call sites that pass them
/// around together. Constructed only via [`PhysicalConstants::CODATA`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[non_exhaustive]
pub struct PhysicalConstants {
    /// Elementary charge e \[C\].
    pub e: f64,
    /// Electron mass m \[kg\].
    pub m: f64,
    /// Reduced Planck constant ħ \[J·s\].
    pub hbar: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 values.
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        e: ELEMENTARY_CHARGE_C,
        m: ELECTRON_MASS_KG,
        hbar: REDUCED_PLANCK_JS,
    };

    /// Charge-to-mass ratio e/m [C/kg].
    pub fn charge_to_mass(&self) -> f64 {
        self.e / self.m
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codata_2018_values_are_bit_exact() {
        let c = PhysicalConstants::CODATA;
        assert_eq!(c.e, 1.602176634e-19);
        assert_eq!(c.m, 9.1093837015e-31);
        assert_eq!(c.hbar, 1.054571817e-34);
        assert_eq!(PhysicalConstants::default(), c);
    }

    #[test]
    fn constants_are_positive_and_finite() {
        let c = PhysicalConstants::CODATA;
        for v in [c.e, c.m, c.hbar] {
            assert!(v.is_finite() && v > 0.0);
        }
    }

    #[test]
    fn charge_to_mass_ratio() {
        let ratio = PhysicalConstants::CODATA.charge_to_mass();
        // e/m = 1.602176634e-19 / 9.1093837015e-31 ≈ 1.7588e11 C/kg.
        assert!((ratio / 1.758820e11 - 1.0).abs() < 1e-6);
    }
}
