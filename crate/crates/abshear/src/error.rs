//! Error type shared across the crate, with a fixed mapping to CLI exit codes.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong outside of plain verification failures.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed configuration file or invalid parameter value.
    #[error("config error: {0}")]
    Config(String),

    /// Invalid argument to a library operation (non-finite input, bad range,
    /// degenerate sample count, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A field operation was requested at a point inside the solenoid,
    /// where the model is not defined.
    #[error("point at r = {r:.6e} m lies inside the solenoid (R = {radius:.6e} m)")]
    InsideSolenoid { r: f64, radius: f64 },

    /// A finite-difference stencil around a point would cross the solenoid
    /// boundary, so the derivative cannot be formed.
    #[error(
        "finite-difference stencil of half-width {h:.6e} m at r = {r:.6e} m \
         crosses the solenoid boundary (R = {radius:.6e} m)"
    )]
    StencilCrossesSolenoid { r: f64, h: f64, radius: f64 },

    /// A physical precondition of the requested analysis does not hold for
    /// the given parameters.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Underlying I/O failure while reading a config or writing an output.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 config, 3 I/O, 4 geometry,
    /// 5 precondition. (0 is success and 1 a verification failure; those are
    /// not errors.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => 2,
            Error::Io(_) => 3,
            Error::InsideSolenoid { .. } | Error::StencilCrossesSolenoid { .. } => 4,
            Error::Precondition(_) => 5,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_match_the_documented_table() {
        assert_eq!(Error::Config("x".into()).exit_code(), 2);
        assert_eq!(Error::InvalidArgument("x".into()).exit_code(), 2);
        assert_eq!(
            Error::Io(std::io::Error::new(std::io::ErrorKind::Other, "x")).exit_code(),
            3
        );
        assert_eq!(Error::InsideSolenoid { r: 0.5, radius: 1.0 }.exit_code(), 4);
        assert_eq!(
            Error::StencilCrossesSolenoid { r: 1.0, h: 0.5, radius: 1.0 }.exit_code(),
            4
        );
        assert_eq!(Error::Precondition("x".into()).exit_code(), 5);
    }

    #[test]
    fn messages_carry_the_offending_values() {
        let msg = Error::InsideSolenoid { r: 5e-7, radius: 1e-6 }.to_string();
        assert!(msg.contains("5.000000e-7"));
        assert!(msg.contains("1.000000e-6"));
    }
}
