//! Shear-tensor model of the magnetic Aharonov-Bohm effect.
//!
//! An impenetrable solenoid of radius `R` carries a confined flux `Φ_B`; an
//! electron beam of asymptotic speed `v₀` streams past it as an irrotational
//! potential flow with a flux-locked circulation `Γ_v = −(e/m)·Φ_B`. Outside
//! the solenoid the magnetic field vanishes but the vector potential does
//! not, and its gradient carries a pure shear: decomposing `∂A_i/∂x_j` into
//! shear + rotation + expansion leaves only the off-diagonal shear
//! `σ_rθ = −Φ_B/(2πr²)`. Convecting the beam through that shear produces
//! local lateral forces, a fore-aft force asymmetry, and — integrated along
//! the two sides of the solenoid — exactly the Aharonov-Bohm phase
//! `Δφ = e·Φ_B/ħ`.
//!
//! The crate is organised along that pipeline:
//!
//! - [`constants`]: CODATA 2018 electron constants, compiled in.
//! - [`config`]: solenoid/beam parameters and the `key=value` config format.
//! - [`geometry`]: field points with locked polar/Cartesian representations.
//! - [`fields`]: vector potential, circulation, and the potential-flow
//!   velocity field.
//! - [`decomposition`]: Jacobians, the shear/rotation/expansion split, the
//!   finite-difference oracle, and grid sweeps.
//! - [`forces`]: convective forces on the beam, zero-force angles, angular
//!   averages, the net lateral force over an annulus, and streamline traces.
//! - [`phase`]: tangential speed splitting at the solenoid surface and the
//!   accumulated interference phase.
//! - [`figures`]: deterministic CSV emitters for the standard plots.
//! - [`verify`]: the self-check suite behind `abshear verify`.
//!
//! Point sweeps run in parallel when the `parallel` feature (default) is
//! enabled; every reduction is performed sequentially over index-ordered
//! results, so all outputs are bitwise independent of the thread count.

pub mod config;
pub mod constants;
pub mod decomposition;
pub mod error;
pub(crate) mod exec;
pub mod fields;
pub mod figures;
pub mod forces;
pub mod geometry;
pub mod phase;
pub mod quad;
pub mod verify;

pub use config::{BeamConfig, RunConfig, SolenoidConfig};
pub use error::{Error, Result};
pub use geometry::FieldPoint;
