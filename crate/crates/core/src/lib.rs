//! Wigner rotation of spin-½ particles induced by frame dragging on
//! equatorial geodesics of the Kerr spacetime.
//!
//! Lengths are in units of the Schwarzschild radius `rs`; the public API is
//! parameterised by `chi = a/rs` and `x = rs/r`.
//!
//! ```
//! use kerr_wigner::{radial_fall_rotation, GravitationalSource};
//!
//! let source = GravitationalSource::unit(0.5)?;
//! let rot = radial_fall_rotation(&source, 0.0, 1.0, 1e-8)?;
//! assert!((rot.omega - 3.1828).abs() < 1e-3);
//! # Ok::<(), kerr_wigner::Error>(())
//! ```

// `!(v > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod frames;
pub mod geodesics;
pub mod geometry;
pub mod published;
pub mod quadrature;
pub mod qubit;
pub mod report;
pub mod sweep;
pub mod wigner;

pub use error::{Error, Result};
pub use frames::{connection_forms, connection_forms_numeric, tetrad, ConnectionForms, Tetrad};
pub use geodesics::{
    circular_constants, circular_orbit_exists, circular_velocity, radial_fall_velocity, regime_check, FourVelocity,
    OrbitSense, RegimeReport, Scenario,
};
pub use geometry::{horizons, metric_scalars, metric_tensor, validate_censorship, Censorship, GravitationalSource};
pub use qubit::{apply_rotation, bell_chsh, orthogonal_error, rotation_operator, QubitState, SpinHalfRotation};
pub use wigner::{
    n_orbit_rotation, per_orbit_rotation, radial_fall_rotation, spin_bound_curves, Lowering, Pipeline, SpinRotation,
};
