//! Pseudo-spectral laboratory for the stochastic anisotropic Navier-Stokes
//! equations on the periodic square, driven by colored (Ornstein-Uhlenbeck)
//! or white additive noise.
//!
//! The crate is organized bottom-up:
//!
//! - [`spectral`]: grids, divergence-free Fourier fields, projection,
//!   the anisotropic Stokes operator, advection and Sobolev norms.
//! - [`noise`]: Wiener paths and the colored-noise, smoothed and OU processes.
//! - [`dynamics`]: right-hand sides, the integrating-factor RK2 stepper,
//!   Euler-Maruyama and trajectory simulation.
//! - [`diagnostics`]: norm records, energy residuals, identity checks and
//!   absorbing-set statistics.
//! - [`experiments`]: smoothing, delta -> 0 convergence, pullback ensembles,
//!   Hausdorff semi-distance and box counting.
//! - [`io`]: configuration grammar, binary snapshots, CSV.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod io;
pub mod noise;
pub mod spectral;

pub use dynamics::{EvolutionKind, EvolutionSpec, RecordPlan, SimParams, Trajectory};
pub use error::{Error, Result};
pub use noise::{NoiseSeries, WienerPath};
pub use spectral::{make_grid, Complex64, Grid, SpectralField};
