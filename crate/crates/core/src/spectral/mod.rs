//! Fourier representation of periodic divergence-free fields and the
//! linear and bilinear operators acting on them.

pub use rustfft::num_complex::Complex64;

mod assumption;
mod field;
mod grid;
mod ops;

pub use assumption::{admissibility_threshold, check_assumption, AssumptionReport};
pub use field::SpectralField;
pub use grid::{make_grid, Grid};
pub use ops::{
    a1_symbol, anisotropic_dissipation, apply_a1, apply_stokes_power, grad_sup_norm,
    grad_sup_norm_refined, leray_project, nonlinear_term, sobolev_norm,
};
