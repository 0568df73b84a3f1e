use std::f64::consts::PI;

use super::field::SpectralField;
use super::ops::{grad_sup_norm, sobolev_norm};

/// Outcome of the noise-intensity admissibility test
/// ||grad h||_inf < sqrt(pi delta) nu lambda1 / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionReport {
    pub pass: bool,
    /// ||grad h||_inf divided by the threshold; admissible iff < 1.
    pub ratio: f64,
    pub grad_sup: f64,
    pub threshold: f64,
    pub h3_norm: f64,
    pub h4_norm: f64,
}

pub fn admissibility_threshold(nu: f64, delta: f64, lambda1: f64) -> f64 {
    (PI * delta).sqrt() * nu * lambda1 / 2.0
}

pub fn check_assumption(h: &SpectralField, nu: f64, delta: f64) -> AssumptionReport {
    let threshold = admissibility_threshold(nu, delta, h.grid().lambda1());
    let grad_sup = grad_sup_norm(h);
    let ratio = grad_sup / threshold;
    AssumptionReport {
        pass: ratio < 1.0,
        ratio,
        grad_sup,
        threshold,
        h3_norm: sobolev_norm(h, 3.0),
        h4_norm: sobolev_norm(h, 4.0),
    }
}
