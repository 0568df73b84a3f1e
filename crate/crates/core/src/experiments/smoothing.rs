use crate::dynamics::{integrate, EvolutionSpec};
use crate::error::{Error, Result};
use crate::spectral::{sobolev_norm, SpectralField};

/// ||v1(T) - v2(T)||^2_{H^s_out} / ||v1(0) - v2(0)||^2_H for the paired runs
/// started at `v0` and `v0 + eps * direction`, both on the noise of `spec`.
pub fn smoothing_ratio(
    spec: &EvolutionSpec,
    v0: &SpectralField,
    eps: f64,
    direction: &SpectralField,
    horizon: f64,
    s_out: f64,
) -> Result<f64> {
    Ok(smoothing_ratios(spec, v0, eps, direction, horizon, &[s_out])?[0])
}

/// [`smoothing_ratio`] for several output norms from one pair of runs.
pub fn smoothing_ratios(
    spec: &EvolutionSpec,
    v0: &SpectralField,
    eps: f64,
    direction: &SpectralField,
    horizon: f64,
    s_out: &[f64],
) -> Result<Vec<f64>> {
    if !(eps > 0.0) {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    if direction.l2_norm() == 0.0 {
        return Err(Error::Precondition("perturbation direction is zero".into()));
    }
    let mut perturbed = v0.clone();
    perturbed.axpy(eps, direction);
    let initial = sobolev_norm(&(&perturbed - v0), 0.0).powi(2);
    let (a, b) = rayon::join(
        || integrate(spec, v0, 0.0, horizon),
        || integrate(spec, &perturbed, 0.0, horizon),
    );
    let diff = &b? - &a?;
    Ok(s_out
        .iter()
        .map(|s| sobolev_norm(&diff, *s).powi(2) / initial)
        .collect())
}
