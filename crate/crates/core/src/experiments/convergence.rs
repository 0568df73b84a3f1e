use std::sync::Arc;

use rayon::prelude::*;

use crate::dynamics::{integrate, recover_u, EvolutionKind, EvolutionSpec, SimParams};
use crate::error::Result;
use crate::noise::{burn_in, NoiseSeries, WienerPath};
use crate::spectral::{sobolev_norm, SpectralField};

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    /// Correlation time; `None` marks the control row driven by z itself.
    pub delta: Option<f64>,
    /// ||u_delta(T) - u(T)||_{H^s}, one entry per requested s.
    pub errors: Vec<f64>,
    pub horizon: f64,
    pub seed: u64,
    /// Whether the noise intensity is admissible for this delta.
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub sobolev_indices: Vec<f64>,
    pub rows: Vec<ConvergenceRow>,
    pub path_checksum: String,
}

/// Paired-path comparison of colored-noise solutions against the
/// white-noise solution at time `horizon`, from the shared initial state `u0`.
///
/// Rows whose delta fails the admissibility test are still computed and
/// marked. With `control`, a final row runs the colored system on z in
/// place of y_delta.
pub fn delta_convergence(
    base: &SimParams,
    u0: &SpectralField,
    seed: u64,
    deltas: &[f64],
    horizon: f64,
    sobolev_indices: &[f64],
    control: bool,
) -> Result<ConvergenceTable> {
    let path = WienerPath::sample(seed, -burn_in(1.0), horizon.max(base.noise_dt), base.noise_dt)?;
    let h = &base.intensity;
    let arm = |kind: EvolutionKind, delta: f64, series: NoiseSeries| -> Result<(SpectralField, bool)> {
        let mut p = base.clone();
        p.delta = delta;
        p.horizon = horizon;
        p.seed = seed;
        let admissible = p.assumption().pass;
        let series = Arc::new(series);
        let scalar = |t: f64| match kind {
            EvolutionKind::ColoredV => series.y_at(t),
            _ => series.z_at(t),
        };
        let v0 = recover_u(u0, -scalar(0.0)?, h);
        let spec = EvolutionSpec::new(kind, Arc::new(p), Some(series.clone()))?;
        let v = integrate(&spec, &v0, 0.0, horizon)?;
        Ok((recover_u(&v, scalar(horizon)?, h), admissible))
    };

    let white_series = NoiseSeries::from_path(&path, 1.0, 0.0)?;
    let (white, _) = arm(EvolutionKind::WhiteV, base.delta, white_series.clone())?;

    let mut jobs: Vec<(Option<f64>, NoiseSeries)> = Vec::with_capacity(deltas.len() + 1);
    for &d in deltas {
        jobs.push((Some(d), NoiseSeries::from_path(&path, d, 0.0)?));
    }
    if control {
        jobs.push((None, white_series.with_y_as_z()));
    }
    let rows = jobs
        .into_par_iter()
        .map(|(delta, series)| {
            let (u, admissible) = arm(EvolutionKind::ColoredV, delta.unwrap_or(base.delta), series)?;
            let diff = &u - &white;
            Ok(ConvergenceRow {
                delta,
                errors: sobolev_indices.iter().map(|s| sobolev_norm(&diff, *s)).collect(),
                horizon,
                seed,
                admissible,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable {
        sobolev_indices: sobolev_indices.to_vec(),
        rows,
        path_checksum: path.checksum(),
    })
}
