use std::sync::Arc;

use log::warn;
use rayon::prelude::*;

use super::geometry::hausdorff_semidist;
use crate::dynamics::{integrate, recover_u, EvolutionKind, EvolutionSpec, SimParams};
use crate::error::{Error, Result};
use crate::noise::{burn_in, NoiseSeries, WienerPath};
use crate::spectral::{Grid, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttractorMode {
    Colored(f64),
    White,
    Deterministic,
}

impl AttractorMode {
    pub fn label(&self) -> String {
        match self {
            AttractorMode::Colored(d) => format!("{d:?}"),
            AttractorMode::White => "white".into(),
            AttractorMode::Deterministic => "deterministic".into(),
        }
    }
}

/// Finite approximation of an attractor section at time 0.
#[derive(Debug, Clone)]
pub struct EnsembleState {
    /// Velocity fields u (not the conjugated v).
    pub members: Vec<SpectralField>,
    pub seed: u64,
    pub pullback_time: f64,
    pub mode: AttractorMode,
    /// Indices of initial members lost to numerical divergence.
    pub dropped: Vec<usize>,
    pub path_checksum: Option<String>,
}

/// `count` random fields on modes |j| <= 4 with unit L2 norm.
pub fn default_cloud(grid: &Arc<Grid>, count: usize, seed: u64) -> Result<Vec<SpectralField>> {
    (0..count)
        .map(|i| {
            let member_seed = seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(i as u64 + 1);
            SpectralField::random(grid, 4.0, 1.0, member_seed)
        })
        .collect()
}

/// Evolves every member of `cloud` from time -t_pb to 0 along the noise
/// path of `seed`, extended to the left as t_pb grows.
pub fn pullback_ensemble(
    params: &SimParams,
    seed: u64,
    cloud: &[SpectralField],
    t_pb: f64,
    mode: AttractorMode,
) -> Result<EnsembleState> {
    if !(t_pb >= 0.0) {
        return Err(Error::Precondition(format!("pullback time must be >= 0, got {t_pb}")));
    }
    let mut p = params.clone();
    p.seed = seed;
    p.horizon = t_pb;
    let (kind, noise) = match mode {
        AttractorMode::Deterministic => (EvolutionKind::Deterministic, None),
        AttractorMode::White | AttractorMode::Colored(_) => {
            if let AttractorMode::Colored(d) = mode {
                p.delta = d;
            }
            let path = WienerPath::sample(seed, -t_pb - burn_in(1.0), p.noise_dt, p.noise_dt)?;
            let series = NoiseSeries::from_path(&path, p.delta, -t_pb)?;
            let kind = if mode == AttractorMode::White {
                EvolutionKind::WhiteV
            } else {
                EvolutionKind::ColoredV
            };
            (kind, Some(Arc::new(series)))
        }
    };
    let spec = EvolutionSpec::new(kind, Arc::new(p), noise.clone())?;
    let scalar = |t: f64| spec.noise_scalar(t);
    let (s_start, s_end) = (scalar(-t_pb)?, scalar(0.0)?);
    let h = spec.params().intensity.clone();

    let results: Vec<Result<SpectralField>> = cloud
        .par_iter()
        .map(|u0| {
            let v0 = recover_u(u0, -s_start, &h);
            let v = integrate(&spec, &v0, -t_pb, t_pb)?;
            Ok(recover_u(&v, s_end, &h))
        })
        .collect();
    let mut members = Vec::with_capacity(cloud.len());
    let mut dropped = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(u) => members.push(u),
            Err(e @ Error::Divergence { .. }) => {
                warn!("pullback member {i} dropped: {e}");
                dropped.push(i);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EnsembleState {
        members,
        seed,
        pullback_time: t_pb,
        mode,
        dropped,
        path_checksum: noise.map(|n| n.path_checksum().to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemicontinuityRow {
    pub delta: f64,
    /// dist_H(A_delta, A_white)
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct SemicontinuityCurve {
    pub rows: Vec<SemicontinuityRow>,
    pub white: EnsembleState,
    pub colored: Vec<EnsembleState>,
}

/// Hausdorff semi-distance in H from each colored-noise ensemble to the
/// white-noise ensemble, all pulled back along the same path.
pub fn semicontinuity_curve(
    params: &SimParams,
    seed: u64,
    deltas: &[f64],
    t_pb: f64,
    cloud: &[SpectralField],
) -> Result<SemicontinuityCurve> {
    let white = pullback_ensemble(params, seed, cloud, t_pb, AttractorMode::White)?;
    let mut rows = Vec::with_capacity(deltas.len());
    let mut colored = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let e = pullback_ensemble(params, seed, cloud, t_pb, AttractorMode::Colored(d))?;
        debug_assert_eq!(e.path_checksum, white.path_checksum);
        rows.push(SemicontinuityRow {
            delta: d,
            distance: hausdorff_semidist(&e.members, &white.members, 0.0)?,
        });
        colored.push(e);
    }
    Ok(SemicontinuityCurve {
        rows,
        white,
        colored,
    })
}
