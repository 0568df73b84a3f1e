//! Norm time series, energy bookkeeping, spectral identity checks and
//! empirical absorbing-set statistics.

use crate::error::{Error, Result};
use crate::dynamics::Trajectory;
use crate::spectral::{sobolev_norm, SpectralField};

/// Norms of the state at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub h0: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    /// Energy residual accumulated from the start of the run up to `t`.
    pub energy_residual: f64,
    pub noise_scalar: f64,
}

impl DiagnosticsRecord {
    pub fn norm(&self, s: usize) -> f64 {
        match s {
            0 => self.h0,
            1 => self.h1,
            2 => self.h2,
            3 => self.h3,
            _ => panic!("no H^{s} norm is recorded"),
        }
    }
}

pub fn record(state: &SpectralField, t: f64, noise_scalar: f64) -> DiagnosticsRecord {
    DiagnosticsRecord {
        t,
        h0: sobolev_norm(state, 0.0),
        h1: sobolev_norm(state, 1.0),
        h2: sobolev_norm(state, 2.0),
        h3: sobolev_norm(state, 3.0),
        energy_residual: 0.0,
        noise_scalar,
    }
}

/// Pointwise-in-time quantities entering the energy balance
/// d/dt ||v||^2 + 2 nu D(v) = 2 <F, v>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    pub t: f64,
    /// ||v||^2
    pub energy: f64,
    /// D(v) = ||d_y v1||^2 + ||d_x v2||^2
    pub dissipation: f64,
    /// <F, v> for every non-viscous tendency term F
    pub work: f64,
}

/// Trapezoid-rule residual of the energy balance over [prev.t, next.t].
pub fn energy_residual_increment(prev: &EnergySample, next: &EnergySample, nu: f64) -> f64 {
    let dt = next.t - prev.t;
    (next.energy - prev.energy) + dt * (nu * (prev.dissipation + next.dissipation) - (prev.work + next.work))
}

/// Anisotropic enstrophy identity and its coercivity consequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    /// int d_yy v1 Lap v1 + int d_xx v2 Lap v2
    pub lhs: f64,
    /// ||d_xx v1||^2 + ||d_yy v1||^2 + ||d_xx v2||^2 + ||d_yy v2||^2
    pub rhs: f64,
    pub relative_error: f64,
    /// ||A v||^2
    pub a_norm_sq: f64,
    /// lhs >= ||A v||^2 / 2
    pub coercive: bool,
}

pub fn enstrophy_identity_check(v: &SpectralField) -> IdentityReport {
    let grid = v.grid();
    let (a, b) = v.components();
    let (mut lhs, mut rhs, mut a_sq) = (0.0, 0.0, 0.0);
    for idx in 0..grid.len() {
        let (kx, ky) = grid.wavevector(idx);
        let (kx2, ky2) = (kx * kx, ky * ky);
        let k2 = kx2 + ky2;
        let (p, q) = (a[idx].norm_sqr(), b[idx].norm_sqr());
        lhs += ky2 * k2 * p + kx2 * k2 * q;
        rhs += (kx2 * kx2 + ky2 * ky2) * (p + q);
        a_sq += k2 * k2 * (p + q);
    }
    let l2 = grid.length() * grid.length();
    let (lhs, rhs, a_sq) = (lhs * l2, rhs * l2, a_sq * l2);
    let relative_error = if lhs == rhs {
        0.0
    } else {
        (lhs - rhs).abs() / rhs.max(f64::MIN_POSITIVE)
    };
    IdentityReport {
        lhs,
        rhs,
        relative_error,
        a_norm_sq: a_sq,
        coercive: lhs >= 0.5 * a_sq * (1.0 - 1e-14),
    }
}

/// (||grad v||^2, ||d_y v1||^2 + ||d_x v2||^2); for divergence-free v the
/// first is at most twice the second.
pub fn gradient_split(v: &SpectralField) -> (f64, f64) {
    (
        sobolev_norm(v, 1.0).powi(2),
        crate::spectral::anisotropic_dissipation(v),
    )
}

/// Absorption summary for one Sobolev index.
#[derive(Debug, Clone, PartialEq)]
pub struct NormAbsorption {
    pub s: usize,
    /// Pooled quantile of late-time norms across the ensemble.
    pub radius: f64,
    /// The same quantile per trajectory.
    pub member_radii: Vec<f64>,
    /// First time each trajectory enters the pooled ball and stays in it
    /// for at least one time unit.
    pub entry_times: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbsorbingReport {
    pub norms: Vec<NormAbsorption>,
    /// Runs too short (or too sparsely recorded) for the statistics to mean much.
    pub inconclusive: bool,
    /// Some record holds a non-finite norm.
    pub blow_up: bool,
}

/// Fraction of each run treated as "late time".
pub const LATE_FRACTION: f64 = 0.25;

fn quantile(values: &mut [f64], q: f64) -> f64 {
    values.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (values.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    values[lo] + (pos - lo as f64) * (values[hi] - values[lo])
}

/// Empirical eventual radii and entry times for s = 0..=3.
pub fn absorbing_statistics(trajectories: &[Trajectory], radius_quantile: f64) -> Result<AbsorbingReport> {
    if trajectories.is_empty() || trajectories.iter().any(|t| t.records.is_empty()) {
        return Err(Error::Precondition("absorbing statistics need non-empty trajectories".into()));
    }
    let blow_up = trajectories
        .iter()
        .flat_map(|t| &t.records)
        .any(|r| !(r.h0.is_finite() && r.h1.is_finite() && r.h2.is_finite() && r.h3.is_finite()));

    let late: Vec<&[DiagnosticsRecord]> = trajectories
        .iter()
        .map(|t| {
            let start = t.times[0] + (1.0 - LATE_FRACTION) * t.duration();
            let first = t.records.iter().position(|r| r.t >= start).unwrap_or(t.records.len() - 1);
            &t.records[first..]
        })
        .collect();
    let inconclusive = trajectories.iter().any(|t| t.duration() < 4.0) || late.iter().any(|l| l.len() < 4);

    let norms = (0..4)
        .map(|s| {
            let mut pooled: Vec<f64> = late.iter().flat_map(|l| l.iter().map(|r| r.norm(s))).collect();
            let radius = quantile(&mut pooled, radius_quantile);
            let member_radii = late
                .iter()
                .map(|l| quantile(&mut l.iter().map(|r| r.norm(s)).collect::<Vec<_>>(), radius_quantile))
                .collect();
            let entry_times = trajectories.iter().map(|t| entry_time(&t.records, s, radius)).collect();
            NormAbsorption {
                s,
                radius,
                member_radii,
                entry_times,
            }
        })
        .collect();
    Ok(AbsorbingReport {
        norms,
        inconclusive,
        blow_up,
    })
}

fn entry_time(records: &[DiagnosticsRecord], s: usize, radius: f64) -> Option<f64> {
    let end = records.last()?.t;
    let mut candidate = None;
    for (i, r) in records.iter().enumerate() {
        if r.t + 1.0 > end + 1e-9 {
            break;
        }
        let stays = records[i..]
            .iter()
            .take_while(|q| q.t <= r.t + 1.0 + 1e-9)
            .all(|q| q.norm(s) <= radius);
        if stays {
            candidate = Some(r.t);
            break;
        }
    }
    candidate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{leray_project, make_grid};
    use rustfft::num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn records_of_simple_states() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        let r = record(&SpectralField::zeros(&g), 0.0, 0.0);
        assert_eq!((r.h0, r.h1, r.h2, r.h3), (0.0, 0.0, 0.0, 0.0));

        let m = SpectralField::single_mode(&g, 1, 0, Complex64::new(1.0, 0.0)).unwrap();
        let m = m.scaled(1.0 / m.l2_norm());
        let r = record(&m, 0.0, 0.0);
        for s in 0..4 {
            assert!((r.norm(s) - 1.0).abs() < 1e-14);
        }
        let m = SpectralField::single_mode(&g, 1, 2, Complex64::new(0.3, 0.0)).unwrap();
        let r = record(&m, 0.0, 0.0);
        for s in 1..4 {
            let expected = 5f64.powf(s as f64 / 2.0) * r.h0;
            assert!((r.norm(s) - expected).abs() < 1e-13 * expected);
        }
    }

    #[test]
    fn residual_of_exact_decay_is_zero() {
        // unit-symbol mode: D = E and E(t) = e^{-2 nu t}
        let nu = 0.8;
        let e = |t: f64| (-2.0 * nu * t).exp();
        let dt = 1e-4;
        let mut total = 0.0;
        for n in 0..10_000 {
            let (t0, t1) = (n as f64 * dt, (n + 1) as f64 * dt);
            let a = EnergySample { t: t0, energy: e(t0), dissipation: e(t0), work: 0.0 };
            let b = EnergySample { t: t1, energy: e(t1), dissipation: e(t1), work: 0.0 };
            total += energy_residual_increment(&a, &b, nu);
        }
        assert!(total.abs() < 1e-8, "{total}");
        let z = EnergySample { t: 0.0, energy: 0.0, dissipation: 0.0, work: 0.0 };
        assert_eq!(energy_residual_increment(&z, &EnergySample { t: 1.0, ..z }, 1.0), 0.0);
    }

    #[test]
    fn identity_holds_for_divergence_free_fields_only() {
        let g = make_grid(32, 2.0 * PI).unwrap();
        let v = SpectralField::random(&g, 10.0, 1.0, 5).unwrap();
        let r = enstrophy_identity_check(&v);
        assert!(r.relative_error < 1e-10);
        assert!(r.coercive);
        assert_eq!(enstrophy_identity_check(&SpectralField::zeros(&g)).relative_error, 0.0);

        let raw = SpectralField::random_unprojected(&g, 5);
        let projected = leray_project(&raw);
        assert!(enstrophy_identity_check(&projected).relative_error < 1e-10);
        assert!(enstrophy_identity_check(&raw).relative_error > 1e-3);
    }

    #[test]
    fn gradient_split_bound() {
        let g = make_grid(32, 1.0).unwrap();
        for seed in 0..10 {
            let v = SpectralField::random(&g, 10.0, 1.0, seed).unwrap();
            let (grad, aniso) = gradient_split(&v);
            assert!(grad <= 2.0 * aniso * (1.0 + 1e-14));
        }
    }

    #[test]
    fn quantile_interpolates() {
        let mut v = vec![4.0, 1.0, 3.0, 2.0, 5.0];
        assert_eq!(quantile(&mut v, 0.5), 3.0);
        assert_eq!(quantile(&mut v, 1.0), 5.0);
        assert!((quantile(&mut v, 0.95) - 4.8).abs() < 1e-12);
    }
}
