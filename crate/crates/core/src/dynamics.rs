//! Governing equations and their time integration.
//!
//! The conjugated systems evolve `v = u - h s(t)` where the scalar `s` is
//! the smoothed colored noise `y_delta` or the OU process `z`; with the
//! noise entering only through a scalar coefficient, every path is a
//! classical non-autonomous PDE. The direct stochastic form is advanced by
//! Euler-Maruyama for cross-checks.

use std::sync::Arc;

use log::warn;

use crate::diagnostics::{energy_residual_increment, record, DiagnosticsRecord, EnergySample};
use crate::error::{Error, Result};
use crate::noise::NoiseSeries;
use crate::spectral::{
    a1_symbol, anisotropic_dissipation, apply_a1, check_assumption, leray_project, nonlinear_term,
    AssumptionReport, Grid, SpectralField,
};

/// Physical and numerical configuration of one run.
#[derive(Debug, Clone)]
pub struct SimParams {
    pub nu: f64,
    pub delta: f64,
    pub dt: f64,
    pub horizon: f64,
    pub forcing: SpectralField,
    pub intensity: SpectralField,
    pub seed: u64,
    /// Step of the Wiener path lattice.
    pub noise_dt: f64,
    /// Skip the admissibility gate.
    pub force: bool,
}

impl SimParams {
    pub fn grid(&self) -> &Arc<Grid> {
        self.forcing.grid()
    }

    pub fn assumption(&self) -> AssumptionReport {
        check_assumption(&self.intensity, self.nu, self.delta)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::config("physics.nu", "must be positive"));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::config("physics.delta", "must lie in (0, 1]"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::config("time.dt", "must be positive"));
        }
        if !(self.horizon >= 0.0 && self.horizon.is_finite()) {
            return Err(Error::config("time.T", "must be non-negative"));
        }
        if !(self.noise_dt > 0.0 && self.noise_dt <= self.dt * (1.0 + 1e-12)) {
            return Err(Error::config("time.noise_dt", "must be positive and <= dt"));
        }
        if self.forcing.grid() != self.intensity.grid() {
            return Err(Error::config("noise_intensity", "grid differs from forcing"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionKind {
    Deterministic,
    /// Conjugated system driven by y_delta.
    ColoredV,
    /// Conjugated system driven by z.
    WhiteV,
    /// Stochastic system in u, Euler-Maruyama.
    DirectSde,
}

impl EvolutionKind {
    pub fn name(self) -> &'static str {
        match self {
            EvolutionKind::Deterministic => "deterministic",
            EvolutionKind::ColoredV => "colored",
            EvolutionKind::WhiteV => "white",
            EvolutionKind::DirectSde => "direct-sde",
        }
    }

    pub fn is_noisy(self) -> bool {
        self != EvolutionKind::Deterministic
    }
}

impl std::str::FromStr for EvolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deterministic" => Ok(EvolutionKind::Deterministic),
            "colored" | "colored-v" => Ok(EvolutionKind::ColoredV),
            "white" | "white-v" => Ok(EvolutionKind::WhiteV),
            "direct-sde" => Ok(EvolutionKind::DirectSde),
            other => Err(Error::config("run.kind", format!("unknown kind `{other}`"))),
        }
    }
}

/// Which equation to integrate, with its parameters and noise.
#[derive(Debug, Clone)]
pub struct EvolutionSpec {
    kind: EvolutionKind,
    params: Arc<SimParams>,
    noise: Option<Arc<NoiseSeries>>,
    advection: bool,
    nu_a1_h: SpectralField,
}

impl EvolutionSpec {
    pub fn new(
        kind: EvolutionKind,
        params: Arc<SimParams>,
        noise: Option<Arc<NoiseSeries>>,
    ) -> Result<Self> {
        params.validate()?;
        if kind.is_noisy() && noise.is_none() {
            return Err(Error::Precondition(format!(
                "{} evolution needs a noise series",
                kind.name()
            )));
        }
        let nu_a1_h = apply_a1(&params.intensity).scaled(params.nu);
        Ok(EvolutionSpec {
            kind,
            params,
            noise,
            advection: true,
            nu_a1_h,
        })
    }

    pub fn deterministic(params: Arc<SimParams>) -> Result<Self> {
        Self::new(EvolutionKind::Deterministic, params, None)
    }

    /// Drops the advective term; for linear checks.
    pub fn without_advection(mut self) -> Self {
        self.advection = false;
        self
    }

    pub fn kind(&self) -> EvolutionKind {
        self.kind
    }

    pub fn params(&self) -> &Arc<SimParams> {
        &self.params
    }

    pub fn noise(&self) -> Option<&Arc<NoiseSeries>> {
        self.noise.as_ref()
    }

    /// Scalar multiplying h at time `t`: y_delta, z, or zero.
    pub fn noise_scalar(&self, t: f64) -> Result<f64> {
        match (self.kind, &self.noise) {
            (EvolutionKind::ColoredV, Some(n)) => n.y_at(t),
            (EvolutionKind::WhiteV, Some(n)) => n.z_at(t),
            _ => Ok(0.0),
        }
    }

    /// Everything in the tendency except -nu A1 v:
    /// f - B(v + h s) - nu A1(h) s + h s.
    fn explicit_part(&self, v: &SpectralField, s: f64) -> SpectralField {
        let p = &self.params;
        let mut out = p.forcing.clone();
        if self.advection {
            let b = if s == 0.0 {
                nonlinear_term(v)
            } else {
                let mut shifted = v.clone();
                shifted.axpy(s, &p.intensity);
                nonlinear_term(&shifted)
            };
            out.axpy(-1.0, &b);
        }
        if s != 0.0 && self.kind != EvolutionKind::DirectSde {
            out.axpy(-s, &self.nu_a1_h);
            out.axpy(s, &p.intensity);
        }
        out
    }

    /// Full tendency of the state at time `t` (drift only for `DirectSde`).
    pub fn rhs(&self, v: &SpectralField, t: f64) -> Result<SpectralField> {
        let s = self.noise_scalar(t)?;
        let mut out = self.explicit_part(v, s);
        out.axpy(-self.params.nu, &apply_a1(v));
        Ok(out)
    }
}

/// f - nu A1 u - B(u).
pub fn rhs_deterministic(u: &SpectralField, p: &SimParams) -> SpectralField {
    let mut out = p.forcing.clone();
    out.axpy(-p.nu, &apply_a1(u));
    out.axpy(-1.0, &nonlinear_term(u));
    out
}

/// f - nu A1 v - B(v + h y) - nu A1(h) y + h y.
pub fn rhs_colored_v(v: &SpectralField, y: f64, p: &SimParams) -> SpectralField {
    let mut shifted = v.clone();
    shifted.axpy(y, &p.intensity);
    let mut out = p.forcing.clone();
    out.axpy(-p.nu, &apply_a1(v));
    out.axpy(-1.0, &nonlinear_term(&shifted));
    out.axpy(-p.nu * y, &apply_a1(&p.intensity));
    out.axpy(y, &p.intensity);
    out
}

/// The white-noise conjugated tendency: the colored form with z in place of y.
pub fn rhs_white_v(v: &SpectralField, z: f64, p: &SimParams) -> SpectralField {
    rhs_colored_v(v, z, p)
}

/// u = v + h s.
pub fn recover_u(v: &SpectralField, scalar: f64, h: &SpectralField) -> SpectralField {
    let mut u = v.clone();
    u.axpy(scalar, h);
    u
}

/// Advective CFL number dt max|u| / dx.
pub fn cfl_number(u: &SpectralField, dt: f64) -> f64 {
    let (a, b) = u.to_physical();
    let umax = a
        .iter()
        .zip(&b)
        .map(|(x, y)| x.hypot(*y))
        .fold(0.0, f64::max);
    dt * umax / u.grid().dx()
}

/// Integrating-factor RK2 stepper with a fixed step.
///
/// The linear part is applied exactly through e^{-nu mu(k) dt}; the rest is
/// advanced by Heun's method in the integrating-factor frame.
#[derive(Debug, Clone)]
pub struct Stepper {
    spec: EvolutionSpec,
    dt: f64,
    decay: Vec<f64>,
}

impl Stepper {
    pub fn new(spec: EvolutionSpec, dt: f64) -> Self {
        let grid = spec.params.grid().clone();
        let nu = spec.params.nu;
        let decay = (0..grid.len())
            .map(|idx| {
                let (kx, ky) = grid.wavevector(idx);
                (-nu * a1_symbol(kx, ky) * dt).exp()
            })
            .collect();
        Stepper { spec, dt, decay }
    }

    pub fn spec(&self) -> &EvolutionSpec {
        &self.spec
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Explicit tendency at (v, t); what the first stage of [`Stepper::advance`] uses.
    pub fn explicit_tendency(&self, v: &SpectralField, t: f64) -> Result<SpectralField> {
        if self.spec.kind == EvolutionKind::DirectSde {
            return Ok(self.spec.explicit_part(v, 0.0));
        }
        Ok(self.spec.explicit_part(v, self.spec.noise_scalar(t)?))
    }

    /// One step from `(v, t)`. `first_stage` may carry a precomputed
    /// [`Stepper::explicit_tendency`] at the same point.
    pub fn advance(
        &self,
        v: &SpectralField,
        t: f64,
        first_stage: Option<&SpectralField>,
    ) -> Result<SpectralField> {
        let dt = self.dt;
        if self.spec.kind == EvolutionKind::DirectSde {
            let noise = self.spec.noise.as_ref().expect("checked in EvolutionSpec::new");
            let dw = noise.increment_between(t, dt)?;
            return step_euler_maruyama(v, dw, dt, &self.spec.params)
                .map_err(|e| with_time(e, t + dt));
        }
        let owned;
        let n0 = match first_stage {
            Some(n) => n,
            None => {
                owned = self.explicit_tendency(v, t)?;
                &owned
            }
        };
        let mut predictor = v.clone();
        predictor.axpy(dt, n0);
        self.apply_decay(&mut predictor);
        let n1 = self.explicit_tendency(&predictor, t + dt)?;

        let mut next = v.clone();
        next.axpy(0.5 * dt, n0);
        self.apply_decay(&mut next);
        next.axpy(0.5 * dt, &n1);
        if !next.max_abs_coefficient().is_finite() {
            return Err(Error::Divergence {
                time: t + dt,
                cfl: cfl_number(v, dt),
            });
        }
        Ok(next)
    }

    fn apply_decay(&self, v: &mut SpectralField) {
        let (a, b) = v.components_mut();
        for ((x, y), e) in a.iter_mut().zip(b.iter_mut()).zip(&self.decay) {
            *x *= *e;
            *y *= *e;
        }
    }
}

fn with_time(e: Error, t: f64) -> Error {
    match e {
        Error::Divergence { cfl, .. } => Error::Divergence { time: t, cfl },
        other => other,
    }
}

/// One integrating-factor RK2 step of the equation selected by `spec`.
pub fn step(state: &SpectralField, t: f64, dt: f64, spec: &EvolutionSpec) -> Result<SpectralField> {
    Stepper::new(spec.clone(), dt).advance(state, t, None)
}

/// u + dt (f - nu A1 u - B(u)) + h dW, re-projected.
pub fn step_euler_maruyama(
    u: &SpectralField,
    dw: f64,
    dt: f64,
    p: &SimParams,
) -> Result<SpectralField> {
    let mut next = u.clone();
    next.axpy(dt, &rhs_deterministic(u, p));
    next.axpy(dw, &p.intensity);
    let next = leray_project(&next);
    if !next.max_abs_coefficient().is_finite() {
        return Err(Error::Divergence {
            time: 0.0,
            cfl: cfl_number(u, dt),
        });
    }
    Ok(next)
}

/// When to emit diagnostics and keep full fields.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordPlan {
    /// Record cadence in time units; 0 records only the endpoints.
    pub every: f64,
    /// Absolute times at which the state is kept.
    pub snapshots: Vec<f64>,
}

impl Default for RecordPlan {
    fn default() -> Self {
        RecordPlan {
            every: 0.1,
            snapshots: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub kind: EvolutionKind,
    pub times: Vec<f64>,
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<(f64, SpectralField)>,
    pub final_state: SpectralField,
    /// Accumulated energy residual over the whole run.
    pub energy_residual: f64,
    /// Integral of 2 nu (||d_y v1||^2 + ||d_x v2||^2) over the run.
    pub dissipated: f64,
    pub path_checksum: Option<String>,
}

impl Trajectory {
    pub fn duration(&self) -> f64 {
        match (self.times.first(), self.times.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }
}

fn step_count(duration: f64, dt: f64) -> usize {
    let n = duration / dt;
    let r = n.round();
    if (n - r).abs() < 1e-6 {
        r as usize
    } else {
        n.ceil() as usize
    }
}

fn energy_sample(v: &SpectralField, explicit: &SpectralField, t: f64) -> EnergySample {
    EnergySample {
        t,
        energy: v.inner(v),
        dissipation: anisotropic_dissipation(v),
        work: explicit.inner(v),
    }
}

/// Integrates over [t0, t0 + params.horizon], recording diagnostics.
///
/// Refuses to start a noisy run whose intensity fails the admissibility
/// test unless `params.force` is set. The energy residual is accumulated by
/// the trapezoid rule at step cadence.
pub fn simulate(
    spec: &EvolutionSpec,
    v0: &SpectralField,
    t0: f64,
    plan: &RecordPlan,
) -> Result<Trajectory> {
    let p = spec.params.clone();
    if spec.kind.is_noisy() && !p.force {
        let report = p.assumption();
        if !report.pass {
            return Err(Error::Assumption {
                ratio: report.ratio,
            });
        }
    }
    if v0.grid() != p.grid() {
        return Err(Error::Precondition("initial state on a different grid".into()));
    }
    let steps = step_count(p.horizon, p.dt);
    let dt = if steps == 0 { p.dt } else { p.horizon / steps as f64 };
    if let Some(noise) = &spec.noise {
        let end = t0 + p.horizon;
        if t0 < noise.start() - 1e-9 || end > noise.end() + 1e-9 {
            return Err(Error::NoiseWindow {
                time: if t0 < noise.start() { t0 } else { end },
                start: noise.start(),
                end: noise.end(),
            });
        }
    }
    let stepper = Stepper::new(spec.clone(), dt);
    let every = if plan.every > 0.0 {
        step_count(plan.every, dt).max(1)
    } else {
        usize::MAX
    };

    let mut v = v0.clone();
    let mut t = t0;
    let mut explicit = stepper.explicit_tendency(&v, t)?;
    let mut sample = energy_sample(&v, &explicit, t);
    let mut residual = 0.0;
    let mut dissipated = 0.0;

    let mut traj = Trajectory {
        kind: spec.kind,
        times: Vec::new(),
        records: Vec::new(),
        snapshots: Vec::new(),
        final_state: v0.clone(),
        energy_residual: 0.0,
        dissipated: 0.0,
        path_checksum: spec.noise.as_ref().map(|n| n.path_checksum().to_string()),
    };
    let push = |traj: &mut Trajectory, v: &SpectralField, t: f64, residual: f64| -> Result<()> {
        let mut r = record(v, t, spec.noise_scalar(t)?);
        r.energy_residual = residual;
        traj.times.push(t);
        traj.records.push(r);
        Ok(())
    };
    let mut pending_snapshots: Vec<f64> = plan.snapshots.clone();
    pending_snapshots.sort_by(f64::total_cmp);
    let mut take_snapshots = |traj: &mut Trajectory, v: &SpectralField, t: f64| {
        while let Some(&ts) = pending_snapshots.first() {
            if ts <= t + 0.5 * dt {
                if ts >= t - 0.5 * dt {
                    traj.snapshots.push((t, v.clone()));
                }
                pending_snapshots.remove(0);
            } else {
                break;
            }
        }
    };

    push(&mut traj, &v, t, residual)?;
    take_snapshots(&mut traj, &v, t);
    for n in 1..=steps {
        if n % 100 == 1 {
            let u = recover_u(&v, spec.noise_scalar(t)?, &p.intensity);
            let cfl = cfl_number(&u, dt);
            if cfl > 0.5 {
                warn!("t = {t:.4}: CFL number {cfl:.3} exceeds 0.5; consider reducing dt");
            }
        }
        let next = if spec.kind == EvolutionKind::DirectSde {
            let noise = spec.noise.as_ref().expect("checked in EvolutionSpec::new");
            let dw = noise.increment_between(t, dt)?;
            let next = stepper.advance(&v, t, None)?;
            // Ito correction: E|h dW|^2 and the martingale term are not work.
            residual -= 2.0 * dw * p.intensity.inner(&v) + dw * dw * p.intensity.inner(&p.intensity);
            next
        } else {
            stepper.advance(&v, t, Some(&explicit))?
        };
        v = next;
        t = t0 + n as f64 * dt;
        explicit = stepper.explicit_tendency(&v, t)?;
        let next_sample = energy_sample(&v, &explicit, t);
        residual += energy_residual_increment(&sample, &next_sample, p.nu);
        dissipated += p.nu * (sample.dissipation + next_sample.dissipation) * dt;
        sample = next_sample;
        if n % every == 0 || n == steps {
            push(&mut traj, &v, t, residual)?;
        }
        take_snapshots(&mut traj, &v, t);
    }
    traj.final_state = v;
    traj.energy_residual = residual;
    traj.dissipated = dissipated;
    Ok(traj)
}

/// State at t0 + duration without diagnostics.
pub fn integrate(
    spec: &EvolutionSpec,
    v0: &SpectralField,
    t0: f64,
    duration: f64,
) -> Result<SpectralField> {
    let dt = spec.params.dt;
    let steps = step_count(duration, dt);
    if steps == 0 {
        return Ok(v0.clone());
    }
    let stepper = Stepper::new(spec.clone(), duration / steps as f64);
    let h = stepper.dt();
    let mut v = v0.clone();
    for n in 0..steps {
        v = stepper.advance(&v, t0 + n as f64 * h, None)?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_grid;
    use rustfft::num_complex::Complex64;
    use std::f64::consts::PI;

    fn params(n: usize, nu: f64, forcing: Option<SpectralField>) -> Arc<SimParams> {
        let g = make_grid(n, 2.0 * PI).unwrap();
        Arc::new(SimParams {
            nu,
            delta: 0.25,
            dt: 1e-3,
            horizon: 1.0,
            forcing: forcing.unwrap_or_else(|| SpectralField::zeros(&g)),
            intensity: SpectralField::random(&g, 3.0, 0.05, 5).unwrap(),
            seed: 1,
            noise_dt: 1e-3,
            force: false,
        })
    }

    #[test]
    fn zero_state_stays_zero() {
        let p = params(16, 1.0, None);
        let z = SpectralField::zeros(p.grid());
        assert_eq!(rhs_deterministic(&z, &p).max_abs_coefficient(), 0.0);
        let spec = EvolutionSpec::deterministic(p.clone()).unwrap();
        let out = step(&z, 0.0, 1e-2, &spec).unwrap();
        assert_eq!(out.max_abs_coefficient(), 0.0);
    }

    #[test]
    fn single_mode_tendency_uses_a1_symbol() {
        let p = params(16, 0.7, None);
        let m = SpectralField::single_mode(p.grid(), 1, 2, Complex64::new(0.2, 0.1)).unwrap();
        let r = rhs_deterministic(&m, &p);
        assert!((&r - &m.scaled(-0.7 * 3.4)).l2_norm() < 1e-13);
        let tg = SpectralField::taylor_green(p.grid(), 1.0);
        let r = rhs_deterministic(&tg, &p);
        assert!((&r - &tg.scaled(-0.7)).l2_norm() < 1e-10);
    }

    #[test]
    fn conjugated_tendencies_reduce_and_agree() {
        let p = params(16, 1.0, Some(SpectralField::random(&make_grid(16, 2.0 * PI).unwrap(), 2.0, 1.0, 9).unwrap()));
        let v = SpectralField::random(p.grid(), 4.0, 1.0, 2).unwrap();
        assert_eq!(rhs_colored_v(&v, 0.0, &p), rhs_deterministic(&v, &p));
        assert_eq!(rhs_white_v(&v, 0.0, &p), rhs_deterministic(&v, &p));
        assert_eq!(rhs_white_v(&v, 0.37, &p), rhs_colored_v(&v, 0.37, &p));

        let mut q = (*p).clone();
        q.forcing = SpectralField::zeros(p.grid());
        let zero = SpectralField::zeros(p.grid());
        let h = &q.intensity;
        let mut expected = nonlinear_term(h).scaled(-1.0);
        expected.axpy(-q.nu, &apply_a1(h));
        expected.axpy(1.0, h);
        assert!((&rhs_white_v(&zero, 1.0, &q) - &expected).l2_norm() < 1e-14);
    }

    #[test]
    fn recover_round_trip() {
        let p = params(16, 1.0, None);
        let v = SpectralField::random(p.grid(), 4.0, 1.0, 2).unwrap();
        let h = &p.intensity;
        assert_eq!(recover_u(&v, 0.0, h), v);
        let zero = SpectralField::zeros(p.grid());
        assert_eq!(recover_u(&zero, 1.0, h), *h);
        let u = recover_u(&v, 0.8, h);
        let back = recover_u(&u, -0.8, h);
        assert!((&back - &v).l2_norm() <= 1e-15 * v.l2_norm());
    }

    #[test]
    fn euler_maruyama_linear_mode() {
        let mut q = (*params(16, 0.5, None)).clone();
        q.intensity = SpectralField::zeros(q.grid());
        let m = SpectralField::single_mode(q.grid(), 1, 2, Complex64::new(1.0, 0.0)).unwrap();
        let dt = 1e-3;
        let out = step_euler_maruyama(&m, 0.0, dt, &q).unwrap();
        assert!((&out - &m.scaled(1.0 - 0.5 * 3.4 * dt)).l2_norm() < 1e-14);
    }

    #[test]
    fn exact_linear_decay() {
        let p = params(16, 1.0, None);
        let m = SpectralField::single_mode(p.grid(), 1, 1, Complex64::new(1.0, 0.0)).unwrap();
        let spec = EvolutionSpec::deterministic(p.clone()).unwrap().without_advection();
        let out = step(&m, 0.0, 0.01, &spec).unwrap();
        let expected = m.scaled((-0.01f64).exp());
        assert!((&out - &expected).l2_norm() <= 1e-14 * m.l2_norm());
    }

    #[test]
    fn noisy_kinds_need_noise() {
        let p = params(16, 1.0, None);
        assert!(EvolutionSpec::new(EvolutionKind::ColoredV, p, None).is_err());
    }

    #[test]
    fn zero_horizon_records_initial_state() {
        let mut q = (*params(16, 1.0, None)).clone();
        q.horizon = 0.0;
        let spec = EvolutionSpec::deterministic(Arc::new(q)).unwrap();
        let v0 = SpectralField::random(spec.params().grid(), 4.0, 1.0, 1).unwrap();
        let traj = simulate(&spec, &v0, 0.0, &RecordPlan::default()).unwrap();
        assert_eq!(traj.records.len(), 1);
        assert_eq!(traj.final_state, v0);
    }

    #[test]
    fn assumption_gate_refuses_strong_noise() {
        let mut q = (*params(16, 1.0, None)).clone();
        q.intensity = q.intensity.scaled(1e3);
        let noise = NoiseSeries::generate(1, q.delta, 0.0, 1.0, 1e-3).unwrap();
        let spec = EvolutionSpec::new(EvolutionKind::ColoredV, Arc::new(q.clone()), Some(Arc::new(noise.clone()))).unwrap();
        let v0 = SpectralField::zeros(q.grid());
        assert!(matches!(
            simulate(&spec, &v0, 0.0, &RecordPlan::default()),
            Err(Error::Assumption { .. })
        ));
        q.force = true;
        q.horizon = 0.01;
        let spec = EvolutionSpec::new(EvolutionKind::ColoredV, Arc::new(q), Some(Arc::new(noise))).unwrap();
        assert!(simulate(&spec, &v0, 0.0, &RecordPlan::default()).is_ok());
    }
}
