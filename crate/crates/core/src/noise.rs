//! Two-sided Wiener paths and the scalar processes derived from them:
//! colored noise (rate 1/delta OU), its unit-rate smoothing `y`, and the
//! unit-rate OU process `z`.
//!
//! Every process is driven by the same increments. The exact OU updates use
//! the increment itself, rescaled to the exact one-step variance, so `y` and
//! `z` remain pathwise comparable as delta shrinks.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Largest number of increments a single path may hold.
pub const MAX_PATH_STEPS: u64 = 100_000_000;

/// Discarded pre-history before the start of a noise series.
pub fn burn_in(delta: f64) -> f64 {
    10.0 * delta.max(1.0)
}

/// Wiener increments on the lattice t_n = n dt, keyed by `(seed, n)`.
///
/// Increment `n` covers [t_n, t_{n+1}]. Because each increment is drawn from
/// a fixed position of a counter-based stream, widening the window never
/// changes increments already present.
#[derive(Debug, Clone, PartialEq)]
pub struct WienerPath {
    seed: u64,
    dt: f64,
    first: i64,
    increments: Vec<f64>,
}

// Offset so negative step indices map to valid stream positions.
const INDEX_BIAS: i128 = 1 << 62;

fn stream_position(n: i64) -> u128 {
    // four 32-bit words per sample (two u64 draws)
    ((n as i128 + INDEX_BIAS) as u128) * 4
}

fn box_muller(a: u64, b: u64) -> f64 {
    let u1 = ((a >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    let u2 = (b >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

impl WienerPath {
    /// Samples the increments covering [t0, t1].
    pub fn sample(seed: u64, t0: f64, t1: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::config("time.noise_dt", "must be positive"));
        }
        if !(t0 < t1) {
            return Err(Error::Precondition(format!(
                "noise window [{t0}, {t1}] is empty"
            )));
        }
        let steps = ((t1 - t0) / dt).ceil();
        if steps > MAX_PATH_STEPS as f64 {
            return Err(Error::Resource(format!(
                "noise window needs {steps:.0} steps (limit {MAX_PATH_STEPS})"
            )));
        }
        let first = (t0 / dt + 1e-9).floor() as i64;
        let last = (t1 / dt - 1e-9).ceil() as i64;
        let len = (last - first) as usize;
        let sd = dt.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(stream_position(first));
        let increments = (0..len)
            .map(|_| {
                let a = rng.next_u64();
                let b = rng.next_u64();
                sd * box_muller(a, b)
            })
            .collect();
        Ok(WienerPath {
            seed,
            dt,
            first,
            increments,
        })
    }

    /// Path from explicit increments, starting at step index `first`.
    pub fn from_increments(dt: f64, first: i64, increments: Vec<f64>) -> Self {
        WienerPath {
            seed: 0,
            dt,
            first,
            increments,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn first_index(&self) -> i64 {
        self.first
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    /// Number of lattice points, one more than the increment count.
    pub fn points(&self) -> usize {
        self.increments.len() + 1
    }

    pub fn start(&self) -> f64 {
        self.first as f64 * self.dt
    }

    pub fn end(&self) -> f64 {
        (self.first + self.increments.len() as i64) as f64 * self.dt
    }

    pub fn time(&self, point: usize) -> f64 {
        (self.first + point as i64) as f64 * self.dt
    }

    /// Increment for absolute step index `n`, if inside the window.
    pub fn increment_at(&self, n: i64) -> Option<f64> {
        let k = n.checked_sub(self.first)?;
        usize::try_from(k).ok().and_then(|k| self.increments.get(k).copied())
    }

    /// Path on the lattice of step `factor * dt`, summing consecutive increments.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 || self.first % factor as i64 != 0 {
            return Err(Error::Precondition(format!(
                "cannot coarsen path starting at step {} by {factor}",
                self.first
            )));
        }
        let increments = self
            .increments
            .chunks_exact(factor)
            .map(|c| c.iter().sum())
            .collect();
        Ok(WienerPath {
            seed: self.seed,
            dt: self.dt * factor as f64,
            first: self.first / factor as i64,
            increments,
        })
    }

    /// SHA-256 over seed, step, window and increments, as lowercase hex.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update(self.dt.to_bits().to_le_bytes());
        h.update(self.first.to_le_bytes());
        for x in &self.increments {
            h.update(x.to_bits().to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// Colored noise by the exact OU recursion
/// zeta_{n+1} = e^{-dt/delta} zeta_n + c dW_n, c^2 = (1 - e^{-2dt/delta}) / (2 delta dt).
pub fn colored_noise(path: &WienerPath, delta: f64, zeta0: f64) -> Result<Vec<f64>> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::config(
            "physics.delta",
            format!("must lie in (0, 1], got {delta}"),
        ));
    }
    let dt = path.dt();
    let decay = (-dt / delta).exp();
    let gain = (-(-2.0 * dt / delta).exp_m1() / (2.0 * delta * dt)).sqrt();
    Ok(ou_recursion(path.increments(), decay, gain, zeta0))
}

/// Unit-rate OU process dz = -z dt + dW by the same exact recursion.
pub fn z_process(path: &WienerPath, z0: f64) -> Vec<f64> {
    let dt = path.dt();
    let decay = (-dt).exp();
    let gain = (-(-2.0 * dt).exp_m1() / (2.0 * dt)).sqrt();
    ou_recursion(path.increments(), decay, gain, z0)
}

fn ou_recursion(increments: &[f64], decay: f64, gain: f64, x0: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(increments.len() + 1);
    let mut x = x0;
    out.push(x);
    for dw in increments {
        x = decay * x + gain * dw;
        out.push(x);
    }
    out
}

/// Solves dy/dt = -y + zeta exactly for piecewise-linear zeta on a uniform
/// step `dt`, starting from `y0`.
pub fn y_process(zeta: &[f64], dt: f64, y0: f64) -> Vec<f64> {
    let decay = (-dt).exp();
    // int_0^dt e^{-(dt-s)} ds and int_0^dt e^{-(dt-s)} s/dt ds
    let a = -(-dt).exp_m1();
    let slope = (dt + (-dt).exp_m1()) / dt;
    let mut out = Vec::with_capacity(zeta.len());
    let mut y = y0;
    out.push(y);
    for w in zeta.windows(2) {
        y = decay * y + w[0] * (a - slope) + w[1] * slope;
        out.push(y);
    }
    out
}

/// Time-aligned samples of zeta_delta, y_delta and z on a window.
#[derive(Debug, Clone)]
pub struct NoiseSeries {
    delta: f64,
    dt: f64,
    first: i64,
    times: Vec<f64>,
    zeta: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
    increments: Vec<f64>,
    checksum: String,
}

impl NoiseSeries {
    /// Builds the series on [start, path end], running every recursion from
    /// the beginning of `path` (zero initial data) as burn-in.
    pub fn from_path(path: &WienerPath, delta: f64, start: f64) -> Result<Self> {
        let burn = burn_in(delta);
        if start - path.start() < burn - 1e-9 {
            return Err(Error::Precondition(format!(
                "path starts at {} but series at {start} needs {burn} units of burn-in",
                path.start()
            )));
        }
        let skip = ((start - path.start()) / path.dt()).round() as usize;
        if skip >= path.points() {
            return Err(Error::Precondition("series start beyond path end".into()));
        }
        let zeta = colored_noise(path, delta, 0.0)?;
        let y = y_process(&zeta, path.dt(), 0.0);
        let z = z_process(path, 0.0);
        Ok(NoiseSeries {
            delta,
            dt: path.dt(),
            first: path.first_index() + skip as i64,
            times: (skip..path.points()).map(|p| path.time(p)).collect(),
            zeta: zeta[skip..].to_vec(),
            y: y[skip..].to_vec(),
            z: z[skip..].to_vec(),
            increments: path.increments()[skip..].to_vec(),
            checksum: path.checksum(),
        })
    }

    /// Samples a path with burn-in and builds the series on [t0, t1].
    pub fn generate(seed: u64, delta: f64, t0: f64, t1: f64, dt: f64) -> Result<Self> {
        let path = WienerPath::sample(seed, t0 - burn_in(delta), t1, dt)?;
        Self::from_path(&path, delta, t0)
    }

    /// Same series with `y` replaced by `z`; used as a zero-distance control.
    pub fn with_y_as_z(&self) -> Self {
        let mut out = self.clone();
        out.y = out.z.clone();
        out
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn zeta(&self) -> &[f64] {
        &self.zeta
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    /// Wiener increments between consecutive sample times.
    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    /// Checksum of the driving path.
    pub fn path_checksum(&self) -> &str {
        &self.checksum
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.times[0]
    }

    pub fn end(&self) -> f64 {
        *self.times.last().expect("series is never empty")
    }

    fn locate(&self, t: f64) -> Result<(usize, f64)> {
        let pos = t / self.dt - self.first as f64;
        let last = (self.len() - 1) as f64;
        if !(-1e-6..=last + 1e-6).contains(&pos) {
            return Err(Error::NoiseWindow {
                time: t,
                start: self.start(),
                end: self.end(),
            });
        }
        let pos = pos.clamp(0.0, last);
        let i = (pos.floor() as usize).min(self.len().saturating_sub(2));
        Ok((i, pos - i as f64))
    }

    fn interpolate(&self, data: &[f64], t: f64) -> Result<f64> {
        if self.len() == 1 {
            return self.locate(t).map(|_| data[0]);
        }
        let (i, w) = self.locate(t)?;
        Ok(data[i] + w * (data[i + 1] - data[i]))
    }

    /// y_delta at time `t` by linear interpolation.
    pub fn y_at(&self, t: f64) -> Result<f64> {
        self.interpolate(&self.y, t)
    }

    /// z at time `t` by linear interpolation.
    pub fn z_at(&self, t: f64) -> Result<f64> {
        self.interpolate(&self.z, t)
    }

    /// Sum of Wiener increments over [t, t + dt]; both ends must lie on the
    /// sample lattice.
    pub fn increment_between(&self, t: f64, dt: f64) -> Result<f64> {
        let a = t / self.dt - self.first as f64;
        let steps = dt / self.dt;
        let (ai, si) = (a.round(), steps.round());
        if (a - ai).abs() > 1e-6 || (steps - si).abs() > 1e-6 || ai < 0.0 {
            return Err(Error::Precondition(format!(
                "interval [{t}, {}] is not aligned with the noise lattice (dt = {})",
                t + dt,
                self.dt
            )));
        }
        let (ai, si) = (ai as usize, si as usize);
        if ai + si > self.increments.len() {
            return Err(Error::NoiseWindow {
                time: t + dt,
                start: self.start(),
                end: self.end(),
            });
        }
        Ok(self.increments[ai..ai + si].iter().sum())
    }
}

/// Time average of |x|^m over `range` of sample indices.
pub fn moment_estimate(series: &[f64], m: f64, range: std::ops::Range<usize>) -> Result<f64> {
    if m < 1.0 {
        return Err(Error::Precondition(format!("moment order {m} < 1")));
    }
    if range.is_empty() || range.end > series.len() {
        return Err(Error::Precondition(format!(
            "moment window {range:?} is empty or outside a series of length {}",
            series.len()
        )));
    }
    let n = range.len() as f64;
    Ok(series[range].iter().map(|x| x.abs().powf(m)).sum::<f64>() / n)
}

/// Stationary moment E|X|^m of a centered Gaussian with variance 1/(2 delta),
/// Gamma((1+m)/2) / sqrt(pi delta^m).
pub fn colored_noise_moment(m: f64, delta: f64) -> f64 {
    gamma((1.0 + m) / 2.0) / (std::f64::consts::PI * delta.powf(m)).sqrt()
}

/// Stationary variance of y_delta, 1 / (2 (1 + delta)).
pub fn y_stationary_variance(delta: f64) -> f64 {
    1.0 / (2.0 * (1.0 + delta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConvergenceRow {
    pub delta: f64,
    pub sup_diff: f64,
    pub time_of_sup: f64,
}

/// sup over [0, horizon] of |y_delta - z| for each delta, on one shared path.
pub fn noise_convergence(
    path: &WienerPath,
    deltas: &[f64],
    horizon: f64,
) -> Result<Vec<NoiseConvergenceRow>> {
    deltas
        .iter()
        .map(|&delta| {
            if delta > 0.5 {
                return Err(Error::Precondition(format!(
                    "noise convergence needs delta <= 1/2, got {delta}"
                )));
            }
            let series = NoiseSeries::from_path(path, delta, 0.0)?;
            let mut best = NoiseConvergenceRow {
                delta,
                sup_diff: -1.0,
                time_of_sup: 0.0,
            };
            for ((t, y), z) in series.times().iter().zip(series.y()).zip(series.z()) {
                if *t > horizon + 1e-9 {
                    break;
                }
                let d = (y - z).abs();
                if d > best.sup_diff {
                    best.sup_diff = d;
                    best.time_of_sup = *t;
                }
            }
            Ok(best)
        })
        .collect()
}
