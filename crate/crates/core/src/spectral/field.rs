use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;

use super::grid::Grid;
use super::ops::leray_project;
use crate::error::{Error, Invariant, Result};

/// Two-component real velocity field held as Fourier coefficients.
///
/// Nothing here enforces the field invariants on construction; operators
/// that need them project, and [`SpectralField::validate`] checks them.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Arc<Grid>,
    coeffs: [Vec<Complex64>; 2],
}

impl PartialEq for SpectralField {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid && self.coeffs == other.coeffs
    }
}

/// Unit divergence-free direction (-ky, kx)/|k| at a wavevector.
pub(crate) fn solenoidal_direction(kx: f64, ky: f64) -> (f64, f64) {
    let k = kx.hypot(ky);
    (-ky / k, kx / k)
}

impl SpectralField {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        let len = grid.len();
        SpectralField {
            grid: grid.clone(),
            coeffs: [vec![Complex64::default(); len], vec![Complex64::default(); len]],
        }
    }

    /// Wraps raw coefficient arrays (FFT order, see [`Grid`]).
    pub fn from_coefficients(
        grid: &Arc<Grid>,
        first: Vec<Complex64>,
        second: Vec<Complex64>,
    ) -> Result<Self> {
        if first.len() != grid.len() || second.len() != grid.len() {
            return Err(Error::Precondition(format!(
                "coefficient arrays must have {} entries",
                grid.len()
            )));
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs: [first, second],
        })
    }

    /// Transforms physical samples `u[ix * N + iy] = u(x_ix, y_iy)`.
    pub fn from_physical(grid: &Arc<Grid>, first: &[f64], second: &[f64]) -> Self {
        let mut packed: Vec<Complex64> = first
            .iter()
            .zip(second)
            .map(|(a, b)| Complex64::new(*a, *b))
            .collect();
        grid.forward(&mut packed);
        let mut out = SpectralField::zeros(grid);
        for idx in 0..grid.len() {
            let f = packed[idx];
            let g = packed[grid.conjugate_index(idx)].conj();
            out.coeffs[0][idx] = (f + g) * 0.5;
            out.coeffs[1][idx] = (f - g) * Complex64::new(0.0, -0.5);
        }
        out
    }

    /// Samples the field on the physical grid, returning both components.
    pub fn to_physical(&self) -> (Vec<f64>, Vec<f64>) {
        let mut packed: Vec<Complex64> = self.coeffs[0]
            .iter()
            .zip(&self.coeffs[1])
            .map(|(a, b)| a + Complex64::i() * b)
            .collect();
        self.grid.inverse(&mut packed);
        (
            packed.iter().map(|c| c.re).collect(),
            packed.iter().map(|c| c.im).collect(),
        )
    }

    /// Divergence-free mode pair at lattice index `(jx, jy)` with complex
    /// amplitude `amp` along (-ky, kx)/|k|; the mirrored mode gets the conjugate.
    pub fn single_mode(grid: &Arc<Grid>, jx: i64, jy: i64, amp: Complex64) -> Result<Self> {
        let mut f = SpectralField::zeros(grid);
        f.add_mode(jx, jy, amp)?;
        Ok(f)
    }

    /// Adds a divergence-free mode pair, see [`SpectralField::single_mode`].
    pub fn add_mode(&mut self, jx: i64, jy: i64, amp: Complex64) -> Result<()> {
        let grid = self.grid.clone();
        let idx = grid
            .mode_index(jx, jy)
            .filter(|i| *i != 0 && !grid.is_nyquist(*i))
            .ok_or_else(|| {
                Error::Precondition(format!("mode ({jx}, {jy}) not representable on this grid"))
            })?;
        let (kx, ky) = grid.wavevector(idx);
        let (ex, ey) = solenoidal_direction(kx, ky);
        let conj = grid.conjugate_index(idx);
        self.coeffs[0][idx] += amp * ex;
        self.coeffs[1][idx] += amp * ey;
        self.coeffs[0][conj] += amp.conj() * ex;
        self.coeffs[1][conj] += amp.conj() * ey;
        Ok(())
    }

    /// Random divergence-free field supported on resolved modes with
    /// 0 < |j| <= `bandlimit`, scaled to the given L2 norm.
    pub fn random(grid: &Arc<Grid>, bandlimit: f64, norm: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = SpectralField::zeros(grid);
        let mut any = false;
        for idx in 0..grid.len() {
            let jx = grid.lattice_index(idx / grid.n());
            let jy = grid.lattice_index(idx % grid.n());
            let upper_half = jx > 0 || (jx == 0 && jy > 0);
            let r2 = (jx * jx + jy * jy) as f64;
            if !upper_half || r2 > bandlimit * bandlimit || !grid.is_resolved(idx) {
                continue;
            }
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            f.add_mode(jx, jy, Complex64::new(re, im))?;
            any = true;
        }
        if !any {
            return Err(Error::Precondition(format!(
                "bandlimit {bandlimit} selects no resolved modes"
            )));
        }
        let current = f.l2_norm();
        Ok(f.scaled(norm / current))
    }

    /// Random real (conjugate-symmetric, zero-mean) field that is generally
    /// not divergence-free. Supported on resolved modes.
    pub fn random_unprojected(grid: &Arc<Grid>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = SpectralField::zeros(grid);
        for idx in 0..grid.len() {
            let conj = grid.conjugate_index(idx);
            if idx == 0 || grid.is_nyquist(idx) || !grid.is_resolved(idx) || conj < idx {
                continue;
            }
            for c in 0..2 {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                let z = Complex64::new(re, im);
                f.coeffs[c][idx] = z;
                f.coeffs[c][conj] = z.conj();
            }
        }
        let n = f.l2_norm();
        f.scaled(1.0 / n)
    }

    /// Taylor-Green vortex (sin x cos y, -cos x sin y) in units of the box,
    /// i.e. with x scaled by 2 pi / L.
    pub fn taylor_green(grid: &Arc<Grid>, amplitude: f64) -> Self {
        let n = grid.n();
        let h = 2.0 * std::f64::consts::PI / n as f64;
        let mut u = vec![0.0; n * n];
        let mut v = vec![0.0; n * n];
        for ix in 0..n {
            for iy in 0..n {
                let (x, y) = (ix as f64 * h, iy as f64 * h);
                u[ix * n + iy] = amplitude * x.sin() * y.cos();
                v[ix * n + iy] = -amplitude * x.cos() * y.sin();
            }
        }
        leray_project(&SpectralField::from_physical(grid, &u, &v))
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.coeffs[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [Complex64] {
        &mut self.coeffs[c]
    }

    pub fn components(&self) -> (&[Complex64], &[Complex64]) {
        (&self.coeffs[0], &self.coeffs[1])
    }

    pub fn components_mut(&mut self) -> (&mut [Complex64], &mut [Complex64]) {
        let [a, b] = &mut self.coeffs;
        (a, b)
    }

    /// Coefficient pair at lattice index `(jx, jy)`.
    pub fn mode(&self, jx: i64, jy: i64) -> Option<(Complex64, Complex64)> {
        let idx = self.grid.mode_index(jx, jy)?;
        Some((self.coeffs[0][idx], self.coeffs[1][idx]))
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.scale(a);
        out
    }

    pub fn scale(&mut self, a: f64) {
        for c in &mut self.coeffs {
            c.iter_mut().for_each(|z| *z *= a);
        }
    }

    /// self += a * x
    pub fn axpy(&mut self, a: f64, x: &SpectralField) {
        debug_assert!(self.grid == x.grid);
        for (dst, src) in self.coeffs.iter_mut().zip(&x.coeffs) {
            dst.iter_mut().zip(src).for_each(|(d, s)| *d += s * a);
        }
    }

    /// Per-mode multiplication of both components by a real symbol.
    pub fn map_modes(&self, mut symbol: impl FnMut(usize) -> f64) -> Self {
        let mut out = self.clone();
        for idx in 0..self.grid.len() {
            let m = symbol(idx);
            out.coeffs[0][idx] *= m;
            out.coeffs[1][idx] *= m;
        }
        out
    }

    /// L2 inner product over [0, L]^2.
    pub fn inner(&self, other: &SpectralField) -> f64 {
        let l2 = self.grid.length() * self.grid.length();
        let s: f64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .flat_map(|(a, b)| a.iter().zip(b))
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        l2 * s
    }

    pub fn l2_norm(&self) -> f64 {
        self.inner(self).max(0.0).sqrt()
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .fold(0.0f64, |m, z| {
                let a = z.norm();
                // f64::max would swallow NaN
                if a.is_nan() || m.is_nan() { f64::NAN } else { m.max(a) }
            })
    }

    /// Largest per-mode divergence, |k.u(k)| / max(1, |u(k)||k|).
    pub fn max_divergence(&self) -> f64 {
        (0..self.grid.len())
            .map(|idx| {
                let (kx, ky) = self.grid.wavevector(idx);
                let (a, b) = (self.coeffs[0][idx], self.coeffs[1][idx]);
                let div = (a * kx + b * ky).norm();
                let scale = (a.norm_sqr() + b.norm_sqr()).sqrt() * kx.hypot(ky);
                div / scale.max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Checks finiteness, zero mean, conjugate symmetry and divergence-freeness.
    pub fn validate(&self) -> Result<()> {
        let tol = 1e-12;
        if self.coeffs.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvariantViolation(Invariant::Finite));
        }
        let scale = self.max_abs_coefficient().max(1.0);
        if self.coeffs.iter().any(|c| c[0].norm() > tol * scale) {
            return Err(Error::InvariantViolation(Invariant::ZeroMean));
        }
        for c in &self.coeffs {
            for idx in 0..self.grid.len() {
                let mirror = c[self.grid.conjugate_index(idx)].conj();
                if (c[idx] - mirror).norm() > tol * scale {
                    return Err(Error::InvariantViolation(Invariant::ConjugateSymmetry));
                }
            }
        }
        if self.max_divergence() > tol {
            return Err(Error::InvariantViolation(Invariant::DivergenceFree));
        }
        Ok(())
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        out
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        out
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, a: f64) -> SpectralField {
        self.scaled(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_grid;
    use std::f64::consts::PI;

    #[test]
    fn physical_round_trip_is_real() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        let f = SpectralField::random(&g, 5.0, 1.0, 3).unwrap();
        let (u, v) = f.to_physical();
        let back = SpectralField::from_physical(&g, &u, &v);
        assert!((&back - &f).l2_norm() < 1e-13);
        f.validate().unwrap();
    }

    #[test]
    fn parseval_on_single_pair() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let a = 0.7;
        let f = SpectralField::single_mode(&g, 1, 0, Complex64::new(a, 0.0)).unwrap();
        let expected = (2.0 * (2.0 * PI).powi(2) * a * a).sqrt();
        assert!((f.l2_norm() - expected).abs() < 1e-13);
        // direction for k = (1, 0) is (0, 1): f = (0, 2a cos x)
        let (u, v) = f.to_physical();
        assert!(u.iter().all(|x| x.abs() < 1e-14));
        assert!((v[0] - 2.0 * a).abs() < 1e-14);
    }

    #[test]
    fn taylor_green_is_a_single_shell() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        let tg = SpectralField::taylor_green(&g, 1.0);
        tg.validate().unwrap();
        let (a, b) = tg.mode(1, 1).unwrap();
        // sin x cos y -> coefficient -i/4 at (1, 1)
        assert!((a - Complex64::new(0.0, -0.25)).norm() < 1e-14);
        assert!((b - Complex64::new(0.0, 0.25)).norm() < 1e-14);
    }

    #[test]
    fn random_rejects_empty_band() {
        let g = make_grid(8, 1.0).unwrap();
        assert!(SpectralField::random(&g, 0.5, 1.0, 0).is_err());
    }

    #[test]
    fn validate_flags_mean_mode() {
        let g = make_grid(8, 1.0).unwrap();
        let mut f = SpectralField::zeros(&g);
        f.component_mut(0)[0] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            f.validate(),
            Err(Error::InvariantViolation(Invariant::ZeroMean))
        ));
    }

    #[test]
    fn max_abs_coefficient_keeps_nan() {
        let g = make_grid(8, 1.0).unwrap();
        let mut f = SpectralField::zeros(&g);
        f.component_mut(0)[1] = Complex64::new(f64::NAN, 0.0);
        f.component_mut(1)[2] = Complex64::new(3.0, 0.0);
        assert!(f.max_abs_coefficient().is_nan());
    }
}
