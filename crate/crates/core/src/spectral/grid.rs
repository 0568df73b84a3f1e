use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Periodic N x N lattice on the square [0, L)^2.
///
/// Spectral arrays are stored in FFT order: array index `i` holds lattice
/// index `j = i` for `i < N/2` and `j = i - N` otherwise. Two-dimensional
/// arrays are row-major with the x index outermost: `data[ix * N + iy]`.
pub struct Grid {
    n: usize,
    length: f64,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.length.to_bits() == other.length.to_bits()
    }
}

/// Builds a grid with `n` modes per axis on a period of `length`.
pub fn make_grid(n: usize, length: f64) -> Result<Arc<Grid>> {
    if !n.is_multiple_of(2) || !(8..=1024).contains(&n) {
        return Err(Error::config(
            "grid.N",
            format!("must be even and in [8, 1024], got {n}"),
        ));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::config(
            "grid.L",
            format!("must be positive, got {length}"),
        ));
    }
    let mut planner = FftPlanner::new();
    let wavenumbers = (0..n)
        .map(|i| 2.0 * PI * lattice_index(i, n) as f64 / length)
        .collect();
    Ok(Arc::new(Grid {
        n,
        length,
        wavenumbers,
        forward: planner.plan_fft_forward(n),
        inverse: planner.plan_fft_inverse(n),
    }))
}

pub(crate) fn lattice_index(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

impl Grid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    /// First eigenvalue of the Stokes operator, 4 pi^2 / L^2.
    pub fn lambda1(&self) -> f64 {
        let k = 2.0 * PI / self.length;
        k * k
    }

    /// Physical wavenumber for FFT-ordered index `i`.
    pub fn wavenumber(&self, i: usize) -> f64 {
        self.wavenumbers[i]
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn lattice_index(&self, i: usize) -> i64 {
        lattice_index(i, self.n)
    }

    /// FFT-ordered array index for lattice index `j`, or `None` if out of range.
    pub fn array_index(&self, j: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if j < -half || j >= half {
            return None;
        }
        Some(if j >= 0 { j as usize } else { (j + self.n as i64) as usize })
    }

    /// Flat index of the mode `(jx, jy)`.
    pub fn mode_index(&self, jx: i64, jy: i64) -> Option<usize> {
        Some(self.array_index(jx)? * self.n + self.array_index(jy)?)
    }

    /// Flat index of the mode mirrored through the origin.
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let (ix, iy) = (idx / self.n, idx % self.n);
        ((self.n - ix) % self.n) * self.n + (self.n - iy) % self.n
    }

    /// Wavevector (kx, ky) at flat index `idx`.
    pub fn wavevector(&self, idx: usize) -> (f64, f64) {
        (
            self.wavenumbers[idx / self.n],
            self.wavenumbers[idx % self.n],
        )
    }

    pub fn is_nyquist(&self, idx: usize) -> bool {
        let half = self.n / 2;
        idx / self.n == half || idx % self.n == half
    }

    /// Whether the mode survives the 2/3-rule truncation (3|j| < N on both axes).
    pub fn is_resolved(&self, idx: usize) -> bool {
        let n = self.n as i64;
        let jx = self.lattice_index(idx / self.n);
        let jy = self.lattice_index(idx % self.n);
        3 * jx.abs() < n && 3 * jy.abs() < n
    }

    /// Forward transform: physical samples to coefficients of sum_j c_j e^{i k.x}.
    pub fn forward(&self, data: &mut [Complex64]) {
        fft2(data, self.n, self.forward.as_ref());
        let scale = 1.0 / (self.n * self.n) as f64;
        data.iter_mut().for_each(|c| *c *= scale);
    }

    /// Inverse transform: coefficients to physical samples.
    pub fn inverse(&self, data: &mut [Complex64]) {
        fft2(data, self.n, self.inverse.as_ref());
    }
}

/// Unnormalized 2D transform of a square row-major array.
pub(crate) fn fft2(data: &mut [Complex64], n: usize, fft: &dyn Fft<f64>) {
    debug_assert_eq!(data.len(), n * n);
    fft.process(data);
    transpose(data, n);
    fft.process(data);
    transpose(data, n);
}

fn transpose(data: &mut [Complex64], n: usize) {
    for r in 0..n {
        for c in r + 1..n {
            data.swap(r * n + c, c * n + r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_wavenumbers_on_two_pi() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let ks: Vec<i64> = (0..8).map(|i| g.wavenumber(i).round() as i64).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        for i in 0..8 {
            assert_eq!(g.wavenumber(i), g.lattice_index(i) as f64);
        }
    }

    #[test]
    fn smallest_wavenumber_on_unit_box() {
        let g = make_grid(64, 1.0).unwrap();
        let min = g
            .wavenumbers()
            .iter()
            .filter(|k| **k != 0.0)
            .fold(f64::INFINITY, |m, k| m.min(k.abs()));
        assert_eq!(min, 2.0 * PI);
        assert!((g.lambda1() - 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(make_grid(7, 1.0).is_err());
        assert!(make_grid(6, 1.0).is_err());
        assert!(make_grid(2048, 1.0).is_err());
        assert!(make_grid(8, 0.0).is_err());
        assert!(make_grid(8, -1.0).is_err());
    }

    #[test]
    fn transform_round_trip() {
        let g = make_grid(16, 1.0).unwrap();
        let orig: Vec<Complex64> = (0..256)
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut data = orig.clone();
        g.forward(&mut data);
        g.inverse(&mut data);
        for (a, b) in orig.iter().zip(&data) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn index_maps() {
        let g = make_grid(8, 1.0).unwrap();
        let idx = g.mode_index(1, -2).unwrap();
        assert_eq!(g.conjugate_index(idx), g.mode_index(-1, 2).unwrap());
        assert_eq!(g.array_index(4), None);
        assert!(g.is_nyquist(g.mode_index(-4, 0).unwrap()));
        assert!(g.is_resolved(g.mode_index(2, -2).unwrap()));
        assert!(!g.is_resolved(g.mode_index(3, 0).unwrap()));
    }
}
