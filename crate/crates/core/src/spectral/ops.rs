use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::field::SpectralField;
use super::grid::fft2;

/// Helmholtz-Leray projection onto real, mean-free, divergence-free fields.
///
/// Per mode, u <- u - (k.u) k / |k|^2. The mean mode and the Nyquist row and
/// column are zeroed: the latter have no conjugate partner of opposite sign.
pub fn leray_project(field: &SpectralField) -> SpectralField {
    let grid = field.grid().clone();
    let mut out = field.clone();
    let (a, b) = out.components_mut();
    for idx in 0..grid.len() {
        if idx == 0 || grid.is_nyquist(idx) {
            a[idx] = Complex64::default();
            b[idx] = Complex64::default();
            continue;
        }
        let (kx, ky) = grid.wavevector(idx);
        let k2 = kx * kx + ky * ky;
        let dot = (a[idx] * kx + b[idx] * ky) / k2;
        a[idx] -= dot * kx;
        b[idx] -= dot * ky;
    }
    out
}

/// A^s: multiplies every mode by |k|^{2s}.
pub fn apply_stokes_power(field: &SpectralField, s: f64) -> SpectralField {
    let grid = field.grid().clone();
    field.map_modes(|idx| {
        if idx == 0 {
            return 0.0;
        }
        let (kx, ky) = grid.wavevector(idx);
        (kx * kx + ky * ky).powf(s)
    })
}

/// Symbol of the anisotropic operator on divergence-free modes,
/// (kx^4 + ky^4) / |k|^2.
pub fn a1_symbol(kx: f64, ky: f64) -> f64 {
    let k2 = kx * kx + ky * ky;
    if k2 == 0.0 {
        return 0.0;
    }
    (kx.powi(4) + ky.powi(4)) / k2
}

/// Anisotropic Stokes operator A1 u = -P(d_yy u1, d_xx u2).
pub fn apply_a1(field: &SpectralField) -> SpectralField {
    let grid = field.grid().clone();
    let mut out = field.clone();
    let (a, b) = out.components_mut();
    for idx in 0..grid.len() {
        let (kx, ky) = grid.wavevector(idx);
        a[idx] *= ky * ky;
        b[idx] *= kx * kx;
    }
    leray_project(&out)
}

/// ||A^{s/2} u||, normalized so that s = 0 is the L2 norm over [0, L]^2.
pub fn sobolev_norm(field: &SpectralField, s: f64) -> f64 {
    let grid = field.grid();
    let (a, b) = field.components();
    let sum: f64 = (1..grid.len())
        .map(|idx| {
            let (kx, ky) = grid.wavevector(idx);
            let w = (kx * kx + ky * ky).powf(s);
            w * (a[idx].norm_sqr() + b[idx].norm_sqr())
        })
        .sum();
    grid.length() * sum.sqrt()
}

/// ||d_y u1||^2 + ||d_x u2||^2, the quadratic form of A1.
pub fn anisotropic_dissipation(field: &SpectralField) -> f64 {
    let grid = field.grid();
    let (a, b) = field.components();
    let sum: f64 = (0..grid.len())
        .map(|idx| {
            let (kx, ky) = grid.wavevector(idx);
            ky * ky * a[idx].norm_sqr() + kx * kx * b[idx].norm_sqr()
        })
        .sum();
    grid.length() * grid.length() * sum
}

/// B(u) = P((u.grad) u), evaluated pseudo-spectrally with 2/3-rule dealiasing.
///
/// Both velocity components travel through one complex transform as
/// u1 + i u2, and likewise for each derivative direction.
pub fn nonlinear_term(u: &SpectralField) -> SpectralField {
    let grid = u.grid().clone();
    let len = grid.len();
    let (a, b) = u.components();

    let mut vel = vec![Complex64::default(); len];
    let mut ddx = vec![Complex64::default(); len];
    let mut ddy = vec![Complex64::default(); len];
    let i = Complex64::i();
    for idx in 0..len {
        if grid.is_nyquist(idx) {
            continue;
        }
        let (kx, ky) = grid.wavevector(idx);
        let packed = a[idx] + i * b[idx];
        vel[idx] = packed;
        ddx[idx] = i * kx * packed;
        ddy[idx] = i * ky * packed;
    }
    grid.inverse(&mut vel);
    grid.inverse(&mut ddx);
    grid.inverse(&mut ddy);

    // (u.grad)u for both components, packed as real + i imag
    let mut adv: Vec<Complex64> = vel
        .iter()
        .zip(ddx.iter().zip(&ddy))
        .map(|(v, (dx, dy))| dx * v.re + dy * v.im)
        .collect();
    grid.forward(&mut adv);

    let mut first = vec![Complex64::default(); len];
    let mut second = vec![Complex64::default(); len];
    for idx in 0..len {
        if !grid.is_resolved(idx) {
            continue;
        }
        let f = adv[idx];
        let g = adv[grid.conjugate_index(idx)].conj();
        first[idx] = (f + g) * 0.5;
        second[idx] = (f - g) * Complex64::new(0.0, -0.5);
    }
    let raw = SpectralField::from_coefficients(&grid, first, second)
        .expect("arrays sized from the grid");
    leray_project(&raw)
}

/// Sup over the domain of the Frobenius norm of the velocity gradient,
/// sampled on a grid refined `refine` times per axis by zero padding.
pub fn grad_sup_norm_refined(h: &SpectralField, refine: usize) -> f64 {
    let grid = h.grid();
    let n = grid.n();
    let m = n * refine.max(1);
    let (a, b) = h.components();
    let mut gx = vec![Complex64::default(); m * m];
    let mut gy = vec![Complex64::default(); m * m];
    let i = Complex64::i();
    for idx in 0..grid.len() {
        if grid.is_nyquist(idx) {
            continue;
        }
        let jx = grid.lattice_index(idx / n);
        let jy = grid.lattice_index(idx % n);
        let px = jx.rem_euclid(m as i64) as usize;
        let py = jy.rem_euclid(m as i64) as usize;
        let (kx, ky) = grid.wavevector(idx);
        let packed = a[idx] + i * b[idx];
        gx[px * m + py] = i * kx * packed;
        gy[px * m + py] = i * ky * packed;
    }
    let plan = FftPlanner::new().plan_fft_inverse(m);
    fft2(&mut gx, m, plan.as_ref());
    fft2(&mut gy, m, plan.as_ref());
    let mut peaks: Vec<(f64, usize)> = gx
        .iter()
        .zip(&gy)
        .map(|(x, y)| x.norm_sqr() + y.norm_sqr())
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    peaks.sort_by(|a, b| b.0.total_cmp(&a.0));
    let terms = gradient_terms(h);
    let dx = grid.length() / m as f64;
    peaks
        .iter()
        .take(PEAK_CANDIDATES)
        .map(|&(v, i)| {
            let start = ((i / m) as f64 * dx, (i % m) as f64 * dx);
            polish_peak(&terms, start, v, dx).sqrt()
        })
        .fold(0.0, f64::max)
}

const PEAK_CANDIDATES: usize = 8;

/// Nonzero modes as (kx, ky, u1 coefficient, u2 coefficient).
fn gradient_terms(h: &SpectralField) -> Vec<(f64, f64, Complex64, Complex64)> {
    let grid = h.grid();
    let (a, b) = h.components();
    (0..grid.len())
        .filter(|&idx| !grid.is_nyquist(idx) && (a[idx] != Complex64::default() || b[idx] != Complex64::default()))
        .map(|idx| {
            let (kx, ky) = grid.wavevector(idx);
            (kx, ky, a[idx], b[idx])
        })
        .collect()
}

/// Squared Frobenius norm of the Jacobian at a physical point.
fn jacobian_sq(terms: &[(f64, f64, Complex64, Complex64)], x: f64, y: f64) -> f64 {
    let mut j = [0.0f64; 4];
    for &(kx, ky, a, b) in terms {
        let (s, c) = (kx * x + ky * y).sin_cos();
        // Re(i k c e^{i theta}) = -k (re s + im c)
        let ra = -(a.re * s + a.im * c);
        let rb = -(b.re * s + b.im * c);
        j[0] += kx * ra;
        j[1] += ky * ra;
        j[2] += kx * rb;
        j[3] += ky * rb;
    }
    j.iter().map(|v| v * v).sum()
}

/// Compass search for a local maximum starting from a grid sample.
fn polish_peak(terms: &[(f64, f64, Complex64, Complex64)], start: (f64, f64), value: f64, dx: f64) -> f64 {
    let (mut x, mut y) = start;
    let mut best = jacobian_sq(terms, x, y).max(value);
    let mut step = dx / 2.0;
    while step > dx * 1e-9 {
        let mut moved = false;
        for (sx, sy) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = jacobian_sq(terms, x + sx, y + sy);
            if v > best {
                best = v;
                x += sx;
                y += sy;
                moved = true;
                break;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    best
}

/// [`grad_sup_norm_refined`] at the default 4x oversampling.
pub fn grad_sup_norm(h: &SpectralField) -> f64 {
    grad_sup_norm_refined(h, 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_grid;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gradient_fields_project_to_zero() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        let phi = SpectralField::random_unprojected(&g, 1);
        let mut grad = SpectralField::zeros(&g);
        {
            let src = phi.component(0);
            let (a, b) = grad.components_mut();
            for idx in 0..g.len() {
                let (kx, ky) = g.wavevector(idx);
                a[idx] = Complex64::i() * kx * src[idx];
                b[idx] = Complex64::i() * ky * src[idx];
            }
        }
        let p = leray_project(&grad);
        assert!(p.max_abs_coefficient() < 1e-15 * grad.max_abs_coefficient().max(1.0));
    }

    #[test]
    fn projection_contracts_and_removes_divergence() {
        let g = make_grid(16, 1.0).unwrap();
        let u = SpectralField::random_unprojected(&g, 9);
        let p = leray_project(&u);
        assert!(p.max_divergence() <= 1e-12);
        assert!(p.l2_norm() <= u.l2_norm());
        let pp = leray_project(&p);
        assert!((&pp - &p).l2_norm() <= 1e-15 * p.l2_norm());
    }

    #[test]
    fn stokes_power_on_single_modes() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        let m = SpectralField::single_mode(&g, 1, 0, c(1.0)).unwrap();
        assert_eq!(apply_stokes_power(&m, 1.0), m);
        let m = SpectralField::single_mode(&g, 1, 2, c(1.0)).unwrap();
        let half = apply_stokes_power(&m, 0.5);
        assert!((&half - &m.scaled(5f64.sqrt())).l2_norm() < 1e-14);
        let u = SpectralField::random(&g, 5.0, 1.0, 2).unwrap();
        let back = apply_stokes_power(&apply_stokes_power(&u, 1.3), -1.3);
        assert!((&back - &u).l2_norm() < 1e-14);
    }

    #[test]
    fn a1_on_modes() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        assert!(apply_a1(&SpectralField::zeros(&g)).max_abs_coefficient() == 0.0);
        for ((jx, jy), mu) in [((1, 2), 3.4), ((1, 1), 1.0)] {
            let m = SpectralField::single_mode(&g, jx, jy, c(0.3)).unwrap();
            let out = apply_a1(&m);
            assert!((&out - &m.scaled(mu)).l2_norm() < 1e-13 * m.l2_norm());
        }
    }

    #[test]
    fn sobolev_norm_cases() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        assert_eq!(sobolev_norm(&SpectralField::zeros(&g), 2.0), 0.0);
        let a = 0.4;
        let m = SpectralField::single_mode(&g, 1, 0, c(a)).unwrap();
        let expected = (2.0 * (2.0 * PI).powi(2) * a * a).sqrt();
        assert!((sobolev_norm(&m, 0.0) - expected).abs() < 1e-13);
        let u = SpectralField::random(&g, 5.0, 2.0, 4).unwrap();
        let l1 = g.lambda1();
        assert!(sobolev_norm(&u, 1.0).powi(2) >= l1 * sobolev_norm(&u, 0.0).powi(2));
        assert!((sobolev_norm(&u, 0.0) - u.l2_norm()).abs() < 1e-13);
    }

    #[test]
    fn nonlinear_term_vanishes_on_zero_and_taylor_green() {
        let g = make_grid(32, 2.0 * PI).unwrap();
        assert_eq!(nonlinear_term(&SpectralField::zeros(&g)).max_abs_coefficient(), 0.0);
        let tg = SpectralField::taylor_green(&g, 1.0);
        assert!(nonlinear_term(&tg).max_abs_coefficient() < 1e-10);
    }

    #[test]
    fn grad_sup_of_shear() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        assert_eq!(grad_sup_norm(&SpectralField::zeros(&g)), 0.0);
        // (sin y, 0): k = (0, 1) direction is (-1, 0), amplitude i/2 gives sin y
        let h = SpectralField::single_mode(&g, 0, 1, Complex64::new(0.0, 0.5)).unwrap();
        let (u, v) = h.to_physical();
        assert!(v.iter().all(|x| x.abs() < 1e-14));
        assert!((u[1] - (2.0 * PI / 16.0).sin()).abs() < 1e-14);
        assert!((grad_sup_norm(&h) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn grad_sup_refinement_converges() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        let h = SpectralField::random(&g, 4.0, 1.0, 11).unwrap();
        let g4 = grad_sup_norm_refined(&h, 4);
        let g8 = grad_sup_norm_refined(&h, 8);
        assert!((g4 - g8).abs() / g8 < 1e-12, "{g4} vs {g8}");
    }
}
