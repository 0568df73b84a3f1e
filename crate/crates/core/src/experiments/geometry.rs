use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::SpectralField;

/// Coefficients weighted so that Euclidean distance equals the H^s distance.
fn embed(fields: &[SpectralField], s: f64) -> Result<Vec<Vec<Complex64>>> {
    let Some(first) = fields.first() else {
        return Ok(Vec::new());
    };
    let grid = first.grid().clone();
    if fields.iter().any(|f| f.grid() != &grid) {
        return Err(Error::Precondition("ensemble members live on different grids".into()));
    }
    let weights: Vec<f64> = (0..grid.len())
        .map(|idx| {
            if idx == 0 {
                return 0.0;
            }
            let (kx, ky) = grid.wavevector(idx);
            grid.length() * (kx * kx + ky * ky).powf(s / 2.0)
        })
        .collect();
    Ok(fields
        .iter()
        .map(|f| {
            let (a, b) = f.components();
            a.iter()
                .zip(&weights)
                .map(|(z, w)| z * w)
                .chain(b.iter().zip(&weights).map(|(z, w)| z * w))
                .collect()
        })
        .collect())
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// dist(A, B) = sup_{a in A} inf_{b in B} ||a - b||_{H^s}.
pub fn hausdorff_semidist(a: &[SpectralField], b: &[SpectralField], s: f64) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("Hausdorff semi-distance of an empty ensemble".into()));
    }
    if a[0].grid() != b[0].grid() {
        return Err(Error::Precondition("ensembles live on different grids".into()));
    }
    let ea = embed(a, s)?;
    let eb = embed(b, s)?;
    Ok(ea
        .iter()
        .map(|x| eb.iter().map(|y| distance(x, y)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

/// Largest pairwise H^s distance.
pub fn diameter(members: &[SpectralField], s: f64) -> Result<f64> {
    let e = embed(members, s)?;
    let mut d = 0.0f64;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            d = d.max(distance(&e[i], &e[j]));
        }
    }
    Ok(d)
}

/// Box-counting estimate: slope of log N(eps) against -log eps.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDimension {
    pub slope: f64,
    pub r_squared: f64,
    /// Cover counts, one per rung of the ladder.
    pub counts: Vec<usize>,
}

/// Minimum members for a box-counting estimate.
pub const MIN_BOX_MEMBERS: usize = 32;

/// Box-counting dimension from farthest-point greedy eps-nets, seeded at
/// member 0, and a least-squares log-log fit.
pub fn box_counting_dim(members: &[SpectralField], s: f64, ladder: &[f64]) -> Result<BoxDimension> {
    let degenerate = BoxDimension {
        slope: 0.0,
        r_squared: 1.0,
        counts: vec![1; ladder.len()],
    };
    if members.len() <= 1 {
        return Ok(degenerate);
    }
    let e = embed(members, s)?;
    let m = e.len();
    let mut dist = vec![0.0; m * m];
    for i in 0..m {
        for j in i + 1..m {
            let d = distance(&e[i], &e[j]);
            dist[i * m + j] = d;
            dist[j * m + i] = d;
        }
    }
    if dist.iter().all(|d| *d == 0.0) {
        return Ok(degenerate);
    }
    if m < MIN_BOX_MEMBERS {
        return Err(Error::Precondition(format!(
            "box counting needs at least {MIN_BOX_MEMBERS} members, got {m}"
        )));
    }
    if ladder.len() < 4 || ladder.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::Precondition("eps ladder needs at least 4 positive rungs".into()));
    }
    let ratio = ladder[1] / ladder[0];
    if ladder
        .windows(2)
        .any(|w| ((w[1] / w[0]) - ratio).abs() > 1e-6 * ratio.abs())
    {
        return Err(Error::Precondition("eps ladder must be geometric".into()));
    }

    let counts: Vec<usize> = ladder
        .iter()
        .map(|&eps| {
            let mut nearest: Vec<f64> = dist[..m].to_vec();
            let mut count = 1;
            loop {
                let (far, d) = nearest
                    .iter()
                    .enumerate()
                    .fold((0, 0.0), |(bi, bd), (i, d)| if *d > bd { (i, *d) } else { (bi, bd) });
                if d <= eps {
                    break count;
                }
                count += 1;
                for (i, n) in nearest.iter_mut().enumerate() {
                    *n = n.min(dist[far * m + i]);
                }
            }
        })
        .collect();

    let xs: Vec<f64> = ladder.iter().map(|e| -e.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|c| (*c as f64).ln()).collect();
    let (slope, r_squared) = least_squares(&xs, &ys);
    Ok(BoxDimension {
        slope,
        r_squared,
        counts,
    })
}

/// Geometric ladder of `rungs` scales from half the diameter down to the
/// median nearest-neighbour distance; finer scales only count samples.
pub fn sample_ladder(members: &[SpectralField], s: f64, rungs: usize) -> Result<Vec<f64>> {
    if rungs < 2 {
        return Err(Error::Precondition("ladder needs at least 2 rungs".into()));
    }
    let e = embed(members, s)?;
    let m = e.len();
    let mut nearest = vec![f64::INFINITY; m];
    let mut diam = 0.0f64;
    for i in 0..m {
        for j in i + 1..m {
            let d = distance(&e[i], &e[j]);
            diam = diam.max(d);
            nearest[i] = nearest[i].min(d);
            nearest[j] = nearest[j].min(d);
        }
    }
    let top = if diam > 0.0 { diam / 2.0 } else { 1.0 };
    nearest.sort_by(f64::total_cmp);
    let spacing = nearest.get(m / 2).copied().unwrap_or(0.0);
    let ratio = if spacing > 0.0 && spacing < top {
        (spacing / top).powf(1.0 / (rungs - 1) as f64)
    } else {
        0.5
    };
    Ok((0..rungs).map(|k| top * ratio.powi(k as i32)).collect())
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    (slope, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_grid;
    use std::f64::consts::PI;

    fn mode(g: &std::sync::Arc<crate::spectral::Grid>, jx: i64, jy: i64) -> SpectralField {
        let f = SpectralField::single_mode(g, jx, jy, Complex64::new(1.0, 0.0)).unwrap();
        f.scaled(1.0 / f.l2_norm())
    }

    #[test]
    fn semidistance_basics() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let e1 = mode(&g, 1, 0);
        let e2 = mode(&g, 0, 1);
        let zero = SpectralField::zeros(&g);
        let a = vec![e1.clone()];
        let b = vec![e1.clone(), e2.clone()];
        assert_eq!(hausdorff_semidist(&a, &b, 0.0).unwrap(), 0.0);
        let d = hausdorff_semidist(&[e1.scaled(3.0)], std::slice::from_ref(&zero), 1.0).unwrap();
        assert!((d - 3.0).abs() < 1e-13);
        // asymmetry: B has a far point that A lacks
        let ab = hausdorff_semidist(&a, &b, 0.0).unwrap();
        let ba = hausdorff_semidist(&b, &a, 0.0).unwrap();
        assert!(ab < ba);
        assert!((ba - 2f64.sqrt()).abs() < 1e-13);
        assert!(hausdorff_semidist(&[], &b, 0.0).is_err());
    }

    #[test]
    fn triangle_type_bound() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let e1 = mode(&g, 1, 0);
        let e2 = mode(&g, 0, 1);
        let a: Vec<_> = (0..5).map(|i| e1.scaled(i as f64 * 0.3)).collect();
        let b: Vec<_> = (0..4).map(|i| e2.scaled(i as f64 * 0.2)).collect();
        let mut c = b.clone();
        c.push(e1.scaled(0.5));
        let ac = hausdorff_semidist(&a, &c, 0.0).unwrap();
        let ab = hausdorff_semidist(&a, &b, 0.0).unwrap();
        let bc = hausdorff_semidist(&b, &c, 0.0).unwrap();
        assert_eq!(bc, 0.0);
        assert!(ac <= ab + bc + 1e-14);
    }

    #[test]
    fn degenerate_clouds_have_dimension_zero() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let ladder = [0.4, 0.2, 0.1, 0.05];
        let one = vec![mode(&g, 1, 0)];
        assert_eq!(box_counting_dim(&one, 0.0, &ladder).unwrap().slope, 0.0);
        let same = vec![mode(&g, 1, 0); 40];
        assert_eq!(box_counting_dim(&same, 0.0, &ladder).unwrap().slope, 0.0);
        let few: Vec<_> = (0..10).map(|i| mode(&g, 1, 0).scaled(i as f64)).collect();
        assert!(box_counting_dim(&few, 0.0, &ladder).is_err());
    }

    #[test]
    fn ladder_must_be_geometric() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let line: Vec<_> = (0..40).map(|i| mode(&g, 1, 0).scaled(i as f64 / 39.0)).collect();
        assert!(box_counting_dim(&line, 0.0, &[0.4, 0.2, 0.1]).is_err());
        assert!(box_counting_dim(&line, 0.0, &[0.4, 0.2, 0.15, 0.1]).is_err());
        assert!(box_counting_dim(&line, 0.0, &[0.4, 0.2, 0.1, 0.05]).is_ok());
    }
}
