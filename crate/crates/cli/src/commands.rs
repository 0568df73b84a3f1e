use std::path::Path;
use std::sync::Arc;

use anisoflow::diagnostics::{enstrophy_identity_check, gradient_split, record};
use anisoflow::dynamics::{recover_u, simulate as run_trajectory, EvolutionKind, EvolutionSpec, RecordPlan, SimParams};
use anisoflow::experiments::{
    box_counting_dim, default_cloud, delta_convergence, diameter, pullback_ensemble, sample_ladder,
    semicontinuity_curve, smoothing_ratios, AttractorMode, EnsembleState,
};
use anisoflow::io::{fmt_num, read_snapshot, trajectory_table, write_snapshot, Config, CsvTable};
use anisoflow::noise::{
    burn_in, colored_noise_moment, moment_estimate, noise_convergence, y_stationary_variance, NoiseSeries,
    WienerPath,
};
use anisoflow::spectral::{nonlinear_term, sobolev_norm, SpectralField};
use anisoflow::{Error, Result};
use log::{info, warn};

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::File {
        path: dir.to_path_buf(),
        source,
    })
}

fn gate(params: &SimParams, delta: f64) -> Result<()> {
    let mut p = params.clone();
    p.delta = delta;
    let report = p.assumption();
    if !report.pass && !params.force {
        return Err(Error::Assumption { ratio: report.ratio });
    }
    if !report.pass {
        warn!("admissibility ratio {:.4} at delta {delta}; continuing because of --force", report.ratio);
    }
    Ok(())
}

fn noise_for(params: &SimParams, kind: EvolutionKind, t0: f64, t1: f64) -> Result<Option<Arc<NoiseSeries>>> {
    if !kind.is_noisy() {
        return Ok(None);
    }
    let path = WienerPath::sample(params.seed, t0 - burn_in(params.delta), t1.max(t0 + params.noise_dt), params.noise_dt)?;
    Ok(Some(Arc::new(NoiseSeries::from_path(&path, params.delta, t0)?)))
}

fn seeds(first: u64, count: usize) -> impl Iterator<Item = u64> {
    (0..count as u64).map(move |i| first.wrapping_add(i))
}

pub fn simulate(cfg: &Config, out: &Path) -> Result<Vec<String>> {
    let params = Arc::new(cfg.sim_params()?);
    let kind = cfg.run.kind;
    let noise = noise_for(&params, kind, 0.0, params.horizon)?;
    let spec = EvolutionSpec::new(kind, params.clone(), noise.clone())?;
    let u0 = cfg.initial_field(params.grid())?;
    let v0 = recover_u(&u0, -spec.noise_scalar(0.0)?, &params.intensity);
    let plan = RecordPlan {
        every: cfg.time.record_every,
        snapshots: cfg.run.snapshots.clone(),
    };
    info!("simulate: {} run, N = {}, T = {}", kind.name(), params.grid().n(), params.horizon);
    let traj = run_trajectory(&spec, &v0, 0.0, &plan)?;
    trajectory_table(&traj.records).write(&out.join("trajectory.csv"))?;
    if !traj.snapshots.is_empty() {
        let dir = out.join("snapshots");
        ensure_dir(&dir)?;
        for (i, (t, field)) in traj.snapshots.iter().enumerate() {
            write_snapshot(field, *t, &dir.join(format!("snap_{i:04}.ans")))?;
        }
    }
    write_snapshot(&traj.final_state, 0.0 + params.horizon, &out.join("final.ans"))?;

    let mut summary = CsvTable::new(&["quantity", "value"]);
    let relative = if traj.dissipated > 0.0 {
        traj.energy_residual.abs() / traj.dissipated
    } else {
        traj.energy_residual.abs()
    };
    for (name, value) in [
        ("energy_residual", traj.energy_residual),
        ("dissipated", traj.dissipated),
        ("relative_residual", relative),
        ("admissibility_ratio", params.assumption().ratio),
    ] {
        summary.push(vec![name.to_string(), fmt_num(value)]);
    }
    summary.write(&out.join("summary.csv"))?;
    Ok(noise.map(|n| n.path_checksum().to_string()).into_iter().collect())
}

fn sample_variance(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

pub fn noise_check(cfg: &Config, out: &Path) -> Result<Vec<String>> {
    let nc = &cfg.noise_check;
    let dt = cfg.time.noise_dt;
    let mut checksums = Vec::new();
    let mut moments = CsvTable::new(&["seed", "delta", "quantity", "order", "estimate", "expected", "rel_error"]);
    let mut conv = CsvTable::new(&["seed", "delta", "sup_diff", "time_of_sup"]);
    let mut series_table = CsvTable::new(&["t", "zeta", "y", "z"]);
    for (si, seed) in seeds(cfg.run.seed, nc.seeds).enumerate() {
        for (di, &delta) in nc.deltas.iter().enumerate() {
            info!("noise-check: seed {seed}, delta {delta}");
            let path = WienerPath::sample(seed, -burn_in(delta), nc.horizon, dt)?;
            if di == 0 {
                checksums.push(path.checksum());
            }
            let series = NoiseSeries::from_path(&path, delta, 0.0)?;
            let mut row = |quantity: &str, order: f64, estimate: f64, expected: f64| {
                moments.push(vec![
                    seed.to_string(),
                    fmt_num(delta),
                    quantity.to_string(),
                    fmt_num(order),
                    fmt_num(estimate),
                    fmt_num(expected),
                    fmt_num((estimate - expected).abs() / expected),
                ]);
            };
            row("zeta_variance", 2.0, sample_variance(series.zeta()), 1.0 / (2.0 * delta));
            for &m in &nc.moments {
                let est = moment_estimate(series.zeta(), m, 0..series.len())?;
                row("zeta_abs_moment", m, est, colored_noise_moment(m, delta));
            }
            row("y_variance", 2.0, sample_variance(series.y()), y_stationary_variance(delta));
            row("z_variance", 2.0, sample_variance(series.z()), 0.5);
            if si == 0 && di == 0 && nc.series_stride > 0 {
                for i in (0..series.len()).step_by(nc.series_stride) {
                    series_table.push_numbers(&[series.times()[i], series.zeta()[i], series.y()[i], series.z()[i]]);
                }
            }
        }
        let path = WienerPath::sample(seed, -burn_in(1.0), nc.conv_horizon.max(dt), dt)?;
        for r in noise_convergence(&path, &nc.conv_deltas, nc.conv_horizon)? {
            conv.push(vec![seed.to_string(), fmt_num(r.delta), fmt_num(r.sup_diff), fmt_num(r.time_of_sup)]);
        }
        checksums.push(path.checksum());
    }
    moments.write(&out.join("noise_moments.csv"))?;
    conv.write(&out.join("noise_convergence.csv"))?;
    if nc.series_stride > 0 {
        series_table.write(&out.join("noise_series.csv"))?;
    }
    Ok(checksums)
}

fn index_label(s: f64) -> String {
    if s.fract() == 0.0 {
        format!("{}", s as i64)
    } else {
        format!("{s}")
    }
}

pub fn converge(cfg: &Config, out: &Path) -> Result<Vec<String>> {
    let params = cfg.sim_params()?;
    let u0 = cfg.initial_field(params.grid())?;
    let c = &cfg.converge;
    let mut header: Vec<String> = vec!["delta".into()];
    header.extend(c.sobolev.iter().map(|s| format!("err_h{}", index_label(*s))));
    header.extend(["T".into(), "seed".into()]);
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = CsvTable::new(&header);

    let mut admissibility = CsvTable::new(&["delta", "ratio", "pass"]);
    for &d in &c.deltas {
        let mut p = params.clone();
        p.delta = d;
        let r = p.assumption();
        if !r.pass {
            warn!("delta {d}: admissibility ratio {:.4} >= 1; row flagged", r.ratio);
        }
        admissibility.push(vec![fmt_num(d), fmt_num(r.ratio), r.pass.to_string()]);
    }

    let mut checksums = Vec::new();
    for seed in seeds(cfg.run.seed, c.seeds) {
        info!("converge: seed {seed}");
        let result = delta_convergence(&params, &u0, seed, &c.deltas, cfg.time.horizon, &c.sobolev, c.control)?;
        for row in &result.rows {
            let mut cells = vec![fmt_num(row.delta.unwrap_or(0.0))];
            cells.extend(row.errors.iter().map(|e| fmt_num(*e)));
            cells.push(fmt_num(row.horizon));
            cells.push(seed.to_string());
            table.push(cells);
        }
        checksums.push(result.path_checksum);
    }
    table.write(&out.join("convergence.csv"))?;
    admissibility.write(&out.join("admissibility.csv"))?;
    Ok(checksums)
}

pub fn smoothing(cfg: &Config, out: &Path) -> Result<Vec<String>> {
    let mut params = cfg.sim_params()?;
    let sm = &cfg.smoothing;
    params.horizon = sm.horizon;
    let params = Arc::new(params);
    let grid = params.grid().clone();
    let v0 = cfg.initial_field(&grid)?;
    let direction = SpectralField::random(&grid, 4.0, 1.0, sm.direction_seed)?;
    let mut table = CsvTable::new(&["kind", "eps", "s_out", "ratio", "T"]);
    let mut checksums = Vec::new();
    for &kind in &sm.kinds {
        if kind.is_noisy() {
            gate(&params, params.delta)?;
        }
        let noise = noise_for(&params, kind, 0.0, sm.horizon)?;
        if let Some(n) = &noise {
            checksums.push(n.path_checksum().to_string());
        }
        let spec = EvolutionSpec::new(kind, params.clone(), noise)?;
        for &eps in &sm.eps {
            info!("smoothing: {} eps = {eps:e}", kind.name());
            let ratios = smoothing_ratios(&spec, &v0, eps, &direction, sm.horizon, &sm.s_out)?;
            for (s, r) in sm.s_out.iter().zip(ratios) {
                table.push(vec![
                    kind.name().to_string(),
                    fmt_num(eps),
                    fmt_num(*s),
                    fmt_num(r),
                    fmt_num(sm.horizon),
                ]);
            }
        }
    }
    table.write(&out.join("smoothing.csv"))?;
    checksums.dedup();
    Ok(checksums)
}

fn box_dims(e: &EnsembleState, rungs: usize) -> Result<(f64, f64, f64)> {
    let m = &e.members;
    if m.len() < anisoflow::experiments::MIN_BOX_MEMBERS {
        warn!("{} members are too few for box counting; reporting NaN", m.len());
        return Ok((f64::NAN, f64::NAN, f64::NAN));
    }
    let h = box_counting_dim(m, 0.0, &sample_ladder(m, 0.0, rungs)?)?;
    let h2 = box_counting_dim(m, 2.0, &sample_ladder(m, 2.0, rungs)?)?;
    Ok((h.slope, h2.slope, h.r_squared))
}

pub fn attractor(cfg: &Config, out: &Path) -> Result<Vec<String>> {
    let params = cfg.sim_params()?;
    let a = &cfg.attractor;
    for &d in &a.deltas {
        gate(&params, d)?;
    }
    let grid = params.grid().clone();
    let mut table = CsvTable::new(&["delta", "hausdorff_h", "boxdim_h", "boxdim_h2", "fit_r2", "seed"]);
    let mut ensembles = CsvTable::new(&["seed", "mode", "members", "dropped", "diameter_h", "diameter_h2"]);
    let mut checksums = Vec::new();
    for seed in seeds(cfg.run.seed, a.seeds) {
        info!("attractor: seed {seed}, {} members, t_pb = {}", a.members, a.t_pb);
        let cloud = default_cloud(&grid, a.members, seed)?;
        let curve = semicontinuity_curve(&params, seed, &a.deltas, a.t_pb, &cloud)?;
        let deterministic = pullback_ensemble(&params, seed, &cloud, a.t_pb, AttractorMode::Deterministic)?;
        let (bh, bh2, r2) = box_dims(&curve.white, a.rungs)?;
        table.push(vec![fmt_num(0.0), fmt_num(0.0), fmt_num(bh), fmt_num(bh2), fmt_num(r2), seed.to_string()]);
        for (row, e) in curve.rows.iter().zip(&curve.colored) {
            let (bh, bh2, r2) = box_dims(e, a.rungs)?;
            table.push(vec![
                fmt_num(row.delta),
                fmt_num(row.distance),
                fmt_num(bh),
                fmt_num(bh2),
                fmt_num(r2),
                seed.to_string(),
            ]);
        }
        for e in std::iter::once(&curve.white).chain(&curve.colored).chain(std::iter::once(&deterministic)) {
            let (dh, dh2) = if e.members.is_empty() {
                (f64::NAN, f64::NAN)
            } else {
                (diameter(&e.members, 0.0)?, diameter(&e.members, 2.0)?)
            };
            ensembles.push(vec![
                seed.to_string(),
                e.mode.label(),
                e.members.len().to_string(),
                e.dropped.len().to_string(),
                fmt_num(dh),
                fmt_num(dh2),
            ]);
        }
        checksums.extend(curve.white.path_checksum.clone());
    }
    table.write(&out.join("attractor.csv"))?;
    ensembles.write(&out.join("ensembles.csv"))?;
    Ok(checksums)
}

pub fn diag(cfg: &Config, out: &Path) -> Result<Vec<String>> {
    let dir = Path::new(cfg.diag.dir.as_deref().unwrap_or("snapshots"));
    let entries = std::fs::read_dir(dir).map_err(|source| Error::File {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ans"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Precondition(format!("no .ans snapshots in {}", dir.display())));
    }
    let mut table = CsvTable::new(&["file", "t", "h0", "h1", "h2", "h3", "identity_rel_error"]);
    for f in &files {
        let snap = read_snapshot(f)?;
        let r = record(&snap.field, snap.time, 0.0);
        let id = enstrophy_identity_check(&snap.field);
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let mut row = vec![name];
        row.extend([r.t, r.h0, r.h1, r.h2, r.h3, id.relative_error].map(fmt_num));
        table.push(row);
    }
    table.write(&out.join("diagnostics.csv"))?;
    Ok(Vec::new())
}

pub fn identities(cfg: &Config, out: &Path) -> Result<Vec<String>> {
    let grid = cfg.make_grid()?;
    let id = &cfg.identities;
    let mut table = CsvTable::new(&[
        "index",
        "identity_rel_error",
        "coercivity_margin",
        "gradient_ratio",
        "advection_ratio",
    ]);
    let mut failures = 0usize;
    for i in 0..id.count {
        let v = SpectralField::random(&grid, grid.n() as f64, 1.0, id.seed.wrapping_add(i as u64))?;
        let rep = enstrophy_identity_check(&v);
        let (grad, split) = gradient_split(&v);
        let b = nonlinear_term(&v);
        let advection = b.inner(&v).abs() / (v.l2_norm() * sobolev_norm(&v, 1.0).powi(2));
        let margin = (rep.lhs - 0.5 * rep.a_norm_sq) / rep.lhs;
        let gradient_ratio = grad / (2.0 * split);
        if rep.relative_error > 1e-10 || !rep.coercive || gradient_ratio > 1.0 || advection > 1e-10 {
            failures += 1;
        }
        table.push(vec![
            i.to_string(),
            fmt_num(rep.relative_error),
            fmt_num(margin),
            fmt_num(gradient_ratio),
            fmt_num(advection),
        ]);
    }
    if failures > 0 {
        warn!("{failures} of {} fields violate an identity", id.count);
    }
    table.write(&out.join("identities.csv"))?;
    Ok(Vec::new())
}
