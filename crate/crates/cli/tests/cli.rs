use std::fs;
use std::path::Path;

use anisoflow_cli::{run, EXIT_ASSUMPTION, EXIT_CONFIG, EXIT_DIVERGENCE, EXIT_OK};

fn invoke(cmd: &str, config: &Path, out: &Path, extra: &[&str]) -> i32 {
    let mut argv = vec!["anisoflow", cmd, "--quiet", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    argv.extend_from_slice(extra);
    run(argv)
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const SMALL: &str = "[grid]\nN = 16\n[time]\ndt = 0.01\nT = 0.2\n";

#[test]
fn simulate_writes_trajectory_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.cfg", SMALL);
    let out = tmp.path().join("out");
    assert_eq!(invoke("simulate", &cfg, &out, &[]), EXIT_OK);
    let csv = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert!(csv.starts_with("t,h0,h1,h2,h3,energy_residual,noise_scalar\n"));
    assert_eq!(csv.lines().count(), 1 + 3);
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("# command: simulate"));
    assert!(manifest.lines().any(|l| l.starts_with("# path_checksum: ") && l.len() == 17 + 64));
    assert!(!out.join("error.txt").exists());
}

#[test]
fn inadmissible_noise_is_refused_unless_forced() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.cfg", &format!("{SMALL}[noise_intensity]\ntarget_ratio = 2.0\nratio_delta = 0.25\n"));
    let out = tmp.path().join("refused");
    assert_eq!(invoke("simulate", &cfg, &out, &[]), EXIT_ASSUMPTION);
    let msg = fs::read_to_string(out.join("error.txt")).unwrap();
    assert!(msg.contains("ratio 2.000000"), "{msg}");

    let forced = tmp.path().join("forced");
    assert_eq!(invoke("simulate", &cfg, &forced, &["--force"]), EXIT_OK);
    assert!(fs::read_to_string(forced.join("manifest.txt")).unwrap().contains("force = true"));
}

#[test]
fn config_errors_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.cfg", "[grid]\nN = 7\n");
    let out = tmp.path().join("out");
    assert_eq!(invoke("identities", &cfg, &out, &[]), EXIT_CONFIG);
    assert!(fs::read_to_string(out.join("error.txt")).unwrap().contains("grid.N"));
    assert_eq!(invoke("identities", &tmp.path().join("missing.cfg"), &out, &[]), EXIT_CONFIG);
    assert_eq!(run(["anisoflow", "simulate", "--config", "x"]), EXIT_CONFIG);
    assert_eq!(run(["anisoflow", "bogus"]), EXIT_CONFIG);
}

#[test]
fn blow_up_exits_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "[grid]\nN = 16\n[time]\ndt = 0.5\nT = 20.0\nnoise_dt = 0.001\n\
                [initial]\nfield = random(5.0, 1e6, 3)\n[run]\nkind = deterministic\n";
    let cfg = write(tmp.path(), "c.cfg", text);
    let out = tmp.path().join("out");
    assert_eq!(invoke("simulate", &cfg, &out, &[]), EXIT_DIVERGENCE);
    assert!(fs::read_to_string(out.join("error.txt")).unwrap().contains("diverge"));
}

#[test]
fn converge_control_row_is_exact() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.cfg", &format!("{SMALL}[converge]\ndeltas = [0.5, 0.25]\n"));
    let out = tmp.path().join("out");
    assert_eq!(invoke("converge", &cfg, &out, &["--seed", "9"]), EXIT_OK);
    let csv = fs::read_to_string(out.join("convergence.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "delta,err_h0,err_h1,err_h2,err_h3,T,seed");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    let control = rows.iter().find(|r| r[0] == 0.0).unwrap();
    assert!(control[1..5].iter().all(|e| *e <= 1e-12));
    assert!(rows.iter().all(|r| r[6] == 9.0));
}

#[test]
fn diag_reads_snapshots_and_rejects_corrupt_ones() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.cfg", &format!("{SMALL}[run]\nsnapshots = [0.1, 0.2]\n"));
    let out = tmp.path().join("out");
    assert_eq!(invoke("simulate", &cfg, &out, &[]), EXIT_OK);
    assert_eq!(invoke("diag", &cfg, &out, &[]), EXIT_OK);
    let csv = fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);

    let snap = out.join("snapshots").join("snap_0000.ans");
    let bytes = fs::read(&snap).unwrap();
    fs::write(&snap, &bytes[..bytes.len() - 8]).unwrap();
    assert_eq!(invoke("diag", &cfg, &out, &[]), EXIT_CONFIG);
    assert!(fs::read_to_string(out.join("error.txt")).unwrap().contains("truncated"));
}
