//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! [grid]
//! N = 32
//! L = 6.283185307179586
//! [force]
//! modes = [(1, 0, 0.5, 0.0), (0, 1, 0.0, 0.5)]
//! [noise_intensity]
//! field = random(4, 1.0, 11)
//! target_ratio = 0.5
//! ```
//!
//! Unknown sections and keys are errors. [`Config::to_text`] writes every
//! key explicitly, and parsing that text gives back the same `Config`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use rustfft::num_complex::Complex64;

use super::value::{parse_value, Value};
use crate::dynamics::{EvolutionKind, SimParams};
use crate::error::{Error, Result};
use crate::spectral::{check_assumption, make_grid, Grid, SpectralField};

/// How a forcing, intensity or initial field is built.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    /// Section-specific default profile.
    Default,
    Zero,
    /// Divergence-free mode pairs `(jx, jy, re, im)`, amplitude along (-ky, kx)/|k|.
    Modes(Vec<(i64, i64, f64, f64)>),
    Random { bandlimit: f64, norm: f64, seed: u64 },
}

impl FieldSpec {
    pub fn build(&self, grid: &Arc<Grid>, default: &dyn Fn() -> Result<SpectralField>) -> Result<SpectralField> {
        match self {
            FieldSpec::Default => default(),
            FieldSpec::Zero => Ok(SpectralField::zeros(grid)),
            FieldSpec::Modes(modes) => {
                let mut f = SpectralField::zeros(grid);
                for &(jx, jy, re, im) in modes {
                    f.add_mode(jx, jy, Complex64::new(re, im))?;
                }
                Ok(crate::spectral::leray_project(&f))
            }
            FieldSpec::Random {
                bandlimit,
                norm,
                seed,
            } => SpectralField::random(grid, *bandlimit, *norm, *seed),
        }
    }

    fn emit(&self, out: &mut String) {
        match self {
            FieldSpec::Default => out.push_str("field = default\n"),
            FieldSpec::Zero => out.push_str("field = zero\n"),
            FieldSpec::Modes(m) => {
                let items: Vec<String> = m
                    .iter()
                    .map(|(a, b, c, d)| format!("({a}, {b}, {c:?}, {d:?})"))
                    .collect();
                let _ = writeln!(out, "modes = [{}]", items.join(", "));
            }
            FieldSpec::Random {
                bandlimit,
                norm,
                seed,
            } => {
                let _ = writeln!(out, "field = random({bandlimit:?}, {norm:?}, {seed})");
            }
        }
    }

    fn parse(key: &str, value: &Value) -> std::result::Result<Self, String> {
        match (key, value) {
            ("modes", Value::List(items)) => items
                .iter()
                .map(|item| match item.as_items() {
                    Some([a, b, c, d]) => match (a.as_i64(), b.as_i64(), c.as_f64(), d.as_f64()) {
                        (Some(a), Some(b), Some(c), Some(d)) => Ok((a, b, c, d)),
                        _ => Err(format!("bad mode tuple `{item}`")),
                    },
                    _ => Err(format!("mode `{item}` must be (jx, jy, re, im)")),
                })
                .collect::<std::result::Result<_, _>>()
                .map(FieldSpec::Modes),
            ("field", Value::Word(w)) if w == "default" => Ok(FieldSpec::Default),
            ("field", Value::Word(w)) if w == "zero" => Ok(FieldSpec::Zero),
            ("field", Value::Call(name, args)) if name == "random" => match args.as_slice() {
                [b, n, s] => match (b.as_f64(), n.as_f64(), s.as_u64()) {
                    (Some(bandlimit), Some(norm), Some(seed)) if bandlimit > 0.0 && norm >= 0.0 => {
                        Ok(FieldSpec::Random {
                            bandlimit,
                            norm,
                            seed,
                        })
                    }
                    _ => Err("random(bandlimit > 0, norm >= 0, seed) expected".into()),
                },
                _ => Err("random takes three arguments".into()),
            },
            _ => Err(format!("unsupported field spec `{value}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhysicsConfig {
    pub nu: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeConfig {
    pub dt: f64,
    pub horizon: f64,
    pub record_every: f64,
    pub noise_dt: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntensityConfig {
    pub field: FieldSpec,
    /// Rescale h so that its admissibility ratio equals this value.
    pub target_ratio: Option<f64>,
    /// Correlation time used for the rescaling; defaults to the smallest
    /// delta appearing anywhere in the configuration.
    pub ratio_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub kind: EvolutionKind,
    pub snapshots: Vec<f64>,
    /// Run noisy experiments even when h fails the admissibility test.
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeConfig {
    pub deltas: Vec<f64>,
    /// Number of consecutive seeds starting at `run.seed`.
    pub seeds: usize,
    pub sobolev: Vec<f64>,
    pub control: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingConfig {
    pub eps: Vec<f64>,
    pub s_out: Vec<f64>,
    pub horizon: f64,
    pub kinds: Vec<EvolutionKind>,
    pub direction_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorConfig {
    pub deltas: Vec<f64>,
    pub members: usize,
    pub t_pb: f64,
    /// Rungs of the eps ladder for box counting, from half the diameter
    /// down to the median nearest-neighbour distance.
    pub rungs: usize,
    /// Number of consecutive path seeds starting at `run.seed`.
    pub seeds: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseCheckConfig {
    pub horizon: f64,
    pub deltas: Vec<f64>,
    pub moments: Vec<f64>,
    pub conv_deltas: Vec<f64>,
    pub conv_horizon: f64,
    pub seeds: usize,
    /// Keep every n-th sample in `noise_series.csv`; 0 disables the export.
    pub series_stride: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentitiesConfig {
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagConfig {
    /// Directory of `.ans` snapshots; defaults to `<out>/snapshots`.
    pub dir: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub grid: GridConfig,
    pub physics: PhysicsConfig,
    pub time: TimeConfig,
    pub force: FieldSpec,
    pub noise_intensity: IntensityConfig,
    pub initial: FieldSpec,
    pub run: RunConfig,
    pub converge: ConvergeConfig,
    pub smoothing: SmoothingConfig,
    pub attractor: AttractorConfig,
    pub noise_check: NoiseCheckConfig,
    pub identities: IdentitiesConfig,
    pub diag: DiagConfig,
}

const LADDER: [f64; 4] = [0.5, 0.25, 0.125, 0.0625];

impl Default for Config {
    fn default() -> Self {
        Config {
            grid: GridConfig {
                n: 32,
                length: 2.0 * std::f64::consts::PI,
            },
            physics: PhysicsConfig { nu: 1.0, delta: 0.25 },
            time: TimeConfig {
                dt: 0.005,
                horizon: 5.0,
                record_every: 0.1,
                noise_dt: 0.001,
            },
            force: FieldSpec::Default,
            noise_intensity: IntensityConfig {
                field: FieldSpec::Default,
                target_ratio: Some(0.5),
                ratio_delta: None,
            },
            initial: FieldSpec::Random {
                bandlimit: 4.0,
                norm: 1.0,
                seed: 2,
            },
            run: RunConfig {
                seed: 1,
                kind: EvolutionKind::ColoredV,
                snapshots: Vec::new(),
                force: false,
            },
            converge: ConvergeConfig {
                deltas: LADDER.to_vec(),
                seeds: 1,
                sobolev: vec![0.0, 1.0, 2.0, 3.0],
                control: true,
            },
            smoothing: SmoothingConfig {
                eps: vec![1e-3, 1e-4, 1e-5],
                s_out: vec![2.0, 3.0],
                horizon: 2.0,
                kinds: vec![EvolutionKind::Deterministic, EvolutionKind::ColoredV],
                direction_seed: 3,
            },
            attractor: AttractorConfig {
                deltas: LADDER.to_vec(),
                members: 64,
                t_pb: 50.0,
                rungs: 6,
                seeds: 1,
            },
            noise_check: NoiseCheckConfig {
                horizon: 2000.0,
                deltas: vec![0.1, 0.25],
                moments: vec![1.0, 2.0],
                conv_deltas: LADDER.to_vec(),
                conv_horizon: 10.0,
                seeds: 10,
                series_stride: 1000,
            },
            identities: IdentitiesConfig { count: 100, seed: 1 },
            diag: DiagConfig { dir: None },
        }
    }
}

fn fmt_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
    format!("[{}]", items.join(", "))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or("none".into(), |x| format!("{x:?}"))
}

struct Entry<'a> {
    section: &'a str,
    key: &'a str,
    value: Value,
    line: usize,
}

impl Entry<'_> {
    fn name(&self) -> String {
        format!("{}.{}", self.section, self.key)
    }

    fn bad(&self, message: impl Into<String>) -> Error {
        Error::config(self.name(), format!("{} (line {})", message.into(), self.line))
    }

    fn f64(&self) -> Result<f64> {
        self.value
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| self.bad("expected a number"))
    }

    fn positive(&self) -> Result<f64> {
        let x = self.f64()?;
        if x > 0.0 {
            Ok(x)
        } else {
            Err(self.bad(format!("must be positive, got {x}")))
        }
    }

    fn non_negative(&self) -> Result<f64> {
        let x = self.f64()?;
        if x >= 0.0 {
            Ok(x)
        } else {
            Err(self.bad(format!("must be non-negative, got {x}")))
        }
    }

    fn u64(&self) -> Result<u64> {
        self.value.as_u64().ok_or_else(|| self.bad("expected a non-negative integer"))
    }

    fn usize(&self) -> Result<usize> {
        Ok(self.u64()? as usize)
    }

    fn bool(&self) -> Result<bool> {
        match self.value.as_word() {
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            _ => Err(self.bad("expected true or false")),
        }
    }

    fn optional_positive(&self) -> Result<Option<f64>> {
        if self.value.as_word() == Some("none") {
            return Ok(None);
        }
        self.positive().map(Some)
    }

    fn list(&self) -> Result<Vec<f64>> {
        let items = match &self.value {
            Value::List(v) => v,
            _ => return Err(self.bad("expected a list [a, b, ...]")),
        };
        items
            .iter()
            .map(|v| v.as_f64().filter(|x| x.is_finite()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| self.bad("list entries must be numbers"))
    }

    fn deltas(&self) -> Result<Vec<f64>> {
        let v = self.list()?;
        if v.is_empty() || v.iter().any(|d| !(*d > 0.0 && *d <= 1.0)) {
            return Err(self.bad("deltas must be a non-empty list in (0, 1]"));
        }
        Ok(v)
    }

    fn field(&self) -> Result<FieldSpec> {
        FieldSpec::parse(self.key, &self.value).map_err(|m| self.bad(m))
    }
}

/// Parses and validates configuration text; missing keys take defaults.
pub fn parse_config(text: &str) -> Result<Config> {
    let mut cfg = Config::default();
    let mut section = String::new();
    let mut seen = BTreeSet::new();
    let mut field_keys: BTreeSet<String> = BTreeSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or(Error::Syntax {
                line,
                message: "section header must end with `]`".into(),
            })?;
            section = name.trim().to_string();
            if !SECTIONS.contains(&section.as_str()) {
                return Err(Error::Syntax {
                    line,
                    message: format!("unknown section [{section}]"),
                });
            }
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(Error::Syntax {
            line,
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        if section.is_empty() {
            return Err(Error::Syntax {
                line,
                message: format!("key `{key}` outside any section"),
            });
        }
        let value = parse_value(value.trim()).map_err(|message| Error::Syntax { line, message })?;
        if !seen.insert(format!("{section}.{key}")) {
            return Err(Error::Syntax {
                line,
                message: format!("duplicate key `{section}.{key}`"),
            });
        }
        let entry = Entry {
            section: &section,
            key,
            value,
            line,
        };
        if matches!(key, "field" | "modes") && !field_keys.insert(section.clone()) {
            return Err(entry.bad("give either `field` or `modes`, not both"));
        }
        cfg.apply(&entry)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn strip_comment(line: &str) -> &str {
    let mut in_string = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_string = !in_string,
            '#' if !in_string => return &line[..i],
            _ => {}
        }
    }
    line
}

const SECTIONS: [&str; 13] = [
    "grid",
    "physics",
    "time",
    "force",
    "noise_intensity",
    "initial",
    "run",
    "converge",
    "smoothing",
    "attractor",
    "noise_check",
    "identities",
    "diag",
];

impl Config {
    fn apply(&mut self, e: &Entry) -> Result<()> {
        match (e.section, e.key) {
            ("grid", "N") => self.grid.n = e.usize()?,
            ("grid", "L") => self.grid.length = e.f64()?,
            ("physics", "nu") => self.physics.nu = e.positive()?,
            ("physics", "delta") => self.physics.delta = e.f64()?,
            ("time", "dt") => self.time.dt = e.positive()?,
            ("time", "T") => self.time.horizon = e.non_negative()?,
            ("time", "record_every") => self.time.record_every = e.non_negative()?,
            ("time", "noise_dt") => self.time.noise_dt = e.positive()?,
            ("force", "field" | "modes") => self.force = e.field()?,
            ("noise_intensity", "field" | "modes") => self.noise_intensity.field = e.field()?,
            ("noise_intensity", "target_ratio") => self.noise_intensity.target_ratio = e.optional_positive()?,
            ("noise_intensity", "ratio_delta") => self.noise_intensity.ratio_delta = e.optional_positive()?,
            ("initial", "field" | "modes") => self.initial = e.field()?,
            ("run", "seed") => self.run.seed = e.u64()?,
            ("run", "kind") => {
                self.run.kind = e
                    .value
                    .as_word()
                    .ok_or_else(|| e.bad("expected a kind name"))?
                    .parse()
                    .map_err(|_| e.bad("expected deterministic, colored, white or direct-sde"))?
            }
            ("run", "snapshots") => self.run.snapshots = e.list()?,
            ("run", "force") => self.run.force = e.bool()?,
            ("converge", "deltas") => self.converge.deltas = e.deltas()?,
            ("converge", "seeds") => self.converge.seeds = e.usize()?,
            ("converge", "sobolev") => self.converge.sobolev = e.list()?,
            ("converge", "control") => self.converge.control = e.bool()?,
            ("smoothing", "eps") => self.smoothing.eps = e.list()?,
            ("smoothing", "s_out") => self.smoothing.s_out = e.list()?,
            ("smoothing", "T") => self.smoothing.horizon = e.non_negative()?,
            ("smoothing", "kinds") => {
                let items = match &e.value {
                    Value::List(v) => v,
                    _ => return Err(e.bad("expected a list of kinds")),
                };
                self.smoothing.kinds = items
                    .iter()
                    .map(|v| {
                        v.as_word()
                            .and_then(|w| w.parse().ok())
                            .ok_or_else(|| e.bad(format!("unknown kind `{v}`")))
                    })
                    .collect::<Result<_>>()?;
            }
            ("smoothing", "direction_seed") => self.smoothing.direction_seed = e.u64()?,
            ("attractor", "deltas") => self.attractor.deltas = e.deltas()?,
            ("attractor", "members") => self.attractor.members = e.usize()?,
            ("attractor", "t_pb") => self.attractor.t_pb = e.non_negative()?,
            ("attractor", "rungs") => self.attractor.rungs = e.usize()?,
            ("attractor", "seeds") => self.attractor.seeds = e.usize()?,
            ("noise_check", "T") => self.noise_check.horizon = e.positive()?,
            ("noise_check", "deltas") => self.noise_check.deltas = e.deltas()?,
            ("noise_check", "moments") => self.noise_check.moments = e.list()?,
            ("noise_check", "conv_deltas") => self.noise_check.conv_deltas = e.deltas()?,
            ("noise_check", "conv_T") => self.noise_check.conv_horizon = e.non_negative()?,
            ("noise_check", "seeds") => self.noise_check.seeds = e.usize()?,
            ("noise_check", "series_stride") => self.noise_check.series_stride = e.usize()?,
            ("identities", "count") => self.identities.count = e.usize()?,
            ("identities", "seed") => self.identities.seed = e.u64()?,
            ("diag", "dir") => {
                self.diag.dir = match e.value.as_word() {
                    Some("none") => None,
                    Some(w) => Some(w.to_string()),
                    None => return Err(e.bad("expected a path")),
                }
            }
            _ => return Err(e.bad("unknown key")),
        }
        Ok(())
    }

    /// Range checks that span several keys.
    pub fn validate(&self) -> Result<()> {
        make_grid(self.grid.n, self.grid.length)?;
        if !(self.physics.delta > 0.0 && self.physics.delta <= 1.0) {
            return Err(Error::config("physics.delta", "must lie in (0, 1]"));
        }
        if self.time.noise_dt > self.time.dt * (1.0 + 1e-12) {
            return Err(Error::config("time.noise_dt", "must not exceed time.dt"));
        }
        if self.noise_check.moments.iter().any(|m| *m < 1.0) {
            return Err(Error::config("noise_check.moments", "orders must be >= 1"));
        }
        if self.noise_check.conv_deltas.iter().any(|d| *d > 0.5) {
            return Err(Error::config("noise_check.conv_deltas", "must be <= 0.5"));
        }
        if self.smoothing.eps.iter().any(|e| !(*e > 0.0)) {
            return Err(Error::config("smoothing.eps", "must be positive"));
        }
        if self.attractor.rungs < 4 {
            return Err(Error::config("attractor.rungs", "need at least 4"));
        }
        if self.converge.seeds == 0 || self.noise_check.seeds == 0 || self.attractor.seeds == 0 {
            return Err(Error::config("seeds", "must be at least 1"));
        }
        Ok(())
    }

    /// Canonical text form; [`parse_config`] maps it back to `self`.
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "[grid]\nN = {}\nL = {:?}", self.grid.n, self.grid.length);
        let _ = writeln!(o, "\n[physics]\nnu = {:?}\ndelta = {:?}", self.physics.nu, self.physics.delta);
        let t = &self.time;
        let _ = writeln!(
            o,
            "\n[time]\ndt = {:?}\nT = {:?}\nrecord_every = {:?}\nnoise_dt = {:?}",
            t.dt, t.horizon, t.record_every, t.noise_dt
        );
        o.push_str("\n[force]\n");
        self.force.emit(&mut o);
        o.push_str("\n[noise_intensity]\n");
        self.noise_intensity.field.emit(&mut o);
        let _ = writeln!(
            o,
            "target_ratio = {}\nratio_delta = {}",
            fmt_opt(self.noise_intensity.target_ratio),
            fmt_opt(self.noise_intensity.ratio_delta)
        );
        o.push_str("\n[initial]\n");
        self.initial.emit(&mut o);
        let _ = writeln!(
            o,
            "\n[run]\nseed = {}\nkind = {}\nsnapshots = {}\nforce = {}",
            self.run.seed,
            self.run.kind.name(),
            fmt_list(&self.run.snapshots),
            self.run.force
        );
        let c = &self.converge;
        let _ = writeln!(
            o,
            "\n[converge]\ndeltas = {}\nseeds = {}\nsobolev = {}\ncontrol = {}",
            fmt_list(&c.deltas),
            c.seeds,
            fmt_list(&c.sobolev),
            c.control
        );
        let s = &self.smoothing;
        let kinds: Vec<&str> = s.kinds.iter().map(|k| k.name()).collect();
        let _ = writeln!(
            o,
            "\n[smoothing]\neps = {}\ns_out = {}\nT = {:?}\nkinds = [{}]\ndirection_seed = {}",
            fmt_list(&s.eps),
            fmt_list(&s.s_out),
            s.horizon,
            kinds.join(", "),
            s.direction_seed
        );
        let a = &self.attractor;
        let _ = writeln!(
            o,
            "\n[attractor]\ndeltas = {}\nmembers = {}\nt_pb = {:?}\nrungs = {}\nseeds = {}",
            fmt_list(&a.deltas),
            a.members,
            a.t_pb,
            a.rungs,
            a.seeds
        );
        let n = &self.noise_check;
        let _ = writeln!(
            o,
            "\n[noise_check]\nT = {:?}\ndeltas = {}\nmoments = {}\nconv_deltas = {}\nconv_T = {:?}\nseeds = {}\nseries_stride = {}",
            n.horizon,
            fmt_list(&n.deltas),
            fmt_list(&n.moments),
            fmt_list(&n.conv_deltas),
            n.conv_horizon,
            n.seeds,
            n.series_stride
        );
        let _ = writeln!(
            o,
            "\n[identities]\ncount = {}\nseed = {}",
            self.identities.count, self.identities.seed
        );
        let _ = writeln!(
            o,
            "\n[diag]\ndir = {}",
            self.diag.dir.as_deref().map_or("none".into(), |d| format!("\"{d}\""))
        );
        o
    }

    pub fn make_grid(&self) -> Result<Arc<Grid>> {
        make_grid(self.grid.n, self.grid.length)
    }

    /// Smallest correlation time the configuration mentions.
    pub fn smallest_delta(&self) -> f64 {
        self.converge
            .deltas
            .iter()
            .chain(&self.attractor.deltas)
            .fold(self.physics.delta, |m, d| m.min(*d))
    }

    pub fn forcing(&self, grid: &Arc<Grid>) -> Result<SpectralField> {
        self.force.build(grid, &|| default_forcing(grid))
    }

    /// Noise profile h, rescaled to the target admissibility ratio if set.
    pub fn intensity(&self, grid: &Arc<Grid>) -> Result<SpectralField> {
        let h = self
            .noise_intensity
            .field
            .build(grid, &|| SpectralField::random(grid, 4.0, 1.0, 1))?;
        let Some(target) = self.noise_intensity.target_ratio else {
            return Ok(h);
        };
        let delta = self.noise_intensity.ratio_delta.unwrap_or_else(|| self.smallest_delta());
        let ratio = check_assumption(&h, self.physics.nu, delta).ratio;
        if ratio == 0.0 {
            return Ok(h);
        }
        Ok(h.scaled(target / ratio))
    }

    pub fn initial_field(&self, grid: &Arc<Grid>) -> Result<SpectralField> {
        self.initial
            .build(grid, &|| SpectralField::random(grid, 4.0, 1.0, 2))
    }

    pub fn sim_params(&self) -> Result<SimParams> {
        let grid = self.make_grid()?;
        let p = SimParams {
            nu: self.physics.nu,
            delta: self.physics.delta,
            dt: self.time.dt,
            horizon: self.time.horizon,
            forcing: self.forcing(&grid)?,
            intensity: self.intensity(&grid)?,
            seed: self.run.seed,
            noise_dt: self.time.noise_dt,
            force: self.run.force,
        };
        p.validate()?;
        Ok(p)
    }
}

/// Divergence-free mode pair at j = (1, 1) with unit L2 norm.
pub fn default_forcing(grid: &Arc<Grid>) -> Result<SpectralField> {
    let amp = 1.0 / (grid.length() * std::f64::consts::SQRT_2);
    SpectralField::single_mode(grid, 1, 1, Complex64::new(amp, 0.0))
}
