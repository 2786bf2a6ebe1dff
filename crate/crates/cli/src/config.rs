//! Flat TOML run documents.
//!
//! ```toml
//! preset = "fig1"
//! r = 0.5
//! mode = "sweep"
//! sweep_axis = "tau_h"
//! sweep_start = 0.05
//! sweep_stop = 5.0
//! sweep_points = 51
//! sweep_log = true
//! ```
//!
//! Without a preset every physical key must be given. `dephase_after_hot`
//! defaults to `false`, `hbar` to 1 and `hot_bath` to `"reservoir"`.

use std::path::PathBuf;
use std::str::FromStr;

use otto_core::{EngineConfig, HotBath};
use toml::{Table, Value};

use crate::error::CliError;

/// Physical keys that must be present when no preset is given.
pub const REQUIRED_KEYS: [&str; 10] = [
    "omega_c", "omega_h", "beta_c", "beta_h", "r", "tau_dri", "tau_h", "tau_c", "gamma_h",
    "gamma_c",
];

const OPTIONAL_PHYSICS_KEYS: [&str; 3] = ["dephase_after_hot", "hbar", "hot_bath"];

const RUN_KEYS: [&str; 15] = [
    "preset",
    "mode",
    "sweep_axis",
    "sweep_start",
    "sweep_stop",
    "sweep_points",
    "sweep_log",
    "output",
    "seed",
    "validation",
    "ldf_points",
    "ldf_lo",
    "ldf_hi",
    "samples",
    "require_engine",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Simulate,
    Sweep,
    Ldf,
    Histogram,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Simulate => "simulate",
            Self::Sweep => "sweep",
            Self::Ldf => "ldf",
            Self::Histogram => "histogram",
        }
    }
}

impl FromStr for Mode {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "simulate" => Ok(Self::Simulate),
            "sweep" => Ok(Self::Sweep),
            "ldf" => Ok(Self::Ldf),
            "histogram" => Ok(Self::Histogram),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    R,
    TauH,
    TauDri,
    TauC,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::R => "r",
            Self::TauH => "tau_h",
            Self::TauDri => "tau_dri",
            Self::TauC => "tau_c",
        }
    }

    pub fn apply(self, cfg: EngineConfig, value: f64) -> EngineConfig {
        match self {
            Self::R => cfg.with_r(value),
            Self::TauH => cfg.with_tau_h(value),
            Self::TauDri => cfg.with_tau_dri(value),
            Self::TauC => cfg.with_tau_c(value),
        }
    }
}

impl FromStr for Axis {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "r" => Ok(Self::R),
            "tau_h" => Ok(Self::TauH),
            "tau_dri" => Ok(Self::TauDri),
            "tau_c" => Ok(Self::TauC),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log: bool,
}

impl Sweep {
    /// Axis values, endpoints included exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.stop;
                }
                let f = i as f64 / (n - 1) as f64;
                if self.log {
                    self.start * (self.stop / self.start).powf(f)
                } else {
                    self.start + (self.stop - self.start) * f
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationLevel {
    Fast,
    Strict,
}

impl ValidationLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fast => "fast",
            Self::Strict => "strict",
        }
    }
}

/// Efficiency grid of the `ldf` mode, in units of `η_C^gen`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdfGrid {
    pub points: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Default for LdfGrid {
    fn default() -> Self {
        Self {
            points: 400,
            lo: -0.2,
            hi: 1.3,
        }
    }
}

pub const DEFAULT_SAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub base: EngineConfig,
    pub mode: Mode,
    pub sweep: Option<Sweep>,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub validation: ValidationLevel,
    pub ldf: LdfGrid,
    /// Monte Carlo cycles for the histogram mode.
    pub samples: u64,
    /// Treat any non-engine result as an error.
    pub require_engine: bool,
}

struct Doc {
    table: Table,
}

impl Doc {
    fn get(&self, key: &str) -> Option<&Value> {
        self.table.get(key)
    }

    fn float(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Float(x)) => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(_) => Err(CliError::schema(key, "expected a number")),
        }
    }

    fn int(&self, key: &str) -> Result<Option<i64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Integer(i)) => Ok(Some(*i)),
            Some(_) => Err(CliError::schema(key, "expected an integer")),
        }
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Boolean(b)) => Ok(Some(*b)),
            Some(_) => Err(CliError::schema(key, "expected true or false")),
        }
    }

    fn string(&self, key: &str) -> Result<Option<&str>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(CliError::schema(key, "expected a string")),
        }
    }

    fn choice<T: FromStr>(&self, key: &str, allowed: &str) -> Result<Option<T>, CliError> {
        self.string(key)?
            .map(|s| {
                s.parse()
                    .map_err(|_| CliError::schema(key, format!("`{s}` is not one of {allowed}")))
            })
            .transpose()
    }

    fn count(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.int(key)?
            .map(|i| u64::try_from(i).map_err(|_| CliError::Range(format!("{key} must be >= 0"))))
            .transpose()
    }
}

type Field = fn(&mut EngineConfig) -> &mut f64;

fn physics(doc: &Doc) -> Result<EngineConfig, CliError> {
    let mut cfg = match doc.string("preset")? {
        Some("fig1") => Some(EngineConfig::fig1()),
        Some(other) => {
            return Err(CliError::schema(
                "preset",
                format!("unknown preset `{other}`"),
            ))
        }
        None => None,
    };
    let fields: [(&str, Field); 10] = [
        ("omega_c", |c| &mut c.omega_c),
        ("omega_h", |c| &mut c.omega_h),
        ("beta_c", |c| &mut c.beta_c),
        ("beta_h", |c| &mut c.beta_h),
        ("r", |c| &mut c.r),
        ("tau_dri", |c| &mut c.tau_dri),
        ("tau_h", |c| &mut c.tau_h),
        ("tau_c", |c| &mut c.tau_c),
        ("gamma_h", |c| &mut c.gamma_h),
        ("gamma_c", |c| &mut c.gamma_c),
    ];
    if cfg.is_none() {
        if let Some(missing) = REQUIRED_KEYS.iter().find(|k| doc.get(k).is_none()) {
            return Err(CliError::schema(
                *missing,
                "required key is missing (or set preset = \"fig1\")",
            ));
        }
        let mut c = EngineConfig::fig1();
        c.dephase_after_hot = false;
        c.hbar = 1.0;
        c.hot_bath = HotBath::SqueezedReservoir;
        cfg = Some(c);
    }
    let mut cfg = cfg.unwrap_or_else(EngineConfig::fig1);
    for (key, field) in fields {
        if let Some(v) = doc.float(key)? {
            *field(&mut cfg) = v;
        }
    }
    if let Some(hbar) = doc.float("hbar")? {
        cfg.hbar = hbar;
    }
    if let Some(b) = doc.boolean("dephase_after_hot")? {
        cfg.dephase_after_hot = b;
    }
    if let Some(s) = doc.string("hot_bath")? {
        cfg.hot_bath = HotBath::parse(s).ok_or_else(|| {
            CliError::schema("hot_bath", format!("`{s}` is not one of reservoir, frame"))
        })?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn sweep(doc: &Doc, mode: Mode) -> Result<Option<Sweep>, CliError> {
    let axis: Option<Axis> = doc.choice("sweep_axis", "r, tau_h, tau_dri, tau_c")?;
    let Some(axis) = axis else {
        if mode == Mode::Sweep {
            return Err(CliError::schema("sweep_axis", "required in sweep mode"));
        }
        for key in ["sweep_start", "sweep_stop", "sweep_points", "sweep_log"] {
            if doc.get(key).is_some() {
                return Err(CliError::schema(key, "given without sweep_axis"));
            }
        }
        return Ok(None);
    };
    let need = |key: &str| -> Result<f64, CliError> {
        doc.float(key)?
            .ok_or_else(|| CliError::schema(key, "required when sweep_axis is set"))
    };
    let start = need("sweep_start")?;
    let stop = need("sweep_stop")?;
    let points = doc
        .count("sweep_points")?
        .ok_or_else(|| CliError::schema("sweep_points", "required when sweep_axis is set"))?;
    let log = doc.boolean("sweep_log")?.unwrap_or(false);
    if points < 2 {
        return Err(CliError::Range("sweep_points must be >= 2".into()));
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err(CliError::Range("sweep bounds must be finite".into()));
    }
    let strictly_positive = log || axis != Axis::R;
    for (name, v) in [("sweep_start", start), ("sweep_stop", stop)] {
        if strictly_positive && v <= 0.0 {
            return Err(CliError::Range(format!(
                "{name} must be > 0 for this axis/scale"
            )));
        }
        if v < 0.0 {
            return Err(CliError::Range(format!("{name} must be >= 0")));
        }
    }
    Ok(Some(Sweep {
        axis,
        start,
        stop,
        points: points as usize,
        log,
    }))
}

fn ldf_grid(doc: &Doc) -> Result<LdfGrid, CliError> {
    let d = LdfGrid::default();
    let grid = LdfGrid {
        points: doc.count("ldf_points")?.map_or(d.points, |n| n as usize),
        lo: doc.float("ldf_lo")?.unwrap_or(d.lo),
        hi: doc.float("ldf_hi")?.unwrap_or(d.hi),
    };
    if grid.points < 2 {
        return Err(CliError::Range("ldf_points must be >= 2".into()));
    }
    if !grid.lo.is_finite() || !grid.hi.is_finite() || grid.lo >= grid.hi {
        return Err(CliError::Range("ldf_lo < ldf_hi is required".into()));
    }
    Ok(grid)
}

/// Parses and validates a run document.
pub fn parse_config(text: &str) -> Result<RunSpec, CliError> {
    let table: Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::schema("<document>", e.message().to_string()))?;
    for (key, value) in &table {
        let known = REQUIRED_KEYS.contains(&key.as_str())
            || OPTIONAL_PHYSICS_KEYS.contains(&key.as_str())
            || RUN_KEYS.contains(&key.as_str());
        if !known {
            return Err(CliError::schema(key, "unknown key"));
        }
        if value.is_table() || value.is_array() {
            return Err(CliError::schema(key, "nested values are not allowed"));
        }
    }
    let doc = Doc { table };
    let mode = doc
        .choice("mode", "simulate, sweep, ldf, histogram")?
        .unwrap_or(Mode::Simulate);
    let base = physics(&doc)?;
    let validation = match doc.string("validation")? {
        None | Some("fast") => ValidationLevel::Fast,
        Some("strict") => ValidationLevel::Strict,
        Some(s) => {
            return Err(CliError::schema(
                "validation",
                format!("`{s}` is not one of fast, strict"),
            ))
        }
    };
    let samples = doc.count("samples")?.unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        return Err(CliError::Range("samples must be >= 1".into()));
    }
    Ok(RunSpec {
        base,
        mode,
        sweep: sweep(&doc, mode)?,
        output_path: doc.string("output")?.map(PathBuf::from),
        seed: doc.count("seed")?.unwrap_or(0),
        validation,
        ldf: ldf_grid(&doc)?,
        samples,
        require_engine: doc.boolean("require_engine")?.unwrap_or(false),
    })
}

impl RunSpec {
    /// Flat document with every field explicit; parsing it gives back `self`.
    pub fn to_toml(&self) -> String {
        let c = &self.base;
        let mut t = Table::new();
        let mut put = |k: &str, v: Value| {
            t.insert(k.to_string(), v);
        };
        put("mode", self.mode.as_str().into());
        for (k, v) in [
            ("omega_c", c.omega_c),
            ("omega_h", c.omega_h),
            ("beta_c", c.beta_c),
            ("beta_h", c.beta_h),
            ("r", c.r),
            ("tau_dri", c.tau_dri),
            ("tau_h", c.tau_h),
            ("tau_c", c.tau_c),
            ("gamma_h", c.gamma_h),
            ("gamma_c", c.gamma_c),
            ("hbar", c.hbar),
        ] {
            put(k, v.into());
        }
        put("dephase_after_hot", c.dephase_after_hot.into());
        put("hot_bath", c.hot_bath.as_str().into());
        if let Some(s) = &self.sweep {
            put("sweep_axis", s.axis.as_str().into());
            put("sweep_start", s.start.into());
            put("sweep_stop", s.stop.into());
            put("sweep_points", (s.points as i64).into());
            put("sweep_log", s.log.into());
        }
        if let Some(p) = &self.output_path {
            put("output", p.to_string_lossy().into_owned().into());
        }
        put("seed", (self.seed as i64).into());
        put("validation", self.validation.as_str().into());
        put("ldf_points", (self.ldf.points as i64).into());
        put("ldf_lo", self.ldf.lo.into());
        put("ldf_hi", self.ldf.hi.into());
        put("samples", (self.samples as i64).into());
        put("require_engine", self.require_engine.into());
        toml::to_string(&t).expect("flat tables always serialize")
    }
}
