//! Run configuration: plain `key=value` files, command-line overrides,
//! and identical round-trip serialization.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use minsurf_core::profile::SurfaceKind;

use crate::json::fmt_f64;

/// Everything a run needs. Parsed from `key=value` lines (one per line,
/// `#` comments allowed); command-line flags override file values;
/// unknown keys are errors.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub surface: SurfaceKind,
    /// Ambient dimension.
    pub n: usize,
    /// Neck radius (catenoid).
    pub r0: f64,
    /// Grid arclength extent per side.
    pub s_max: f64,
    /// Sample count per side (grid has 2·samples+1 nodes, catenoid).
    pub samples: usize,
    /// Truncation radii for spectral sweeps, strictly increasing.
    pub s_sweep: Vec<f64>,
    pub l_max_cap: u32,
    /// Spectral floor override; 0 means the automatic `10h²·scale` floor.
    pub spectral_floor: f64,
    pub identity_tol: f64,
    pub rank_threshold: f64,
    /// Number of seeded interior sample points for identity checks.
    pub identity_samples: usize,
    pub output_dir: String,
    pub cache_dir: String,
    /// Grids with more CSV rows than this are not cached.
    pub cache_max_rows: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            surface: SurfaceKind::Catenoid,
            n: 4,
            r0: 1.0,
            s_max: 40.0,
            samples: 200_000,
            s_sweep: vec![10.0, 20.0, 40.0],
            l_max_cap: 12,
            spectral_floor: 0.0,
            identity_tol: 1e-6,
            rank_threshold: 1e-8,
            identity_samples: 128,
            output_dir: String::from("out"),
            cache_dir: String::from(".minsurf-cache"),
            cache_max_rows: 400_001,
            seed: 7,
        }
    }
}

pub const CONFIG_KEYS: [&str; 15] = [
    "surface",
    "n",
    "r0",
    "s_max",
    "samples",
    "s_sweep",
    "l_max_cap",
    "spectral_floor",
    "identity_tol",
    "rank_threshold",
    "identity_samples",
    "output_dir",
    "cache_dir",
    "cache_max_rows",
    "seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Apply one `key=value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = |what: &str| ConfigError(format!("invalid value for {key}: {what}"));
        match key {
            "surface" => {
                self.surface = SurfaceKind::parse(value)
                    .ok_or_else(|| bad("expected catenoid or plane"))?;
            }
            "n" => self.n = parse_num(key, value)?,
            "r0" => self.r0 = parse_pos_f64(key, value)?,
            "s_max" => self.s_max = parse_pos_f64(key, value)?,
            "samples" => self.samples = parse_num(key, value)?,
            "s_sweep" => {
                let mut sweep = Vec::new();
                for part in value.split(',') {
                    sweep.push(parse_pos_f64(key, part.trim())?);
                }
                if sweep.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(bad("must be strictly increasing"));
                }
                self.s_sweep = sweep;
            }
            "l_max_cap" => self.l_max_cap = parse_num(key, value)?,
            "spectral_floor" => {
                let v: f64 = value
                    .parse()
                    .map_err(|_| bad("expected a number"))?;
                if v < 0.0 {
                    return Err(bad("must be nonnegative (0 = automatic)"));
                }
                self.spectral_floor = v;
            }
            "identity_tol" => self.identity_tol = parse_pos_f64(key, value)?,
            "rank_threshold" => self.rank_threshold = parse_pos_f64(key, value)?,
            "identity_samples" => self.identity_samples = parse_num(key, value)?,
            "output_dir" => self.output_dir = value.to_string(),
            "cache_dir" => self.cache_dir = value.to_string(),
            "cache_max_rows" => self.cache_max_rows = parse_num(key, value)?,
            "seed" => {
                self.seed = value.parse().map_err(|_| bad("expected an unsigned integer"))?;
            }
            other => return Err(ConfigError(format!("unknown key: {other}"))),
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<RunConfig, ConfigError> {
        let mut config = RunConfig::default();
        let mut seen = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(ConfigError(format!("duplicate key: {key}")));
            }
            config.set(key, value.trim())?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |msg: &str| Err(ConfigError(msg.to_string()));
        if !(3..=7).contains(&self.n) {
            return err("n must be in 3..=7");
        }
        if self.samples == 0 || self.s_max <= 0.0 {
            return err("samples and s_max must be positive");
        }
        if self.s_sweep.is_empty() {
            return err("s_sweep must be nonempty");
        }
        if self.s_sweep.last().copied().unwrap() > self.s_max * (1.0 + 1e-12) {
            return err("s_sweep must not exceed s_max");
        }
        if self.identity_samples == 0 || self.cache_max_rows == 0 || self.l_max_cap == 0 {
            return err("identity_samples, cache_max_rows and l_max_cap must be positive");
        }
        Ok(())
    }

    /// Render as a `key=value` file that parses back to an equal config.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "surface={}", self.surface.as_str());
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "r0={}", fmt_f64(self.r0));
        let _ = writeln!(out, "s_max={}", fmt_f64(self.s_max));
        let _ = writeln!(out, "samples={}", self.samples);
        let sweep: Vec<String> = self.s_sweep.iter().map(|s| fmt_f64(*s)).collect();
        let _ = writeln!(out, "s_sweep={}", sweep.join(","));
        let _ = writeln!(out, "l_max_cap={}", self.l_max_cap);
        let _ = writeln!(out, "spectral_floor={}", fmt_f64(self.spectral_floor));
        let _ = writeln!(out, "identity_tol={}", fmt_f64(self.identity_tol));
        let _ = writeln!(out, "rank_threshold={}", fmt_f64(self.rank_threshold));
        let _ = writeln!(out, "identity_samples={}", self.identity_samples);
        let _ = writeln!(out, "output_dir={}", self.output_dir);
        let _ = writeln!(out, "cache_dir={}", self.cache_dir);
        let _ = writeln!(out, "cache_max_rows={}", self.cache_max_rows);
        let _ = writeln!(out, "seed={}", self.seed);
        out
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError(format!("invalid value for {key}: {value}")))
}

fn parse_pos_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = parse_num(key, value)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError(format!("{key} must be positive, got {value}")))
    }
}
