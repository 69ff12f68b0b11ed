//! Content-keyed profile cache: grids are keyed by `(kind, n, r0, s_max,
//! samples)`, stored as CSV + sidecar, and written atomically. Deleting
//! the cache directory is always safe; values round-trip exactly, so a
//! cold and a warm run produce identical artifacts.

use std::path::{Path, PathBuf};

use minsurf_core::profile::{ProfileGrid, SurfaceKind};

use crate::csvio;
use crate::json::fmt_f64;

/// Environment variable overriding the configured cache directory.
pub const CACHE_DIR_ENV: &str = "MINSURF_CACHE_DIR";

pub fn effective_cache_dir(configured: &str) -> PathBuf {
    match std::env::var(CACHE_DIR_ENV) {
        Ok(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(configured),
    }
}

fn cache_key(kind: SurfaceKind, n: usize, r0: f64, s_max: f64, samples: usize) -> String {
    format!(
        "{}_n{}_r0{}_s{}_N{}",
        kind.as_str(),
        n,
        fmt_f64(r0),
        fmt_f64(s_max),
        samples
    )
}

/// Load a cached grid if present and intact.
pub fn load(
    dir: &Path,
    kind: SurfaceKind,
    n: usize,
    r0: f64,
    s_max: f64,
    samples: usize,
) -> Option<ProfileGrid> {
    let key = cache_key(kind, n, r0, s_max, samples);
    let csv = std::fs::read_to_string(dir.join(format!("{key}.csv"))).ok()?;
    let meta = std::fs::read_to_string(dir.join(format!("{key}.meta"))).ok()?;
    csvio::read_profile(&csv, &meta).ok()
}

/// Store a grid (atomic temp-write then rename for both files).
pub fn store(dir: &Path, grid: &ProfileGrid, samples: usize) -> std::io::Result<()> {
    let key = cache_key(grid.kind, grid.n, grid.r0, grid.s_max(), samples);
    let mut csv = Vec::new();
    csvio::write_profile_csv(grid, &mut csv)?;
    csvio::write_atomic(&dir.join(format!("{key}.csv")), &csv)?;
    csvio::write_atomic(
        &dir.join(format!("{key}.meta")),
        csvio::profile_metadata(grid).as_bytes(),
    )
}

/// Get a grid through the cache: load on hit, compute and (for grids
/// within the row budget) store on miss.
pub fn grid_through_cache(
    dir: &Path,
    kind: SurfaceKind,
    n: usize,
    r0: f64,
    s_max: f64,
    samples: usize,
    max_rows: usize,
) -> minsurf_core::Result<ProfileGrid> {
    if let Some(grid) = load(dir, kind, n, r0, s_max, samples) {
        return Ok(grid);
    }
    let grid = match kind {
        SurfaceKind::Catenoid => ProfileGrid::catenoid(n, r0, s_max, samples)?,
        SurfaceKind::Plane => ProfileGrid::plane(n, s_max, samples)?,
    };
    if grid.len() <= max_rows {
        // cache misses are not fatal
        let _ = store(dir, &grid, samples);
    }
    Ok(grid)
}
