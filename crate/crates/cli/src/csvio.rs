//! CSV artifacts and the profile sidecar metadata format. All floats are
//! written at 17 significant digits so files round-trip exactly.

use std::io::{self, Write};
use std::path::Path;

use minsurf_core::profile::{ProfileGrid, SurfaceKind};

use crate::json::fmt_f64;

pub const PROFILE_FORMAT_VERSION: u32 = 1;

/// Write `s,r,z,rp,zp` rows for a grid.
pub fn write_profile_csv(grid: &ProfileGrid, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "s,r,z,rp,zp")?;
    for i in 0..grid.len() {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f64(grid.s[i]),
            fmt_f64(grid.r[i]),
            fmt_f64(grid.z[i]),
            fmt_f64(grid.rp[i]),
            fmt_f64(grid.zp[i]),
        )?;
    }
    Ok(())
}

/// Sidecar metadata: `key=value` lines.
pub fn profile_metadata(grid: &ProfileGrid) -> String {
    format!(
        "n={}\nr0={}\nh={}\ns_max={}\nkind={}\nformat_version={}\n",
        grid.n,
        fmt_f64(grid.r0),
        fmt_f64(grid.h),
        fmt_f64(grid.s_max()),
        grid.kind.as_str(),
        PROFILE_FORMAT_VERSION,
    )
}

/// Rebuild a grid from CSV + sidecar text; validates the result.
pub fn read_profile(csv: &str, meta: &str) -> io::Result<ProfileGrid> {
    let bad = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut n = 0usize;
    let mut r0 = 0.0f64;
    let mut h = 0.0f64;
    let mut kind = None;
    let mut version = 0u32;
    for line in meta.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("bad metadata line: {line}")))?;
        match k {
            "n" => n = v.parse().map_err(|e| bad(format!("n: {e}")))?,
            "r0" => r0 = v.parse().map_err(|e| bad(format!("r0: {e}")))?,
            "h" => h = v.parse().map_err(|e| bad(format!("h: {e}")))?,
            "s_max" => {}
            "kind" => kind = SurfaceKind::parse(v),
            "format_version" => version = v.parse().map_err(|e| bad(format!("version: {e}")))?,
            other => return Err(bad(format!("unknown metadata key: {other}"))),
        }
    }
    if version != PROFILE_FORMAT_VERSION {
        return Err(bad(format!("unsupported format_version {version}")));
    }
    let kind = kind.ok_or_else(|| bad(String::from("missing kind")))?;

    let mut rows = csv.lines();
    let header = rows.next().unwrap_or("");
    if header.trim() != "s,r,z,rp,zp" {
        return Err(bad(format!("unexpected CSV header: {header}")));
    }
    let (mut s, mut r, mut z, mut rp, mut zp) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, row) in rows.enumerate() {
        let row = row.trim();
        if row.is_empty() {
            continue;
        }
        let mut cols = row.split(',');
        let mut next = || -> io::Result<f64> {
            cols.next()
                .ok_or_else(|| bad(format!("row {i}: too few columns")))?
                .parse()
                .map_err(|e| bad(format!("row {i}: {e}")))
        };
        s.push(next()?);
        r.push(next()?);
        z.push(next()?);
        rp.push(next()?);
        zp.push(next()?);
    }
    let grid = ProfileGrid {
        n,
        r0,
        h,
        s,
        r,
        z,
        rp,
        zp,
        kind,
    };
    grid.validate()
        .map_err(|e| bad(format!("cached grid fails invariants: {e}")))?;
    Ok(grid)
}

/// Per-mode eigenvalue table: `S,l,lambda1,lambda2,neg_count`.
pub fn write_spectrum_csv(
    report: &minsurf_core::spectral::SpectralReport,
    mut w: impl Write,
) -> io::Result<()> {
    writeln!(w, "S,l,lambda1,lambda2,neg_count")?;
    for entry in &report.sweep {
        for mode in &entry.modes {
            let l1 = mode.lowest.first().copied().unwrap_or(f64::NAN);
            let l2 = mode.lowest.get(1).copied().unwrap_or(f64::NAN);
            writeln!(
                w,
                "{},{},{},{},{}",
                fmt_f64(entry.s),
                mode.l,
                fmt_f64(l1),
                fmt_f64(l2),
                mode.negative_count
            )?;
        }
    }
    Ok(())
}

/// Harmonic function table: `s,phi,omega_radial`.
pub fn write_harmonic_csv(
    grid: &ProfileGrid,
    data: &minsurf_core::harmonic::HarmonicData,
    mut w: impl Write,
) -> io::Result<()> {
    writeln!(w, "s,phi,omega_radial")?;
    for i in 0..grid.len() {
        writeln!(
            w,
            "{},{},{}",
            fmt_f64(grid.s[i]),
            fmt_f64(data.phi[i]),
            fmt_f64(data.omega_radial[i])
        )?;
    }
    Ok(())
}

/// Per-pair quadratic-form table: `i,j,Q,residual`.
pub fn write_qsum_csv(
    terms: &[(usize, usize, f64, f64)],
    mut w: impl Write,
) -> io::Result<()> {
    writeln!(w, "i,j,Q,residual")?;
    for (i, j, q, res) in terms {
        writeln!(w, "{},{},{},{}", i, j, fmt_f64(*q), fmt_f64(*res))?;
    }
    Ok(())
}

/// Atomic file write: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp.{}",
        path.file_name().unwrap_or_default().to_string_lossy(),
        std::process::id()
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
