//! Arclength profiles of minimal hypersurfaces of revolution.
//!
//! A hypersurface of revolution in `R^n` around the `x_n` axis is
//! `(r(s)Θ, z(s))` with `Θ ∈ S^{n-2}` and `(r, z)` a unit-speed profile
//! curve. Minimality is equivalent to the first integral
//!
//! ```text
//!     r^{n-2} z' = r0^{n-2},      r'² + z'² = 1,
//! ```
//!
//! with `r0` the neck radius. The catenoid profile is integrated from the
//! neck with the derived smooth system `r'' = (n-2)(r0/r)^{2(n-2)} / r`,
//! which has no square-root degeneracy at `r' = 0`; the stored derivative
//! samples are then evaluated from the first integral itself, so the
//! unit-speed and first-integral identities hold to rounding at every
//! sample. The hyperplane uses the same radial format (`r = s`, `z = 0`)
//! so all downstream operations run unchanged.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Which model hypersurface a grid represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    Catenoid,
    Plane,
}

impl SurfaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SurfaceKind::Catenoid => "catenoid",
            SurfaceKind::Plane => "plane",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "catenoid" => Some(SurfaceKind::Catenoid),
            "plane" => Some(SurfaceKind::Plane),
            _ => None,
        }
    }

    /// Number of ends of the model surface.
    pub fn ends(&self) -> usize {
        match self {
            SurfaceKind::Catenoid => 2,
            SurfaceKind::Plane => 1,
        }
    }
}

/// Discretized arclength profile `(s, r, z, r', z')` of a minimal
/// hypersurface of revolution; the geometric ground truth every other
/// module consumes.
#[derive(Debug, Clone)]
pub struct ProfileGrid {
    /// Ambient dimension (3 ≤ n ≤ 7; 4 ≤ n ≤ 7 is the supported regime).
    pub n: usize,
    /// Neck radius. Zero for the plane.
    pub r0: f64,
    /// Uniform arclength spacing.
    pub h: f64,
    /// Arclength samples: `[-s_max, s_max]` (catenoid), `[0, s_max]` (plane).
    pub s: Vec<f64>,
    pub r: Vec<f64>,
    pub z: Vec<f64>,
    pub rp: Vec<f64>,
    pub zp: Vec<f64>,
    pub kind: SurfaceKind,
}

/// Index window `[lo, hi]` of a grid; the endpoints carry the Dirichlet
/// boundary of truncated problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl ProfileGrid {
    /// Integrate the catenoid profile with neck radius `r0` out to
    /// arclength `s_max`, `samples` steps per side (grid of `2·samples+1`
    /// nodes). `s_max = 0, samples = 0` yields the single neck sample.
    pub fn catenoid(n: usize, r0: f64, s_max: f64, samples: usize) -> Result<Self> {
        if !(3..=7).contains(&n) {
            return Err(Error::Domain(format!("ambient dimension {n} outside 3..=7")));
        }
        if r0 <= 0.0 || !r0.is_finite() {
            return Err(Error::Domain(format!("neck radius must be positive, got {r0}")));
        }
        if s_max < 0.0 || !s_max.is_finite() {
            return Err(Error::Domain(format!("s_max must be nonnegative, got {s_max}")));
        }
        if (s_max > 0.0) != (samples > 0) {
            return Err(Error::Domain(String::from(
                "s_max and sample count must both be zero or both be positive",
            )));
        }

        let m = (n - 2) as i32;
        let h = if samples == 0 { 0.0 } else { s_max / samples as f64 };

        // One-sided integration from the neck: y = (r, r', z).
        let mut half_r = Vec::with_capacity(samples + 1);
        let mut half_z = Vec::with_capacity(samples + 1);
        half_r.push(r0);
        half_z.push(0.0);
        let rhs = |r: f64, v: f64| -> (f64, f64, f64) {
            let zp = powi(r0 / r, m);
            (v, m as f64 * zp * zp / r, zp)
        };
        let mut r = r0;
        let mut v = 0.0;
        let mut z = 0.0;
        for _ in 0..samples {
            let (k1r, k1v, k1z) = rhs(r, v);
            let (k2r, k2v, k2z) = rhs(r + 0.5 * h * k1r, v + 0.5 * h * k1v);
            let (k3r, k3v, k3z) = rhs(r + 0.5 * h * k2r, v + 0.5 * h * k2v);
            let (k4r, k4v, k4z) = rhs(r + h * k3r, v + h * k3v);
            r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
            half_r.push(r);
            half_z.push(z);
        }

        // Mirror: r even, z odd, hence r' odd and z' even.
        let total = 2 * samples + 1;
        let mut s_arr = Vec::with_capacity(total);
        let mut r_arr = Vec::with_capacity(total);
        let mut z_arr = Vec::with_capacity(total);
        let mut rp_arr = Vec::with_capacity(total);
        let mut zp_arr = Vec::with_capacity(total);
        for i in 0..total {
            let k = i as i64 - samples as i64;
            let ku = k.unsigned_abs() as usize;
            let rr = half_r[ku];
            let zp = powi(r0 / rr, m);
            let rp_mag = libm::sqrt((1.0 - zp * zp).max(0.0));
            s_arr.push(k as f64 * h);
            r_arr.push(rr);
            z_arr.push(if k < 0 { -half_z[ku] } else { half_z[ku] });
            rp_arr.push(if k < 0 { -rp_mag } else { rp_mag });
            zp_arr.push(zp);
        }

        let grid = ProfileGrid {
            n,
            r0,
            h,
            s: s_arr,
            r: r_arr,
            z: z_arr,
            rp: rp_arr,
            zp: zp_arr,
            kind: SurfaceKind::Catenoid,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// The hyperplane in the radial format: `r(s) = s`, `z ≡ 0` on
    /// `[0, s_max]` with `samples + 1` nodes.
    pub fn plane(n: usize, s_max: f64, samples: usize) -> Result<Self> {
        if !(3..=7).contains(&n) {
            return Err(Error::Domain(format!("ambient dimension {n} outside 3..=7")));
        }
        if s_max < 0.0 || (s_max > 0.0) != (samples > 0) {
            return Err(Error::Domain(String::from("invalid plane extent")));
        }
        let h = if samples == 0 { 0.0 } else { s_max / samples as f64 };
        let total = samples + 1;
        let s: Vec<f64> = (0..total).map(|i| i as f64 * h).collect();
        Ok(ProfileGrid {
            n,
            r0: 0.0,
            h,
            r: s.clone(),
            z: alloc::vec![0.0; total],
            rp: alloc::vec![1.0; total],
            zp: alloc::vec![0.0; total],
            s,
            kind: SurfaceKind::Plane,
        })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Largest arclength reached.
    pub fn s_max(&self) -> f64 {
        self.s.last().copied().unwrap_or(0.0)
    }

    /// Index of the `s = 0` sample.
    pub fn center(&self) -> usize {
        match self.kind {
            SurfaceKind::Catenoid => (self.len() - 1) / 2,
            SurfaceKind::Plane => 0,
        }
    }

    /// Grid window for the truncated surface `{|s| ≤ bound}` (catenoid) or
    /// `{0 ≤ s ≤ bound}` (plane).
    pub fn window(&self, bound: f64) -> Result<Window> {
        if bound <= 0.0 || bound > self.s_max() * (1.0 + 1e-12) {
            return Err(Error::InsufficientRange {
                needed: bound,
                available: self.s_max(),
            });
        }
        let steps = libm::round(bound / self.h) as usize;
        let c = self.center();
        Ok(match self.kind {
            SurfaceKind::Catenoid => Window {
                lo: c - steps.min(c),
                hi: (c + steps).min(self.len() - 1),
            },
            SurfaceKind::Plane => Window {
                lo: 0,
                hi: steps.min(self.len() - 1),
            },
        })
    }

    pub fn full_window(&self) -> Window {
        Window {
            lo: 0,
            hi: self.len() - 1,
        }
    }

    /// Every `stride`-th sample of this grid: the same surface at spacing
    /// `stride·h`. Requires the stride to preserve both endpoints (and
    /// the neck sample for the catenoid).
    pub fn decimated(&self, stride: usize) -> Result<Self> {
        if stride == 0 || !(self.len() - 1).is_multiple_of(stride) {
            return Err(Error::Domain(format!(
                "stride {stride} does not preserve the grid endpoints"
            )));
        }
        if self.kind == SurfaceKind::Catenoid && !self.center().is_multiple_of(stride) {
            return Err(Error::Domain(format!(
                "stride {stride} does not preserve the neck sample"
            )));
        }
        let take = |v: &Vec<f64>| v.iter().step_by(stride).copied().collect();
        Ok(ProfileGrid {
            n: self.n,
            r0: self.r0,
            h: self.h * stride as f64,
            s: take(&self.s),
            r: take(&self.r),
            z: take(&self.z),
            rp: take(&self.rp),
            zp: take(&self.zp),
            kind: self.kind,
        })
    }

    /// Same surface on the same extent with `factor`× as many samples.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let per_side = match self.kind {
            SurfaceKind::Catenoid => (self.len() - 1) / 2,
            SurfaceKind::Plane => self.len() - 1,
        };
        match self.kind {
            SurfaceKind::Catenoid => {
                ProfileGrid::catenoid(self.n, self.r0, self.s_max(), per_side * factor)
            }
            SurfaceKind::Plane => ProfileGrid::plane(self.n, self.s_max(), per_side * factor),
        }
    }

    /// Volume-element radial factor `r^{n-2}` at a sample.
    #[inline]
    pub fn weight(&self, i: usize) -> f64 {
        powi(self.r[i], (self.n - 2) as i32)
    }

    /// `∫_{s_max}^∞ r(s)^a ds` per end, evaluated analytically from the
    /// end asymptotics: with `u = (r0/r)^{2(n-2)}`, `ds = (1-u)^{-1/2} dr`
    /// expands to `(1 + u/2 + 3u²/8 + O(u³)) dr`, and each term is a
    /// convergent power integral for `a < -1`.
    pub fn tail_integral_power(&self, a: f64) -> Result<f64> {
        if a >= -1.0 {
            return Err(Error::NotIntegrable(format!(
                "tail exponent {a} is not integrable"
            )));
        }
        let big_r = *self.r.last().unwrap();
        match self.kind {
            SurfaceKind::Plane => Ok(libm::pow(big_r, a + 1.0) / (-a - 1.0)),
            SurfaceKind::Catenoid => {
                let m = 2.0 * (self.n - 2) as f64;
                let term = |coeff: f64, shift: f64| {
                    coeff * libm::pow(big_r, a + 1.0 - shift) / (shift - a - 1.0)
                };
                Ok(term(1.0, 0.0)
                    + term(0.5 * libm::pow(self.r0, m), m)
                    + term(0.375 * libm::pow(self.r0, 2.0 * m), 2.0 * m))
            }
        }
    }

    /// Asymptotic height `z_∞ = lim z(s)`: the last sample plus the
    /// analytic tail of `z' = r0^{n-2} r^{2-n}`. Diverges for `n = 3`.
    pub fn z_infinity(&self) -> Result<f64> {
        if self.kind != SurfaceKind::Catenoid {
            return Err(Error::Domain(String::from("z_infinity needs a catenoid grid")));
        }
        if self.n == 3 {
            return Err(Error::Divergent(String::from(
                "catenoid height grows logarithmically in R^3",
            )));
        }
        let m = (self.n - 2) as f64;
        let tail = self.tail_integral_power(-m)?;
        Ok(self.z.last().unwrap() + libm::pow(self.r0, m) * tail)
    }

    /// Check every stated grid invariant; called by the constructors.
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InternalConsistency(String::from(what)))
            }
        };
        for i in 0..self.len() {
            let speed = self.rp[i] * self.rp[i] + self.zp[i] * self.zp[i];
            check((speed - 1.0).abs() <= 1e-10, "unit speed violated")?;
            if i + 1 < self.len() {
                check(
                    (self.s[i + 1] - self.s[i] - self.h).abs()
                        <= 1e-10 * (1.0 + self.s[i].abs()),
                    "arclength spacing not uniform",
                )?;
            }
        }
        if self.kind == SurfaceKind::Catenoid {
            let m = (self.n - 2) as i32;
            let c = powi(self.r0, m);
            let center = self.center();
            for i in 0..self.len() {
                check(
                    (powi(self.r[i], m) * self.zp[i] - c).abs() <= 1e-8,
                    "first integral violated",
                )?;
                let j = self.len() - 1 - i;
                check((self.r[i] - self.r[j]).abs() <= 1e-10, "r reflection violated")?;
                check((self.z[i] + self.z[j]).abs() <= 1e-10, "z reflection violated")?;
                if i != center {
                    check(self.r[i] > self.r0, "r must exceed r0 away from the neck")?;
                }
            }
            check(self.r[center] == self.r0, "neck sample must sit at r0")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn powi(x: f64, k: i32) -> f64 {
    if k < 0 {
        return 1.0 / powi(x, -k);
    }
    let mut acc = 1.0;
    let mut base = x;
    let mut k = k as u32;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}
