//! Extrinsic geometry of the model hypersurfaces: principal curvatures,
//! total curvature, end decay, and the large-radius level-set and volume
//! quantities.
//!
//! For the profile `(r(s)Θ, z(s))` with unit normal `ν = (-z'Θ, r')`, the
//! spherical directions are principal with curvature `κ_m = z'/r`
//! (multiplicity `n-2`) and the profile direction is principal with
//! `κ_p = -(n-2)κ_m`, so the shape operator is trace-free and
//! `|A|² = (n-1)(n-2)κ_m²`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::profile::{powi, ProfileGrid, SurfaceKind};
use crate::quad::{self, KahanSum};
use crate::sphere::{unit_ball_volume, unit_sphere_volume};
use crate::{Error, Result};

/// Pointwise extrinsic data at one profile sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryFrame {
    /// Principal curvature of the spherical directions (multiplicity n-2).
    pub kappa_m: f64,
    /// Principal curvature of the profile direction.
    pub kappa_p: f64,
    /// `|A|²`, the sum of squared principal curvatures.
    pub normsq_a: f64,
    /// Axial normal component `⟨ē_n, ν⟩ = r'`.
    pub nu_axis: f64,
    /// Coefficient `c` with `⟨ē_i, ν⟩ = c·Θ_i` for `i < n`; equals `-z'`.
    pub nu_radial_coeff: f64,
    /// Volume-element radial factor `r^{n-2}`.
    pub weight: f64,
}

/// Extrinsic frame at sample `idx`. The plane (including its axis sample
/// `r = 0`) carries the zero-curvature frame with `ν = ē_n`.
pub fn frame_at(grid: &ProfileGrid, idx: usize) -> GeometryFrame {
    let n = grid.n;
    match grid.kind {
        SurfaceKind::Plane => GeometryFrame {
            kappa_m: 0.0,
            kappa_p: 0.0,
            normsq_a: 0.0,
            nu_axis: 1.0,
            nu_radial_coeff: 0.0,
            weight: grid.weight(idx),
        },
        SurfaceKind::Catenoid => {
            let kappa_m = grid.zp[idx] / grid.r[idx];
            GeometryFrame {
                kappa_m,
                kappa_p: -((n - 2) as f64) * kappa_m,
                normsq_a: ((n - 1) * (n - 2)) as f64 * kappa_m * kappa_m,
                nu_axis: grid.rp[idx],
                nu_radial_coeff: -grid.zp[idx],
                weight: grid.weight(idx),
            }
        }
    }
}

/// `|A|²` at every sample.
pub fn normsq_a_samples(grid: &ProfileGrid) -> Vec<f64> {
    (0..grid.len()).map(|i| frame_at(grid, i).normsq_a).collect()
}

/// Total curvature `∫_Σ |A|^{n-1} dV` with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy)]
pub struct TotalCurvature {
    pub value: f64,
    /// Conservative bound on quadrature-plus-tail error.
    pub error_estimate: f64,
}

/// `∫_Σ |A|^{n-1} dV` by composite Simpson over the grid plus the analytic
/// tail of `|A| = C·r^{1-n}` beyond the last sample. The unit-sphere
/// factor `vol(S^{n-2})` is included.
pub fn total_curvature(grid: &ProfileGrid, rel_tol: f64) -> Result<TotalCurvature> {
    let n = grid.n;
    let sphere = unit_sphere_volume(n - 2);
    if grid.kind == SurfaceKind::Plane {
        return Ok(TotalCurvature {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let coeff = libm::pow(((n - 1) * (n - 2)) as f64, (n - 1) as f64 / 2.0);
    // |A|^{n-1} r^{n-2} = coeff · (z'/r)^{n-1} · r^{n-2}
    let integrand: Vec<f64> = (0..grid.len())
        .map(|i| {
            let km = grid.zp[i] / grid.r[i];
            coeff * powi(km, (n - 1) as i32) * grid.weight(i)
        })
        .collect();
    let main_s = quad::simpson(&integrand, grid.h);
    let main_t = quad::trapezoid(&integrand, grid.h);
    // per-end tail: coeff · r0^{(n-2)(n-1)} · ∫ r^{-(n²-3n+3)} ds
    let a = -((n * n - 3 * n + 3) as f64);
    let tail = coeff * libm::pow(grid.r0, ((n - 2) * (n - 1)) as f64)
        * grid.tail_integral_power(a)?;
    let u_end = powi(grid.r0 / grid.r.last().unwrap(), 2 * (n as i32 - 2));
    let value = sphere * (main_s + 2.0 * tail);
    let error_estimate = sphere * ((main_s - main_t).abs() + 2.0 * tail * u_end);
    if error_estimate > rel_tol * value.abs() {
        return Err(Error::Accuracy {
            requested: rel_tol,
            achieved: error_estimate / value.abs(),
        });
    }
    Ok(TotalCurvature {
        value,
        error_estimate,
    })
}

/// Decay fit of one end viewed as a graph `u(r) = z_∞ - z(r)` over the
/// hyperplane `{x_n = z_∞}`.
#[derive(Debug, Clone, Copy)]
pub struct EndDecayFit {
    /// Least-squares slope of `log u` against `log r` (expected `3 - n`).
    pub exponent_u: f64,
    /// Slope of `log |dz/dr|` against `log r` (expected `2 - n`).
    pub exponent_grad: f64,
    /// `r^{n-3}·u` averaged over the outermost samples
    /// (limit `r0^{n-2}/(n-3)`).
    pub limit_of_scaled_u: f64,
    /// Fit window in `r`.
    pub window: (f64, f64),
}

/// Result of the end-asymptotics fit; the plane has the trivial end `u ≡ 0`.
#[derive(Debug, Clone, Copy)]
pub enum EndAsymptotics {
    TrivialEnd,
    Fit(EndDecayFit),
}

/// Fit the end decay over the outer decade `[r_max/10, r_max]`.
pub fn end_asymptotics(grid: &ProfileGrid) -> Result<EndAsymptotics> {
    if grid.kind == SurfaceKind::Plane {
        return Ok(EndAsymptotics::TrivialEnd);
    }
    let r_max = *grid.r.last().unwrap();
    let r_lo = r_max / 10.0;
    if r_lo <= grid.r0 {
        return Err(Error::InsufficientRange {
            needed: 10.0 * grid.r0,
            available: r_max / grid.r0,
        });
    }
    let z_inf = grid.z_infinity()?;
    let c = grid.center();
    let mut log_r = Vec::new();
    let mut log_u = Vec::new();
    let mut log_grad = Vec::new();
    for i in c..grid.len() {
        if grid.r[i] >= r_lo {
            let u = z_inf - grid.z[i];
            log_r.push(libm::log(grid.r[i]));
            log_u.push(libm::log(u));
            log_grad.push(libm::log(grid.zp[i] / grid.rp[i]));
        }
    }
    if log_r.len() < 10 {
        return Err(Error::InsufficientRange {
            needed: 10.0,
            available: log_r.len() as f64,
        });
    }
    let scale = (n_minus(grid.n, 3)) as f64;
    let outer = 8.min(grid.len() - c);
    let mut scaled = KahanSum::new();
    for i in grid.len() - outer..grid.len() {
        scaled.add(libm::pow(grid.r[i], scale) * (z_inf - grid.z[i]));
    }
    Ok(EndAsymptotics::Fit(EndDecayFit {
        exponent_u: quad::ls_slope(&log_r, &log_u),
        exponent_grad: quad::ls_slope(&log_r, &log_grad),
        limit_of_scaled_u: scaled.value() / outer as f64,
        window: (r_lo, r_max),
    }))
}

fn n_minus(n: usize, k: usize) -> usize {
    n - k
}

/// Level-set pinching, ball-volume growth ratio, and scale-invariant
/// curvature decay at Euclidean radius `R`.
#[derive(Debug, Clone, Copy)]
pub struct RadialBallCheck {
    /// `|1/r² - 1/ρ²|` between the level-set sphere radius `r` and the
    /// Euclidean distance `ρ = R` of the level set.
    pub pinching_residual: f64,
    /// `vol(Σ ∩ B_R) / (ω_{n-1} R^{n-1})`; tends to the number of ends.
    pub volume_ratio: f64,
    /// `max |A|·|x|` over samples with `|x| ≥ R`.
    pub curvature_decay: f64,
}

/// Evaluate the three large-radius checks at Euclidean radius `R`.
pub fn levelset_and_volume_checks(grid: &ProfileGrid, radius: f64) -> Result<RadialBallCheck> {
    if radius <= 0.0 {
        return Err(Error::Domain(String::from("radius must be positive")));
    }
    let rho: Vec<f64> = (0..grid.len())
        .map(|i| libm::sqrt(grid.r[i] * grid.r[i] + grid.z[i] * grid.z[i]))
        .collect();
    let rho_max = rho.iter().cloned().fold(0.0, f64::max);
    if radius > rho_max {
        return Err(Error::InsufficientRange {
            needed: radius,
            available: rho_max,
        });
    }

    // level-set pinching: the level set {|x| = R} on each end is the round
    // sphere of radius r(s*) where ρ(s*) = R
    let pinching_residual = match grid.kind {
        SurfaceKind::Plane => 0.0,
        SurfaceKind::Catenoid => {
            let c = grid.center();
            let mut idx = c;
            while idx + 1 < grid.len() && rho[idx + 1] < radius {
                idx += 1;
            }
            let (i0, i1) = (idx, (idx + 1).min(grid.len() - 1));
            let t = if rho[i1] > rho[i0] {
                ((radius - rho[i0]) / (rho[i1] - rho[i0])).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let r_star = grid.r[i0] + t * (grid.r[i1] - grid.r[i0]);
            (1.0 / (r_star * r_star) - 1.0 / (radius * radius)).abs()
        }
    };

    // co-area volume: vol(Σ ∩ B_R) = vol(S^{n-2}) ∫_{ρ ≤ R} r^{n-2} ds
    let mut vol = KahanSum::new();
    for i in 0..grid.len() - 1 {
        let inside0 = rho[i] <= radius;
        let inside1 = rho[i + 1] <= radius;
        let w0 = grid.weight(i);
        let w1 = grid.weight(i + 1);
        if inside0 && inside1 {
            vol.add(0.5 * grid.h * (w0 + w1));
        } else if inside0 != inside1 {
            // partial cell up to the crossing, linear in s
            let (t, wa, wb) = if inside0 {
                let t = (radius - rho[i]) / (rho[i + 1] - rho[i]);
                (t, w0, w1)
            } else {
                let t = (radius - rho[i + 1]) / (rho[i] - rho[i + 1]);
                (t, w1, w0)
            };
            vol.add(grid.h * t * (wa + 0.5 * t * (wb - wa)));
        }
    }
    let n = grid.n;
    let volume = unit_sphere_volume(n - 2) * vol.value();
    let volume_ratio = volume / (unit_ball_volume(n - 1) * libm::pow(radius, (n - 1) as f64));

    let mut decay = 0.0f64;
    for i in 0..grid.len() {
        if rho[i] >= radius {
            let f = frame_at(grid, i);
            decay = decay.max(libm::sqrt(f.normsq_a) * rho[i]);
        }
    }

    Ok(RadialBallCheck {
        pinching_residual,
        volume_ratio,
        curvature_decay: decay,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn neck_frame_n4() {
        let g = ProfileGrid::catenoid(4, 1.0, 5.0, 5000).unwrap();
        let f = frame_at(&g, g.center());
        assert!((f.kappa_m - 1.0).abs() < 1e-14);
        assert!((f.kappa_p + 2.0).abs() < 1e-14);
        assert!((f.normsq_a - 6.0).abs() < 1e-13);
        assert!((f.nu_axis).abs() < 1e-14);
        assert!((f.nu_radial_coeff + 1.0).abs() < 1e-14);
    }

    #[test]
    fn frame_invariants_everywhere() {
        let g = ProfileGrid::catenoid(5, 1.3, 12.0, 8000).unwrap();
        for i in (0..g.len()).step_by(131) {
            let f = frame_at(&g, i);
            assert!((f.kappa_p + 3.0 * f.kappa_m).abs() < 1e-12);
            assert!((f.normsq_a - 12.0 * f.kappa_m * f.kappa_m).abs() < 1e-12);
            assert!((f.nu_axis * f.nu_axis + f.nu_radial_coeff * f.nu_radial_coeff - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn plane_frame_is_flat() {
        let g = ProfileGrid::plane(4, 10.0, 100).unwrap();
        let f = frame_at(&g, 0); // axis sample r = 0
        assert_eq!(f.kappa_m, 0.0);
        assert_eq!(f.normsq_a, 0.0);
        assert_eq!(f.nu_axis, 1.0);
        assert_eq!(f.nu_radial_coeff, 0.0);
    }

    #[test]
    fn profile_to_sphere_curvature_ratio_is_exact() {
        let g = ProfileGrid::catenoid(4, 1.0, 10.0, 4000).unwrap();
        for i in (0..g.len()).step_by(271) {
            let f = frame_at(&g, i);
            assert_eq!(f.kappa_p / f.kappa_m, -2.0);
        }
    }

    #[test]
    fn total_curvature_matches_closed_form_n4() {
        // 6^{3/2} π² for every neck radius
        let exact = libm::pow(6.0, 1.5) * PI * PI;
        let g = ProfileGrid::catenoid(4, 1.0, 40.0, 80_000).unwrap();
        let tc = total_curvature(&g, 1e-4).unwrap();
        assert!(
            (tc.value - exact).abs() < 1e-4 * exact,
            "{} vs {}",
            tc.value,
            exact
        );
        let g2 = ProfileGrid::catenoid(4, 2.0, 80.0, 160_000).unwrap();
        let tc2 = total_curvature(&g2, 1e-4).unwrap();
        assert!((tc2.value - tc.value).abs() < 1e-6 * tc.value);
    }

    #[test]
    fn total_curvature_rejects_coarse_grids() {
        let g = ProfileGrid::catenoid(4, 1.0, 5.0, 40).unwrap();
        match total_curvature(&g, 1e-10) {
            Err(Error::Accuracy { achieved, .. }) => assert!(achieved > 1e-10),
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn plane_total_curvature_is_zero() {
        let g = ProfileGrid::plane(5, 10.0, 100).unwrap();
        assert_eq!(total_curvature(&g, 1e-6).unwrap().value, 0.0);
    }

    #[test]
    fn end_fit_recovers_decay_exponents() {
        let g = ProfileGrid::catenoid(4, 1.0, 40.0, 200_000).unwrap();
        match end_asymptotics(&g).unwrap() {
            EndAsymptotics::Fit(fit) => {
                assert!((fit.exponent_u + 1.0).abs() < 0.05, "{}", fit.exponent_u);
                assert!((fit.exponent_grad + 2.0).abs() < 0.05, "{}", fit.exponent_grad);
                assert!((fit.limit_of_scaled_u - 1.0).abs() < 0.02, "{}", fit.limit_of_scaled_u);
            }
            EndAsymptotics::TrivialEnd => panic!("catenoid end is not trivial"),
        }
        let g5 = ProfileGrid::catenoid(5, 1.0, 40.0, 200_000).unwrap();
        match end_asymptotics(&g5).unwrap() {
            EndAsymptotics::Fit(fit) => {
                assert!((fit.exponent_u + 2.0).abs() < 0.05, "{}", fit.exponent_u);
                // limit r0^{n-2}/(n-3) = 1/2
                assert!((fit.limit_of_scaled_u - 0.5).abs() < 0.01, "{}", fit.limit_of_scaled_u);
            }
            EndAsymptotics::TrivialEnd => panic!(),
        }
    }

    #[test]
    fn plane_end_is_trivial() {
        let g = ProfileGrid::plane(4, 30.0, 300).unwrap();
        assert!(matches!(end_asymptotics(&g).unwrap(), EndAsymptotics::TrivialEnd));
    }

    #[test]
    fn short_grid_fit_errors() {
        let g = ProfileGrid::catenoid(4, 1.0, 5.0, 5000).unwrap();
        assert!(matches!(
            end_asymptotics(&g),
            Err(Error::InsufficientRange { .. })
        ));
    }

    #[test]
    fn plane_ball_ratio_is_one() {
        let g = ProfileGrid::plane(4, 30.0, 30_000).unwrap();
        let c = levelset_and_volume_checks(&g, 20.0).unwrap();
        assert!((c.volume_ratio - 1.0).abs() < 1e-8, "{}", c.volume_ratio);
        assert_eq!(c.pinching_residual, 0.0);
        assert_eq!(c.curvature_decay, 0.0);
    }

    #[test]
    fn catenoid_ball_ratio_tends_to_two_ends() {
        let g = ProfileGrid::catenoid(4, 1.0, 40.0, 100_000).unwrap();
        let c = levelset_and_volume_checks(&g, 30.0).unwrap();
        assert!(
            c.volume_ratio > 1.9 && c.volume_ratio < 2.1,
            "{}",
            c.volume_ratio
        );
        // |A|·|x| at R = 30 ≈ √6/900 with a small level-set correction
        let bound = libm::sqrt(6.0) / 900.0 * 1.01;
        assert!(c.curvature_decay <= bound, "{} vs {}", c.curvature_decay, bound);
        assert!(c.curvature_decay < 0.01);
    }

    #[test]
    fn volume_ratio_is_nondecreasing() {
        let g = ProfileGrid::catenoid(4, 1.0, 40.0, 50_000).unwrap();
        let mut prev = 0.0;
        let mut radius = 2.0;
        while radius <= 38.0 {
            let c = levelset_and_volume_checks(&g, radius).unwrap();
            assert!(
                c.volume_ratio >= prev - 1e-6,
                "ratio decreased at R = {radius}: {} after {prev}",
                c.volume_ratio
            );
            prev = c.volume_ratio;
            radius += 1.5;
        }
    }
}
