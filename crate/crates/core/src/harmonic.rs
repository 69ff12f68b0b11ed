//! Bounded harmonic functions on the model surfaces and the `L²` harmonic
//! 1-forms they generate.
//!
//! On a surface of revolution the rotationally invariant harmonic equation
//! `(r^{n-2} φ')' = 0` collapses to one quadrature:
//! `φ(s) = ∫_{-S}^{s} r^{2-n} / ∫_{-S}^{S} r^{2-n}` solves the two-point
//! Dirichlet problem with boundary data (0, 1), and its `S → ∞` limit
//! exists exactly when `∫ r^{2-n} ds` converges, i.e. for `n ≥ 4`. The
//! truncation sweep is kept so energy monotonicity and the limit process
//! stay observable.

use alloc::string::String;
use alloc::vec::Vec;

use crate::profile::{powi, ProfileGrid, SurfaceKind, Window};
use crate::quad;
use crate::sphere::unit_sphere_volume;
use crate::{Error, Result};

/// A bounded harmonic function with its differential and energies.
#[derive(Debug, Clone)]
pub struct HarmonicData {
    /// Samples on the full grid (constant-extended outside the window).
    pub phi: Vec<f64>,
    /// Radial coefficient of `ω = dφ` (zero outside the window).
    pub omega_radial: Vec<f64>,
    /// `∫ |∇φ|² dV`.
    pub dirichlet_energy: f64,
    /// `∫ |ω|² dV` (= the Dirichlet energy for `ω = dφ`).
    pub l2_norm_form: f64,
    /// Truncation radius; `None` for the limit object.
    pub truncation: Option<f64>,
    /// Boundary/limit values at the `s < 0` and `s > 0` ends.
    pub end_values: (f64, f64),
    /// Equal boundary data collapses to a constant.
    pub trivial: bool,
    pub window: Window,
}

/// Normalization data shared by the truncated and limit constructions.
fn integrate_profile_weight(grid: &ProfileGrid, window: Window) -> Vec<f64> {
    let a = -((grid.n - 2) as i32);
    let integrand: Vec<f64> = (window.lo..=window.hi)
        .map(|i| powi(grid.r[i], a))
        .collect();
    quad::cumulative_simpson(&integrand, grid.h)
}

/// Solve the truncated Dirichlet problem on `[-S, S]` with the given
/// end values (labels per end by sign of `s`).
pub fn truncated_harmonic(
    grid: &ProfileGrid,
    s_bound: f64,
    end_values: (f64, f64),
) -> Result<HarmonicData> {
    if grid.kind != SurfaceKind::Catenoid {
        return Err(Error::Domain(String::from(
            "the truncated two-point problem needs the two-ended surface",
        )));
    }
    let window = grid.window(s_bound)?;
    let (a, b) = end_values;
    let cumulative = integrate_profile_weight(grid, window);
    let total = *cumulative.last().unwrap();
    let mut phi = Vec::with_capacity(grid.len());
    let mut omega = Vec::with_capacity(grid.len());
    let scale = (b - a) / total;
    for i in 0..grid.len() {
        if i < window.lo {
            phi.push(a);
            omega.push(0.0);
        } else if i > window.hi {
            phi.push(b);
            omega.push(0.0);
        } else {
            phi.push(a + (b - a) * cumulative[i - window.lo] / total);
            omega.push(scale * powi(grid.r[i], -((grid.n - 2) as i32)));
        }
    }
    // energy of the exact solution: V·(b-a)²/∫r^{2-n}
    let energy = unit_sphere_volume(grid.n - 2) * (b - a) * (b - a) / total;
    Ok(HarmonicData {
        phi,
        omega_radial: omega,
        dirichlet_energy: energy,
        l2_norm_form: energy,
        truncation: Some(s_bound),
        end_values,
        trivial: a == b,
        window,
    })
}

/// The `S → ∞` limit of the truncated problems with end data (0, 1),
/// via the convergent improper quadrature of `r^{2-n}`. Fails for `n = 3`,
/// where the integral diverges logarithmically.
pub fn limit_harmonic(grid: &ProfileGrid) -> Result<HarmonicData> {
    if grid.kind != SurfaceKind::Catenoid {
        return Err(Error::Domain(String::from(
            "the limit construction needs the two-ended surface",
        )));
    }
    if grid.n == 3 {
        return Err(Error::Divergent(String::from(
            "∫ r^{2-n} ds = ∫ r^{-1} ds diverges logarithmically; bounded harmonic \
             limits with finite energy exist only for n ≥ 4",
        )));
    }
    let window = grid.full_window();
    let tail = grid.tail_integral_power(-((grid.n - 2) as f64))?;
    let cumulative = integrate_profile_weight(grid, window);
    let total = *cumulative.last().unwrap() + 2.0 * tail;
    let mut phi = Vec::with_capacity(grid.len());
    let mut omega = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        phi.push((tail + cumulative[i]) / total);
        omega.push(powi(grid.r[i], -((grid.n - 2) as i32)) / total);
    }
    let energy = unit_sphere_volume(grid.n - 2) / total;
    Ok(HarmonicData {
        phi,
        omega_radial: omega,
        dirichlet_energy: energy,
        l2_norm_form: energy,
        truncation: None,
        end_values: (0.0, 1.0),
        trivial: false,
        window,
    })
}

/// Basis of closed `L²` harmonic 1-forms on a model surface.
#[derive(Debug, Clone)]
pub struct FormBasis {
    pub forms: Vec<HarmonicData>,
    /// `#ends + b₁(Σ̄) - 1` for the model surfaces.
    pub dimension: usize,
    /// Count of bounded harmonic functions including constants (`#ends`).
    pub function_count: usize,
}

/// The harmonic 1-form basis: one generator `dφ_limit` on the catenoid
/// (two ends, `b₁ = 0`), empty on the plane (one end). Both the function
/// count (`k`) and the form count (`k - 1`) are reported.
pub fn harmonic_one_form_basis(grid: &ProfileGrid) -> Result<FormBasis> {
    match grid.kind {
        SurfaceKind::Plane => Ok(FormBasis {
            forms: Vec::new(),
            dimension: 0,
            function_count: 1,
        }),
        SurfaceKind::Catenoid => {
            let limit = limit_harmonic(grid)?;
            Ok(FormBasis {
                forms: alloc::vec![limit],
                dimension: 1,
                function_count: 2,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::sturm_liouville_term;

    fn catenoid(n: usize, s: f64, samples: usize) -> ProfileGrid {
        ProfileGrid::catenoid(n, 1.0, s, samples).unwrap()
    }

    #[test]
    fn midpoint_value_is_half() {
        let g = catenoid(4, 30.0, 120_000);
        let f = truncated_harmonic(&g, 30.0, (0.0, 1.0)).unwrap();
        assert!(
            (f.phi[g.center()] - 0.5).abs() <= 1e-12,
            "φ(0) = {:.15}",
            f.phi[g.center()]
        );
    }

    #[test]
    fn maximum_principle_strict_bounds() {
        let g = catenoid(4, 20.0, 20_000);
        let f = truncated_harmonic(&g, 20.0, (0.0, 1.0)).unwrap();
        for i in f.window.lo + 1..f.window.hi {
            assert!(f.phi[i] > 0.0 && f.phi[i] < 1.0, "φ[{i}] = {}", f.phi[i]);
        }
    }

    #[test]
    fn energies_strictly_decrease_in_truncation() {
        let g = catenoid(4, 80.0, 200_000);
        let e20 = truncated_harmonic(&g, 20.0, (0.0, 1.0)).unwrap().dirichlet_energy;
        let e40 = truncated_harmonic(&g, 40.0, (0.0, 1.0)).unwrap().dirichlet_energy;
        let e80 = truncated_harmonic(&g, 80.0, (0.0, 1.0)).unwrap().dirichlet_energy;
        assert!(e20 > e40 && e40 > e80, "{e20} {e40} {e80}");
        let lim = limit_harmonic(&g).unwrap().dirichlet_energy;
        assert!(e80 > lim && lim > 0.0);
    }

    #[test]
    fn complementary_data_sums_to_one() {
        let g = catenoid(4, 20.0, 20_000);
        let f1 = truncated_harmonic(&g, 20.0, (0.0, 1.0)).unwrap();
        let f2 = truncated_harmonic(&g, 20.0, (1.0, 0.0)).unwrap();
        for i in 0..g.len() {
            assert!((f1.phi[i] + f2.phi[i] - 1.0).abs() <= 1e-12);
            assert_eq!(f1.omega_radial[i] + f2.omega_radial[i], 0.0);
        }
    }

    #[test]
    fn limit_is_the_normalized_height_function() {
        let g = catenoid(4, 40.0, 200_000);
        let f = limit_harmonic(&g).unwrap();
        let z_inf = g.z_infinity().unwrap();
        assert!((z_inf - 1.311_028_777_146_06).abs() < 1e-6 * z_inf);
        let mut sup = 0.0f64;
        for i in 0..g.len() {
            let closed = (g.z[i] / z_inf + 1.0) / 2.0;
            sup = sup.max((f.phi[i] - closed).abs());
        }
        assert!(sup <= 1e-8, "sup deviation {sup}");
    }

    #[test]
    fn truncated_converges_to_limit_monotonically() {
        let g = catenoid(4, 80.0, 100_000);
        let lim = limit_harmonic(&g).unwrap();
        let mut prev = f64::MAX;
        for s in [20.0, 40.0, 80.0] {
            let f = truncated_harmonic(&g, s, (0.0, 1.0)).unwrap();
            let sup = f
                .phi
                .iter()
                .zip(&lim.phi)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(sup < prev, "S = {s}: {sup} vs {prev}");
            prev = sup;
        }
    }

    #[test]
    fn n3_limit_diverges() {
        let g = catenoid(3, 20.0, 20_000);
        assert!(matches!(limit_harmonic(&g), Err(Error::Divergent(_))));
    }

    #[test]
    fn equal_boundary_data_is_flagged_trivial() {
        let g = catenoid(4, 10.0, 5_000);
        let f = truncated_harmonic(&g, 10.0, (0.7, 0.7)).unwrap();
        assert!(f.trivial);
        assert_eq!(f.dirichlet_energy, 0.0);
        assert!(f.phi.iter().all(|&v| v == 0.7));
    }

    #[test]
    fn harmonicity_residual_shrinks_at_second_order() {
        let mut residuals = alloc::vec::Vec::new();
        for samples in [5_000usize, 10_000] {
            let g = catenoid(4, 10.0, samples);
            let f = limit_harmonic(&g).unwrap();
            let p: Vec<f64> = (0..g.len()).map(|i| g.weight(i)).collect();
            let mut worst = 0.0f64;
            for i in (g.len() / 4)..(3 * g.len() / 4) {
                worst = worst.max(sturm_liouville_term(&p, &f.phi, i, g.h).abs());
            }
            residuals.push(worst);
        }
        let order = libm::log2(residuals[0] / residuals[1]);
        assert!(order >= 1.8, "observed order {order} ({residuals:?})");
    }

    #[test]
    fn energy_identity_against_quadrature_module() {
        // ∫|∇φ|² through the quadratic-form machinery (analytic derivative
        // samples, fitted gradient tail) must match the stored energy
        let g = catenoid(4, 40.0, 100_000);
        let f = limit_harmonic(&g).unwrap();
        let field = crate::spectral::ModeField {
            tag: crate::sphere::AngularTag::One,
            radial: f.phi.clone(),
            radial_prime: Some(f.omega_radial.clone()),
        };
        let quadrature = crate::spectral::gradient_energy(&g, &field).unwrap();
        let rel = (quadrature - f.dirichlet_energy).abs() / f.dirichlet_energy;
        assert!(rel <= 1e-10, "relative mismatch {rel}");
    }

    #[test]
    fn limit_energy_is_positive_and_pinned() {
        // E = vol(S^{n-2}) / ∫r^{2-n} = 2π/z_inf for n = 4, r0 = 1;
        // regression value from the closed form of z_inf
        let g = catenoid(4, 40.0, 100_000);
        let f = limit_harmonic(&g).unwrap();
        assert!(f.dirichlet_energy > 4.79);
        let expected = 2.0 * core::f64::consts::PI / 1.311_028_777_146_059_9;
        assert!(
            (f.dirichlet_energy - expected).abs() <= 1e-6 * expected,
            "E = {:.12} vs {:.12}",
            f.dirichlet_energy,
            expected
        );
    }

    #[test]
    fn form_basis_dimensions() {
        let g = catenoid(4, 20.0, 10_000);
        let basis = harmonic_one_form_basis(&g).unwrap();
        assert_eq!(basis.dimension, 1);
        assert_eq!(basis.function_count, 2);
        assert_eq!(basis.forms.len(), 1);
        let p = ProfileGrid::plane(4, 20.0, 1000).unwrap();
        let pb = harmonic_one_form_basis(&p).unwrap();
        assert_eq!(pb.dimension, 0);
        assert_eq!(pb.function_count, 1);
        assert!(pb.forms.is_empty());
    }
}
