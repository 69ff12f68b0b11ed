//! Jacobi-operator spectra by spherical-harmonic mode reduction.
//!
//! On a hypersurface of revolution, `J = Δ + |A|²` restricted to fields
//! `f = ψ(s)·Y_l(Θ)` becomes the weighted Sturm–Liouville operator
//!
//! ```text
//!    L_l ψ = -r^{2-n} (r^{n-2} ψ')' + [l(l+n-3)/r² - |A|²] ψ,
//! ```
//!
//! whose Dirichlet spectrum on a window `[-S, S]` is discretized as a
//! symmetric tridiagonal pencil `K v = λ M v` with `M = diag(r^{n-2} h)`.
//! The Morse index is the stabilized count of negative eigenvalues summed
//! over modes with their multiplicities; negative counts come from exact
//! Sylvester inertia rather than from computed eigenvalues.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::geometry;
use crate::profile::{ProfileGrid, SurfaceKind, Window};
use crate::quad::{self, KahanSum};
use crate::sphere::{mode_eigenvalue, mode_multiplicity, unit_sphere_volume, AngularTag};
use crate::tridiag::Pencil;
use crate::{Error, Result};

/// A factorized field `ψ(s)·a(Θ)` on the full grid of a surface.
#[derive(Debug, Clone)]
pub struct ModeField {
    pub tag: AngularTag,
    /// Radial samples on the full grid.
    pub radial: Vec<f64>,
    /// Analytic derivative samples, when the construction knows them;
    /// quadrature is order-4 when present, order-2 (matrix-consistent)
    /// otherwise.
    pub radial_prime: Option<Vec<f64>>,
}

impl ModeField {
    pub fn mode(&self) -> u32 {
        self.tag.mode()
    }

    pub fn sup(&self) -> f64 {
        self.radial.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    pub fn negated(&self) -> ModeField {
        ModeField {
            tag: self.tag,
            radial: self.radial.iter().map(|x| -x).collect(),
            radial_prime: self
                .radial_prime
                .as_ref()
                .map(|v| v.iter().map(|x| -x).collect()),
        }
    }
}

/// Power-law tail model `ψ ≈ c·r^γ` beyond the grid.
#[derive(Debug, Clone, Copy)]
pub struct PowerTail {
    pub coeff: f64,
    pub exponent: f64,
}

/// How a field behaves at the grid boundary.
#[derive(Debug, Clone, Copy)]
pub enum TailBehavior {
    /// Negligible at the boundary; no tail corrections.
    Compact,
    /// Power-law decay fitted over the outer half of the grid.
    Power(PowerTail),
    /// No decaying power law fits (bounded-away-from-zero tails).
    NonDecaying,
}

/// Fit the boundary behavior of radial samples over the outer window
/// `r ≥ r_max/2`. Deterministic; used for tail corrections and the
/// square-integrability verdicts.
pub fn fit_tail(grid: &ProfileGrid, radial: &[f64]) -> TailBehavior {
    let sup = radial.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if sup == 0.0 {
        return TailBehavior::Compact;
    }
    let last = radial[radial.len() - 1].abs().max(radial[0].abs());
    if last <= 1e-13 * sup {
        return TailBehavior::Compact;
    }
    let r_max = *grid.r.last().unwrap();
    let r_lo = 0.5 * r_max;
    let c = grid.center();
    let mut log_r = Vec::new();
    let mut log_f = Vec::new();
    for i in c..grid.len() {
        if grid.r[i] >= r_lo && radial[i].abs() > 1e-300 {
            log_r.push(libm::log(grid.r[i]));
            log_f.push(libm::log(radial[i].abs()));
        }
    }
    if log_r.len() < 8 {
        return TailBehavior::Compact;
    }
    let exponent = quad::ls_slope(&log_r, &log_f);
    let coeff = radial[radial.len() - 1].abs() / libm::pow(r_max, exponent);
    if exponent >= -0.2 {
        TailBehavior::NonDecaying
    } else {
        TailBehavior::Power(PowerTail { coeff, exponent })
    }
}

/// Square-integrability verdict of a radial field under the tail model:
/// `∫ ψ² r^{n-2} ds` converges iff the decay exponent is below
/// `-(n-1)/2`. A band of width 0.2 around the threshold is reported as
/// borderline rather than guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L2Verdict {
    SquareIntegrable,
    NotSquareIntegrable,
    Borderline,
}

pub fn l2_verdict(grid: &ProfileGrid, radial: &[f64]) -> L2Verdict {
    let threshold = -((grid.n - 1) as f64) / 2.0;
    match fit_tail(grid, radial) {
        TailBehavior::Compact => L2Verdict::SquareIntegrable,
        TailBehavior::NonDecaying => L2Verdict::NotSquareIntegrable,
        TailBehavior::Power(t) => {
            if t.exponent <= threshold - 0.1 {
                L2Verdict::SquareIntegrable
            } else if t.exponent >= threshold + 0.1 {
                L2Verdict::NotSquareIntegrable
            } else {
                L2Verdict::Borderline
            }
        }
    }
}

/// The weighted Sturm–Liouville discretization of one spherical-harmonic
/// mode of `-J` over a grid window, with Dirichlet rows removed.
#[derive(Debug)]
pub struct ModeOperator<'g> {
    pub grid: &'g ProfileGrid,
    pub l: u32,
    /// Dimension of degree-`l` spherical harmonics on `S^{n-2}`.
    pub multiplicity: u64,
    /// Window whose endpoint samples carry the Dirichlet condition.
    pub window: Window,
    /// `K v = λ M v` over the interior nodes.
    pub pencil: Pencil,
    /// Spectral floor ε separating truncation noise from genuine
    /// negatives: `max(10 h² · max|potential scale|, 1e-10)`.
    pub spectral_floor: f64,
}

impl<'g> ModeOperator<'g> {
    /// Assemble the mode-`l` operator on `window`.
    pub fn new(grid: &'g ProfileGrid, l: u32, window: Window) -> Result<Self> {
        if window.len() < 3 {
            return Err(Error::Domain(String::from(
                "window too small for an interior node",
            )));
        }
        let n = grid.n;
        let mu = mode_eigenvalue(n, l);
        let h = grid.h;
        let m = window.len() - 2;
        let mut k_diag = Vec::with_capacity(m);
        let mut k_off = Vec::with_capacity(m.saturating_sub(1));
        let mut m_diag = Vec::with_capacity(m);
        let mut pot_scale = 0.0f64;
        let aa = ((n - 1) * (n - 2)) as f64;
        let is_plane = grid.kind == SurfaceKind::Plane;
        let mut w_prev = grid.weight(window.lo);
        let mut w_here = grid.weight(window.lo + 1);
        for i in (window.lo + 1)..window.hi {
            let w_next = grid.weight(i + 1);
            let p_minus = 0.5 * (w_prev + w_here);
            let p_plus = 0.5 * (w_here + w_next);
            let r = grid.r[i];
            let a2 = if is_plane {
                0.0
            } else {
                let km = grid.zp[i] / r;
                aa * km * km
            };
            let q = mu / (r * r) - a2;
            pot_scale = pot_scale.max(a2);
            k_diag.push((p_minus + p_plus) / h + h * w_here * q);
            if i + 1 < window.hi {
                k_off.push(-p_plus / h);
            }
            m_diag.push(h * w_here);
            w_prev = w_here;
            w_here = w_next;
        }
        let spectral_floor = (10.0 * h * h * pot_scale).max(1e-10);
        Ok(ModeOperator {
            grid,
            l,
            multiplicity: mode_multiplicity(n, l),
            window,
            pencil: Pencil {
                k_diag,
                k_off,
                m_diag,
            },
            spectral_floor,
        })
    }

    /// Full-extent operator (truncation = the whole grid).
    pub fn full(grid: &'g ProfileGrid, l: u32) -> Result<Self> {
        Self::new(grid, l, grid.full_window())
    }

    /// Exact count of generalized eigenvalues below `-ε`, by Sylvester
    /// inertia of `K + εM`.
    pub fn negative_count(&self) -> usize {
        self.pencil.count_below(-self.spectral_floor)
    }

    /// The `k` lowest Dirichlet eigenvalues.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<f64> {
        self.pencil.smallest_eigenvalues(k)
    }

    /// Diagnostic-precision lowest eigenvalues (absolute+relative 1e-9).
    ///
    /// On huge grids each counting sweep costs O(N), so the brackets are
    /// first located on decimated grids (spacings `q·h` and `2q·h`) and
    /// Richardson-extrapolated; the full-resolution sweeps then only
    /// verify and polish a bracket a few eigenvalue-error widths wide.
    /// Bracket verification is exact (inertia counts), so a failed
    /// extrapolation widens and ultimately falls back to plain bisection.
    pub fn lowest_eigenvalues_fast(&self, k: usize) -> Vec<f64> {
        let dim = self.pencil.dim();
        if dim < 200_000 {
            return self.pencil.smallest_eigenvalues_tol(k, 1e-9);
        }
        let Some((lam_q, lam_2q)) = self.coarse_eigenvalue_pair(k) else {
            return self.pencil.smallest_eigenvalues_tol(k, 1e-9);
        };
        let mut out = Vec::with_capacity(k);
        'eig: for idx in 0..k {
            let diff = lam_2q[idx] - lam_q[idx];
            let extrapolated = lam_q[idx] - diff / 3.0;
            let mut width = (2.0 * diff.abs()).max(1e-6);
            for _attempt in 0..4 {
                let a = extrapolated - width;
                let b = extrapolated + width;
                if self.pencil.count_below(a) <= idx && self.pencil.count_below(b) > idx {
                    let lam = self.bisect_within(idx, a, b);
                    out.push(lam);
                    continue 'eig;
                }
                width *= 8.0;
            }
            // coarse prediction unusable: full bisection for this index
            let full = self.pencil.smallest_eigenvalues_tol(idx + 1, 1e-9);
            out.push(full[idx]);
        }
        out
    }

    /// Eigenvalues of the same mode on stride-`q` and stride-`2q`
    /// decimations of the grid, for Richardson bracketing.
    fn coarse_eigenvalue_pair(&self, k: usize) -> Option<(Vec<f64>, Vec<f64>)> {
        let target = 100_000usize;
        let mut stride = (self.grid.len() / target).max(2);
        // the stride must preserve endpoints and neck through both levels
        let per_side = match self.grid.kind {
            SurfaceKind::Catenoid => (self.grid.len() - 1) / 2,
            SurfaceKind::Plane => self.grid.len() - 1,
        };
        while stride > 1 && per_side % (2 * stride) != 0 {
            stride -= 1;
        }
        if stride < 2 {
            return None;
        }
        let s_bound = self.grid.s[self.window.hi];
        let mut levels = Vec::with_capacity(2);
        for q in [stride, 2 * stride] {
            let coarse = self.grid.decimated(q).ok()?;
            let window = coarse.window(s_bound).ok()?;
            let op = ModeOperator::new(&coarse, self.l, window).ok()?;
            levels.push(op.pencil.smallest_eigenvalues_tol(k, 1e-10));
        }
        let lam_2q = levels.pop()?;
        let lam_q = levels.pop()?;
        Some((lam_q, lam_2q))
    }

    fn bisect_within(&self, idx: usize, mut a: f64, mut b: f64) -> f64 {
        for _ in 0..80 {
            let scale = a.abs().max(b.abs());
            if b - a <= 1e-9 + 1e-9 * scale {
                break;
            }
            let mid = 0.5 * (a + b);
            if !(mid > a && mid < b) {
                break;
            }
            if self.pencil.count_below(mid) <= idx {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// Eigenfunction for the eigenvalue nearest `lambda`, zero-extended to
    /// the full grid and tagged with a canonical degree-`l` harmonic.
    pub fn eigenfunction(&self, lambda: f64) -> Result<ModeField> {
        let tag = canonical_tag(self.l).ok_or_else(|| {
            Error::Domain(format!(
                "no canonical angular factor for mode {} diagnostics",
                self.l
            ))
        })?;
        let v = self.pencil.eigenvector(lambda);
        let mut radial = vec![0.0; self.grid.len()];
        radial[self.window.lo + 1..self.window.hi].copy_from_slice(&v);
        Ok(ModeField {
            tag,
            radial,
            radial_prime: None,
        })
    }

    /// Rayleigh quotient of interior radial samples.
    pub fn rayleigh(&self, interior: &[f64]) -> f64 {
        self.pencil.rayleigh(interior)
    }
}

fn canonical_tag(l: u32) -> Option<AngularTag> {
    match l {
        0 => Some(AngularTag::One),
        1 => Some(AngularTag::Theta(1)),
        2 => Some(AngularTag::ThetaTheta(1, 2)),
        _ => None,
    }
}

/// Radial part of `∫ |∇f|² dV` per unit angular L² norm:
/// `∫ (ψ'² + l(l+n-3) ψ²/r²) r^{n-2} ds` plus analytic power tails.
fn radial_gradient_energy(grid: &ProfileGrid, field: &ModeField) -> Result<f64> {
    let mu = mode_eigenvalue(grid.n, field.mode());
    let h = grid.h;
    let len = grid.len();
    let value = match &field.radial_prime {
        Some(dpsi) => {
            let integrand: Vec<f64> = (0..len)
                .map(|i| {
                    let w = grid.weight(i);
                    let angular = if mu != 0.0 {
                        mu * field.radial[i] * field.radial[i] / (grid.r[i] * grid.r[i])
                    } else {
                        0.0
                    };
                    (dpsi[i] * dpsi[i] + angular) * w
                })
                .collect();
            quad::simpson(&integrand, h)
        }
        None => {
            let mut acc = KahanSum::new();
            for i in 0..len - 1 {
                let p_mid = 0.5 * (grid.weight(i) + grid.weight(i + 1));
                let jump = field.radial[i + 1] - field.radial[i];
                acc.add(p_mid * jump * jump / h);
            }
            if mu != 0.0 {
                for i in 0..len {
                    let trap = if i == 0 || i == len - 1 { 0.5 } else { 1.0 };
                    let v = field.radial[i];
                    acc.add(trap * h * mu * v * v * grid.weight(i) / (grid.r[i] * grid.r[i]));
                }
            }
            acc.value()
        }
    };
    Ok(value + gradient_tail(grid, field, mu)?)
}

/// Radial part of `∫ f² dV` per unit angular norm, with tails.
fn radial_l2(grid: &ProfileGrid, field: &ModeField) -> Result<f64> {
    let mut acc = KahanSum::new();
    let len = grid.len();
    for i in 0..len {
        let trap = if i == 0 || i == len - 1 { 0.5 } else { 1.0 };
        let v = field.radial[i];
        acc.add(trap * grid.h * v * v * grid.weight(i));
    }
    let tail = match fit_tail(grid, &field.radial) {
        TailBehavior::Compact => 0.0,
        TailBehavior::NonDecaying => {
            return Err(Error::NotIntegrable(String::from(
                "field does not decay at the ends",
            )))
        }
        TailBehavior::Power(t) => {
            let e = 2.0 * t.exponent + (grid.n - 2) as f64;
            let ends = grid.kind.ends() as f64;
            ends * t.coeff * t.coeff * grid.tail_integral_power(e)?
        }
    };
    Ok(acc.value() + tail)
}

fn gradient_tail(grid: &ProfileGrid, field: &ModeField, mu: f64) -> Result<f64> {
    let n = grid.n as f64;
    let ends = grid.kind.ends() as f64;
    // with analytic derivative samples the tail is fitted on ψ' itself,
    // which also covers bounded fields with integrable gradients
    if let Some(dpsi) = &field.radial_prime {
        let grad = match fit_tail(grid, dpsi) {
            TailBehavior::Compact => 0.0,
            TailBehavior::NonDecaying => {
                return Err(Error::NotIntegrable(String::from(
                    "gradient does not decay at the ends",
                )))
            }
            TailBehavior::Power(t) => {
                let e = 2.0 * t.exponent + n - 2.0;
                t.coeff * t.coeff * grid.tail_integral_power(e)?
            }
        };
        let ang = if mu != 0.0 {
            match fit_tail(grid, &field.radial) {
                TailBehavior::Compact => 0.0,
                TailBehavior::NonDecaying => {
                    return Err(Error::NotIntegrable(String::from(
                        "field does not decay at the ends",
                    )))
                }
                TailBehavior::Power(t) => {
                    let e = 2.0 * t.exponent + n - 4.0;
                    mu * t.coeff * t.coeff * grid.tail_integral_power(e)?
                }
            }
        } else {
            0.0
        };
        return Ok(ends * (grad + ang));
    }
    match fit_tail(grid, &field.radial) {
        TailBehavior::Compact => Ok(0.0),
        TailBehavior::NonDecaying => Err(Error::NotIntegrable(String::from(
            "field does not decay at the ends",
        ))),
        TailBehavior::Power(t) => {
            let c2 = t.coeff * t.coeff;
            // ψ'² term: (cγ r^{γ-1})², plus the angular term μψ²/r²
            let e = 2.0 * t.exponent + n - 4.0;
            let grad = t.exponent * t.exponent * c2 * grid.tail_integral_power(e)?;
            let ang = if mu != 0.0 {
                mu * c2 * grid.tail_integral_power(e)?
            } else {
                0.0
            };
            Ok(ends * (grad + ang))
        }
    }
}

/// Radial part of `∫ |A|² f² dV` per unit angular norm, with tails.
fn radial_potential(grid: &ProfileGrid, field: &ModeField) -> Result<f64> {
    if grid.kind == SurfaceKind::Plane {
        return Ok(0.0);
    }
    let n = grid.n;
    let aa = ((n - 1) * (n - 2)) as f64;
    let mut acc = KahanSum::new();
    let len = grid.len();
    for i in 0..len {
        let trap = if i == 0 || i == len - 1 { 0.5 } else { 1.0 };
        let km = grid.zp[i] / grid.r[i];
        let v = field.radial[i];
        acc.add(trap * grid.h * aa * km * km * v * v * grid.weight(i));
    }
    let tail = match fit_tail(grid, &field.radial) {
        TailBehavior::Compact => 0.0,
        TailBehavior::NonDecaying => {
            return Err(Error::NotIntegrable(String::from(
                "field does not decay at the ends",
            )))
        }
        TailBehavior::Power(t) => {
            // |A|² = (n-1)(n-2) r0^{2(n-2)} r^{-2(n-1)}
            let e = 2.0 * t.exponent + (grid.n - 2) as f64 - 2.0 * (n as f64 - 1.0);
            let coeff = aa * libm::pow(grid.r0, 2.0 * (n as f64 - 2.0));
            2.0 * coeff * t.coeff * t.coeff * grid.tail_integral_power(e)?
        }
    };
    Ok(acc.value() + tail)
}

/// The second-variation quadratic form
/// `Q(f, f) = ∫ |∇f|² - |A|² f² dV` for a factorized field, including the
/// angular gradient term and the sphere volume factor.
pub fn quadratic_form(grid: &ProfileGrid, field: &ModeField) -> Result<f64> {
    let angular = field.tag.l2_integral(grid.n);
    Ok(angular * (radial_gradient_energy(grid, field)? - radial_potential(grid, field)?))
}

/// `∫ f² dV` for a factorized field.
pub fn l2_norm_squared(grid: &ProfileGrid, field: &ModeField) -> Result<f64> {
    Ok(field.tag.l2_integral(grid.n) * radial_l2(grid, field)?)
}

/// `∫ |∇f|² dV` (the W^{1,2} seminorm) for a factorized field.
pub fn gradient_energy(grid: &ProfileGrid, field: &ModeField) -> Result<f64> {
    Ok(field.tag.l2_integral(grid.n) * radial_gradient_energy(grid, field)?)
}

/// `L²` inner product of two factorized fields (exact angular tables).
pub fn inner_product(grid: &ProfileGrid, a: &ModeField, b: &ModeField) -> f64 {
    let angular = a.tag.pair_integral(&b.tag, grid.n);
    if angular == 0.0 {
        return 0.0;
    }
    let mut acc = KahanSum::new();
    for i in 0..grid.len() {
        let trap = if i == 0 || i == grid.len() - 1 { 0.5 } else { 1.0 };
        acc.add(trap * grid.h * a.radial[i] * b.radial[i] * grid.weight(i));
    }
    angular * acc.value()
}

/// Pointwise mode-Jacobi residual `J_l ψ = r^{2-n}(r^{n-2}ψ')' - μψ/r² + |A|²ψ`
/// at interior node `i`, second-order finite differences.
pub fn jacobi_residual_at(grid: &ProfileGrid, field: &ModeField, i: usize) -> f64 {
    let w: [f64; 3] = [grid.weight(i - 1), grid.weight(i), grid.weight(i + 1)];
    let p_plus = 0.5 * (w[1] + w[2]);
    let p_minus = 0.5 * (w[0] + w[1]);
    let psi = &field.radial;
    let sl = (p_plus * (psi[i + 1] - psi[i]) - p_minus * (psi[i] - psi[i - 1]))
        / (grid.h * grid.h * w[1]);
    let mu = mode_eigenvalue(grid.n, field.mode());
    let a2 = geometry::frame_at(grid, i).normsq_a;
    sl - mu * psi[i] / (grid.r[i] * grid.r[i]) + a2 * psi[i]
}

/// Sup-norm of the mode-Jacobi residual over interior nodes, normalized by
/// the sup of the field.
pub fn jacobi_residual_sup(grid: &ProfileGrid, field: &ModeField) -> Result<f64> {
    let sup = field.sup();
    if sup == 0.0 {
        return Err(Error::DegenerateInput(String::from(
            "field is identically zero",
        )));
    }
    let mut worst = 0.0f64;
    for i in 1..grid.len() - 1 {
        if grid.r[i] == 0.0 {
            continue;
        }
        worst = worst.max(jacobi_residual_at(grid, field, i).abs());
    }
    Ok(worst / sup)
}

/// The geometric candidate Jacobi fields of the model surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometricField {
    /// `⟨ē_i, ν⟩ = -z'·Θ_i`, `i < n`: translation orthogonal to the axis.
    TranslationTransverse(usize),
    /// `⟨ē_n, ν⟩ = r'`: translation along the axis.
    TranslationAxial,
    /// `⟨x, ν⟩ = z r' - r z'`: dilation.
    Dilation,
}

impl GeometricField {
    pub fn sample(&self, grid: &ProfileGrid) -> ModeField {
        match self {
            GeometricField::TranslationTransverse(i) => ModeField {
                tag: AngularTag::Theta(*i),
                radial: grid.zp.iter().map(|&z| -z).collect(),
                radial_prime: None,
            },
            GeometricField::TranslationAxial => ModeField {
                tag: AngularTag::One,
                radial: grid.rp.clone(),
                radial_prime: None,
            },
            GeometricField::Dilation => ModeField {
                tag: AngularTag::One,
                radial: (0..grid.len())
                    .map(|k| grid.z[k] * grid.rp[k] - grid.r[k] * grid.zp[k])
                    .collect(),
                radial_prime: None,
            },
        }
    }
}

/// Certificate for a candidate Jacobi field: finite-difference residual at
/// two resolutions, the observed convergence order, and the
/// square-integrability verdict.
#[derive(Debug, Clone, Copy)]
pub struct JacobiCertificate {
    pub residual_sup: f64,
    pub residual_sup_refined: f64,
    pub observed_order: f64,
    pub l2_norm: f64,
    pub l2: L2Verdict,
    /// Residual certified (order ≥ 1.8 or exact) *and* square integrable.
    pub certified: bool,
}

/// Certify a geometric field as an `L²` Jacobi field: the residual must
/// shrink at second order under grid refinement and the weighted tail sum
/// must converge.
pub fn certify_jacobi_field(grid: &ProfileGrid, field: GeometricField) -> Result<JacobiCertificate> {
    let coarse = field.sample(grid);
    let fine_grid = grid.refined(2)?;
    let fine = field.sample(&fine_grid);
    let residual_sup = jacobi_residual_sup(grid, &coarse)?;
    let residual_sup_refined = jacobi_residual_sup(&fine_grid, &fine)?;
    let observed_order =
        crate::sampling::observed_order(residual_sup, residual_sup_refined, 1e-12);
    let l2 = l2_verdict(grid, &coarse.radial);
    let l2_norm = match l2 {
        L2Verdict::SquareIntegrable => libm::sqrt(l2_norm_squared(grid, &coarse)?),
        _ => f64::INFINITY,
    };
    let residual_ok = observed_order >= 1.8 || observed_order.is_infinite();
    Ok(JacobiCertificate {
        residual_sup,
        residual_sup_refined,
        observed_order,
        l2_norm,
        l2,
        certified: residual_ok && l2 == L2Verdict::SquareIntegrable,
    })
}

/// Per-mode summary inside a spectral report.
#[derive(Debug, Clone)]
pub struct ModeSummary {
    pub l: u32,
    pub multiplicity: u64,
    pub negative_count: usize,
    pub lowest: Vec<f64>,
    pub spectral_floor: f64,
}

/// One truncation radius of the sweep.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub s: f64,
    pub modes: Vec<ModeSummary>,
    pub index_of_ball: u64,
}

/// Assembled spectral data for one surface: the sweep over truncation
/// radii, the stabilized Morse index, and the certified nullity bound.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub kind: SurfaceKind,
    pub n: usize,
    pub r0: f64,
    pub sweep: Vec<SweepEntry>,
    pub morse_index: u64,
    /// Count of certified independent `L²` Jacobi fields (translations).
    pub nullity_lower_bound: u64,
    /// First mode of the certified-positive pair at which the scan stopped.
    pub l_stop: u32,
    /// Morse index agreed between the last two truncation radii.
    pub stabilized: bool,
    pub h: f64,
}

/// Inconclusive Morse-index computation carrying the partial sweep.
#[derive(Debug, Clone)]
pub struct IndexComputationError {
    pub reason: String,
    pub partial: Option<SpectralReport>,
}

impl core::fmt::Display for IndexComputationError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "index computation inconclusive: {}", self.reason)
    }
}

/// Morse index over an increasing sweep of truncation radii.
///
/// Per radius, modes are scanned upward until two consecutive modes have a
/// certified-nonnegative lowest eigenvalue (no eigenvalue below the
/// spectral floor); mode monotonicity of the potential makes that a valid
/// cutoff. `k_low` eigenvalues per mode are recorded for diagnostics.
pub fn morse_index(
    grid: &ProfileGrid,
    s_sweep: &[f64],
    l_max_cap: u32,
) -> core::result::Result<SpectralReport, IndexComputationError> {
    if s_sweep.is_empty() || s_sweep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(IndexComputationError {
            reason: String::from("sweep radii must be strictly increasing"),
            partial: None,
        });
    }
    let mut sweep = Vec::with_capacity(s_sweep.len());
    let mut l_stop_report = 0u32;
    for &s in s_sweep {
        let window = grid.window(s).map_err(|e| IndexComputationError {
            reason: format!("{e}"),
            partial: None,
        })?;
        let mut modes = Vec::new();
        let mut index_here = 0u64;
        let mut consecutive_nonneg = 0u32;
        let mut l = 0u32;
        loop {
            let op = ModeOperator::new(grid, l, window).map_err(|e| IndexComputationError {
                reason: format!("{e}"),
                partial: None,
            })?;
            let neg = op.negative_count();
            let lowest = op.lowest_eigenvalues_fast(2);
            index_here += op.multiplicity * neg as u64;
            modes.push(ModeSummary {
                l,
                multiplicity: op.multiplicity,
                negative_count: neg,
                lowest,
                spectral_floor: op.spectral_floor,
            });
            if neg == 0 {
                consecutive_nonneg += 1;
                if consecutive_nonneg == 2 {
                    l_stop_report = l - 1;
                    break;
                }
            } else {
                consecutive_nonneg = 0;
            }
            if l == l_max_cap {
                return Err(IndexComputationError {
                    reason: format!(
                        "mode cap {l_max_cap} reached without two consecutive certified-positive modes"
                    ),
                    partial: Some(SpectralReport {
                        kind: grid.kind,
                        n: grid.n,
                        r0: grid.r0,
                        sweep,
                        morse_index: index_here,
                        nullity_lower_bound: 0,
                        l_stop: l,
                        stabilized: false,
                        h: grid.h,
                    }),
                });
            }
            l += 1;
        }
        sweep.push(SweepEntry {
            s,
            modes,
            index_of_ball: index_here,
        });
    }

    // domain monotonicity of Dirichlet eigenvalues
    for w in sweep.windows(2) {
        if w[0].index_of_ball > w[1].index_of_ball {
            return Err(IndexComputationError {
                reason: format!(
                    "index of ball decreased from {} to {} along the sweep",
                    w[0].index_of_ball, w[1].index_of_ball
                ),
                partial: None,
            });
        }
    }

    let morse = sweep.last().unwrap().index_of_ball;
    let stabilized = sweep.len() >= 2 && {
        let k = sweep.len();
        sweep[k - 1].index_of_ball == sweep[k - 2].index_of_ball
    };

    let nullity_lower_bound = certified_translation_nullity(grid);

    Ok(SpectralReport {
        kind: grid.kind,
        n: grid.n,
        r0: grid.r0,
        sweep,
        morse_index: morse,
        nullity_lower_bound,
        l_stop: l_stop_report,
        stabilized,
        h: grid.h,
    })
}

/// Certified nullity lower bound from the transverse translation fields:
/// the `n-1` fields `⟨ē_i, ν⟩` share one radial profile `-z'` with
/// pairwise orthogonal angular factors, so one certificate counts `n-1`
/// independent fields.
///
/// Certification runs on its own moderate grid (the certificate depends
/// only on the surface, not on the caller's resolution), capped at
/// extent `30·r0` with spacing `~1e-3·r0`.
pub fn certified_translation_nullity(grid: &ProfileGrid) -> u64 {
    if grid.kind != SurfaceKind::Catenoid {
        return 0;
    }
    let s_cert = grid.s_max().min(30.0 * grid.r0);
    let samples = (1000.0 * s_cert / grid.r0) as usize;
    let cert_grid = match ProfileGrid::catenoid(grid.n, grid.r0, s_cert, samples.max(500)) {
        Ok(g) => g,
        Err(_) => return 0,
    };
    match certify_jacobi_field(&cert_grid, GeometricField::TranslationTransverse(1)) {
        Ok(cert) if cert.certified => (grid.n - 1) as u64,
        _ => 0,
    }
}

/// Result of projecting a field off the negative eigenfunctions and
/// re-evaluating the quadratic form.
#[derive(Debug, Clone)]
pub struct ProjectedStability {
    /// `⟨f, φ_j⟩` per supplied eigenfunction.
    pub overlaps: Vec<f64>,
    /// `Q` of the projection of `f` off the span of the eigenfunctions.
    pub projected_q: f64,
    /// Jacobi residual of the projection, reported when `projected_q ≤ tol`.
    pub jacobi_residual: Option<f64>,
}

/// Evaluate `Q` on the complement of the negative directions: overlaps,
/// projected form value, and (when the form vanishes within `tol`) the
/// Jacobi residual certifying the kernel membership.
pub fn stability_on_complement(
    grid: &ProfileGrid,
    field: &ModeField,
    eigenfunctions: &[ModeField],
    tol: f64,
) -> Result<ProjectedStability> {
    if eigenfunctions.is_empty() {
        let op = ModeOperator::full(grid, 0)?;
        if op.negative_count() > 0 {
            return Err(Error::Domain(String::from(
                "no eigenfunctions supplied for an unstable surface",
            )));
        }
    }
    let mut overlaps = Vec::with_capacity(eigenfunctions.len());
    // group the projection by angular tag; cross-tag terms are
    // exactly orthogonal
    let mut components: Vec<ModeField> = vec![field.clone()];
    for ef in eigenfunctions {
        let overlap = inner_product(grid, field, ef);
        overlaps.push(overlap);
        if overlap == 0.0 {
            continue;
        }
        let norm2 = inner_product(grid, ef, ef);
        let c = overlap / norm2;
        let mut merged = false;
        for comp in components.iter_mut() {
            if comp.tag == ef.tag {
                for (x, y) in comp.radial.iter_mut().zip(&ef.radial) {
                    *x -= c * y;
                }
                comp.radial_prime = None;
                merged = true;
                break;
            }
        }
        if !merged {
            let mut neg = ef.clone();
            for x in neg.radial.iter_mut() {
                *x *= -c;
            }
            neg.radial_prime = None;
            components.push(neg);
        }
    }
    let mut projected_q = 0.0;
    let mut worst_residual = 0.0f64;
    let mut any_nonzero = false;
    for comp in &components {
        if comp.sup() == 0.0 {
            continue;
        }
        any_nonzero = true;
        projected_q += quadratic_form(grid, comp)?;
        worst_residual = worst_residual.max(jacobi_residual_sup(grid, comp)?);
    }
    let jacobi_residual = if projected_q.abs() <= tol && any_nonzero {
        Some(worst_residual)
    } else if !any_nonzero {
        Some(0.0)
    } else {
        None
    };
    Ok(ProjectedStability {
        overlaps,
        projected_q,
        jacobi_residual,
    })
}

/// Sphere volume factor exposed for report assembly.
pub fn sphere_factor(n: usize) -> f64 {
    unit_sphere_volume(n - 2)
}
