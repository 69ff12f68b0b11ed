//! Round-sphere constants, spherical-harmonic mode data, and exact angular
//! integral tables for factorized (radial × angular) fields.
//!
//! Fields on a hypersurface of revolution separate as `f = ψ(s)·a(Θ)` with
//! `Θ ∈ S^{n-2}`. The angular factors that occur in this crate are the
//! constant `1`, the coordinates `Θ_i` (degree-1 harmonics), and the
//! products `Θ_iΘ_j`, `i ≠ j` (degree-2 harmonics). Handling them
//! symbolically removes all angular quadrature error.

use core::f64::consts::PI;

/// Volume of the unit sphere `S^d ⊂ R^{d+1}`.
///
/// Uses the recurrence `vol(S^d) = 2π/(d-1) · vol(S^{d-2})` from
/// `vol(S^0) = 2`, `vol(S^1) = 2π`.
pub fn unit_sphere_volume(d: usize) -> f64 {
    match d {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (d as f64 - 1.0) * unit_sphere_volume(d - 2),
    }
}

/// Volume of the unit ball in `R^d`: `vol(S^{d-1}) / d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    assert!(d >= 1);
    unit_sphere_volume(d - 1) / d as f64
}

/// Laplacian eigenvalue of degree-`l` spherical harmonics on `S^{n-2}`:
/// `l(l + n - 3)`.
#[inline]
pub fn mode_eigenvalue(n: usize, l: u32) -> f64 {
    let l = l as f64;
    l * (l + n as f64 - 3.0)
}

/// Dimension of the space of degree-`l` spherical harmonics on `S^{n-2}`,
/// i.e. of harmonic homogeneous polynomials of degree `l` in `n-1`
/// variables: `C(m+l-1, l) - C(m+l-3, l-2)` with `m = n-1`.
pub fn mode_multiplicity(n: usize, l: u32) -> u64 {
    let m = (n - 1) as u64;
    let l = l as u64;
    if l == 0 {
        return 1;
    }
    let lower = if l >= 2 { binomial(m + l - 3, l - 2) } else { 0 };
    binomial(m + l - 1, l) - lower
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Symbolic angular factor of a factorized field on `S^{n-2}`.
///
/// Coordinate indices are 1-based ambient indices `1..=n-1` (the axis
/// coordinate `n` never appears in an angular factor).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularTag {
    /// The constant function `1` (mode 0).
    One,
    /// The coordinate `Θ_i` (mode 1).
    Theta(usize),
    /// The product `Θ_iΘ_j` with `i < j` (mode 2).
    ThetaTheta(usize, usize),
}

impl AngularTag {
    /// Spherical-harmonic degree of the factor.
    pub fn mode(&self) -> u32 {
        match self {
            AngularTag::One => 0,
            AngularTag::Theta(_) => 1,
            AngularTag::ThetaTheta(_, _) => 2,
        }
    }

    /// Exact `∫_{S^{n-2}} a·b dσ` for two tags.
    ///
    /// Table: `∫1 = V`, `∫Θ_iΘ_k = δ_{ik}·V/(n-1)`,
    /// `∫(Θ_iΘ_j)(Θ_kΘ_l) = δ_{{i,j},{k,l}}·V/((n-1)(n+1))`, odd moments
    /// vanish, where `V = vol(S^{n-2})`.
    pub fn pair_integral(&self, other: &AngularTag, n: usize) -> f64 {
        let v = unit_sphere_volume(n - 2);
        let m = (n - 1) as f64;
        match (self, other) {
            (AngularTag::One, AngularTag::One) => v,
            (AngularTag::Theta(i), AngularTag::Theta(k)) => {
                if i == k {
                    v / m
                } else {
                    0.0
                }
            }
            (AngularTag::ThetaTheta(i, j), AngularTag::ThetaTheta(k, l)) if (i, j) == (k, l) => {
                v / (m * (m + 2.0))
            }
            _ => 0.0,
        }
    }

    /// Exact `∫_{S^{n-2}} a² dσ`.
    pub fn l2_integral(&self, n: usize) -> f64 {
        self.pair_integral(self, n)
    }

    /// Evaluate the factor at a point `theta` of `S^{n-2} ⊂ R^{n-1}`
    /// (0-based slice of the `n-1` sphere coordinates).
    pub fn eval(&self, theta: &[f64]) -> f64 {
        match self {
            AngularTag::One => 1.0,
            AngularTag::Theta(i) => theta[i - 1],
            AngularTag::ThetaTheta(i, j) => theta[i - 1] * theta[j - 1],
        }
    }
}
