//! Independent reference implementations used only by test suites.
//!
//! Everything here deliberately avoids the code paths it is used to
//! check: eigenvalues come from the implicit-QL iteration instead of
//! Sturm bisection, special-function values from a Lanczos Gamma
//! evaluation, spherical-harmonic dimensions from polynomial linear
//! algebra, and the geometric constants from Beta-function closed forms.

use alloc::vec;
use alloc::vec::Vec;

use crate::sphere::unit_sphere_volume;

/// Lanczos approximation of `ln Γ(x)` for `x > 0` (g = 7, n = 9),
/// accurate to ~1e-13 relative.
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    assert!(x > 0.0);
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let pix = core::f64::consts::PI * x;
        return libm::log(core::f64::consts::PI / libm::sin(pix)) - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    for (k, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + k as f64);
    }
    let t = x + 7.5;
    0.5 * libm::log(2.0 * core::f64::consts::PI) + (x + 0.5) * libm::log(t) - t
        + libm::log(acc)
}

/// Euler Beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: f64, b: f64) -> f64 {
    libm::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b))
}

/// Closed form of the catenoid height limit:
/// `z_∞ = r0 · B((n-3)/(2(n-2)), 1/2) / (2(n-2))`.
pub fn catenoid_height_limit(n: usize, r0: f64) -> f64 {
    let m = (n - 2) as f64;
    r0 * beta((n as f64 - 3.0) / (2.0 * m), 0.5) / (2.0 * m)
}

/// Closed form of the catenoid total curvature
/// `vol(S^{n-2}) · ((n-1)(n-2))^{(n-1)/2} · B((n-1)/2, 1/2) / (n-2)`;
/// independent of the neck radius.
pub fn catenoid_total_curvature(n: usize) -> f64 {
    let prod = ((n - 1) * (n - 2)) as f64;
    unit_sphere_volume(n - 2) * libm::pow(prod, (n as f64 - 1.0) / 2.0)
        * beta((n as f64 - 1.0) / 2.0, 0.5)
        / (n as f64 - 2.0)
}

/// All eigenvalues of a symmetric tridiagonal matrix by the implicit-QL
/// iteration with Wilkinson shifts (eigenvalues only), ascending.
pub fn tridiagonal_eigenvalues_ql(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0f64; n];
    e[..n - 1].copy_from_slice(off);
    for l in 0..n {
        let mut iter = 0;
        loop {
            // find a negligible subdiagonal element
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 50, "QL iteration failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            let sign_r = if g >= 0.0 { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = 0.0;
                let _ = f;
            }
            if r == 0.0 && m > l + 1 {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

/// Eigenvalues of the generalized pencil `K v = λ M v` (M diagonal
/// positive) by symmetric reduction to `M^{-1/2} K M^{-1/2}` and QL.
pub fn pencil_eigenvalues_ql(k_diag: &[f64], k_off: &[f64], m_diag: &[f64]) -> Vec<f64> {
    let n = k_diag.len();
    let c: Vec<f64> = (0..n).map(|i| k_diag[i] / m_diag[i]).collect();
    let e: Vec<f64> = (0..n - 1)
        .map(|i| k_off[i] / libm::sqrt(m_diag[i] * m_diag[i + 1]))
        .collect();
    tridiagonal_eigenvalues_ql(&c, &e)
}

/// Dimension of degree-`l` spherical harmonics on `S^{n-2}` by explicit
/// polynomial linear algebra: harmonic homogeneous polynomials of degree
/// `l` in `m = n-1` variables are the kernel of the Laplacian from
/// degree-`l` to degree-`l-2` monomials.
pub fn harmonic_polynomial_dimension(n: usize, l: u32) -> usize {
    let m = n - 1;
    let deg_l = monomials(m, l as usize);
    if l < 2 {
        return deg_l.len();
    }
    let deg_l2 = monomials(m, l as usize - 2);
    let mut rows: Vec<Vec<f64>> = vec![vec![0.0; deg_l.len()]; deg_l2.len()];
    for (col, mono) in deg_l.iter().enumerate() {
        // Δ x^α = Σ_i α_i(α_i - 1) x^{α - 2e_i}
        for i in 0..m {
            if mono[i] >= 2 {
                let mut target = mono.clone();
                target[i] -= 2;
                let row = deg_l2.iter().position(|t| *t == target).unwrap();
                rows[row][col] += (mono[i] * (mono[i] - 1)) as f64;
            }
        }
    }
    let rank = gaussian_rank(&mut rows, deg_l.len());
    deg_l.len() - rank
}

fn monomials(vars: usize, degree: usize) -> Vec<Vec<usize>> {
    if vars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for mut rest in monomials(vars - 1, degree - first) {
            let mut mono = vec![first];
            mono.append(&mut rest);
            out.push(mono);
        }
    }
    out
}

fn gaussian_rank(rows: &mut [Vec<f64>], cols: usize) -> usize {
    let mut rank = 0;
    let mut col = 0;
    while rank < rows.len() && col < cols {
        let mut pivot = rank;
        for r in rank + 1..rows.len() {
            if rows[r][col].abs() > rows[pivot][col].abs() {
                pivot = r;
            }
        }
        if rows[pivot][col].abs() < 1e-9 {
            col += 1;
            continue;
        }
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / rows[rank][col];
            for c in col..cols {
                let sub = factor * rows[rank][c];
                rows[r][c] -= sub;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn gamma_recovers_factorials_and_half_integers() {
        assert!((libm::exp(ln_gamma(5.0)) - 24.0).abs() < 1e-11);
        assert!((libm::exp(ln_gamma(0.5)) - libm::sqrt(PI)).abs() < 1e-13);
    }

    #[test]
    fn beta_special_values() {
        // B(3/2, 1/2) = π/2
        assert!((beta(1.5, 0.5) - PI / 2.0).abs() < 1e-12);
        // B(1/4, 1/2) = 5.2441151085842396…
        assert!((beta(0.25, 0.5) - 5.244_115_108_584_24).abs() < 1e-11);
    }

    #[test]
    fn height_limit_closed_forms() {
        assert!((catenoid_height_limit(4, 1.0) - 1.311_028_777_146_059_9).abs() < 1e-12);
        assert!((catenoid_height_limit(5, 1.0) - 0.701_091_052_662_727_1).abs() < 1e-12);
    }

    #[test]
    fn total_curvature_closed_forms() {
        assert!((catenoid_total_curvature(4) - libm::pow(6.0, 1.5) * PI * PI).abs() < 1e-9);
        assert!((catenoid_total_curvature(5) - 1_263.309_363_339_437_9).abs() < 1e-9);
    }

    #[test]
    fn ql_matches_dirichlet_laplacian_closed_form() {
        let n = 128;
        let h = 1.0 / (n as f64 + 1.0);
        let d = vec![2.0 / (h * h); n];
        let e = vec![-1.0 / (h * h); n - 1];
        let evs = tridiagonal_eigenvalues_ql(&d, &e);
        for k in 0..5 {
            let exact =
                (2.0 - 2.0 * libm::cos((k as f64 + 1.0) * PI / (n as f64 + 1.0))) / (h * h);
            assert!(
                (evs[k] - exact).abs() < 1e-8 * exact,
                "k = {k}: {} vs {exact}",
                evs[k]
            );
        }
    }

    #[test]
    fn harmonic_dimensions_match_the_closed_formula() {
        for n in 3..=7usize {
            for l in 0..4u32 {
                let direct = harmonic_polynomial_dimension(n, l);
                let formula = crate::sphere::mode_multiplicity(n, l) as usize;
                assert_eq!(direct, formula, "n = {n}, l = {l}");
            }
        }
    }
}
