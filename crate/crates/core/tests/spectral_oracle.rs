//! Cross-checks of the spectral machinery against independent reference
//! computations: dense QL eigensolves, the polynomial multiplicity count,
//! and the eigenvalue sign convention.

use minsurf_core::oracle;
use minsurf_core::profile::ProfileGrid;
use minsurf_core::spectral::{l2_norm_squared, quadratic_form, ModeOperator};
use minsurf_core::sphere::mode_multiplicity;

#[test]
fn inertia_matches_dense_eigensolve_on_moderate_grids() {
    for (label, grid) in [
        ("catenoid", ProfileGrid::catenoid(4, 1.0, 20.0, 1500).unwrap()),
        ("plane", ProfileGrid::plane(4, 20.0, 1500).unwrap()),
    ] {
        for l in 0..=4u32 {
            let op = ModeOperator::full(&grid, l).unwrap();
            let dense = oracle::pencil_eigenvalues_ql(
                &op.pencil.k_diag,
                &op.pencil.k_off,
                &op.pencil.m_diag,
            );
            let dense_count = dense.iter().filter(|&&e| e < -op.spectral_floor).count();
            assert_eq!(
                op.negative_count(),
                dense_count,
                "{label}, mode {l}"
            );
            // the two lowest bisection eigenvalues agree with QL
            let low = op.lowest_eigenvalues(2);
            for (a, b) in low.iter().zip(dense.iter()) {
                assert!(
                    (a - b).abs() <= 1e-8 * b.abs().max(1.0),
                    "{label} mode {l}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn eigenvalue_sign_convention() {
    // Q(φ, φ) = λ‖φ‖² for computed eigenpairs
    let grid = ProfileGrid::catenoid(4, 1.0, 20.0, 8000).unwrap();
    for l in 0..=2u32 {
        let op = ModeOperator::full(&grid, l).unwrap();
        for lam in op.lowest_eigenvalues(2) {
            let phi = op.eigenfunction(lam).unwrap();
            let q = quadratic_form(&grid, &phi).unwrap();
            let norm2 = l2_norm_squared(&grid, &phi).unwrap();
            assert!(
                (q / norm2 - lam).abs() <= 1e-8 * lam.abs().max(1e-3),
                "mode {l}: Q/norm = {} vs λ = {lam}",
                q / norm2
            );
        }
    }
}

#[test]
fn multiplicity_formula_matches_polynomial_enumeration() {
    for n in 3..=7usize {
        for l in 0..=4u32 {
            assert_eq!(
                mode_multiplicity(n, l) as usize,
                oracle::harmonic_polynomial_dimension(n, l),
                "n = {n}, l = {l}"
            );
        }
    }
}

#[test]
fn negative_count_is_nonincreasing_in_the_mode() {
    let grid = ProfileGrid::catenoid(4, 1.0, 30.0, 20_000).unwrap();
    let mut prev = usize::MAX;
    for l in 0..=4u32 {
        let op = ModeOperator::full(&grid, l).unwrap();
        let neg = op.negative_count();
        assert!(neg <= prev, "mode {l}: {neg} > {prev}");
        prev = neg;
    }
}

#[test]
fn fast_and_precise_eigenvalues_agree_across_the_two_grid_threshold() {
    // a grid large enough to trigger the decimated bracketing path
    let grid = ProfileGrid::catenoid(4, 1.0, 20.0, 150_000).unwrap();
    let op = ModeOperator::full(&grid, 1).unwrap();
    let fast = op.lowest_eigenvalues_fast(2);
    let precise = op.lowest_eigenvalues(2);
    for (a, b) in fast.iter().zip(&precise) {
        assert!((a - b).abs() <= 1e-8 + 1e-8 * b.abs(), "{a} vs {b}");
    }
}
