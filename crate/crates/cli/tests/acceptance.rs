//! Acceptance suite: runs the full verification battery once and asserts
//! every check, printing one pass/fail line per criterion group.
//!
//! Run with `cargo test -p minsurf-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines; the same battery backs the
//! `minsurf report` subcommand.

use std::sync::OnceLock;

use minsurf_cli::verify::{self, VerifyOutcome};

static SUITE: OnceLock<VerifyOutcome> = OnceLock::new();

fn outcome() -> &'static VerifyOutcome {
    SUITE.get_or_init(|| verify::run_all(7))
}

/// Assert every record whose id starts with one of the prefixes, and
/// print the one-line verdict for the criterion.
fn assert_group(label: &str, prefixes: &[&str]) {
    let out = outcome();
    if let Some(msg) = &out.inconclusive {
        println!("[FAIL] {label}: computation inconclusive: {msg}");
        panic!("inconclusive: {msg}");
    }
    let records: Vec<_> = out
        .records
        .iter()
        .filter(|r| prefixes.iter().any(|p| r.check_id.starts_with(p)))
        .collect();
    assert!(
        !records.is_empty(),
        "no records matched prefixes {prefixes:?}"
    );
    let all_pass = records.iter().all(|r| r.pass);
    println!(
        "[{}] {label} ({} checks)",
        if all_pass { "PASS" } else { "FAIL" },
        records.len()
    );
    for r in &records {
        if !r.pass {
            println!(
                "       FAIL {}: measured {:e}, expected {:e}, tol {:e}",
                r.check_id, r.measured, r.expected, r.tol
            );
        }
    }
    assert!(all_pass, "{label}: some checks failed");
}

#[test]
fn a01_catenoid_morse_index_is_one() {
    assert_group(
        "catenoid Morse index = 1 for n = 4..7, stable across the sweep",
        &["catenoid_index"],
    );
}

#[test]
fn a02_plane_is_stable() {
    assert_group(
        "hyperplane: index 0 and every mode eigenvalue above the floor",
        &["plane_index", "plane_mode_floor"],
    );
}

#[test]
fn a03_nullity_certificates() {
    assert_group(
        "translations certified as L² Jacobi fields; axial/dilation rejected",
        &["translations_certified", "translation_residual_order", "axial_rejected", "dilation_rejected"],
    );
}

#[test]
fn a04_identity_suite() {
    assert_group(
        "frame and Laplace identities hold at order ≥ 1.8 (n = 4 and 5)",
        &["identity_"],
    );
}

#[test]
fn a05_q_sum_vanishes() {
    assert_group(
        "pairwise form sum vanishes with each term, improving at order ≥ 1.8",
        &["qsum_"],
    );
}

#[test]
fn a06_closed_form_reduction() {
    assert_group(
        "test functions reduce algebraically (axial pairs) and vanish (transverse)",
        &["testfn_"],
    );
}

#[test]
fn a07_harmonic_construction() {
    assert_group(
        "harmonic sweep: bounds, monotone energy, complementarity, n=3 divergence, limit",
        &["harmonic_"],
    );
}

#[test]
fn a08_total_curvature() {
    assert_group(
        "total curvature matches the closed form and is scale invariant",
        &["total_curvature_"],
    );
}

#[test]
fn a09_end_asymptotics() {
    assert_group(
        "end decay exponents, scaled limit, curvature decay, volume growth",
        &["end_", "curvature_decay_at_30", "volume_ratio_two_ends"],
    );
}

#[test]
fn a10_rigidity_data() {
    assert_group(
        "curvature pattern, constraint ranks, frame relation residual",
        &["curvature_pattern", "constraint_rank_", "frame_"],
    );
}

#[test]
fn a11_bound_reports() {
    assert_group(
        "index/topology bounds: exact rationals, flags, violation detection",
        &["bound_"],
    );
}

#[test]
fn a12_inertia_vs_dense_oracle() {
    assert_group(
        "inertia counts equal dense eigensolve counts on all moderate instances",
        &["inertia_vs_dense"],
    );
}

#[test]
fn a13_all_records_accounted() {
    // every record belongs to some criterion group above
    let prefixes = [
        "catenoid_index",
        "plane_index",
        "plane_mode_floor",
        "translations_certified",
        "translation_residual_order",
        "axial_rejected",
        "dilation_rejected",
        "identity_",
        "qsum_",
        "testfn_",
        "harmonic_",
        "total_curvature_",
        "end_",
        "curvature_decay_at_30",
        "volume_ratio_two_ends",
        "curvature_pattern",
        "constraint_rank_",
        "frame_",
        "bound_",
        "inertia_vs_dense",
        "nullity_grid",
    ];
    for r in &outcome().records {
        assert!(
            prefixes.iter().any(|p| r.check_id.starts_with(p)),
            "record {} not covered by any criterion group",
            r.check_id
        );
    }
}
