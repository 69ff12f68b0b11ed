//! The consolidated verification suite: every headline claim of the
//! library, with pinned grids, tolerances, and expected values. The
//! `report` subcommand serializes the outcome; the acceptance test target
//! asserts it.
//!
//! Records are self-describing: `measured`, `expected`, `tol` document
//! the comparison, and `pass` is the check-specific verdict (two-sided
//! `|measured - expected| ≤ tol` unless a check states otherwise).

use minsurf_core::geometry::{self, EndAsymptotics};
use minsurf_core::harmonic;
use minsurf_core::oracle;
use minsurf_core::profile::{ProfileGrid, SurfaceKind};
use minsurf_core::rigidity::{self, RigidityBranch};
use minsurf_core::sampling::{observed_order, select_samples};
use minsurf_core::spectral::{
    self, certify_jacobi_field, GeometricField, L2Verdict, ModeOperator, SpectralReport,
};
use minsurf_core::variational;

/// One verified claim.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub check_id: String,
    /// The claim being verified, in words.
    pub reference: &'static str,
    pub measured: f64,
    pub expected: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Wall-clock measurements: asserted by the acceptance suite but kept
    /// out of serialized artifacts, which must be deterministic.
    pub fn is_timing(&self) -> bool {
        self.check_id.ends_with("_runtime_seconds")
    }

    fn two_sided(
        check_id: impl Into<String>,
        reference: &'static str,
        measured: f64,
        expected: f64,
        tol: f64,
    ) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            reference,
            measured,
            expected,
            tol,
            pass: (measured - expected).abs() <= tol,
        }
    }

    fn upper_bounded(
        check_id: impl Into<String>,
        reference: &'static str,
        measured: f64,
        bound: f64,
    ) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            reference,
            measured,
            expected: 0.0,
            tol: bound,
            pass: measured.is_finite() && measured.abs() <= bound,
        }
    }

    fn flag(check_id: impl Into<String>, reference: &'static str, ok: bool) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            reference,
            measured: if ok { 1.0 } else { 0.0 },
            expected: 1.0,
            tol: 0.0,
            pass: ok,
        }
    }

    fn lower_bounded(
        check_id: impl Into<String>,
        reference: &'static str,
        measured: f64,
        bound: f64,
    ) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            reference,
            measured,
            expected: bound,
            tol: 0.0,
            pass: measured >= bound,
        }
    }
}

/// Result of the full suite.
#[derive(Debug)]
pub struct VerifyOutcome {
    pub records: Vec<CheckRecord>,
    /// A computation terminated without a certified answer (distinct from
    /// a failed check).
    pub inconclusive: Option<String>,
}

impl VerifyOutcome {
    pub fn all_pass(&self) -> bool {
        self.inconclusive.is_none() && self.records.iter().all(|r| r.pass)
    }
}

/// Sample density mandated for the index computation: 4·10⁴ per unit of
/// truncation radius.
pub const INDEX_SAMPLES_PER_UNIT: usize = 40_000;
pub const INDEX_SWEEP: [f64; 3] = [20.0, 40.0, 80.0];

/// Criterion: Morse index of the catenoid is 1 in every supported
/// dimension, stable across the truncation sweep. Returns the `n = 4`
/// report for reuse by the bound checks.
///
/// The four dimensions are data-independent and run on worker threads.
pub fn catenoid_index_checks(records: &mut Vec<CheckRecord>) -> Result<SpectralReport, String> {
    let started = std::time::Instant::now();
    let dims = [4usize, 5, 6, 7];
    let mut results: Vec<Option<Result<SpectralReport, String>>> =
        dims.iter().map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for &n in &dims {
            handles.push(scope.spawn(move || {
                let samples = 80 * INDEX_SAMPLES_PER_UNIT;
                let grid = ProfileGrid::catenoid(n, 1.0, 80.0, samples)
                    .map_err(|e| format!("profile n={n}: {e}"))?;
                spectral::morse_index(&grid, &INDEX_SWEEP, 12)
                    .map_err(|e| format!("index n={n}: {e}"))
            }));
        }
        for (slot, handle) in results.iter_mut().zip(handles) {
            *slot = Some(handle.join().expect("index worker panicked"));
        }
    });
    let mut n4_report = None;
    for (&n, result) in dims.iter().zip(results) {
        let report = result.expect("worker finished")?;
        records.push(CheckRecord::two_sided(
            format!("catenoid_index_n{n}"),
            "the catenoid has Morse index 1",
            report.morse_index as f64,
            1.0,
            0.0,
        ));
        records.push(CheckRecord::flag(
            format!("catenoid_index_stable_n{n}"),
            "index of the truncated balls stabilizes along the sweep",
            report.stabilized,
        ));
        if n == 4 {
            n4_report = Some(report);
        }
    }
    records.push(CheckRecord::upper_bounded(
        "catenoid_index_runtime_seconds",
        "the four-dimension index sweep completes within a minute",
        started.elapsed().as_secs_f64(),
        60.0,
    ));
    Ok(n4_report.expect("n = 4 is in the dimension list"))
}

/// Criterion: the hyperplane is stable; no mode carries an eigenvalue
/// below the spectral floor.
pub fn plane_stability_checks(records: &mut Vec<CheckRecord>) -> Result<SpectralReport, String> {
    let grid =
        ProfileGrid::plane(4, 80.0, 800_000).map_err(|e| format!("plane profile: {e}"))?;
    let report =
        spectral::morse_index(&grid, &INDEX_SWEEP, 12).map_err(|e| format!("plane index: {e}"))?;
    records.push(CheckRecord::two_sided(
        "plane_index",
        "the hyperplane is stable (index 0)",
        report.morse_index as f64,
        0.0,
        0.0,
    ));
    let mut min_shifted = f64::MAX;
    for entry in &report.sweep {
        for mode in &entry.modes {
            if let Some(l1) = mode.lowest.first() {
                min_shifted = min_shifted.min(l1 + mode.spectral_floor);
            }
        }
    }
    records.push(CheckRecord::lower_bounded(
        "plane_mode_floor",
        "every truncated mode eigenvalue clears the spectral floor",
        min_shifted,
        0.0,
    ));
    Ok(report)
}

/// Criterion: the transverse translations are certified L² Jacobi fields
/// (order ≥ 1.8 residual decay); the axial and dilation fields are
/// rejected as non-L².
pub fn nullity_checks(records: &mut Vec<CheckRecord>) {
    for n in [4usize, 5] {
        let grid = match ProfileGrid::catenoid(n, 1.0, 30.0, 30_000) {
            Ok(g) => g,
            Err(e) => {
                records.push(CheckRecord::flag(
                    format!("nullity_grid_n{n}"),
                    "profile construction for nullity certification",
                    false,
                ));
                let _ = e;
                continue;
            }
        };
        let cert = certify_jacobi_field(&grid, GeometricField::TranslationTransverse(1));
        match cert {
            Ok(c) => {
                records.push(CheckRecord::flag(
                    format!("translations_certified_n{n}"),
                    "the n-1 transverse translations are L² Jacobi fields",
                    c.certified,
                ));
                records.push(CheckRecord::lower_bounded(
                    format!("translation_residual_order_n{n}"),
                    "translation Jacobi residual decays at second order",
                    c.observed_order,
                    1.8,
                ));
            }
            Err(_) => records.push(CheckRecord::flag(
                format!("translations_certified_n{n}"),
                "the n-1 transverse translations are L² Jacobi fields",
                false,
            )),
        }
        let axial = certify_jacobi_field(&grid, GeometricField::TranslationAxial);
        records.push(CheckRecord::flag(
            format!("axial_rejected_n{n}"),
            "the axial normal component is not square integrable",
            matches!(axial, Ok(c) if c.l2 == L2Verdict::NotSquareIntegrable),
        ));
        let dil = certify_jacobi_field(&grid, GeometricField::Dilation);
        records.push(CheckRecord::flag(
            format!("dilation_rejected_n{n}"),
            "the dilation field is not square integrable",
            matches!(dil, Ok(c) if c.l2 == L2Verdict::NotSquareIntegrable),
        ));
    }
}

/// Criterion: the five frame identities and the test-function Laplace
/// identity hold with residuals decaying at order ≥ 1.8 on seeded samples.
pub fn identity_checks(records: &mut Vec<CheckRecord>, seed: u64) {
    for n in [4usize, 5] {
        let coarse = match ProfileGrid::catenoid(n, 1.0, 20.0, 20_000) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let fine = coarse.refined(2).expect("refinement");
        let om_c = harmonic::limit_harmonic(&coarse).expect("limit form");
        let om_f = harmonic::limit_harmonic(&fine).expect("limit form");
        let pts_c = select_samples(coarse.len(), 2, 128, seed);
        let pts_f: Vec<usize> = pts_c.iter().map(|i| 2 * i).collect();
        let res_c = variational::frame_identities_check(&coarse, &om_c, &pts_c).expect("identities");
        let res_f = variational::frame_identities_check(&fine, &om_f, &pts_f).expect("identities");
        for k in 0..5 {
            let order = observed_order(res_c[k].sup_residual, res_f[k].sup_residual, 1e-12);
            records.push(CheckRecord::lower_bounded(
                format!("identity_{}_order_n{n}", res_c[k].id),
                "frame identity residual decays at second order",
                order.min(16.0),
                1.8,
            ));
        }
        let lap_c =
            variational::laplace_identity_check(&coarse, &om_c, 1, n, &pts_c).expect("laplace");
        let lap_f =
            variational::laplace_identity_check(&fine, &om_f, 1, n, &pts_f).expect("laplace");
        records.push(CheckRecord::lower_bounded(
            format!("identity_test_function_laplacian_order_n{n}"),
            "test-function Laplace identity residual decays at second order",
            observed_order(lap_c, lap_f, 1e-12).min(16.0),
            1.8,
        ));
        let zero_pair = variational::laplace_identity_check(&coarse, &om_c, 1, 2, &pts_c)
            .expect("laplace zero pair");
        records.push(CheckRecord::upper_bounded(
            format!("identity_vanishing_pair_n{n}"),
            "transverse-pair test functions satisfy the identity exactly",
            zero_pair,
            1e-12,
        ));
    }
}

/// Criterion: the pairwise form sum vanishes for the limit 1-form on the
/// n = 4 catenoid, every individual term vanishes (rigidity case), and
/// the defect improves at order ≥ 1.8 under refinement.
pub fn q_sum_checks(records: &mut Vec<CheckRecord>) {
    let mut totals = Vec::new();
    let mut worst_term: f64 = 0.0;
    for samples in [20_000usize, 40_000, 80_000] {
        let grid = ProfileGrid::catenoid(4, 1.0, 40.0, samples).expect("profile");
        let om = harmonic::limit_harmonic(&grid).expect("limit form");
        let qs = variational::q_sum(&grid, &om, "limit-differential").expect("q sum");
        if samples == 80_000 {
            for (_, _, q, _) in &qs.terms {
                worst_term = worst_term.max(q.abs());
            }
        }
        totals.push(qs.total.abs());
    }
    records.push(CheckRecord::upper_bounded(
        "qsum_total",
        "the pairwise form sum vanishes for an L² harmonic 1-form",
        totals[2],
        1e-6,
    ));
    records.push(CheckRecord::upper_bounded(
        "qsum_each_term",
        "each pair form value vanishes in the rigidity case",
        worst_term,
        1e-6,
    ));
    let order1 = observed_order(totals[0], totals[1], 1e-9);
    let order2 = observed_order(totals[1], totals[2], 1e-9);
    records.push(CheckRecord::lower_bounded(
        "qsum_order",
        "the form-sum defect decays at second order",
        order1.min(order2).min(16.0),
        1.8,
    ));
}

/// Criterion: algebraic reduction of the test functions, float-exact.
pub fn reduction_checks(records: &mut Vec<CheckRecord>) {
    let grid = ProfileGrid::catenoid(4, 1.0, 20.0, 20_000).expect("profile");
    let om = harmonic::limit_harmonic(&grid).expect("limit form");
    let z_inf = grid.z_infinity().expect("height");
    let c = 1.0 / (2.0 * z_inf);
    let mut axial_sup: f64 = 0.0;
    let mut transverse_sup: f64 = 0.0;
    for i in 1..4usize {
        let tf = variational::test_function(&grid, &om, "limit-differential", i, 4)
            .expect("test function");
        for k in 0..grid.len() {
            axial_sup = axial_sup.max((tf.field.radial[k] - c * (-grid.zp[k])).abs());
        }
        for j in (i + 1)..4 {
            let tz = variational::test_function(&grid, &om, "limit-differential", i, j)
                .expect("test function");
            transverse_sup = transverse_sup.max(tz.field.sup());
        }
    }
    records.push(CheckRecord::upper_bounded(
        "testfn_axial_reduction",
        "axial-pair test functions reduce to the normal components",
        axial_sup,
        1e-10,
    ));
    records.push(CheckRecord::upper_bounded(
        "testfn_transverse_vanishing",
        "transverse-pair test functions vanish identically",
        transverse_sup,
        1e-12,
    ));
}

/// Criterion: harmonic construction — maximum principle, energy
/// monotonicity, complementarity, the n = 3 divergence, and the limit
/// object against the height function and the Beta-function value.
pub fn harmonic_checks(records: &mut Vec<CheckRecord>) {
    let grid = ProfileGrid::catenoid(4, 1.0, 80.0, 800_000).expect("profile");
    let f20 = harmonic::truncated_harmonic(&grid, 20.0, (0.0, 1.0)).expect("S=20");
    let f40 = harmonic::truncated_harmonic(&grid, 40.0, (0.0, 1.0)).expect("S=40");
    let f80 = harmonic::truncated_harmonic(&grid, 80.0, (0.0, 1.0)).expect("S=80");

    let mut strict = true;
    for i in f20.window.lo + 1..f20.window.hi {
        if !(f20.phi[i] > 0.0 && f20.phi[i] < 1.0) {
            strict = false;
            break;
        }
    }
    records.push(CheckRecord::flag(
        "harmonic_maximum_principle",
        "truncated solutions stay strictly between their boundary values",
        strict,
    ));
    records.push(CheckRecord::flag(
        "harmonic_energy_monotone",
        "Dirichlet energies strictly decrease in the truncation radius",
        f20.dirichlet_energy > f40.dirichlet_energy
            && f40.dirichlet_energy > f80.dirichlet_energy,
    ));

    let f20_swapped = harmonic::truncated_harmonic(&grid, 20.0, (1.0, 0.0)).expect("swap");
    let mut sup_sum: f64 = 0.0;
    for i in 0..grid.len() {
        sup_sum = sup_sum.max((f20.phi[i] + f20_swapped.phi[i] - 1.0).abs());
    }
    records.push(CheckRecord::upper_bounded(
        "harmonic_complementarity",
        "the two end solutions sum to the constant 1",
        sup_sum,
        1e-12,
    ));

    let n3 = ProfileGrid::catenoid(3, 1.0, 20.0, 20_000).expect("n3 profile");
    records.push(CheckRecord::flag(
        "harmonic_n3_divergence",
        "the finite-energy limit construction fails in dimension 3",
        matches!(
            harmonic::limit_harmonic(&n3),
            Err(minsurf_core::Error::Divergent(_))
        ),
    ));

    let limit = harmonic::limit_harmonic(&grid).expect("limit");
    let z_inf = grid.z_infinity().expect("height");
    let mut sup_height: f64 = 0.0;
    for i in 0..grid.len() {
        sup_height = sup_height.max((limit.phi[i] - (grid.z[i] / z_inf + 1.0) / 2.0).abs());
    }
    records.push(CheckRecord::upper_bounded(
        "harmonic_limit_height",
        "the limit solution is the normalized height function",
        sup_height,
        1e-8,
    ));
    let z_oracle = oracle::catenoid_height_limit(4, 1.0);
    records.push(CheckRecord::two_sided(
        "harmonic_height_constant",
        "the asymptotic height matches the Beta-function closed form",
        z_inf,
        z_oracle,
        1e-6 * z_oracle,
    ));
}

/// Criterion: total curvature value and scale invariance.
pub fn total_curvature_checks(records: &mut Vec<CheckRecord>) {
    let exact = oracle::catenoid_total_curvature(4);
    let g1 = ProfileGrid::catenoid(4, 1.0, 40.0, 80_000).expect("profile");
    let t1 = geometry::total_curvature(&g1, 1e-4).expect("curvature");
    records.push(CheckRecord::two_sided(
        "total_curvature_value",
        "total curvature of the n = 4 catenoid equals the closed form",
        t1.value,
        exact,
        1e-4 * exact,
    ));
    let g2 = ProfileGrid::catenoid(4, 2.0, 80.0, 160_000).expect("profile");
    let t2 = geometry::total_curvature(&g2, 1e-4).expect("curvature");
    records.push(CheckRecord::two_sided(
        "total_curvature_scale_invariance",
        "total curvature is invariant under rescaling the neck",
        t2.value / t1.value,
        1.0,
        1e-6,
    ));
}

/// Criterion: end asymptotics (decay exponents, scaled limit, curvature
/// decay, volume growth).
pub fn asymptotics_checks(records: &mut Vec<CheckRecord>) {
    for n in [4usize, 5] {
        let grid = ProfileGrid::catenoid(n, 1.0, 40.0, 200_000).expect("profile");
        match geometry::end_asymptotics(&grid).expect("fit") {
            EndAsymptotics::Fit(fit) => {
                let expected_u = -((n as f64) - 3.0);
                records.push(CheckRecord::two_sided(
                    format!("end_decay_exponent_n{n}"),
                    "the end graph decays like r^{3-n}",
                    fit.exponent_u,
                    expected_u,
                    0.05 * expected_u.abs(),
                ));
                // r^{n-3}·u → r0^{n-2}/(n-3); at n = 4 this is r0^{n-2}
                let expected_limit = 1.0 / ((n as f64) - 3.0);
                records.push(CheckRecord::two_sided(
                    format!("end_scaled_limit_n{n}"),
                    "the scaled end height approaches its asymptotic constant",
                    fit.limit_of_scaled_u,
                    expected_limit,
                    0.02 * expected_limit,
                ));
            }
            EndAsymptotics::TrivialEnd => {
                records.push(CheckRecord::flag(
                    format!("end_decay_exponent_n{n}"),
                    "the end graph decays like r^{3-n}",
                    false,
                ));
            }
        }
        if n == 4 {
            let checks = geometry::levelset_and_volume_checks(&grid, 30.0).expect("levelset");
            records.push(CheckRecord::upper_bounded(
                "curvature_decay_at_30",
                "|A|·|x| falls below 0.01 by radius 30·r0",
                checks.curvature_decay,
                0.01,
            ));
            records.push(CheckRecord::two_sided(
                "volume_ratio_two_ends",
                "ball volume growth approaches the number of ends",
                checks.volume_ratio,
                2.0,
                0.1,
            ));
        }
    }
}

/// Criterion: rigidity — curvature pattern, constraint ranks, frame
/// relation.
pub fn rigidity_checks(records: &mut Vec<CheckRecord>) {
    let grid = ProfileGrid::catenoid(4, 1.0, 20.0, 4_000).expect("profile");
    let tuples = rigidity::curvature_tuples(&grid);
    let scan = rigidity::multiplicity_scan(&tuples, 1e-6).expect("scan");
    records.push(CheckRecord::two_sided(
        "curvature_pattern_fraction",
        "every catenoid sample carries a multiplicity-(n-2) curvature",
        scan.multiplicity_nm2_points as f64 / tuples.len() as f64,
        1.0,
        0.0,
    ));

    for n in 3..=7usize {
        let mut kappas: Vec<f64> = (1..n).map(|k| k as f64).collect();
        let head: f64 = kappas[..n - 2].iter().sum();
        kappas[n - 2] = -head;
        records.push(CheckRecord::two_sided(
            format!("constraint_rank_distinct_n{n}"),
            "distinct curvatures pin the second-order data to 2n-2 dimensions",
            rigidity::constraint_rank(&kappas, 1e-6) as f64,
            (2 * n - 2) as f64,
            0.0,
        ));
    }
    records.push(CheckRecord::two_sided(
        "constraint_rank_catenoid_tuple",
        "the catenoid pattern releases one off-diagonal second-order entry",
        rigidity::constraint_rank(&[1.0, 1.0, -2.0], 1e-6) as f64,
        7.0,
        0.0,
    ));
    records.push(CheckRecord::two_sided(
        "constraint_rank_umbilic_tuple",
        "the umbilic tuple leaves only the trace constraint",
        rigidity::constraint_rank(&[1.0, 1.0, 1.0], 1e-6) as f64,
        9.0,
        0.0,
    ));

    let fine = ProfileGrid::catenoid(4, 1.0, 20.0, 800_000).expect("fine profile");
    match rigidity::frame_equation_check(&fine).expect("frame") {
        rigidity::FrameCheck::Residuals(res) => {
            records.push(CheckRecord::upper_bounded(
                "frame_relation_residual",
                "the adapted-frame connection coefficient matches -e3(λ)/(3λ)",
                res.a_relation_sup,
                1e-8,
            ));
            records.push(CheckRecord::flag(
                "frame_mixed_components",
                "mixed frame components vanish exactly in the representation",
                res.b_component == 0.0 && res.d_component == 0.0,
            ));
        }
        rigidity::FrameCheck::Umbilic => records.push(CheckRecord::flag(
            "frame_relation_residual",
            "the adapted-frame connection coefficient matches -e3(λ)/(3λ)",
            false,
        )),
    }
}

/// Criterion: bound reports with exact rational right-hand sides and a
/// violation detector.
pub fn bound_checks(
    records: &mut Vec<CheckRecord>,
    catenoid_n4: &SpectralReport,
    plane_n4: &SpectralReport,
) {
    let cat = rigidity::bound_report(
        4,
        2,
        0,
        catenoid_n4.morse_index,
        catenoid_n4.nullity_lower_bound,
        RigidityBranch::Catenoid,
    )
    .expect("catenoid bound");
    records.push(CheckRecord::flag(
        "bound_catenoid_rhs",
        "catenoid right-hand sides are 1/6 and -2/3 exactly",
        cat.rhs_sum_bound.to_string() == "1/6" && cat.rhs_index_bound.to_string() == "-2/3",
    ));
    records.push(CheckRecord::flag(
        "bound_catenoid_flags",
        "index+nullity and index bounds hold on the catenoid",
        cat.sum_bound_ok && cat.index_bound_ok,
    ));

    let plane = rigidity::bound_report(
        4,
        1,
        0,
        plane_n4.morse_index,
        plane_n4.nullity_lower_bound,
        RigidityBranch::Hyperplane,
    )
    .expect("plane bound");
    records.push(CheckRecord::flag(
        "bound_plane_flags",
        "the stable hyperplane meets its zero bound",
        plane.rhs_sum_bound.to_string() == "0" && plane.sum_bound_ok,
    ));

    let synthetic = rigidity::bound_report(4, 20, 0, 1, 0, RigidityBranch::DistinctPoint)
        .expect("synthetic bound");
    records.push(CheckRecord::flag(
        "bound_violation_detected",
        "the checker flags a violating synthetic input",
        !synthetic.sum_bound_ok && synthetic.rhs_sum_bound.to_string() == "19/6",
    ));
}

/// Criterion: inertia counting agrees with a dense QL eigensolve on every
/// moderate instance.
pub fn oracle_equivalence_checks(records: &mut Vec<CheckRecord>) {
    for kind in [SurfaceKind::Catenoid, SurfaceKind::Plane] {
        let mut disagreements = 0usize;
        let mut instances = 0usize;
        for s in INDEX_SWEEP {
            let grid = match kind {
                SurfaceKind::Catenoid => ProfileGrid::catenoid(4, 1.0, s, 2000),
                SurfaceKind::Plane => ProfileGrid::plane(4, s, 2000),
            }
            .expect("profile");
            for l in 0..=5u32 {
                let op = ModeOperator::full(&grid, l).expect("operator");
                let inertia = op.negative_count();
                let dense = oracle::pencil_eigenvalues_ql(
                    &op.pencil.k_diag,
                    &op.pencil.k_off,
                    &op.pencil.m_diag,
                );
                let dense_count = dense.iter().filter(|&&ev| ev < -op.spectral_floor).count();
                if inertia != dense_count {
                    disagreements += 1;
                }
                instances += 1;
            }
        }
        records.push(CheckRecord::two_sided(
            format!("inertia_vs_dense_{}", kind.as_str()),
            "Sylvester inertia equals the dense eigensolve negative count",
            disagreements as f64,
            0.0,
            0.0,
        ));
        records.push(CheckRecord::two_sided(
            format!("inertia_vs_dense_{}_instances", kind.as_str()),
            "all sweep×mode instances were compared",
            instances as f64,
            18.0,
            0.0,
        ));
    }
}

/// Run the entire suite. `seed` drives identity sample selection.
pub fn run_all(seed: u64) -> VerifyOutcome {
    let mut records = Vec::new();
    let mut inconclusive = None;

    let catenoid_report = match catenoid_index_checks(&mut records) {
        Ok(rep) => Some(rep),
        Err(msg) => {
            inconclusive = Some(msg);
            None
        }
    };
    let plane_report = match plane_stability_checks(&mut records) {
        Ok(rep) => Some(rep),
        Err(msg) => {
            inconclusive.get_or_insert(msg);
            None
        }
    };
    nullity_checks(&mut records);
    identity_checks(&mut records, seed);
    q_sum_checks(&mut records);
    reduction_checks(&mut records);
    harmonic_checks(&mut records);
    total_curvature_checks(&mut records);
    asymptotics_checks(&mut records);
    rigidity_checks(&mut records);
    if let (Some(cat), Some(plane)) = (&catenoid_report, &plane_report) {
        bound_checks(&mut records, cat, plane);
    }
    oracle_equivalence_checks(&mut records);

    VerifyOutcome {
        records,
        inconclusive,
    }
}
