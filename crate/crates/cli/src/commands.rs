//! Subcommand implementations: each builds its inputs through the profile
//! cache, runs the corresponding library operations, and writes
//! deterministic artifacts into the output directory.

use std::path::{Path, PathBuf};

use minsurf_core::geometry::{self, EndAsymptotics};
use minsurf_core::harmonic;
use minsurf_core::profile::{ProfileGrid, SurfaceKind};
use minsurf_core::rigidity::{self, RigidityBranch};
use minsurf_core::sampling::{observed_order, select_samples};
use minsurf_core::spectral::{self, SpectralReport};
use minsurf_core::variational;
use minsurf_core::Error as CoreError;

use crate::cache;
use crate::config::RunConfig;
use crate::csvio;
use crate::json::{to_artifact, JsonObject, JsonValue};
use crate::verify;

/// Command failure with the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: configuration or usage problems.
    Usage(String),
    /// Exit 1: a verification check failed.
    CheckFailure(String),
    /// Exit 3: a computation ended without a certified answer.
    Inconclusive(String),
    /// Exit 1: any other runtime failure.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::CheckFailure(_) | CliError::Runtime(_) => 1,
            CliError::Inconclusive(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::CheckFailure(m) => write!(f, "check failure: {m}"),
            CliError::Inconclusive(m) => write!(f, "inconclusive: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Inconclusive(msg) => CliError::Inconclusive(msg),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("io: {e}"))
    }
}

fn out_path(config: &RunConfig, name: &str) -> PathBuf {
    Path::new(&config.output_dir).join(name)
}

fn write_artifact(config: &RunConfig, name: &str, contents: &[u8]) -> Result<(), CliError> {
    csvio::write_atomic(&out_path(config, name), contents)?;
    Ok(())
}

fn load_grid(config: &RunConfig) -> Result<ProfileGrid, CliError> {
    let dir = cache::effective_cache_dir(&config.cache_dir);
    Ok(cache::grid_through_cache(
        &dir,
        config.surface,
        config.n,
        config.r0,
        config.s_max,
        config.samples,
        config.cache_max_rows,
    )?)
}

fn surface_json(grid: &ProfileGrid) -> JsonValue {
    // n = 3 is the classical cross-check: accepted everywhere, but the
    // bounded-harmonic energies degenerate there, so reports carry a flag
    JsonObject::new()
        .str("kind", grid.kind.as_str())
        .uint("n", grid.n as u64)
        .num("r0", grid.r0)
        .bool("outside_supported_regime", grid.n == 3)
        .build()
}

pub fn cmd_profile(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    let mut csv = Vec::new();
    csvio::write_profile_csv(&grid, &mut csv)?;
    write_artifact(config, "profile.csv", &csv)?;
    write_artifact(config, "profile.meta", csvio::profile_metadata(&grid).as_bytes())?;
    Ok(())
}

pub fn cmd_curvature(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    let tc = geometry::total_curvature(&grid, 1e-4).map_err(|e| match e {
        CoreError::Accuracy { requested, achieved } => CliError::Runtime(format!(
            "grid too coarse for total curvature: requested {requested:e}, achieved {achieved:e}"
        )),
        other => CliError::from(other),
    })?;
    let json = JsonObject::new()
        .field("surface", surface_json(&grid))
        .num("total_curvature", tc.value)
        .num("error_estimate", tc.error_estimate)
        .build();
    write_artifact(config, "curvature.json", to_artifact(json).as_bytes())
}

fn run_index(config: &RunConfig, grid: &ProfileGrid) -> Result<SpectralReport, CliError> {
    spectral::morse_index(grid, &config.s_sweep, config.l_max_cap).map_err(|e| {
        CliError::Inconclusive(e.reason)
    })
}

fn spectral_report_json(report: &SpectralReport) -> JsonValue {
    let sweep = JsonValue::array(report.sweep.iter().map(|entry| {
        let modes = JsonValue::array(entry.modes.iter().map(|m| {
            JsonObject::new()
                .uint("l", m.l as u64)
                .uint("mult", m.multiplicity)
                .uint("neg", m.negative_count as u64)
                .field("lowest", JsonValue::num_array(m.lowest.iter().copied()))
                .build()
        }));
        JsonObject::new()
            .num("S", entry.s)
            .field("modes", modes)
            .uint("index_of_ball", entry.index_of_ball)
            .build()
    }));
    let floor_max = report
        .sweep
        .iter()
        .flat_map(|e| e.modes.iter().map(|m| m.spectral_floor))
        .fold(0.0f64, f64::max);
    JsonObject::new()
        .field(
            "surface",
            JsonObject::new()
                .str("kind", report.kind.as_str())
                .uint("n", report.n as u64)
                .num("r0", report.r0)
                .bool("outside_supported_regime", report.n == 3)
                .build(),
        )
        .field("sweep", sweep)
        .uint("morse_index", report.morse_index)
        .uint("nullity_lower_bound", report.nullity_lower_bound)
        .uint("l_stop", report.l_stop as u64)
        .bool("stabilized", report.stabilized)
        .field(
            "tolerances",
            JsonObject::new()
                .num("h", report.h)
                .num("spectral_floor_max", floor_max)
                .build(),
        )
        .build()
}

pub fn cmd_index(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    let report = run_index(config, &grid)?;
    let json = spectral_report_json(&report);
    write_artifact(config, "spectral_report.json", to_artifact(json).as_bytes())
}

pub fn cmd_spectrum(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    let report = run_index(config, &grid)?;
    let mut csv = Vec::new();
    csvio::write_spectrum_csv(&report, &mut csv)?;
    write_artifact(config, "spectrum.csv", &csv)
}

pub fn cmd_harmonic(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    if grid.kind == SurfaceKind::Plane {
        let json = JsonObject::new()
            .field("surface", surface_json(&grid))
            .field("sweep", JsonValue::array([]))
            .field("limit", JsonValue::null())
            .uint("function_count", 1)
            .uint("form_dimension", 0)
            .build();
        write_artifact(config, "harmonic.json", to_artifact(json).as_bytes())?;
        // one end: the bounded harmonic functions are the constants
        let constant = minsurf_core::harmonic::HarmonicData {
            phi: vec![1.0; grid.len()],
            omega_radial: vec![0.0; grid.len()],
            dirichlet_energy: 0.0,
            l2_norm_form: 0.0,
            truncation: None,
            end_values: (1.0, 1.0),
            trivial: true,
            window: grid.full_window(),
        };
        let mut csv = Vec::new();
        csvio::write_harmonic_csv(&grid, &constant, &mut csv)?;
        return write_artifact(config, "harmonic.csv", &csv);
    }
    let mut sweep_entries = Vec::new();
    for &s in &config.s_sweep {
        let data = harmonic::truncated_harmonic(&grid, s, (0.0, 1.0))?;
        sweep_entries.push(
            JsonObject::new()
                .num("S", s)
                .num("energy", data.dirichlet_energy)
                .num("l2_form_norm", data.l2_norm_form)
                .field(
                    "end_values",
                    JsonValue::num_array([data.end_values.0, data.end_values.1]),
                )
                .build(),
        );
    }
    let (limit_json, limit_data) = match harmonic::limit_harmonic(&grid) {
        Ok(data) => (
            JsonObject::new()
                .num("energy", data.dirichlet_energy)
                .num("l2_form_norm", data.l2_norm_form)
                .field(
                    "end_values",
                    JsonValue::num_array([data.end_values.0, data.end_values.1]),
                )
                .build(),
            Some(data),
        ),
        Err(CoreError::Divergent(msg)) => (
            JsonObject::new().str("divergent", &msg).build(),
            None,
        ),
        Err(e) => return Err(e.into()),
    };
    let basis = harmonic::harmonic_one_form_basis(&grid).map(Some).unwrap_or(None);
    let json = JsonObject::new()
        .field("surface", surface_json(&grid))
        .field("sweep", JsonValue::array(sweep_entries))
        .field("limit", limit_json)
        .uint("function_count", grid.kind.ends() as u64)
        .uint(
            "form_dimension",
            basis.as_ref().map(|b| b.dimension as u64).unwrap_or(0),
        )
        .build();
    write_artifact(config, "harmonic.json", to_artifact(json).as_bytes())?;
    let table = match &limit_data {
        Some(d) => d.clone(),
        None => harmonic::truncated_harmonic(&grid, *config.s_sweep.last().unwrap(), (0.0, 1.0))?,
    };
    let mut csv = Vec::new();
    csvio::write_harmonic_csv(&grid, &table, &mut csv)?;
    write_artifact(config, "harmonic.csv", &csv)
}

pub fn cmd_testfn(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    let basis = harmonic::harmonic_one_form_basis(&grid)?;
    if basis.forms.is_empty() {
        let json = JsonObject::new()
            .field("surface", surface_json(&grid))
            .uint("form_dimension", 0)
            .field("pairs", JsonValue::array([]))
            .build();
        write_artifact(config, "testfn.json", to_artifact(json).as_bytes())?;
        let mut csv = Vec::new();
        csvio::write_qsum_csv(&[], &mut csv)?;
        return write_artifact(config, "testfn.csv", &csv);
    }
    let omega = &basis.forms[0];
    let qs = variational::q_sum(&grid, omega, "limit-differential")?;
    let mut csv = Vec::new();
    csvio::write_qsum_csv(&qs.terms, &mut csv)?;
    write_artifact(config, "testfn.csv", &csv)?;

    let mut families: Vec<Vec<variational::TestFunctionField>> = Vec::new();
    for (k, om) in basis.forms.iter().enumerate() {
        let mut family = Vec::new();
        for (i, j) in variational::pair_order(grid.n) {
            family.push(variational::test_function(
                &grid,
                om,
                &format!("form{k}"),
                i,
                j,
            )?);
        }
        families.push(family);
    }
    let rank = variational::projection_rank(&grid, &families, config.rank_threshold)?;
    let pair_entries = JsonValue::array(qs.terms.iter().map(|(i, j, q, res)| {
        JsonObject::new()
            .uint("i", *i as u64)
            .uint("j", *j as u64)
            .num("Q", *q)
            .num("residual", *res)
            .build()
    }));
    let json = JsonObject::new()
        .field("surface", surface_json(&grid))
        .uint("form_dimension", basis.dimension as u64)
        .num("q_sum", qs.total)
        .field("pairs", pair_entries)
        .uint("max_rank", rank.max_rank as u64)
        .uint("required_rank", rank.required as u64)
        .bool("bound_ok", rank.bound_ok)
        .bool("injective", rank.injective)
        .build();
    write_artifact(config, "testfn.json", to_artifact(json).as_bytes())
}

pub fn cmd_identities(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    if grid.kind == SurfaceKind::Plane {
        return Err(CliError::Runtime(String::from(
            "the identity suite needs a harmonic 1-form; the plane has none",
        )));
    }
    let fine = grid.refined(2)?;
    let om_c = harmonic::limit_harmonic(&grid)?;
    let om_f = harmonic::limit_harmonic(&fine)?;
    let pts_c = select_samples(grid.len(), 2, config.identity_samples, config.seed);
    let pts_f: Vec<usize> = pts_c.iter().map(|i| 2 * i).collect();
    let res_c = variational::frame_identities_check(&grid, &om_c, &pts_c)?;
    let res_f = variational::frame_identities_check(&fine, &om_f, &pts_f)?;
    let mut entries = Vec::new();
    for k in 0..5 {
        let order = observed_order(res_c[k].sup_residual, res_f[k].sup_residual, 1e-12);
        entries.push(
            JsonObject::new()
                .str("identity_id", res_c[k].id)
                .num("sup_residual", res_c[k].sup_residual)
                .num("h", grid.h)
                .num("observed_order", order)
                .build(),
        );
    }
    let lap_c = variational::laplace_identity_check(&grid, &om_c, 1, grid.n, &pts_c)?;
    let lap_f = variational::laplace_identity_check(&fine, &om_f, 1, grid.n, &pts_f)?;
    entries.push(
        JsonObject::new()
            .str("identity_id", "test_function_laplacian")
            .num("sup_residual", lap_c)
            .num("h", grid.h)
            .num("observed_order", observed_order(lap_c, lap_f, 1e-12))
            .build(),
    );
    let json = JsonObject::new()
        .field("surface", surface_json(&grid))
        .uint("samples", pts_c.len() as u64)
        .uint("seed", config.seed)
        .field("identities", JsonValue::array(entries))
        .build();
    write_artifact(config, "identities.json", to_artifact(json).as_bytes())
}

pub fn cmd_rigidity(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    let tuples = rigidity::curvature_tuples(&grid);
    let scan = rigidity::multiplicity_scan(&tuples, config.identity_tol)?;
    let branch = RigidityBranch::from_scan(&scan);

    let mut rank_entries = Vec::new();
    let mut push_rank = |label: &str, kappas: &[f64]| {
        // rank counts second-order data of harmonic functions; 1-form
        // families exclude the constant mode, hence one dimension fewer
        let rank = rigidity::constraint_rank(kappas, config.identity_tol) as u64;
        rank_entries.push(
            JsonObject::new()
                .str("tuple", label)
                .field("kappas", JsonValue::num_array(kappas.iter().copied()))
                .uint("function_dimension", rank)
                .uint("form_dimension_excluding_constants", rank - 1)
                .build(),
        );
    };
    push_rank("distinct", &[1.0, 2.0, -3.0]);
    push_rank("catenoid-pattern", &[1.0, 1.0, -2.0]);
    push_rank("umbilic", &[1.0, 1.0, 1.0]);

    let frame_json = match rigidity::frame_equation_check(&grid)? {
        rigidity::FrameCheck::Umbilic => JsonObject::new().bool("umbilic", true).build(),
        rigidity::FrameCheck::Residuals(res) => JsonObject::new()
            .bool("umbilic", false)
            .num("a_relation_sup", res.a_relation_sup)
            .num("b_component", res.b_component)
            .num("d_component", res.d_component)
            .num("lambda_constancy", res.lambda_constancy)
            .num("alpha_constancy", res.alpha_constancy)
            .build(),
    };

    let report = run_index(config, &grid)?;
    let bounds = rigidity::bound_report(
        grid.n,
        grid.kind.ends(),
        0,
        report.morse_index,
        report.nullity_lower_bound,
        branch,
    )?;
    let json = JsonObject::new()
        .field("surface", surface_json(&grid))
        .field(
            "classification",
            JsonObject::new()
                .uint("all_distinct", scan.all_distinct_points as u64)
                .uint("multiplicity_nm2", scan.multiplicity_nm2_points as u64)
                .uint("umbilic_zero", scan.umbilic_points as u64)
                .uint("other", scan.other_points as u64)
                .bool("nm2_everywhere", scan.nm2_everywhere)
                .bool("has_distinct_point", scan.has_distinct_point)
                .build(),
        )
        .field("constraint_rank_at", JsonValue::array(rank_entries))
        .field("frame_residuals", frame_json)
        .field("bound_report", bound_report_json(&bounds))
        .build();
    write_artifact(config, "rigidity.json", to_artifact(json).as_bytes())
}

fn bound_report_json(rep: &rigidity::BoundReport) -> JsonValue {
    JsonObject::new()
        .uint("n", rep.n as u64)
        .uint("ends", rep.ends as u64)
        .uint("b1", rep.b1 as u64)
        .uint("index", rep.index)
        .uint("nullity_lower_bound", rep.nullity_lower_bound)
        .str("rhs_sum_bound", &rep.rhs_sum_bound.to_string())
        .num("rhs_sum_bound_value", rep.rhs_sum_bound.value())
        .str("rhs_index_bound", &rep.rhs_index_bound.to_string())
        .num("rhs_index_bound_value", rep.rhs_index_bound.value())
        .bool("sum_bound_ok", rep.sum_bound_ok)
        .bool("index_bound_ok", rep.index_bound_ok)
        .str("branch", rep.branch.as_str())
        .build()
}

pub fn cmd_asymptotics(config: &RunConfig) -> Result<(), CliError> {
    let grid = load_grid(config)?;
    let fit_json = match geometry::end_asymptotics(&grid)? {
        EndAsymptotics::TrivialEnd => JsonObject::new().bool("trivial_end", true).build(),
        EndAsymptotics::Fit(fit) => JsonObject::new()
            .bool("trivial_end", false)
            .num("exponent_u", fit.exponent_u)
            .num("exponent_grad", fit.exponent_grad)
            .num("limit_of_scaled_u", fit.limit_of_scaled_u)
            .field("window", JsonValue::num_array([fit.window.0, fit.window.1]))
            .build(),
    };
    let radius = match grid.kind {
        SurfaceKind::Catenoid => 30.0 * grid.r0,
        SurfaceKind::Plane => 0.75 * grid.s_max(),
    };
    let checks = geometry::levelset_and_volume_checks(&grid, radius)?;
    let json = JsonObject::new()
        .field("surface", surface_json(&grid))
        .field("end_fit", fit_json)
        .num("radius", radius)
        .num("pinching_residual", checks.pinching_residual)
        .num("volume_ratio", checks.volume_ratio)
        .num("curvature_decay", checks.curvature_decay)
        .build();
    write_artifact(config, "asymptotics.json", to_artifact(json).as_bytes())
}

pub fn cmd_report(config: &RunConfig) -> Result<(), CliError> {
    let outcome = verify::run_all(config.seed);
    // wall-clock measurements stay out of the artifact so identical
    // configs produce byte-identical reports
    let checks = JsonValue::array(outcome.records.iter().filter(|r| !r.is_timing()).map(|r| {
        JsonObject::new()
            .str("check_id", &r.check_id)
            .str("reference", r.reference)
            .num("measured", r.measured)
            .num("expected", r.expected)
            .num("tol", r.tol)
            .bool("pass", r.pass)
            .build()
    }));
    let total = outcome.records.iter().filter(|r| !r.is_timing()).count();
    let pass_count = outcome
        .records
        .iter()
        .filter(|r| !r.is_timing() && r.pass)
        .count();
    let all_pass = outcome.inconclusive.is_none() && pass_count == total;
    let json = JsonObject::new()
        .uint("checks_total", total as u64)
        .uint("checks_passed", pass_count as u64)
        .bool("all_pass", all_pass)
        .field(
            "inconclusive",
            match &outcome.inconclusive {
                Some(msg) => JsonValue::str(msg),
                None => JsonValue::null(),
            },
        )
        .field("checks", checks)
        .build();
    write_artifact(config, "verification_report.json", to_artifact(json).as_bytes())?;
    if let Some(msg) = outcome.inconclusive {
        return Err(CliError::Inconclusive(msg));
    }
    if let Some(first_fail) = outcome
        .records
        .iter()
        .find(|r| !r.pass && !r.is_timing())
    {
        return Err(CliError::CheckFailure(format!(
            "{}: measured {} expected {} tol {}",
            first_fail.check_id, first_fail.measured, first_fail.expected, first_fail.tol
        )));
    }
    Ok(())
}

/// Dispatch by subcommand name.
pub fn run_subcommand(name: &str, config: &RunConfig) -> Result<(), CliError> {
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    std::fs::create_dir_all(&config.output_dir)?;
    match name {
        "profile" => cmd_profile(config),
        "curvature" => cmd_curvature(config),
        "spectrum" => cmd_spectrum(config),
        "index" => cmd_index(config),
        "harmonic" => cmd_harmonic(config),
        "testfn" => cmd_testfn(config),
        "identities" => cmd_identities(config),
        "rigidity" => cmd_rigidity(config),
        "asymptotics" => cmd_asymptotics(config),
        "report" => cmd_report(config),
        other => Err(CliError::Usage(format!("unknown subcommand: {other}"))),
    }
}
