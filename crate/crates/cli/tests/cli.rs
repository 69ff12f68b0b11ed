//! End-to-end tests of the `minsurf` binary: exit-code protocol,
//! artifact determinism, cache coherence, and config precedence.

use std::path::Path;
use std::process::Command;

use proptest::prelude::*;

fn minsurf() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minsurf"))
}

fn run_in(dir: &Path, args: &[&str]) -> std::process::Output {
    minsurf()
        .args(args)
        .arg("--output_dir")
        .arg(dir.join("out"))
        .arg("--cache_dir")
        .arg(dir.join("cache"))
        .env_remove("MINSURF_CACHE_DIR")
        .output()
        .expect("binary runs")
}

const SMALL: &[&str] = &["--s_max", "10", "--samples", "4000", "--s_sweep", "5,10"];

#[test]
fn profile_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &[&["profile"], SMALL].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out/profile.csv")).unwrap();
    assert!(csv.starts_with("s,r,z,rp,zp\n"));
    assert_eq!(csv.lines().count(), 8002);
    let meta = std::fs::read_to_string(dir.path().join("out/profile.meta")).unwrap();
    assert!(meta.contains("kind=catenoid"));
    assert!(meta.contains("format_version=1"));
}

#[test]
fn usage_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    // invalid dimension
    let out = run_in(dir.path(), &["profile", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    // sweep exceeding the grid
    let out = run_in(
        dir.path(),
        &["index", "--s_max", "10", "--samples", "1000", "--s_sweep", "5,20"],
    );
    assert_eq!(out.status.code(), Some(2));
    // unknown key in a config file
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "banana=1\n").unwrap();
    let out = minsurf()
        .args(["profile", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand (clap convention)
    let out = minsurf().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identities_artifact_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = [&["identities"], SMALL, &["--seed", "42"]].concat();
    let out = run_in(dir.path(), &args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read(dir.path().join("out/identities.json")).unwrap();
    let out = run_in(dir.path(), &args);
    assert!(out.status.success());
    let second = std::fs::read(dir.path().join("out/identities.json")).unwrap();
    assert_eq!(first, second);
    // different seed, different sample set: still valid, usually different bytes
    let args2 = [&["identities"], SMALL, &["--seed", "43"]].concat();
    assert!(run_in(dir.path(), &args2).status.success());
}

#[test]
fn cache_deletion_does_not_change_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let args = [&["curvature"], SMALL].concat();
    assert!(run_in(dir.path(), &args).status.success());
    let cold = std::fs::read(dir.path().join("out/curvature.json")).unwrap();
    // warm run from cache
    assert!(run_in(dir.path(), &args).status.success());
    let warm = std::fs::read(dir.path().join("out/curvature.json")).unwrap();
    assert_eq!(cold, warm);
    // delete the cache and recompute
    std::fs::remove_dir_all(dir.path().join("cache")).unwrap();
    assert!(run_in(dir.path(), &args).status.success());
    let recomputed = std::fs::read(dir.path().join("out/curvature.json")).unwrap();
    assert_eq!(cold, recomputed);
}

#[test]
fn index_json_carries_the_morse_index() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["index", "--s_max", "20", "--samples", "20000", "--s_sweep", "10,20"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = std::fs::read_to_string(dir.path().join("out/spectral_report.json")).unwrap();
    assert!(json.contains("\"morse_index\":1"));
    assert!(json.contains("\"nullity_lower_bound\":3"));
    assert!(json.contains("\"stabilized\":true"));
}

#[test]
fn plane_report_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["index", "--surface", "plane", "--s_max", "20", "--samples", "20000", "--s_sweep", "10,20"],
    );
    assert!(out.status.success());
    let json = std::fs::read_to_string(dir.path().join("out/spectral_report.json")).unwrap();
    assert!(json.contains("\"morse_index\":0"));
    // empty form basis on the plane
    let out = run_in(dir.path(), &[&["testfn", "--surface", "plane"], SMALL].concat());
    assert!(out.status.success());
    let json = std::fs::read_to_string(dir.path().join("out/testfn.json")).unwrap();
    assert!(json.contains("\"form_dimension\":0"));
    // the identity suite needs a form: runtime failure, exit 1
    let out = run_in(dir.path(), &[&["identities", "--surface", "plane"], SMALL].concat());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spectrum_csv_has_the_documented_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["spectrum", "--s_max", "10", "--samples", "8000", "--s_sweep", "5,10"],
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("out/spectrum.csv")).unwrap();
    assert!(csv.starts_with("S,l,lambda1,lambda2,neg_count\n"));
    assert!(csv.lines().count() > 4);
}

#[test]
fn harmonic_and_asymptotics_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["harmonic", "--s_max", "40", "--samples", "40000", "--s_sweep", "10,20,40"],
    );
    assert!(out.status.success());
    let json = std::fs::read_to_string(dir.path().join("out/harmonic.json")).unwrap();
    assert!(json.contains("\"form_dimension\":1"));
    let csv = std::fs::read_to_string(dir.path().join("out/harmonic.csv")).unwrap();
    assert!(csv.starts_with("s,phi,omega_radial\n"));

    let out = run_in(
        dir.path(),
        &["asymptotics", "--s_max", "40", "--samples", "40000", "--s_sweep", "10,20,40"],
    );
    assert!(out.status.success());
    let json = std::fs::read_to_string(dir.path().join("out/asymptotics.json")).unwrap();
    assert!(json.contains("\"volume_ratio\""));

    // n = 3: the limit construction diverges; reported, not fatal
    let out = run_in(dir.path(), &[&["harmonic", "--n", "3"], SMALL].concat());
    assert!(out.status.success());
    let json = std::fs::read_to_string(dir.path().join("out/harmonic.json")).unwrap();
    assert!(json.contains("divergent"), "{json}");
    assert!(json.contains("\"outside_supported_regime\":true"));
}

#[test]
fn rigidity_artifact_carries_exact_fractions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["rigidity", "--s_max", "20", "--samples", "20000", "--s_sweep", "10,20"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = std::fs::read_to_string(dir.path().join("out/rigidity.json")).unwrap();
    assert!(json.contains("\"rhs_sum_bound\":\"1/6\""));
    assert!(json.contains("\"rhs_index_bound\":\"-2/3\""));
    assert!(json.contains("\"branch\":\"catenoid\""));
    assert!(json.contains("\"nm2_everywhere\":true"));
}

#[test]
fn mode_cap_yields_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    // the cap is reached before two consecutive certified-positive modes
    let out = run_in(
        dir.path(),
        &["index", "--s_max", "10", "--samples", "4000", "--s_sweep", "5,10", "--l_max_cap", "1"],
    );
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn cache_dir_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let env_cache = dir.path().join("env-cache");
    let out = minsurf()
        .args([&["profile"], SMALL].concat())
        .arg("--output_dir")
        .arg(dir.path().join("out"))
        .arg("--cache_dir")
        .arg(dir.path().join("ignored-cache"))
        .env("MINSURF_CACHE_DIR", &env_cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_cache.read_dir().unwrap().next().is_some());
    assert!(!dir.path().join("ignored-cache").exists());
}

#[test]
fn config_file_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "n=5\ns_max=10\nsamples=2000\ns_sweep=5,10\n",
    )
    .unwrap();
    // flag overrides the file's n
    let out = minsurf()
        .args(["profile", "--config"])
        .arg(&cfg)
        .args(["--n", "4"])
        .arg("--output_dir")
        .arg(dir.path().join("out"))
        .arg("--cache_dir")
        .arg(dir.path().join("cache"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let meta = std::fs::read_to_string(dir.path().join("out/profile.meta")).unwrap();
    assert!(meta.contains("n=4"), "{meta}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn config_round_trip_property(
        n in 3usize..=7,
        r0 in 0.1f64..10.0,
        samples in 1usize..1_000_000,
        sweep_start in 1.0f64..5.0,
        sweep_len in 1usize..5,
        seed in any::<u64>(),
    ) {
        use minsurf_cli::config::RunConfig;
        let mut config = RunConfig::default();
        config.n = n;
        config.r0 = r0;
        config.samples = samples;
        config.s_sweep = (0..sweep_len)
            .map(|k| sweep_start * 1.7f64.powi(k as i32))
            .collect();
        config.s_max = *config.s_sweep.last().unwrap();
        config.seed = seed;
        let text = config.to_file_string();
        let parsed = RunConfig::parse_str(&text).unwrap();
        prop_assert_eq!(&parsed, &config);
        prop_assert_eq!(parsed.to_file_string(), text);
    }
}
