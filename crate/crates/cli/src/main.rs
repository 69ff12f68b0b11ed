use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use minsurf_cli::commands::{self, CliError};
use minsurf_cli::config::RunConfig;

/// Numerical laboratory for minimal hypersurfaces of revolution:
/// profiles, Jacobi spectra, harmonic 1-forms, test-function identities,
/// rigidity data, and the consolidated verification report.
#[derive(Parser)]
#[command(name = "minsurf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and export the surface profile grid
    Profile(CommonArgs),
    /// Total curvature with error estimate
    Curvature(CommonArgs),
    /// Per-mode eigenvalue table over the truncation sweep
    Spectrum(CommonArgs),
    /// Morse index report (sweep, nullity bound, mode data)
    Index(CommonArgs),
    /// Bounded harmonic functions and the 1-form basis
    Harmonic(CommonArgs),
    /// Test functions, pairwise form values, projection ranks
    Testfn(CommonArgs),
    /// Frame identity residuals with convergence orders
    Identities(CommonArgs),
    /// Curvature multiplicities, constraint ranks, frame relations, bounds
    Rigidity(CommonArgs),
    /// End decay fits, level-set pinching, volume growth
    Asymptotics(CommonArgs),
    /// Full verification report; exit 0 iff all checks pass
    Report(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Profile(_) => "profile",
            Command::Curvature(_) => "curvature",
            Command::Spectrum(_) => "spectrum",
            Command::Index(_) => "index",
            Command::Harmonic(_) => "harmonic",
            Command::Testfn(_) => "testfn",
            Command::Identities(_) => "identities",
            Command::Rigidity(_) => "rigidity",
            Command::Asymptotics(_) => "asymptotics",
            Command::Report(_) => "report",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Profile(a)
            | Command::Curvature(a)
            | Command::Spectrum(a)
            | Command::Index(a)
            | Command::Harmonic(a)
            | Command::Testfn(a)
            | Command::Identities(a)
            | Command::Rigidity(a)
            | Command::Asymptotics(a)
            | Command::Report(a) => a,
        }
    }
}

/// Configuration file plus per-key overrides (flags mirror config keys).
#[derive(Args)]
struct CommonArgs {
    /// Path to a key=value configuration file
    #[arg(long = "config")]
    config: Option<PathBuf>,
    /// Surface kind: catenoid or plane
    #[arg(long = "surface")]
    surface: Option<String>,
    /// Ambient dimension (3..=7)
    #[arg(long = "n")]
    n: Option<String>,
    /// Neck radius
    #[arg(long = "r0")]
    r0: Option<String>,
    /// Grid arclength extent per side
    #[arg(long = "s_max")]
    s_max: Option<String>,
    /// Sample count per side
    #[arg(long = "samples")]
    samples: Option<String>,
    /// Comma-separated strictly increasing truncation radii
    #[arg(long = "s_sweep")]
    s_sweep: Option<String>,
    /// Mode cap for the index scan
    #[arg(long = "l_max_cap")]
    l_max_cap: Option<String>,
    /// Spectral floor override (0 = automatic)
    #[arg(long = "spectral_floor")]
    spectral_floor: Option<String>,
    /// Identity / curvature-coincidence tolerance
    #[arg(long = "identity_tol")]
    identity_tol: Option<String>,
    /// Singular-value threshold for numerical ranks
    #[arg(long = "rank_threshold")]
    rank_threshold: Option<String>,
    /// Seeded sample-point count for identity checks
    #[arg(long = "identity_samples")]
    identity_samples: Option<String>,
    /// Artifact directory
    #[arg(long = "output_dir")]
    output_dir: Option<String>,
    /// Profile cache directory (MINSURF_CACHE_DIR overrides)
    #[arg(long = "cache_dir")]
    cache_dir: Option<String>,
    /// Largest grid (rows) the cache stores
    #[arg(long = "cache_max_rows")]
    cache_max_rows: Option<String>,
    /// Seed for sample-point selection
    #[arg(long = "seed")]
    seed: Option<String>,
}

impl CommonArgs {
    fn build_config(&self) -> Result<RunConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => RunConfig::load(path).map_err(|e| CliError::Usage(e.to_string()))?,
            None => RunConfig::default(),
        };
        let overrides: [(&str, &Option<String>); 14] = [
            ("surface", &self.surface),
            ("n", &self.n),
            ("r0", &self.r0),
            ("s_max", &self.s_max),
            ("samples", &self.samples),
            ("s_sweep", &self.s_sweep),
            ("l_max_cap", &self.l_max_cap),
            ("spectral_floor", &self.spectral_floor),
            ("identity_tol", &self.identity_tol),
            ("rank_threshold", &self.rank_threshold),
            ("identity_samples", &self.identity_samples),
            ("output_dir", &self.output_dir),
            ("cache_dir", &self.cache_dir),
            ("cache_max_rows", &self.cache_max_rows),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                config
                    .set(key, v)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
        }
        if let Some(v) = &self.seed {
            config
                .set("seed", v)
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        config
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(config)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = cli.command.args();
    let config = match args.build_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match commands::run_subcommand(cli.command.name(), &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
