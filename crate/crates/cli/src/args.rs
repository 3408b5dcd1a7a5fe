use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bethe",
    version,
    about = "Bethe Ansatz verification suites on the half-line"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Yang-Baxter and Reflection equation residuals over seeded (u, v) samples.
    Consistency(CommonArgs),
    /// Builds the coefficient table A_P for given momenta.
    Build(CommonArgs),
    /// Checks wavefunction properties.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// One-particle reflection amplitudes at finite wall height.
    Scatter(CommonArgs),
    /// Irreducible dimensions and the sum-of-squares rule.
    Reps(CommonArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Pair-contact and wall-contact matching conditions.
    Boundary(CommonArgs),
    /// Finite-difference Laplacian against E = Σk².
    Eigen(CommonArgs),
    /// Boson delta against fermion pδp at inverted couplings.
    Duality(CommonArgs),
    /// Even/odd half-line conditions at N = 1.
    Halfline(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    Regular,
    Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// Number of particles.
    #[arg(long = "N", alias = "n")]
    pub n: Option<usize>,

    /// Interaction: delta or pdp.
    #[arg(long, default_value = "delta")]
    pub model: String,

    #[arg(long, value_enum)]
    pub rep: Option<RepKind>,

    /// One-dimensional sector (ε_T, ε_R), e.g. "++" or "-+".
    #[arg(long, allow_hyphen_values = true)]
    pub sector: Option<String>,

    /// Momenta as a comma list; drawn from the seed when absent.
    /// For `scatter`, the single momentum k.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,

    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 2.0)]
    pub c2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda2: f64,

    /// Wall coupling of the delta model in `scatter`.
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    /// Wall coupling of the pδp model in `scatter`.
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,

    /// even or odd.
    #[arg(long, default_value = "even")]
    pub parity: String,

    /// Wall heights as lo:hi:count, log-spaced.
    #[arg(long, default_value = "1e3:1e9:7")]
    pub v0: String,

    /// Overrides the interior coupling of the even pδp step.
    #[arg(long)]
    pub g_tilde_plus: Option<f64>,

    #[arg(long, default_value_t = 200)]
    pub samples: usize,

    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    /// Probes per facet type.
    #[arg(long, default_value_t = 20)]
    pub probes: usize,

    /// Sample points in the fundamental wedge.
    #[arg(long, default_value_t = 20)]
    pub points: usize,

    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,

    /// Overrides the default tolerance of the check.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Output file; defaults to <command>.<format> under the output
    /// directory, or standard output when neither is set.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, env = "BETHE_OUT_DIR")]
    pub out_dir: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}
