use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact perspectivity reduction on products of matrix rings over GF(p).
#[derive(Debug, Parser)]
#[command(name = "persp", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the reduction on a reflexive pair and certify bR ∼ aR.
    Reduce(PairArgs),
    /// Emit a certificate document, or recheck one with --verify.
    Certify(CertifyArgs),
    /// Check a term identity on a ring.
    Identities(IdentityArgs),
    /// Run the lattice and ring law suites.
    Laws(LawArgs),
    /// Ring-level property scans.
    Props(PropArgs),
    /// Build and check the strictly dropping example family.
    Example1(ExampleArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Ring, e.g. `M2(F2)xM1(F3)`.
    #[arg(long)]
    pub ring: String,
    /// Row-major entries, components separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Defaults to the canonical reflexive inverse of `a`.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Defaults to length(R) + 1.
    #[arg(long)]
    pub max_steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Certificate document to recheck.
    #[arg(long, conflicts_with_all = ["ring", "a", "b"])]
    pub verify: Option<PathBuf>,
    #[arg(long, required_unless_present = "verify")]
    pub ring: Option<String>,
    #[arg(long, required_unless_present = "verify", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    #[value(name = "thm23-7")]
    Thm23Seven,
    #[value(name = "thm23-8")]
    Thm23Eight,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long, required_unless_present = "scheme", requires = "rhs")]
    pub lhs: Option<String>,
    #[arg(long, requires = "lhs")]
    pub rhs: Option<String>,
    #[arg(long, conflicts_with_all = ["lhs", "rhs"], requires = "d")]
    pub scheme: Option<Scheme>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, value_enum, default_value_t = ScanMode::Exhaustive)]
    pub mode: ScanMode,
    /// Case budget; defaults to PERSP_BUDGET or 2^24.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplingArg {
    Constructive,
    Rejection,
}

#[derive(Debug, Args)]
pub struct LawArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Ring for the suites; otherwise `M_dim(F_p)`.
    #[arg(long, conflicts_with_all = ["dim", "p"])]
    pub ring: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = SamplingArg::Constructive)]
    pub mode: SamplingArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    DirectlyFinite,
    UnitRegular,
    StrongPi,
    Handelman,
    Ehrlich,
    Good3,
    Theorem23,
}

#[derive(Debug, Args)]
pub struct PropArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long, value_enum)]
    pub check: Check,
    /// Element for `unit-regular` and `strong-pi`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Length bound for `theorem23`.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Same as `--format json`.
    #[arg(long)]
    pub emit_json: bool,
}
