use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "unimodal", version, about = "Exact checks for the quartic-integral coefficients d_l(m) and T(m)")]
pub struct Cli {
    /// Worker threads for suites that fan out over m.
    #[arg(long, global = true, env = "UNIMODAL_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print d_0(m), ..., d_m(m) as exact rationals.
    Coeffs {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run one verification suite, or all of them.
    Verify(VerifyArgs),
    /// Search for counterexamples to an open conjecture.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// T(m) by every representation, with the distance to the limit.
    Tvalues {
        #[arg(long, default_value_t = 10)]
        max_m: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Quadrature of the quartic integral against its closed form.
    Integral {
        #[arg(long)]
        m: u64,
        /// Parameter a > -1, as a decimal or p/q.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub property: Option<String>,
    #[arg(long)]
    pub all: bool,
    /// Upper limit for m; each suite has its own default.
    #[arg(long)]
    pub max_m: Option<u64>,
    /// Upper limit for the recurrence residuals.
    #[arg(long)]
    pub max_n: Option<u64>,
    /// Number of L iterations for ilogconcave.
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum ScanKind {
    /// L^j(row) >= 0 for 1 <= j <= depth.
    Ilogconcave {
        #[command(flatten)]
        common: ScanArgs,
        #[arg(long, default_value_t = 5)]
        depth: u32,
    },
    /// The 2F1 difference inequality on an x grid.
    Hypineq {
        #[command(flatten)]
        common: ScanArgs,
        /// lo:hi:step, each a decimal or p/q; lo must be at least 1/2.
        #[arg(long, default_value = "1/2:5:1/4")]
        x_grid: String,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Smallest m scanned; 0 for ilogconcave, 2 for hypineq (m = 1 is an equality case).
    #[arg(long)]
    pub min_m: Option<u64>,
    #[arg(long, default_value_t = 40)]
    pub max_m: u64,
    /// Stop at the first counterexample.
    #[arg(long)]
    pub stop_on_failure: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}
