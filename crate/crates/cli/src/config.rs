use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Curvature report for the 2-plane spanned by --u and --v.
    Section,
    /// Run every verification suite and emit a JSON certificate.
    Verify,
    /// Random sections, one CSV row each.
    Sample,
    /// Trace the geodesic with initial velocity --u.
    Geodesic,
    /// Check that the geodesic tangent to --u stays in --group.
    Subgroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Regime used by `sample` to draw the pair (u, v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    /// Both in p.
    Pp,
    /// Both in k.
    Kk,
    /// u in p, v in k.
    Pk,
    /// Unrestricted.
    General,
    /// Cycle through the four regimes by row index.
    All,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "liecurv", version, about = "Curvature of left-invariant metrics on matrix Lie groups")]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Structure selector: gl:real:<n> or gl:complex:<n>.
    #[arg(long)]
    pub structure: Option<String>,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    #[arg(long, default_value_t = 500)]
    pub trials: usize,

    /// Override every tolerance (verify) or the commuting tolerance (section).
    #[arg(long)]
    pub tol: Option<f64>,

    /// Matrix as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub u: Option<String>,

    #[arg(long)]
    pub v: Option<String>,

    #[arg(long = "t-max", default_value_t = 2.0)]
    pub t_max: f64,

    /// Grid points in [0, t-max] (geodesic default 9, subgroup default 64).
    #[arg(long)]
    pub steps: Option<usize>,

    /// Subgroup selector: so:<n>, sl:<n>, opq:<p>,<q> or ut:<n>.
    #[arg(long)]
    pub group: Option<String>,

    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Sampling regime for `sample`.
    #[arg(long = "case", value_enum, default_value_t = Regime::All)]
    pub regime: Regime,

    /// Central-difference step for geodesic residuals.
    #[arg(long, default_value_t = liecurv_core::tolerance::FD_STEP)]
    pub h: f64,

    /// Allow the unproved generalized geodesic formula for non-gl:real structures.
    #[arg(long)]
    pub experimental: bool,
}
