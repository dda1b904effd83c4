use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncdist::dist::Family;
use ncdist::random::DEFAULT_SEED;

/// Normal-Cauchy distributions: fitting, sampling and evaluation.
#[derive(Debug, Parser)]
#[command(name = "ncdist", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a family to one column of a data file by maximum likelihood.
    #[command(allow_negative_numbers = true)]
    Fit(FitArgs),
    /// Draw random variates, one per line.
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
    /// Evaluate pdf, cdf or quantile at given points.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Variance and excess kurtosis over a grid of tail weights.
    #[command(allow_negative_numbers = true)]
    Moments(MomentsArgs),
    /// The NC(1) law closest in Hellinger distance to a Student t.
    #[command(allow_negative_numbers = true)]
    Hellinger(HellingerArgs),
    /// Density on an evenly spaced grid, one column per tail weight.
    #[command(allow_negative_numbers = true)]
    Plotdata(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// nc1, ncn, nt, t, twopiece or surv (ncK is shorthand for ncn with degree K).
    #[arg(long)]
    pub family: Family,
    /// Degree n of NC(n).
    #[arg(long = "n-degree")]
    pub n_degree: Option<u32>,
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<Family, String> {
        match (self.family, self.n_degree) {
            (f, None) => Ok(f),
            (Family::Ncn(_) | Family::Nc1, Some(1)) => Ok(Family::Nc1),
            (Family::Ncn(_) | Family::Nc1, Some(n)) => Ok(Family::Ncn(n)),
            (f, Some(_)) => Err(format!("--n-degree applies to ncn, not {}", f.name())),
        }
    }
}

/// Family parameters. Unused ones are ignored; missing ones take the
/// defaults shown.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    /// Scale (the left scale for twopiece).
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Right scale for twopiece; defaults to --s.
    #[arg(long)]
    pub s2: Option<f64>,
    /// Tail weight in [0, 1]; plotdata and moments accept a comma list.
    #[arg(long, value_delimiter = ',', default_value = "0.5", allow_hyphen_values = true)]
    pub beta: Vec<f64>,
    /// Degrees of freedom of t.
    #[arg(long, default_value_t = 5.0)]
    pub nu: f64,
    /// Gaussian weight of nt.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Tail exponent of nt and surv.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Delimited text file of observations.
    #[arg(long)]
    pub data: PathBuf,
    /// Column to read: zero-based index or header name.
    #[arg(long, default_value = "0")]
    pub column: String,
    /// Treat the column as prices and fit their logged returns.
    #[arg(long)]
    pub returns: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Perturbed restarts after the first optimizer run.
    #[arg(long, default_value_t = 5)]
    pub restarts: usize,
    /// Gradient tolerance on -l/n.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of draws.
    #[arg(short = 'n', long = "count", default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub pdf: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub cdf: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub quantile: Vec<f64>,
    /// text prints bare values in the order pdf, cdf, quantile.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Tail weights; without it the grid --from..--to by --step is used.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<f64>,
    /// Scale applied to the standardized law.
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Tail exponent for nt, whose Gaussian weight is beta/(1 - beta).
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.01)]
    pub from: f64,
    #[arg(long, default_value_t = 0.99)]
    pub to: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct HellingerArgs {
    /// Degrees of freedom of the target t; a comma list gives one row each.
    #[arg(long = "target-nu", value_delimiter = ',', required = true)]
    pub target_nu: Vec<f64>,
    #[arg(long = "target-s", default_value_t = 1.0)]
    pub target_s: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = -5.0)]
    pub from: f64,
    #[arg(long, default_value_t = 5.0)]
    pub to: f64,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
