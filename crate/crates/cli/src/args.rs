use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "involis", version, about = "Longest monotone subsequences of random involutions: limit laws, exact counts, generating functions and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the Hastings-McLeod Painleve II problem and export the grid as CSV.
    SolvePii(SolvePiiArgs),
    /// Tabulate F1, F2 or F4.
    TabulateTw(TabulateTwArgs),
    /// Tabulate the crossover laws F_square(x; w) and F_diamond(x; w).
    TabulateInterp(TabulateInterpArgs),
    /// Exact distribution of a row or column length over involutions.
    ExactCdf(ExactCdfArgs),
    /// Poisson generating function value.
    Pgen(PgenArgs),
    /// De-Poissonization brackets for fixed-size probabilities.
    Depoisson(DepoissonArgs),
    /// Monte Carlo experiment with a goodness-of-fit summary.
    Mc(McArgs),
    /// Run a named reproduction recipe (first-row, crossover, ..., gaussian).
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Output {
    /// Output file; stdout when omitted. A manifest is written to <out>.manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GridSource {
    /// Read the Painleve II grid from this CSV instead of solving.
    #[arg(long)]
    pub grid: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SolvePiiArgs {
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub x_left: f64,
    #[arg(long, default_value_t = 8.0, allow_hyphen_values = true)]
    pub x_right: f64,
    #[arg(long, default_value_t = 2001)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub newton_tol: f64,
    #[arg(long, default_value_t = 60)]
    pub max_iters: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct TabulateTwArgs {
    /// 1 (GOE), 2 (GUE) or 4 (GSE).
    #[arg(long)]
    pub ensemble: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: f64,
    #[arg(long)]
    pub step: f64,
    #[command(flatten)]
    pub grid: GridSource,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct TabulateInterpArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: f64,
    #[arg(long)]
    pub step: f64,
    /// Comma-separated w values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub w: Vec<f64>,
    /// w, x or both (both also checks the routes against each other).
    #[arg(long, default_value = "w")]
    pub route: String,
    #[command(flatten)]
    pub grid: GridSource,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("which").required(true).args(["row", "col"])))]
pub struct ExactCdfArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Distribution of the k-th row.
    #[arg(long)]
    pub row: Option<usize>,
    /// Distribution of the k-th column.
    #[arg(long)]
    pub col: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct PgenArgs {
    /// square, diamond, signed, square_row2, diamond_row2 or signed_row2.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Working precision in decimal digits (default grows with t).
    #[arg(long)]
    pub digits: Option<u32>,
    /// Truncation index of the infinite products.
    #[arg(long)]
    pub jmax: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct DepoissonArgs {
    /// square (rows) or diamond (columns).
    #[arg(long, default_value = "square")]
    pub family: String,
    /// Comma-separated values of l.
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    /// Number of two-cycles.
    #[arg(long)]
    pub n: usize,
    /// Number of fixed points.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 2.0)]
    pub d: f64,
    /// none, tail, or a numeric constant C.
    #[arg(long, default_value = "none")]
    pub slack: String,
    /// Also report the exact probability (2n+m <= 40).
    #[arg(long)]
    pub with_exact: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("mrule").args(["m", "alpha", "w"])))]
pub struct McArgs {
    /// involution_fixed_m, signed_involution, uniform_involution,
    /// uniform_signed_involution, uniform_permutation, point_process_triangle.
    #[arg(long)]
    pub ensemble: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<f64>,
    /// Count, alpha:<a> or w:<w>.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub mplus: String,
    /// Count or alpha:<b>.
    #[arg(long, default_value = "0")]
    pub mminus: String,
    /// row or column.
    #[arg(long, default_value = "row")]
    pub side: String,
    /// edge, gaussian or gaussian-size.
    #[arg(long, default_value = "edge")]
    pub scaling: String,
    #[arg(long, default_value_t = 5000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// chi1 or chi2.
    #[arg(long, default_value = "chi1")]
    pub stat: String,
    /// F1, F2, F4, F1sq, Fsq:<w>, Fdia:<w> or normal.
    #[arg(long)]
    pub limit: String,
    #[arg(long)]
    pub threads: Option<usize>,
    /// CSV of the raw and scaled samples.
    #[arg(long)]
    pub samples_out: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridSource,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct ReproduceArgs {
    /// first-row, crossover, moments, uniform, second-row,
    /// uniform-second-row, poissonized, poissonized-crossover, gaussian-poissonized or gaussian.
    pub recipe: String,
    /// square, diamond or signed (where the recipe has a choice).
    #[arg(long, default_value = "square")]
    pub family: String,
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long, default_value_t = 5000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub w: f64,
    /// Comma-separated l values for the Poissonized recipes.
    #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
    pub l: Vec<usize>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value_t = 60.0)]
    pub t: f64,
    /// Use uniform signed involutions where the recipe allows it.
    #[arg(long)]
    pub signed: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub grid: GridSource,
    #[command(flatten)]
    pub output: Output,
}
