use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sbmetric::numeric::parse_real;
use sbmetric::Point;

fn real(text: &str) -> Result<f64, String> {
    parse_real(text).map_err(|e| e.to_string())
}

fn point(text: &str) -> Result<Point, String> {
    text.parse().map_err(|e: sbmetric::Error| e.to_string())
}

/// Explore S_b-metric spaces: axiom checks, balls, Picard iteration and a
/// fixed-point linear solver.
#[derive(Debug, Parser)]
#[command(name = "sbmetric", version)]
pub struct Cli {
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Sampling {
    /// Seed for the random sample; identical seeds give identical output.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random tuples on top of the grid.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Grid step per coordinate, or `none` to skip the grid.
    #[arg(long, value_name = "STEP|none")]
    pub grid: Option<String>,
    /// Sampling interval per coordinate.
    #[arg(long, value_name = "LO:HI")]
    pub range: Option<String>,
    /// Dimension of sampled points on ℝⁿ.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Extra tuple always evaluated, points separated by `;` (e.g. `4;6;8;5`).
    #[arg(long = "probe", value_name = "TUPLE")]
    pub probes: Vec<String>,
}

#[derive(Debug, Args)]
pub struct Contraction {
    /// Certificate kind: banach, banach-sym, generalized, generalized-sym, none.
    #[arg(long)]
    pub kind: Option<String>,
    /// Banach contraction constant.
    #[arg(long, value_parser = real)]
    pub h: Option<f64>,
    /// Weight of S(x,x,y) in the generalized condition.
    #[arg(long, value_parser = real)]
    pub alpha1: Option<f64>,
    /// Weight of the orbit maximum in the generalized condition.
    #[arg(long, value_parser = real)]
    pub alpha2: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List built-in metrics and their names.
    ListMetrics,

    /// Search for counterexamples to an axiom family.
    Check {
        #[arg(long)]
        metric: String,
        /// b, g, gb, s, sb, sym, quasi, gen.
        #[arg(long)]
        schema: String,
        /// Coefficient to test; defaults to the metric's own.
        #[arg(long, value_parser = real)]
        b: Option<f64>,
        #[command(flatten)]
        sampling: Sampling,
    },

    /// Test S(x,x,y) = S(y,y,x) on sampled pairs.
    Symmetry {
        #[arg(long)]
        metric: String,
        #[command(flatten)]
        sampling: Sampling,
    },

    /// Empirical lower bound on the smallest admissible coefficient.
    MinB {
        #[arg(long)]
        metric: String,
        #[command(flatten)]
        sampling: Sampling,
    },

    /// Ball membership: S(y,y,center) < radius, or <= with --closed.
    Ball {
        #[arg(long)]
        metric: String,
        #[arg(long, value_parser = point)]
        center: Point,
        #[arg(long, value_parser = real)]
        radius: f64,
        #[arg(long, value_parser = point)]
        y: Point,
        #[arg(long)]
        closed: bool,
    },

    /// Distance from a point to a set (--x) or between two sets (--set-b).
    Distance {
        #[arg(long)]
        metric: String,
        #[arg(long, value_parser = point, conflicts_with = "set_b", required_unless_present = "set_b")]
        x: Option<Point>,
        /// Points separated by `;`.
        #[arg(long)]
        set: String,
        #[arg(long)]
        set_b: Option<String>,
    },

    /// Largest S(x,x,y) over ordered pairs of a finite set.
    Diameter {
        #[arg(long)]
        metric: String,
        #[arg(long)]
        set: String,
        /// Also report whether the set is bounded by this radius.
        #[arg(long, value_parser = real)]
        radius: Option<f64>,
    },

    /// Picard iteration x_{n+1} = T x_n.
    Iterate {
        #[arg(long)]
        metric: String,
        /// scale:<c>, affine:<c>:<d>, const:<c>, identity, ex3_2.
        #[arg(long)]
        map: String,
        #[arg(long, value_parser = point)]
        x0: Point,
        #[arg(long, value_parser = real, default_value = "1e-10")]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        #[command(flatten)]
        contraction: Contraction,
        /// Write the full trace to this file.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
    },

    /// Check a contraction certificate's threshold for a metric's coefficient.
    Certify {
        #[arg(long)]
        metric: String,
        #[command(flatten)]
        contraction: Contraction,
    },

    /// Solve x = Ax + rhs by certified iteration.
    Solve {
        /// First line n, then n rows of n numbers.
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// n whitespace-separated numbers.
        #[arg(long, value_name = "FILE")]
        rhs: PathBuf,
        /// Read the system as Ax = rhs and iterate x = (I - A)x + rhs.
        #[arg(long)]
        standard: bool,
        #[arg(long, value_parser = real, default_value = "1e-10")]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
    },
}
