use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ebh", version, about = "Explicit height bounds and bounded-height searches on powers of elliptic curves")]
pub struct Cli {
    /// Working precision in bits (at least 53).
    #[arg(long, global = true, env = "EBH_PRECISION", default_value_t = 128)]
    pub precision: u32,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the constants D1, D2, D3 (for E^2) or C1, C2, C3 (for E^N).
    Constants(ConstantsArgs),
    /// Evaluate a height bound for points on a curve in E^N.
    Bound(BoundArgs),
    /// Degree, genus, height chain and final bound for a curve family.
    FamilyAudit(FamilyAuditArgs),
    /// Exhaustive bounded-height search for rational points on a family curve.
    Search(SearchArgs),
    /// Census of subgroup matrices by degree, with torsion counts.
    Census(CensusArgs),
    /// Exponent structure of a bound whose constants are not effective.
    Exponents(ExponentsArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["d", "c"]))]
pub struct ConstantsArgs {
    /// The constants D1, D2, D3.
    #[arg(long)]
    pub d: bool,
    /// The constants C1(N), C2(E,N), C3(E,N) for this N.
    #[arg(long, value_name = "N")]
    pub c: Option<u32>,
    #[command(flatten)]
    pub hw: HwArgs,
}

/// Sources for h_W(E); defaults to the curve y^2 = x^3 - x - 2.
#[derive(Debug, Args, Clone, Default)]
pub struct HwArgs {
    /// h_W(E) as an expression such as `1/3log2`, `0` or `1/2*log(3) + 1/4`.
    #[arg(long, conflicts_with_all = ["curve", "preset"])]
    pub hw: Option<String>,
    /// Take h_W(E) from a curve file.
    #[arg(long, conflicts_with = "preset")]
    pub curve: Option<PathBuf>,
    /// Take h_W(E) from a bundled curve (e1 or e2).
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// e2-transverse or en-weak-transverse.
    #[arg(long, default_value = "e2-transverse")]
    pub theorem: String,
    /// Ambient power N (en-weak-transverse only).
    #[arg(long = "N", value_name = "N")]
    pub n: Option<u32>,
    /// Upper bound for the normalized height of the curve, as p/q.
    #[arg(long = "h-c")]
    pub h_c: String,
    /// Degree of the curve.
    #[arg(long = "deg-c")]
    pub deg_c: u64,
    #[command(flatten)]
    pub hw: HwArgs,
}

#[derive(Debug, Args)]
pub struct FamilyAuditArgs {
    #[arg(long)]
    pub family: String,
    /// Single value of n.
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<u64>,
    /// Inclusive range such as `2..1000`.
    #[arg(long = "n-range")]
    pub n_range: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: u32,
    /// Curve file with a rank-one generator; defaults to the family's curve.
    #[arg(long, conflicts_with = "preset")]
    pub curve: Option<PathBuf>,
    /// Bundled curve (e1 or e2).
    #[arg(long)]
    pub preset: Option<String>,
    /// Canonical height bound B, as p/q.
    #[arg(long = "height-bound")]
    pub height_bound: String,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Write timing metrics here; otherwise they go to stderr.
    #[arg(long)]
    pub metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// z, zi or zw.
    #[arg(long, default_value = "z")]
    pub ring: String,
    #[arg(long = "N", value_name = "N")]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long = "max-degree")]
    pub max_degree: u128,
    #[arg(long, default_value_t = 1)]
    pub torsion: u64,
    /// Refuse enumerations predicted to exceed this many candidates.
    #[arg(long, default_value_t = ebh_core::subgroups::DEFAULT_CEILING)]
    pub ceiling: u128,
}

#[derive(Debug, Args)]
pub struct ExponentsArgs {
    #[arg(long)]
    pub theorem: String,
    #[arg(long = "N", value_name = "N")]
    pub n: Option<i64>,
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long)]
    pub t: Option<i64>,
    #[arg(long)]
    pub dim: Option<i64>,
}
