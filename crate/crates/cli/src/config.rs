//! Run configuration: command-line flags merged over an optional JSON file,
//! validated against the root system before any command runs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, ValueEnum};
use hsheaf::fga::{Law, Lattice, DEFAULT_TRUNCATION};
use hsheaf::{Fga, Kind, LabelPolicy, Rational, RootSystem, SimpleSubset, WeylGroup};
use serde::Deserialize;

use crate::CliError;

/// Output format of graph and section commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Graphviz DOT.
    Dot,
    /// JSON.
    Json,
    /// Plain text.
    Text,
}

/// How double-graph labels are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Labels {
    /// Smallest candidate root.
    Min,
    /// Keep every candidate.
    All,
}

/// Character lattice of the coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeArg {
    /// Fundamental weights.
    Weight,
    /// Simple roots.
    Root,
}

/// A subset given either as a string (`"1,3"`, `""`, `"all"`) or as a list
/// of 1-based indices.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SubsetSpec {
    /// Textual form.
    Text(String),
    /// 1-based indices.
    List(Vec<usize>),
}

/// Flags shared by every command. Each overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON file with the same fields as the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cartan type: A, B, C, D or G.
    #[arg(long, global = true)]
    pub kind: Option<String>,
    /// Rank.
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Θ_Q as 1-based indices ("" for none, "all" for every simple root).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Θ_P as 1-based indices ("" for none, "all" for every simple root).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Formal group law: additive, multiplicative, or a JSON law file.
    #[arg(long, global = true)]
    pub law: Option<String>,
    /// Lattice of the coordinates.
    #[arg(long, global = true, value_enum)]
    pub lattice: Option<LatticeArg>,
    /// Truncation degree of a law file without its own.
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    /// Double-graph label policy.
    #[arg(long, global = true, value_enum)]
    pub labels: Option<Labels>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

/// Contents of a config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    kind: Option<String>,
    rank: Option<usize>,
    q: Option<SubsetSpec>,
    p: Option<SubsetSpec>,
    law: Option<String>,
    lattice: Option<LatticeArg>,
    truncation: Option<u32>,
    labels: Option<Labels>,
    format: Option<Format>,
    seed: Option<u64>,
}

/// A law file: coefficients `a_ij` of `F(x, y) = x + y + Σ a_ij x^i y^j`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct LawFile {
    coeffs: Vec<(u32, u32, String)>,
    truncation: Option<u32>,
}

/// The formal group law requested.
#[derive(Debug, Clone)]
pub enum LawSpec {
    /// Additive law.
    Additive,
    /// Multiplicative law with invertible β.
    Multiplicative,
    /// Truncated law read from a file.
    Custom(Law),
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Cartan type.
    pub kind: Kind,
    /// Rank.
    pub rank: usize,
    /// Θ_Q.
    pub q: SimpleSubset,
    /// Θ_P.
    pub p: SimpleSubset,
    /// Formal group law.
    pub law: LawSpec,
    /// Coordinate lattice.
    pub lattice: Lattice,
    /// Label policy.
    pub labels: LabelPolicy,
    /// Output format, if given.
    pub format: Option<Format>,
    /// Sampling seed.
    pub seed: u64,
    /// The Weyl group.
    pub group: Arc<WeylGroup>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_subset(spec: &SubsetSpec, rank: usize) -> Result<SimpleSubset, CliError> {
    match spec {
        SubsetSpec::Text(s) => SimpleSubset::parse(s, rank).map_err(|e| usage(e.to_string())),
        SubsetSpec::List(ix) => {
            if let Some(bad) = ix.iter().find(|&&i| i == 0 || i > rank) {
                return Err(usage(format!("index {bad} outside 1..={rank}")));
            }
            Ok(SimpleSubset::from_one_based(ix))
        }
    }
}

fn parse_law(s: &str, truncation: Option<u32>) -> Result<LawSpec, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "additive" => Ok(LawSpec::Additive),
        "multiplicative" => Ok(LawSpec::Multiplicative),
        _ => {
            let file: LawFile = read_json(Path::new(s))?;
            let mut coeffs = BTreeMap::new();
            for (i, j, a) in file.coeffs {
                if i == 0 || j == 0 {
                    return Err(usage(format!("{s}: coefficient indices start at 1")));
                }
                let a: Rational = a.parse().map_err(|_| usage(format!("{s}: `{a}` is not a rational")))?;
                coeffs.insert((i, j), a);
            }
            let n = file.truncation.or(truncation).unwrap_or(DEFAULT_TRUNCATION);
            Ok(LawSpec::Custom(Law::Truncated { coeffs, n }))
        }
    }
}

impl RunConfig {
    /// Merges flags over the config file and validates the result.
    pub fn resolve(args: &RunArgs) -> Result<Self, CliError> {
        let file: ConfigFile = match &args.config {
            Some(path) => read_json(path)?,
            None => ConfigFile::default(),
        };
        let kind_text = args.kind.clone().or(file.kind).ok_or_else(|| usage("--kind is required"))?;
        let kind: Kind = kind_text.parse().map_err(|e: hsheaf::Error| usage(e.to_string()))?;
        let rank = args.rank.or(file.rank).ok_or_else(|| usage("--rank is required"))?;
        let rs = RootSystem::new(kind, rank).map_err(|e| usage(e.to_string()))?;
        let group = Arc::new(WeylGroup::new(rs).map_err(|e| usage(e.to_string()))?);
        let subset = |flag: &Option<String>, from_file: Option<SubsetSpec>| -> Result<SimpleSubset, CliError> {
            match flag.clone().map(SubsetSpec::Text).or(from_file) {
                Some(spec) => parse_subset(&spec, rank),
                None => Ok(SimpleSubset::empty()),
            }
        };
        let q = subset(&args.q, file.q)?;
        let p = subset(&args.p, file.p)?;
        let truncation = args.truncation.or(file.truncation);
        let law = parse_law(&args.law.clone().or(file.law).unwrap_or_else(|| "additive".into()), truncation)?;
        let lattice = match args.lattice.or(file.lattice).unwrap_or(LatticeArg::Weight) {
            LatticeArg::Weight => Lattice::Weight,
            LatticeArg::Root => Lattice::Root,
        };
        let labels = match args.labels.or(file.labels).unwrap_or(Labels::Min) {
            Labels::Min => LabelPolicy::MinLabel,
            Labels::All => LabelPolicy::AllCandidates,
        };
        Ok(RunConfig {
            kind,
            rank,
            q,
            p,
            law,
            lattice,
            labels,
            format: args.format.or(file.format),
            seed: args.seed.or(file.seed).unwrap_or(0),
            group,
        })
    }

    /// The formal group algebra of the configuration.
    pub fn fga(&self) -> Result<Fga, CliError> {
        let law = match &self.law {
            LawSpec::Additive => Law::Additive,
            LawSpec::Multiplicative => Law::Multiplicative,
            LawSpec::Custom(l) => l.clone(),
        };
        Fga::new(self.group.clone(), law, self.lattice).map_err(CliError::Math)
    }
}
