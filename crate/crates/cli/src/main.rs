//! `hsheaf`: moment graphs, closedness, sections and correspondence
//! products from the command line.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on mathematical errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{RunArgs, RunConfig};

/// Errors reported by the command-line front end.
#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments or configuration.
    Usage(String),
    /// An error raised by the library.
    Math(hsheaf::Error),
}

impl From<hsheaf::Error> for CliError {
    fn from(e: hsheaf::Error) -> Self {
        CliError::Math(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hsheaf", version, about = "Moment graphs and structure sheaves of flag varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the parabolic graph, the double graph and its W_Q-closure.
    Graph,
    /// Decide whether the pair (Θ_Q, Θ_P) is closed.
    Closed {
        /// Decide every pair of subsets instead of one.
        #[arg(long)]
        sweep: bool,
    },
    /// Graded generators of the global sections, or verdicts for tuples.
    Sections {
        /// Compute generators up to this degree (additive law only).
        #[arg(long, conflicts_with = "check", required_unless_present = "check")]
        basis: Option<u32>,
        /// JSON file with one tuple or a list of tuples to check.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Correspondence product of a tuple over W^P and one over W^H.
    Product {
        /// Tuple `b` over W^P.
        file_b: PathBuf,
        /// Tuple `c` over W^H.
        file_c: PathBuf,
    },
    /// Random tuples over ^QW^P as JSON.
    Sample {
        /// Number of tuples.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Perturb each tuple so that it usually leaves ^QA^P.
        #[arg(long)]
        non_member: bool,
    },
    /// Run a small battery of consistency checks.
    Selftest,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    if let Command::Selftest = cli.command {
        return Ok(selftest::run());
    }
    let cfg = RunConfig::resolve(&cli.run)?;
    match &cli.command {
        Command::Graph => commands::graph(&cfg),
        Command::Closed { sweep } => commands::closed(&cfg, *sweep),
        Command::Sections { basis: Some(d), .. } => {
            if !matches!(cfg.law, config::LawSpec::Additive) {
                return Err(CliError::Math(hsheaf::Error::UnsupportedLaw));
            }
            commands::basis(&cfg, *d)
        }
        Command::Sections { check: Some(path), .. } => commands::check(&cfg, path),
        Command::Sections { .. } => Err(CliError::Usage("sections needs --basis or --check".into())),
        Command::Product { file_b, file_c } => commands::product(&cfg, file_b, file_c),
        Command::Sample { count, non_member } => commands::sample(&cfg, *count, *non_member),
        Command::Selftest => unreachable!("handled above"),
    }
}

mod selftest {
    //! A quick battery of checks with known answers.

    use std::sync::Arc;

    use hsheaf::moment_graph::{build_parabolic_graph, closedness_sweep, is_closed_brute};
    use hsheaf::sections::{membership_qap, perturb, sample_qap_member};
    use hsheaf::{Fga, Kind, Law, Lattice, RootSystem, SimpleSubset, WeylGroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(kind: Kind, rank: usize) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::new(RootSystem::new(kind, rank).expect("valid type")).expect("small group"))
    }

    /// Runs every check and reports one line each, then a summary.
    pub fn run() -> String {
        let a2 = group(Kind::A, 2);
        let b2 = group(Kind::B, 2);
        let checks: Vec<(&str, bool)> = vec![
            ("A2 has 6 elements", a2.elements().count() == 6),
            ("G^P of A2 with P empty has 9 edges", build_parabolic_graph(&a2, SimpleSubset::empty()).edges.len() == 9),
            ("every A2 pair is closed", closedness_sweep(&a2).iter().all(|r| r.brute && r.agrees())),
            (
                "B2 ({1},{2}) is not closed",
                !is_closed_brute(&b2, SimpleSubset::from_one_based(&[1]), SimpleSubset::from_one_based(&[2])),
            ),
            ("B2 sweep agrees with the classification", closedness_sweep(&b2).iter().all(|r| r.agrees())),
            ("sampled tuples lie in ^QA^P and perturbed ones do not", sampling_check(&b2)),
        ];
        let passed = checks.iter().filter(|c| c.1).count();
        let mut out: String =
            checks.iter().map(|(name, ok)| format!("{}: {name}\n", if *ok { "PASS" } else { "FAIL" })).collect();
        out.push_str(&format!("{passed} of {} checks passed\n", checks.len()));
        out
    }

    fn sampling_check(g: &Arc<WeylGroup>) -> bool {
        let fga = Fga::new(g.clone(), Law::Additive, Lattice::Weight).expect("additive law");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (q, p) = (SimpleSubset::from_one_based(&[1]), SimpleSubset::empty());
        let mut left = 0;
        for _ in 0..8 {
            let t = sample_qap_member(&fga, &mut rng, q, p, 2, 1);
            if !membership_qap(&fga, &t) {
                return false;
            }
            left += usize::from(!membership_qap(&fga, &perturb(&fga, &mut rng, &t, 1)));
        }
        left > 0
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if matches!(cli.command, Command::Selftest) && !out.lines().all(|l| !l.starts_with("FAIL")) {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
