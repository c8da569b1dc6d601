use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperchiral::autgrp::{aut_constructed, AutGroup, AutSummary};
use hyperchiral::chirality::{
    delta_sample, delta_statistic, hypermap_census, is_strongly_symmetric, Strategy, Verdict, CENSUS_CAP,
    DELTA_CAP,
};
use hyperchiral::families::{build_group, BuiltGroup, Family, GroupSpec};
use hyperchiral::gf::FieldSpec;
use hyperchiral::matgrp::{verify_singer_lemma_capped, LEMMA_CAP};
use hyperchiral::permgrp::DEFAULT_CAP;
use hyperchiral::verify::{self, ClaimResult, MACBEATH_QS};
use hyperchiral::Error;

mod render;

#[derive(Parser)]
#[command(
    name = "hyperchiral",
    version,
    about = "Symmetric generating pairs and regular hypermaps of small simple groups"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// ALT, PSL, PSU, GL, SL, PGL, PGU or SP2.
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: Option<u64>,
    /// Largest group (or automorphism group) to enumerate.
    #[arg(long, env = "CHIRALITY_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, Error> {
        let q = match (self.family, self.q) {
            (Family::Alt, _) => 0,
            (_, Some(q)) => q,
            (_, None) => return Err(Error::InvalidArgument("--q is required for matrix groups".into())),
        };
        Ok(GroupSpec {
            family: self.family,
            n: self.n,
            q,
        })
    }

    fn build(&self) -> Result<BuiltGroup, Error> {
        build_group(self.spec()?, self.cap)
    }

    fn build_with_aut(&self) -> Result<(BuiltGroup, AutGroup), Error> {
        let g = self.build()?;
        let a = aut_constructed(&g, self.cap)?;
        Ok((g, a))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Order, conjugacy classes and automorphism group of a group.
    Group(GroupArgs),
    /// Proportion of symmetric generating pairs.
    Delta {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, env = "CHIRALITY_DELTA_CAP", default_value_t = DELTA_CAP)]
        delta_cap: usize,
        /// Estimate from this many random pairs instead of counting.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
    },
    /// Orientably regular hypermaps with the given monodromy group.
    Census {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, env = "CHIRALITY_CENSUS_CAP", default_value_t = CENSUS_CAP)]
        census_cap: usize,
    },
    /// Whether every generating pair is symmetric.
    StronglySymmetric {
        #[command(flatten)]
        group: GroupArgs,
        /// Scan all pair orbits instead of looking for a witness first.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, env = "CHIRALITY_CENSUS_CAP", default_value_t = CENSUS_CAP)]
        census_cap: usize,
    },
    /// Semilinear maps normalizing a Singer cycle, by brute force.
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, env = "CHIRALITY_LEMMA_CAP", default_value_t = LEMMA_CAP)]
        lemma_cap: u64,
    },
    /// Check the recorded numerical claims.
    Verify {
        /// Run every claim.
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Field size for the psl3, psu3, double-count and lemma suites.
        #[arg(long)]
        q: Option<u64>,
        /// Include PSU(3,5).
        #[arg(long)]
        long: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Alt7,
    Psl3,
    Psu3,
    Macbeath,
    DoubleCount,
    Lemma,
}

#[derive(Serialize)]
struct GroupReport {
    group: String,
    order: usize,
    n_classes: usize,
    class_sizes: Vec<usize>,
    generators: Vec<String>,
    generator_orders: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aut: Option<AutSummary>,
}

#[derive(Serialize)]
struct StrongReport {
    group: String,
    order: usize,
    aut_order: usize,
    strategy: Strategy,
    #[serde(flatten)]
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_elements: Option<[String; 2]>,
}

/// Everything a subcommand can print.
enum Output {
    Group(GroupReport),
    Delta(hyperchiral::chirality::DeltaReport),
    Census(hyperchiral::chirality::CensusReport),
    Strong(StrongReport),
    Lemma(hyperchiral::matgrp::LemmaReport),
    Claims(Vec<ClaimResult>),
}

impl Output {
    /// Exit status beyond errors: 1 when a checked claim fails.
    fn failed(&self) -> bool {
        match self {
            Output::Lemma(r) => !r.holds(),
            Output::Claims(c) => c.iter().any(|c| !c.pass),
            _ => false,
        }
    }
}

fn run(cmd: Command) -> Result<Output, Error> {
    Ok(match cmd {
        Command::Group(args) => {
            let g = args.build()?;
            let summary = g.handle.summary();
            let aut = if args.family.is_simple_family() {
                Some(aut_constructed(&g, args.cap)?.summary())
            } else {
                None
            };
            Output::Group(GroupReport {
                group: g.name(),
                order: summary.order,
                n_classes: summary.n_classes,
                class_sizes: summary.class_sizes,
                generators: g.handle.gens().iter().map(|&x| g.describe(x)).collect(),
                generator_orders: summary.generator_orders,
                aut,
            })
        }
        Command::Delta {
            group,
            delta_cap,
            sample,
            seed,
        } => {
            let (g, a) = group.build_with_aut()?;
            Output::Delta(match sample {
                Some(n) => delta_sample(&g.name(), &a, n, seed)?,
                None => delta_statistic(&g.name(), &a, delta_cap)?,
            })
        }
        Command::Census { group, census_cap } => {
            let (g, a) = group.build_with_aut()?;
            Output::Census(hypermap_census(&g.name(), &a, census_cap)?)
        }
        Command::StronglySymmetric {
            group,
            exhaustive,
            census_cap,
        } => {
            let (g, a) = group.build_with_aut()?;
            let strategy = if exhaustive {
                Strategy::Exhaustive
            } else {
                Strategy::WitnessFirst
            };
            let verdict = is_strongly_symmetric(&a, strategy, census_cap)?;
            let witness_elements = match verdict {
                Verdict::NotStronglySymmetric { witness } => {
                    Some([g.describe(witness.x), g.describe(witness.y)])
                }
                Verdict::StronglySymmetric => None,
            };
            Output::Strong(StrongReport {
                group: g.name(),
                order: g.order(),
                aut_order: a.order(),
                strategy,
                verdict,
                witness_elements,
            })
        }
        Command::Lemma { n, q, lemma_cap } => Output::Lemma(verify_singer_lemma_capped(
            n,
            &FieldSpec::of_order(q)?,
            lemma_cap,
        )?),
        Command::Verify { all, suite, q, long } => {
            let claims = match (all, suite) {
                (true, _) => verify::verify_all(long)?,
                (false, Some(suite)) => run_suite(suite, q, long)?,
                (false, None) => {
                    return Err(Error::InvalidArgument("pass --all or --suite".into()));
                }
            };
            Output::Claims(claims)
        }
    })
}

fn run_suite(suite: Suite, q: Option<u64>, long: bool) -> Result<Vec<ClaimResult>, Error> {
    let need_q = || q.ok_or_else(|| Error::InvalidArgument("--q is required for this suite".into()));
    match suite {
        Suite::Alt7 => verify::verify_alt7(),
        Suite::Psl3 => verify::verify_psl3(need_q()?),
        Suite::Psu3 => match q {
            Some(q) => verify::verify_psu3(q),
            None if long => Ok([verify::verify_psu3(3)?, verify::verify_psu3(5)?].concat()),
            None => verify::verify_psu3(3),
        },
        Suite::Macbeath => match q {
            Some(q) => verify::verify_macbeath(&[q]),
            None => verify::verify_macbeath(&MACBEATH_QS),
        },
        Suite::DoubleCount => verify::double_count_check(need_q()?),
        Suite::Lemma => verify::verify_lemma(3, need_q()?),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        Error::InvalidArgument(_)
        | Error::UnsupportedGroup(_)
        | Error::NotPrime(_)
        | Error::NotPrimePower(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let output = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    if let Err(e) = render::write(&output, cli.format, &mut sink).and_then(|_| sink.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if output.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
