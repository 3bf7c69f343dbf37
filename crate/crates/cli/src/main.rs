//! `ccs`: validate, generate, search, decompose, and report on
//! pseudo-configurations stored in the `.ccs` format.
//!
//! Exit codes: 0 on success, 1 when a validation or property check fails,
//! 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ccs_core::chirotope::dedup_canonical;
use ccs_core::extraction::SpikeReport;
use ccs_core::{
    bound_b, ccs, chain_stats, decompose, enumerate_systems, hull_cycle, largest_convex_subset,
    run_pipeline, verify, ClusteringStrategy, ConvexCertificate, Error, GeneratorKind,
    GeneratorSpec, Label, PipelineOptions, PseudoConfiguration, SearchMode,
};

#[derive(Parser)]
#[command(name = "ccs", version, about = "Combinatorial convexity toolkit for pseudo-configurations")]
struct Cli {
    /// Skip axiom validation when reading .ccs files
    #[arg(long, global = true)]
    unchecked: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a .ccs file against the system axioms
    Validate { file: PathBuf },
    /// Generate a configuration and print it as .ccs
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random triple flips (mutated kind only)
        #[arg(long, default_value_t = 1)]
        flips: usize,
    },
    /// Hull certificate of a subset (default: all points)
    Hull {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<Label>>,
    },
    /// Largest subset in convex position
    Largest {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Spike decomposition and chain statistics for a convex polygon X
    Decompose {
        file: PathBuf,
        /// Members of X, comma separated
        #[arg(long, value_delimiter = ',')]
        x: Vec<Label>,
    },
    /// Full assembly pipeline: clustering, chain stats, joined candidates
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate the subset-size bound exponent for target size n
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Stream every valid system on n points as .ccs records
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Deduplicate under relabeling
        #[arg(long)]
        canonical: bool,
    },
    /// Run a verification task and report pass/fail
    VerifySmall {
        #[arg(long, value_enum)]
        task: TaskArg,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    Grid,
    Mutated,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Brute,
    Dp,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum TaskArg {
    B4,
    Caratheodory,
    Trichotomy,
    Separation,
    Joins,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(classify(&err))
        }
    }
}

/// 1 for data/property failures, 2 for usage-level problems.
fn classify(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::AxiomViolation { .. }
            | Error::SyntaxError { .. }
            | Error::CoordsInconsistent { .. }
            | Error::AmbiguousRelation { .. }
            | Error::NoRelation { .. }
            | Error::BothOrNeither { .. }
            | Error::AssemblyContradiction { .. }
            | Error::InvalidColoring { .. }
            | Error::NoConvexKSet { .. }
            | Error::InternalInconsistency(_),
        ) => 1,
        _ => 2,
    }
}

fn load(file: &PathBuf, unchecked: bool) -> anyhow::Result<PseudoConfiguration> {
    let text = std::fs::read_to_string(file)?;
    Ok(ccs::parse_ccs(&text, !unchecked)?)
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

#[derive(Serialize)]
struct CertificateOut<'a> {
    schema_version: u32,
    members: &'a [Label],
    hull_cycle: &'a [Label],
}

impl<'a> CertificateOut<'a> {
    fn new(c: &'a ConvexCertificate) -> Self {
        CertificateOut {
            schema_version: 1,
            members: &c.members,
            hull_cycle: &c.hull_cycle,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let text = std::fs::read_to_string(&file)?;
            let report = match ccs::parse_ccs(&text, false) {
                Ok(cfg) => cfg.validate(),
                Err(Error::SyntaxError { line, col, msg }) => {
                    return Err(Error::SyntaxError { line, col, msg }.into())
                }
                Err(e) => return Err(e.into()),
            };
            #[derive(Serialize)]
            struct ValidateOut {
                schema_version: u32,
                #[serde(flatten)]
                report: ccs_core::ValidationReport,
            }
            let passed = report.passed();
            print_json(&ValidateOut {
                schema_version: 1,
                report,
            })?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Gen {
            kind,
            n,
            seed,
            flips,
        } => {
            let spec = GeneratorSpec {
                kind: match kind {
                    KindArg::Random => GeneratorKind::RandomRealizable,
                    KindArg::Grid => GeneratorKind::GridRealizable,
                    KindArg::Mutated => GeneratorKind::Mutated,
                },
                n,
                seed,
                mutation_flips: flips,
            };
            let cfg = ccs_core::generate(&spec)?;
            print!("{}", ccs::serialize_ccs(&cfg));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hull { file, subset } => {
            let cfg = load(&file, cli.unchecked)?;
            let subset = subset.unwrap_or_else(|| (0..cfg.n()).collect());
            let cert = hull_cycle(&cfg, &subset)?;
            print_json(&CertificateOut::new(&cert))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Largest { file, mode } => {
            let cfg = load(&file, cli.unchecked)?;
            let cert = largest_convex_subset(
                &cfg,
                match mode {
                    ModeArg::Brute => SearchMode::Brute,
                    ModeArg::Dp => SearchMode::ChainDp,
                },
            )?;
            print_json(&CertificateOut::new(&cert))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decompose { file, x } => {
            let cfg = load(&file, cli.unchecked)?;
            let cert = hull_cycle(&cfg, &x)?;
            if cert.members != {
                let mut sorted = x.clone();
                sorted.sort_unstable();
                sorted
            } {
                anyhow::bail!("--x must be in convex position (some member is interior)");
            }
            let d = decompose(&cfg, &cert)?;
            let stats: Vec<SpikeReport> = (0..d.k())
                .map(|i| chain_stats(&cfg, &d, i).map(|s| SpikeReport::from(&s)))
                .collect::<Result<_, _>>()?;
            #[derive(Serialize)]
            struct SpikeOut {
                index: usize,
                members: Vec<Label>,
            }
            #[derive(Serialize)]
            struct DecomposeOut<'a> {
                schema_version: u32,
                x: &'a ConvexCertificate,
                spikes: Vec<SpikeOut>,
                unassigned: &'a [Label],
                stats: Vec<SpikeReport>,
            }
            print_json(&DecomposeOut {
                schema_version: 1,
                x: &d.x,
                spikes: d
                    .spikes
                    .iter()
                    .enumerate()
                    .map(|(i, members)| SpikeOut {
                        index: i + 1,
                        members: members.clone(),
                    })
                    .collect(),
                unassigned: &d.unassigned,
                stats,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Pipeline {
            file,
            k,
            strategy,
            samples,
            seed,
        } => {
            let cfg = load(&file, cli.unchecked)?;
            let strategy = strategy.map(|s| match s {
                StrategyArg::Exhaustive => ClusteringStrategy::Exhaustive,
                StrategyArg::Sampled => ClusteringStrategy::Sampled { samples, seed },
            });
            let out = run_pipeline(&cfg, k, PipelineOptions { strategy })?;
            #[derive(Serialize)]
            struct PipelineOut<'a> {
                schema_version: u32,
                certificate: &'a ConvexCertificate,
                trace: &'a ccs_core::CertificateTrace,
            }
            print_json(&PipelineOut {
                schema_version: 1,
                certificate: &out.certificate,
                trace: &out.trace,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bound { n } => {
            print_json(&bound_b(n)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Enumerate { n, canonical } => {
            let all = enumerate_systems(n)?;
            let shown = if canonical {
                dedup_canonical(&all, false)?
            } else {
                all.clone()
            };
            let mut stdout = std::io::stdout().lock();
            for cfg in &shown {
                writeln!(stdout, "{}", ccs::serialize_ccs(cfg))?;
            }
            drop(stdout);
            eprintln!(
                "enumerated {} systems ({} up to relabeling, {} up to relabeling+mirror)",
                all.len(),
                dedup_canonical(&all, false)?.len(),
                dedup_canonical(&all, true)?.len(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifySmall {
            task,
            trials,
            seed,
        } => {
            let report = match task {
                TaskArg::B4 => verify::verify_b4()?,
                TaskArg::Caratheodory => verify::verify_caratheodory(trials, seed)?,
                TaskArg::Trichotomy => verify::verify_trichotomy(trials, seed)?,
                TaskArg::Separation => verify::verify_separation(trials, seed)?,
                TaskArg::Joins => verify::verify_joins(trials, seed)?,
            };
            let passed = report.passed;
            print_json(&report)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
