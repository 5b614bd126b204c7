//! The `curvalg` command-line tool.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse or I/O error,
//! 3 precondition violation, 4 engine disagreement, 5 resource limit.

pub mod documents;
pub mod forests;
pub mod verify;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::VectorConfiguration;
use crate::engines::{self, Engine};
use crate::error::{Error, Result};
use crate::ideal;
use crate::linalg::Rational;
use crate::matroid;
use crate::roots::{self, RootSystemData, RootSystemType, Weight};
use crate::squarefree::{Limits, DEFAULT_MAX_ROWS};
use documents::*;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "CURVALG_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "curvalg",
    version,
    about = "Graded dimensions of curvature algebras of vector configurations"
)]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graded dimensions from one or all engines.
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "combinatorial")]
        engine: EngineArg,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: usize,
    },
    /// Circuits with their dependence relations.
    Circuits {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Robust subsets.
    Robust {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Essential hyperplanes and the power ideal generators.
    Essential {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Root system data.
    Rootsystem {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long, value_enum, default_value = "config")]
        emit: Emit,
    },
    /// Curvature coefficients of a weight.
    Curvature {
        #[command(flatten)]
        root: RootArgs,
        /// Weight in fundamental weight coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Cross-validation suites.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "theorems")]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: usize,
        /// Seed for randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random polynomials per configuration in the recursions suite.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// A configuration file, a root system, or standard input.
#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long, conflicts_with_all = ["root_type", "rank"])]
    input: Option<PathBuf>,
    /// Root system type such as `A2`, or a letter together with --rank.
    #[arg(long = "type")]
    root_type: Option<String>,
    #[arg(long, requires = "root_type")]
    rank: Option<usize>,
}

#[derive(Debug, Args)]
struct RootArgs {
    #[arg(long = "type")]
    root_type: String,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Combinatorial,
    Algebraic,
    Presentation,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Coroots,
    Config,
    Weights,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Theorems,
    Recursions,
    Forests,
}

/// Exit code for an error.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Parse(_) | Error::Io(_) => 2,
        Error::Precondition(_)
        | Error::NotSpanning { .. }
        | Error::DependentSubset(_)
        | Error::InvalidRootSystem { .. } => 3,
        Error::EngineDisagreement(_) => 4,
        Error::ResourceLimit(_) => 5,
    }
}

/// Runs the tool with explicit streams and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    configure_threads();
    match execute(&cli, stdin) {
        Ok(output) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &output.text).map_err(Error::from),
                None => stdout
                    .write_all(output.text.as_bytes())
                    .map_err(Error::from),
            };
            if let Err(e) = written {
                return report(stderr, &e);
            }
            if let Some(message) = output.message {
                let _ = writeln!(stderr, "error: {message}");
            }
            output.code
        }
        Err(e) => report(stderr, &e),
    }
}

fn report(stderr: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    exit_code(e)
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // a pool may already exist when running inside tests
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

struct Loaded {
    cfg: VectorConfiguration,
    root_system: Option<RootSystemData>,
}

fn load(input: &InputArgs, stdin: &mut dyn Read) -> Result<Loaded> {
    if let Some(label) = &input.root_type {
        let rs = roots::build(RootSystemType::parse(label, input.rank)?);
        return Ok(Loaded {
            cfg: roots::coroot_configuration(&rs),
            root_system: Some(rs),
        });
    }
    let text = match &input.input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Ok(Loaded {
        cfg: ConfigDocument::parse(&text)?,
        root_system: None,
    })
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

struct Output {
    text: String,
    code: i32,
    message: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: 0,
            message: None,
        }
    }

    fn with_error(text: String, error: Option<Error>) -> Self {
        match error {
            None => Output::ok(text),
            Some(e) => Output {
                text,
                code: exit_code(&e),
                message: Some(e.to_string()),
            },
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output> {
    let start = Instant::now();
    match &cli.command {
        Command::Hilbert {
            input,
            engine,
            max_rows,
        } => {
            let loaded = load(input, stdin)?;
            let limits = Limits::with_max_rows(*max_rows);
            let selected: Vec<Engine> = match engine {
                EngineArg::Combinatorial => vec![Engine::Combinatorial],
                EngineArg::Algebraic => vec![Engine::Algebraic],
                EngineArg::Presentation => vec![Engine::Presentation],
                EngineArg::All => Engine::ALL.to_vec(),
            };
            let hash = input_hash(&loaded.cfg);
            let mut docs = Vec::new();
            for e in &selected {
                let t = Instant::now();
                let graded = engines::graded_dims(&loaded.cfg, *e, limits)?;
                docs.push(ResultDocument {
                    engine: e.name().to_string(),
                    total: graded.total(),
                    graded: graded.into_vec(),
                    metadata: Metadata::new(hash.clone(), elapsed(t)),
                });
            }
            let disagreement = docs.first().and_then(|first| {
                docs.iter().find(|d| d.graded != first.graded).map(|other| {
                    Error::EngineDisagreement(format!(
                        "{} gives {:?}, {} gives {:?}",
                        first.engine, first.graded, other.engine, other.graded
                    ))
                })
            });
            let text = match engine {
                EngineArg::All => render(&docs),
                _ => render(&docs[0]),
            };
            Ok(Output::with_error(text, disagreement))
        }
        Command::Circuits { input } => {
            let loaded = load(input, stdin)?;
            let circuits: Vec<CircuitEntry> = matroid::circuits(&loaded.cfg)
                .into_iter()
                .map(|c| CircuitEntry {
                    support: c.support.one_based(),
                    dependence: rational_values(&c.dependence),
                })
                .collect();
            Ok(Output::ok(render(&CircuitsDocument {
                count: circuits.len(),
                circuits,
                metadata: Metadata::new(input_hash(&loaded.cfg), elapsed(start)),
            })))
        }
        Command::Robust { input } => {
            let loaded = load(input, stdin)?;
            let subsets: Vec<Vec<usize>> = matroid::robust_subsets(&loaded.cfg)
                .into_iter()
                .map(|s| s.one_based())
                .collect();
            Ok(Output::ok(render(&RobustDocument {
                count: subsets.len(),
                subsets,
                metadata: Metadata::new(input_hash(&loaded.cfg), elapsed(start)),
            })))
        }
        Command::Essential { input } => {
            let loaded = load(input, stdin)?;
            let hyperplanes: Vec<HyperplaneEntry> = ideal::essential_hyperplanes(&loaded.cfg)?
                .into_iter()
                .map(|h| HyperplaneEntry {
                    normal: rational_values(&h.normal),
                    index_set: h.index_set.one_based(),
                    d: h.d,
                    power: h.d + 1,
                })
                .collect();
            Ok(Output::ok(render(&EssentialDocument {
                count: hyperplanes.len(),
                hyperplanes,
                metadata: Metadata::new(input_hash(&loaded.cfg), elapsed(start)),
            })))
        }
        Command::Rootsystem { root, emit } => {
            let rs = roots::build(RootSystemType::parse(&root.root_type, root.rank)?);
            let cfg = roots::coroot_configuration(&rs);
            let label = rs.type_label.to_string();
            let text = match emit {
                Emit::Config => {
                    let mut doc = ConfigDocument::from_config(&cfg);
                    doc.metadata = Some(Metadata::new(input_hash(&cfg), elapsed(start)));
                    render(&doc)
                }
                Emit::Coroots => render(&CorootsDocument {
                    type_label: label,
                    coroots: rs.coroots.clone(),
                    metadata: Metadata::new(input_hash(&cfg), elapsed(start)),
                }),
                Emit::Weights => {
                    let l = rs.rank();
                    let order = if l <= roots::WEYL_ORDER_MAX_RANK {
                        Some(roots::weyl_group_order(&rs)?)
                    } else {
                        None
                    };
                    render(&WeightsDocument {
                        type_label: label,
                        cartan: rs.cartan.clone(),
                        fundamental_weights: (0..l)
                            .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
                            .collect(),
                        degrees: roots::fundamental_degrees(&rs),
                        weyl_group_order: order,
                        metadata: Metadata::new(input_hash(&cfg), elapsed(start)),
                    })
                }
            };
            Ok(Output::ok(text))
        }
        Command::Curvature { root, weight } => {
            let rs = roots::build(RootSystemType::parse(&root.root_type, root.rank)?);
            let coordinates: Vec<Rational> = weight
                .split(',')
                .map(parse_rational_str)
                .collect::<Result<_>>()?;
            let lambda = Weight::new(coordinates);
            let coefficients = roots::curvature_coefficients(&rs, &lambda)?;
            let cfg = roots::coroot_configuration(&rs);
            Ok(Output::ok(render(&CurvatureDocument {
                type_label: rs.type_label.to_string(),
                weight: rational_values(&lambda.coordinates),
                coefficients: rational_values(&coefficients),
                metadata: Metadata::new(input_hash(&cfg), elapsed(start)),
            })))
        }
        Command::Verify {
            input,
            suite,
            max_rows,
            seed,
            trials,
        } => {
            let loaded = load(input, stdin)?;
            let suite = match suite {
                SuiteArg::Theorems => verify::Suite::Theorems,
                SuiteArg::Recursions => verify::Suite::Recursions,
                SuiteArg::Forests => verify::Suite::Forests,
            };
            let outcome = verify::run(
                suite,
                &verify::VerifyInput {
                    cfg: &loaded.cfg,
                    root_system: loaded.root_system.as_ref(),
                    limits: Limits::with_max_rows(*max_rows),
                    seed: *seed,
                    trials: *trials,
                },
            )?;
            let passed = outcome.passed();
            let doc = VerifyDocument {
                suite: suite.name().to_string(),
                passed,
                checks: outcome.checks,
                counterexample: outcome.counterexample,
                metadata: Metadata::new(input_hash(&loaded.cfg), elapsed(start)),
            };
            Ok(Output {
                text: render(&doc),
                code: if passed { 0 } else { 1 },
                message: (!passed).then(|| format!("{} suite failed", suite.name())),
            })
        }
    }
}
