//! `unrealcore` command-line front end.
//!
//! Exit codes: 0 success (or realizable for `check`), 1 unrealizable for
//! `check` or an invalid report for `validate`, 2 input errors, 3 realizable
//! input to a core command, 4 timeout (partial report still printed),
//! 5 other failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use unrealcore::minimize::{Criterion, Memoized, Minimizer};
use unrealcore::punch::{self, AllCoresResult, AllCoresStats, ProblemOptions, BRUTE_FORCE_LIMIT};
use unrealcore::quickcore::{self, quickcore};
use unrealcore::reduce::{reduce, Gr1Problem};
use unrealcore::report::{self, Report, ReportStats};
use unrealcore::solver::Unrealizability;
use unrealcore::spec::parse_spec;
use unrealcore::Error;

#[derive(Parser)]
#[command(name = "unrealcore", version, about = "GR(1) realizability checking and unrealizable cores")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Disable memoization of checks and reuse of found cores.
    #[arg(long, global = true)]
    no_memo: bool,
    /// Print check statistics in text mode.
    #[arg(long, global = true)]
    stats: bool,
    /// Largest number of enumerated states per game.
    #[arg(long, global = true, default_value_t = unrealcore::kernel::DEFAULT_STATE_CAP)]
    state_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether the specification is realizable.
    Check { spec: PathBuf },
    /// Compute one unrealizable core.
    Core {
        #[arg(long, value_enum, default_value_t = CoreAlg::Quickcore)]
        alg: CoreAlg,
        spec: PathBuf,
    },
    /// Compute all unrealizable cores.
    AllCores {
        #[arg(long, value_enum, default_value_t = AllAlg::PunchQc)]
        alg: AllAlg,
        #[arg(long, default_value_t = 600)]
        timeout_secs: u64,
        spec: PathBuf,
    },
    /// All cores by exhaustive subset enumeration (small specifications only).
    Oracle { spec: PathBuf },
    /// Re-check a JSON report against a specification.
    Validate { spec: PathBuf, report: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoreAlg {
    Quickcore,
    Ddmin,
    Quickxplain,
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AllAlg {
    PunchQc,
    PunchUd,
    Td,
}

impl AllAlg {
    fn name(self) -> &'static str {
        match self {
            AllAlg::PunchQc => "punch-qc",
            AllAlg::PunchUd => "punch-ud",
            AllAlg::Td => "td",
        }
    }
}

enum Failure {
    Input(String),
    Realizable,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Realizable => Failure::Realizable,
            Error::Parse(p) => Failure::Input(p.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<Gr1Problem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let ast = parse_spec(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(reduce(&ast))
}

fn emit(cli: &Cli, report: &Report) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
        Format::Text => print!("{}", report.to_text(cli.stats)),
    }
}

fn ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check { spec } => {
            let problem = load(spec)?;
            let start = Instant::now();
            let mut c = Memoized::new(Unrealizability::new(&problem).with_state_cap(cli.state_cap));
            let realizable = !c.check(problem.guarantee_universe())?;
            let stats = ReportStats { actual_checks: 1, elapsed_ms: ms(start.elapsed()), ..Default::default() };
            emit(cli, &Report::realizability(realizable, stats));
            Ok(if realizable { 0 } else { 1 })
        }
        Command::Core { alg, spec } => {
            let problem = load(spec)?;
            let memo = !cli.no_memo;
            let (name, core, stats) = match alg {
                CoreAlg::Quickcore => {
                    let opts = quickcore::Options { memo, state_cap: cli.state_cap, deadline: None };
                    let run = quickcore(&problem, &opts)?;
                    let stats = ReportStats {
                        actual_checks: run.stats.actual_checks,
                        memo_hits: run.stats.memo_hits,
                        core_computations: 1,
                        elapsed_ms: ms(run.elapsed),
                    };
                    ("quickcore", run.core, stats)
                }
                other => {
                    let m = match other {
                        CoreAlg::Ddmin => Minimizer::DdMin,
                        CoreAlg::Quickxplain => Minimizer::QuickXplain,
                        _ => Minimizer::Linear,
                    };
                    let start = Instant::now();
                    let crit = Unrealizability::new(&problem).with_state_cap(cli.state_cap);
                    let mut c = Memoized::with_cache(crit, memo);
                    if !c.check(problem.guarantee_universe())? {
                        return Err(Failure::Realizable);
                    }
                    let core = m.run(problem.guarantee_universe(), &mut c)?;
                    let s = c.stats();
                    let stats = ReportStats {
                        actual_checks: s.actual_checks,
                        memo_hits: s.memo_hits,
                        core_computations: 1,
                        elapsed_ms: ms(start.elapsed()),
                    };
                    (m.name(), core, stats)
                }
            };
            emit(cli, &Report::single_core(&problem, name, &core, stats));
            Ok(0)
        }
        Command::AllCores { alg, timeout_secs, spec } => {
            let problem = load(spec)?;
            let opts = ProblemOptions {
                memo: !cli.no_memo,
                state_cap: cli.state_cap,
                deadline: Some(Instant::now() + Duration::from_secs(*timeout_secs)),
                trace: false,
            };
            let start = Instant::now();
            let outcome = match alg {
                AllAlg::PunchQc => punch::punch_qc(&problem, &opts),
                AllAlg::PunchUd => punch::punch_ud(&problem, &opts),
                AllAlg::Td => punch::td_problem(&problem, &opts),
            };
            let result = match outcome {
                // The deadline passed before the first core was found.
                Err(Error::Timeout) => AllCoresResult {
                    cores: Vec::new(),
                    intersection: None,
                    complete: false,
                    stats: AllCoresStats { elapsed_ms: ms(start.elapsed()), ..Default::default() },
                    trace: Vec::new(),
                },
                other => other?,
            };
            emit(cli, &Report::all_cores(&problem, alg.name(), &result));
            Ok(if result.complete { 0 } else { 4 })
        }
        Command::Oracle { spec } => {
            let problem = load(spec)?;
            let universe = problem.guarantee_universe();
            if universe.len() > BRUTE_FORCE_LIMIT {
                return Err(Failure::Other(format!(
                    "{} guarantees exceed the oracle limit of {BRUTE_FORCE_LIMIT}",
                    universe.len()
                )));
            }
            let start = Instant::now();
            let mut c = Unrealizability::new(&problem).with_state_cap(cli.state_cap);
            if !c.check(universe)? {
                return Err(Failure::Realizable);
            }
            let cores = punch::brute_force_all_cores(universe, &mut c)?;
            let intersection = cores.iter().fold(universe.clone(), |a, c| a.intersection(c));
            let result = AllCoresResult {
                cores,
                intersection: Some(intersection),
                complete: true,
                stats: AllCoresStats {
                    actual_checks: 1 << universe.len(),
                    elapsed_ms: ms(start.elapsed()),
                    ..Default::default()
                },
                trace: Vec::new(),
            };
            emit(cli, &Report::all_cores(&problem, "oracle", &result));
            Ok(0)
        }
        Command::Validate { spec, report: path } => {
            let problem = load(spec)?;
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let parsed: Report =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let issues = report::validate(&problem, &parsed)?;
            for i in &issues {
                println!("invalid: {i}");
            }
            if issues.is_empty() {
                let n = parsed.cores.len();
                println!("valid: {n} core{} re-checked", if n == 1 { "" } else { "s" });
                Ok(0)
            } else {
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Realizable) => {
            eprintln!("error: the specification is realizable, so it has no unrealizable core");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(5)
        }
    }
}
