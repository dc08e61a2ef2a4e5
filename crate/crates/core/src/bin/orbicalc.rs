use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use orbicalc::corpus::run_corpus;
use orbicalc::ratlin::Rational;
use orbicalc::report::{self, Report};
use orbicalc::scenario::{parse_json, rational, RunError};

/// Exact local calculus for orbifold charts and map germs.
///
/// Exit codes: 0 success, 1 input error, 2 failed mathematical check.
#[derive(Parser)]
#[command(name = "orbicalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (JSON).
    file: PathBuf,
    /// Write the JSON report here and print only the summary.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Germ pipeline: equivariance, regularity, preimage models, projection.
    Analyze(Common),
    /// Monte Carlo regular-value fraction.
    Sard {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Sampling interval for one target coordinate; repeat per coordinate.
        #[arg(long = "box", num_args = 2, value_names = ["LO", "HI"], action = clap::ArgAction::Append, allow_hyphen_values = true)]
        boxes: Vec<String>,
    },
    /// Isotropy strata and index-2 check of a chart.
    Strata(Common),
    /// Can the chart center be a regular value?
    Obstruct(Common),
    /// Classify a list of compact 1-orbifold components.
    Classify1(Common),
    /// No-retraction hypothesis, contradiction report and parity count.
    Retraction(Common),
    /// The built-in scenario corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    Run {
        /// Only scenarios whose anchor contains this string.
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
}

fn load(path: &Path) -> Result<Value, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

fn parse_boxes(raw: &[String]) -> Result<Option<Vec<(Rational, Rational)>>, RunError> {
    if raw.is_empty() {
        return Ok(None);
    }
    raw.chunks(2)
        .enumerate()
        .map(|(i, pair)| {
            let lo = rational(&Value::String(pair[0].clone()), &format!("--box[{i}].lo"))?;
            let hi = rational(&Value::String(pair[1].clone()), &format!("--box[{i}].hi"))?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn emit(report: Report, out: Option<&Path>) -> Result<i32, RunError> {
    match out {
        Some(path) => {
            std::fs::write(path, report.to_json()).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
            for line in &report.summary {
                println!("{line}");
            }
        }
        None => {
            print!("{}", report.to_json());
            for line in &report.summary {
                eprintln!("{line}");
            }
        }
    }
    Ok(report.exit_code())
}

fn corpus(anchor: Option<&str>, corrupt: Option<&str>) -> Result<i32, RunError> {
    let outcomes = run_corpus(anchor, corrupt)?;
    let mut failed = 0;
    for o in &outcomes {
        if o.passed() {
            println!("PASS  {:<32} [{}]", o.name, o.anchor);
        } else {
            failed += 1;
            let mut why = o.mismatches.clone();
            if o.exit != o.expected_exit {
                why.insert(0, format!("exit {} (expected {})", o.exit, o.expected_exit));
            }
            println!("FAIL  {:<32} [{}] {}", o.name, o.anchor, why.join("; "));
        }
    }
    println!("{} scenarios, {} passed, {} failed", outcomes.len(), outcomes.len() - failed, failed);
    Ok(if failed == 0 { 0 } else { 2 })
}

fn run(cli: Cli) -> Result<i32, RunError> {
    let single = |c: &Common, f: fn(&Value) -> Result<Report, RunError>| emit(f(&load(&c.file)?)?, c.out.as_deref());
    match cli.command {
        Command::Analyze(c) => single(&c, report::analyze),
        Command::Strata(c) => single(&c, report::strata),
        Command::Obstruct(c) => single(&c, report::obstruct),
        Command::Classify1(c) => single(&c, report::classify1),
        Command::Retraction(c) => single(&c, report::retraction),
        Command::Sard { common, samples, seed, boxes } => {
            let v = load(&common.file)?;
            let r = report::sard(&v, samples, seed, parse_boxes(&boxes)?)?;
            emit(r, common.out.as_deref())
        }
        Command::Corpus { action: CorpusAction::Run { anchor, corrupt } } => corpus(anchor.as_deref(), corrupt.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
