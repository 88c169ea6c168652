use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use ertect::harness::{self, refute, Generator, Limits, RefuteError};
use ertect::json::{instance_to_json, parse_instance_str, solution_to_json};
use ertect_core::reductions::find;
use ertect_core::{Instance, ProblemId};
use serde_json::{json, Value};

/// Executable tail-coloring and choice problems, and the reductions between them.
#[derive(Parser)]
#[command(name = "ertect", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the semantic solver.
    Solve { problem: String, instance: PathBuf },
    /// Apply a reduction and decode sampled target solutions.
    Reduce {
        name: String,
        instance: PathBuf,
        /// Maximum number of target solutions to decode.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check a single reduction.
        #[arg(long)]
        only: Option<String>,
        /// Generator limits as JSON, inline or in a file.
        #[arg(long)]
        limits: Option<String>,
    },
    /// Run a strong-reduction refuter against a built-in candidate.
    Refute {
        target: String,
        #[arg(long)]
        candidate: String,
    },
    /// Print an instance with canonical word presentations.
    Canon { instance: PathBuf },
}

/// Outcome of a command: the payload, and whether it reports a failure.
struct Outcome {
    payload: Value,
    failed: bool,
}

fn ok(payload: Value) -> Outcome {
    Outcome { payload, failed: false }
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Reads `i` as an instance of `problem`. The coloring kinds share one
/// presentation, as do C_N and TC_N.
fn as_problem(i: Instance, problem: &ProblemId) -> anyhow::Result<Instance> {
    if &i.id() == problem {
        return Ok(i);
    }
    let coloring = i.coloring().cloned();
    let converted = match (problem, coloring, i) {
        (ProblemId::Ert, Some(c), _) => Instance::Ert(c),
        (ProblemId::Ect, Some(c), _) => Instance::Ect(c),
        (ProblemId::MinErt, Some(c), _) => Instance::MinErt(c),
        (ProblemId::MinEct, Some(c), _) => Instance::MinEct(c),
        (ProblemId::Cn, _, Instance::Tcn(e)) => Instance::Cn(e),
        (ProblemId::Tcn, _, Instance::Cn(e)) => Instance::Tcn(e),
        (_, _, other) => bail!("a `{}` instance is not a `{problem}` instance", other.id()),
    };
    converted.check()?;
    Ok(converted)
}

fn solve(problem: &str, path: &Path) -> anyhow::Result<Outcome> {
    let problem: ProblemId = problem.parse().map_err(|e| anyhow!("{e}"))?;
    let i = as_problem(read_instance(path)?, &problem)?;
    let s = i.solve()?;
    Ok(ok(json!({ "solution": solution_to_json(&s) })))
}

fn reduce(name: &str, path: &Path, samples: Option<usize>, seed: u64) -> anyhow::Result<Outcome> {
    let record = find(name)?;
    let source = as_problem(read_instance(path)?, &(record.source)())?;
    let target = record.forward(&source)?;
    target.check()?;
    let mut g = Generator::new(seed, Limits::default());
    let mut rows = Vec::new();
    let mut failed = false;
    for s in harness::sample_solutions(&target, g.rng()).into_iter().take(samples.unwrap_or(usize::MAX)) {
        let decoded = record.backward(&source, &s)?;
        let valid = target.validate(&s) && source.validate(&decoded);
        failed |= !valid;
        rows.push(json!({
            "target_solution": solution_to_json(&s),
            "decoded": solution_to_json(&decoded),
            "valid": valid,
        }));
    }
    Ok(Outcome {
        payload: json!({
            "reduction": name,
            "target": instance_to_json(&target),
            "samples": rows,
        }),
        failed,
    })
}

fn parse_limits(arg: Option<&str>) -> anyhow::Result<Limits> {
    let Some(arg) = arg else {
        return Ok(Limits::default());
    };
    let text = match arg.trim_start().starts_with('{') {
        true => arg.to_string(),
        false => std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?,
    };
    let limits: Limits = serde_json::from_str(&text).context("parsing limits")?;
    limits.validate().map_err(|e| anyhow!(e))?;
    Ok(limits)
}

fn verify(trials: u64, seed: u64, only: Option<&str>, limits: Option<&str>) -> anyhow::Result<Outcome> {
    let limits = parse_limits(limits)?;
    let suite = harness::run_suite(seed, trials, &limits, only)?;
    Ok(Outcome {
        payload: suite.to_json(),
        failed: !suite.ok(),
    })
}

fn refute_cmd(target: &str, candidate: &str) -> anyhow::Result<Outcome> {
    match refute::refute(target, candidate) {
        Ok((cx, _)) => Ok(ok(cx.to_json())),
        Err(e @ RefuteError::NotRefuted(_)) => Ok(Outcome {
            payload: json!({ "refuter": target, "candidate": candidate, "error": e.to_string() }),
            failed: true,
        }),
        Err(e) => Err(e.into()),
    }
}

fn canon(path: &Path) -> anyhow::Result<Outcome> {
    let i = read_instance(path)?.map_words(&|w| w.canonicalize());
    Ok(ok(instance_to_json(&i)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { problem, instance } => solve(problem, instance),
        Command::Reduce { name, instance, samples, seed } => reduce(name, instance, *samples, *seed),
        Command::Verify { trials, seed, only, limits } => verify(*trials, *seed, only.as_deref(), limits.as_deref()),
        Command::Refute { target, candidate } => refute_cmd(target, candidate),
        Command::Canon { instance } => canon(instance),
    };
    match result {
        Ok(out) => {
            println!("{}", out.payload);
            ExitCode::from(u8::from(out.failed))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
