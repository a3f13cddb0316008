//! `smtrecon`: translate goals to SMT-LIB, check proofs, drive a solver and
//! run batch benchmarks.
//!
//! Exit codes: 0 valid, 10 valid with holes (0 under `--allow-holes`),
//! 20 invalid, 30 unreadable input, 40 solver failure, 1 anything else.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use smtrecon_core::bench::{bench, cactus, write_cactus_csv, write_csv, BenchOptions};
use smtrecon_core::goal::Discharge;
use smtrecon_core::{
    check_files, parse_goal, parse_script, pipeline, print_script, solve_external, CheckOptions, CheckReport,
    GoalError, SolveOutcome,
};

const EXIT_PARSE: u8 = 30;
const EXIT_SOLVER: u8 = 40;

#[derive(Parser)]
#[command(name = "smtrecon", version, about = "Checks fine-grained SMT refutation proofs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a goal file to an SMT-LIB script asserting its negation.
    Translate {
        goal: PathBuf,
        /// Write the script here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a proof of a problem's unsatisfiability.
    Check {
        problem: PathBuf,
        proof: PathBuf,
        #[command(flatten)]
        mode: CheckMode,
    },
    /// Run an external solver on a problem.
    Solve {
        problem: PathBuf,
        /// Command template; `{file}` is replaced by the script path.
        #[arg(long, env = "CPC_SOLVER")]
        solver: String,
        /// Seconds before the solver is killed.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        /// Write the raw proof text of an `unsat` answer here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check every `NAME.smt2`/`NAME.cpcs` pair of a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the per-file CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write cumulative times of solved files.
        #[arg(long)]
        cactus: Option<PathBuf>,
        /// Also time this solver command on every problem.
        #[arg(long, env = "CPC_SOLVER")]
        solver: Option<String>,
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        #[command(flatten)]
        mode: CheckMode,
    },
}

#[derive(Args, Clone, Copy)]
struct CheckMode {
    /// Report proofs with holes with exit code 10 (the default).
    #[arg(long, conflicts_with = "allow_holes")]
    strict: bool,
    /// Exit with 0 for proofs whose only gaps are holes.
    #[arg(long)]
    allow_holes: bool,
    /// Check every step instead of stopping at the first failure.
    #[arg(long)]
    keep_going: bool,
    /// Count steps with unknown rules as holes instead of failures.
    #[arg(long)]
    permissive: bool,
}

impl CheckMode {
    fn options(self) -> CheckOptions {
        CheckOptions { keep_going: self.keep_going, permissive: self.permissive }
    }
}

fn timeout(secs: f64) -> anyhow::Result<Duration> {
    Duration::try_from_secs_f64(secs).context("--timeout must be a non-negative number of seconds")
}

fn print_report(r: &CheckReport) {
    println!("file: {}", r.file);
    println!("verdict: {}", r.verdict.label());
    println!("steps_total: {}", r.steps_total);
    println!("steps_checked: {}", r.steps_checked);
    println!("holes: {}", r.holes);
    println!("check_ms: {:.3}", r.wall_time_ms);
    if r.failures.is_empty() {
        if let smtrecon_core::Verdict::ParseError(msg) = &r.verdict {
            println!("error: {msg}");
        }
    }
    for (step, failure) in &r.failures {
        println!("error: step {step}: {failure}");
    }
}

fn translate(goal: &PathBuf, output: Option<&PathBuf>) -> anyhow::Result<u8> {
    let text = fs::read_to_string(goal).with_context(|| format!("reading {}", goal.display()))?;
    let record = match parse_goal(&text).and_then(|g| pipeline(&g)) {
        Ok(r) => r,
        Err(e @ GoalError::Parse(_)) => {
            eprintln!("{}: {e}", goal.display());
            return Ok(EXIT_PARSE);
        }
        Err(e) => {
            eprintln!("{}: {e}", goal.display());
            return Ok(1);
        }
    };
    for o in &record.obligations {
        let how = match &o.discharge {
            Discharge::Declared => "declared nonempty".to_string(),
            Discharge::Witness(t) => format!("witness {t}"),
            Discharge::Vacuous => "never quantified".to_string(),
        };
        eprintln!("; sort {}: {how}", o.sort);
    }
    for r in &record.rewrites {
        eprintln!("; {}: {} ~> {}", r.reason, r.before, r.after);
    }
    let script = print_script(&record.script);
    match output {
        Some(path) => fs::write(path, script).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(script.as_bytes())?,
    }
    Ok(0)
}

fn solve(problem: &PathBuf, solver: &str, secs: f64, output: Option<&PathBuf>) -> anyhow::Result<u8> {
    let text = fs::read_to_string(problem).with_context(|| format!("reading {}", problem.display()))?;
    let script = match parse_script(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", problem.display());
            return Ok(EXIT_PARSE);
        }
    };
    match solve_external(&script, solver, timeout(secs)?) {
        Ok(SolveOutcome::Unsat(proof)) => {
            println!("unsat");
            match output {
                Some(path) => fs::write(path, proof).with_context(|| format!("writing {}", path.display()))?,
                None if !proof.is_empty() => println!("{proof}"),
                None => {}
            }
        }
        Ok(SolveOutcome::Sat) => println!("sat"),
        Ok(SolveOutcome::Unknown) => println!("unknown"),
        Ok(SolveOutcome::Timeout) => println!("timeout"),
        Err(e) => {
            eprintln!("{e}");
            return Ok(EXIT_SOLVER);
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Translate { goal, output } => translate(&goal, output.as_ref()),
        Command::Check { problem, proof, mode } => {
            let report = check_files(&problem, &proof, mode.options());
            print_report(&report);
            Ok(report.verdict.exit_code(mode.allow_holes) as u8)
        }
        Command::Solve { problem, solver, timeout, output } => solve(&problem, &solver, timeout, output.as_ref()),
        Command::Bench { dir, jobs, csv, cactus: cactus_out, solver, timeout: secs, mode } => {
            let opts = BenchOptions { jobs, solver, timeout: timeout(secs)?, check: mode.options() };
            let rows = bench(&dir, &opts).with_context(|| format!("reading {}", dir.display()))?;
            match csv {
                Some(path) => {
                    let f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    write_csv(&rows, f)?;
                }
                None => write_csv(&rows, io::stdout().lock())?,
            }
            if let Some(path) = cactus_out {
                let f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                write_cactus_csv(&cactus(&rows), f)?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
