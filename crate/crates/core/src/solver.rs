//! Running an external SMT solver on a script.
//!
//! The command template is run through `sh -c` with `{file}` replaced by
//! the path of a temporary `.smt2` file (appended when the template has no
//! placeholder). The first non-empty line of standard output is the
//! answer; for `unsat` the remaining output is returned as raw proof text.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::time::Duration;

use thiserror::Error;
use wait_timeout::ChildExt;

use crate::smtlib::{print_script, Script};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unsat(String),
    Sat,
    Unknown,
    Timeout,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("could not run solver: {0}")]
    Spawn(String),
    #[error("unrecognized solver output: {0}")]
    OutputUnparsable(String),
}

fn shell_quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', r"'\''"))
}

pub fn solve_external(script: &Script, template: &str, timeout: Duration) -> Result<SolveOutcome, SolverError> {
    if timeout.is_zero() {
        return Ok(SolveOutcome::Timeout);
    }
    let spawn_err = |e: std::io::Error| SolverError::Spawn(e.to_string());
    let mut file = tempfile::Builder::new().suffix(".smt2").tempfile().map_err(spawn_err)?;
    file.write_all(print_script(script).as_bytes()).map_err(spawn_err)?;
    file.flush().map_err(spawn_err)?;

    let path = shell_quote(&file.path().display().to_string());
    let cmd = if template.contains("{file}") { template.replace("{file}", &path) } else { format!("{template} {path}") };
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(&cmd)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(spawn_err)?;

    // Drain stdout on another thread so a chatty solver cannot block on a
    // full pipe while we wait.
    let mut stdout = child.stdout.take().expect("stdout is piped");
    let reader = std::thread::spawn(move || {
        let mut buf = String::new();
        stdout.read_to_string(&mut buf).map(|_| buf)
    });

    let status = match child.wait_timeout(timeout).map_err(spawn_err)? {
        Some(status) => status,
        None => {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(SolveOutcome::Timeout);
        }
    };
    let output = reader.join().expect("reader thread").map_err(spawn_err)?;
    if status.code() == Some(127) {
        return Err(SolverError::Spawn(format!("command not found: {cmd}")));
    }
    parse_answer(&output)
}

fn parse_answer(output: &str) -> Result<SolveOutcome, SolverError> {
    let mut lines = output.lines();
    let first = lines.by_ref().map(str::trim).find(|l| !l.is_empty());
    match first {
        Some("unsat") => Ok(SolveOutcome::Unsat(lines.collect::<Vec<_>>().join("\n"))),
        Some("sat") => Ok(SolveOutcome::Sat),
        Some("unknown") => Ok(SolveOutcome::Unknown),
        Some(other) => Err(SolverError::OutputUnparsable(other.to_string())),
        None => Err(SolverError::OutputUnparsable("no output".into())),
    }
}
