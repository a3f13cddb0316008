//! Batch checking of problem/proof pairs with CSV reports.
//!
//! A benchmark directory holds `NAME.smt2` problems, each paired with a
//! `NAME.cpcs` proof. Files are checked in parallel; rows come back sorted
//! by file name whatever the schedule was.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::check::{check_files, elapsed_ms, CheckOptions};
use crate::smtlib::parse_script;
use crate::solver::solve_external;

pub const CSV_HEADER: [&str; 7] = ["file", "steps_total", "steps_checked", "holes", "verdict", "solver_ms", "check_ms"];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub file: String,
    pub steps_total: usize,
    pub steps_checked: usize,
    pub holes: usize,
    pub verdict: &'static str,
    pub solver_ms: f64,
    pub check_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub jobs: usize,
    /// Solver command template; when set each problem is also solved and
    /// timed.
    pub solver: Option<String>,
    pub timeout: Duration,
    pub check: CheckOptions,
}

impl Default for BenchOptions {
    fn default() -> BenchOptions {
        BenchOptions { jobs: 1, solver: None, timeout: Duration::from_secs(60), check: CheckOptions::default() }
    }
}

/// Problem files of `dir`, sorted.
pub fn problems(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "smt2") {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn solver_ms(problem: &Path, template: &str, timeout: Duration) -> f64 {
    let started = Instant::now();
    if let Ok(Ok(script)) = std::fs::read_to_string(problem).map(|t| parse_script(&t)) {
        let _ = solve_external(&script, template, timeout);
    }
    elapsed_ms(started)
}

fn run_one(problem: &Path, opts: &BenchOptions) -> BenchRow {
    let file = problem.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let solver_ms = opts.solver.as_deref().map_or(0.0, |t| solver_ms(problem, t, opts.timeout));
    let report = check_files(problem, &problem.with_extension("cpcs"), opts.check);
    BenchRow {
        file,
        steps_total: report.steps_total,
        steps_checked: report.steps_checked,
        holes: report.holes,
        verdict: report.verdict.label(),
        solver_ms,
        check_ms: report.wall_time_ms,
    }
}

/// Checks every pair in `dir` with up to `opts.jobs` threads. Per-file
/// problems, a missing proof included, become rows; only an unreadable
/// directory is an error.
pub fn bench(dir: &Path, opts: &BenchOptions) -> io::Result<Vec<BenchRow>> {
    let files = problems(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(io::Error::other)?;
    let mut rows: Vec<BenchRow> = pool.install(|| files.par_iter().map(|f| run_one(f, opts)).collect());
    rows.sort_by(|a, b| a.file.cmp(&b.file));
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.file.clone(),
            r.steps_total.to_string(),
            r.steps_checked.to_string(),
            r.holes.to_string(),
            r.verdict.to_string(),
            format!("{:.3}", r.solver_ms),
            format!("{:.3}", r.check_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CactusPoint {
    pub rank: usize,
    pub time_ms: f64,
    pub cumulative_ms: f64,
}

/// Solved instances (valid, with or without holes) by increasing total
/// time, with running sums.
pub fn cactus(rows: &[BenchRow]) -> Vec<CactusPoint> {
    let mut times: Vec<f64> = rows
        .iter()
        .filter(|r| r.verdict == "valid" || r.verdict == "valid_with_holes")
        .map(|r| r.solver_ms + r.check_ms)
        .collect();
    times.sort_by(f64::total_cmp);
    let mut total = 0.0;
    times
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            total += t;
            CactusPoint { rank: i + 1, time_ms: t, cumulative_ms: total }
        })
        .collect()
}

pub fn write_cactus_csv<W: Write>(points: &[CactusPoint], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "time_ms", "cumulative_ms"])?;
    for p in points {
        w.write_record([p.rank.to_string(), format!("{:.3}", p.time_ms), format!("{:.3}", p.cumulative_ms)])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const PROBLEM: &str = "(declare-const p Bool)(assert p)(assert (not p))";
    const PROOF: &str = "(assume a0 p)(assume a1 (not p))(step t0 false :rule contra :premises (a0 a1))";

    fn write(dir: &Path, name: &str, text: &str) {
        std::fs::write(dir.join(name), text).unwrap();
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let rows = bench(dir.path(), &BenchOptions::default()).unwrap();
        assert!(rows.is_empty());
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "file,steps_total,steps_checked,holes,verdict,solver_ms,check_ms\n");
    }

    #[test]
    fn mixed_directory() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "b.smt2", PROBLEM);
        write(dir.path(), "b.cpcs", PROOF);
        write(dir.path(), "a.smt2", PROBLEM);
        write(dir.path(), "a.cpcs", &PROOF.replace("contra", "hole"));
        write(dir.path(), "c.smt2", PROBLEM);
        write(dir.path(), "c.cpcs", &PROOF.replace("(a0 a1)", "(a1 a0)"));
        write(dir.path(), "d.smt2", PROBLEM);
        let opts = BenchOptions { jobs: 3, ..BenchOptions::default() };
        let rows = bench(dir.path(), &opts).unwrap();
        let got: Vec<(&str, &str)> = rows.iter().map(|r| (r.file.as_str(), r.verdict)).collect();
        assert_eq!(
            got,
            [("a.smt2", "valid_with_holes"), ("b.smt2", "valid"), ("c.smt2", "invalid"), ("d.smt2", "parse_error")]
        );
        let points = cactus(&rows);
        assert_eq!(points.len(), 2);
        assert!(points[1].cumulative_ms >= points[1].time_ms);
    }
}
