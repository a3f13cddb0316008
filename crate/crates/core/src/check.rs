//! Whole-proof checking with hole accounting.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::time::Instant;

use thiserror::Error;

use crate::rules::{Registry, RuleError, RuleInput, HOLE};
use crate::smtlib::{parse_proof, parse_script, ProofDag, Script};
use crate::term::Term;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Record every failing step instead of stopping at the first.
    pub keep_going: bool,
    /// Count steps with unknown rule names as holes.
    pub permissive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Failure {
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("the final step concludes `{0}`, not `false`")]
    NotRefutation(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    ValidWithHoles,
    Invalid { step: String, failure: Failure },
    ParseError(String),
}

impl Verdict {
    /// 0 valid, 10 valid with holes (0 when holes are allowed), 20 invalid,
    /// 30 unreadable input.
    pub fn exit_code(&self, allow_holes: bool) -> i32 {
        match self {
            Verdict::Valid => 0,
            Verdict::ValidWithHoles if allow_holes => 0,
            Verdict::ValidWithHoles => 10,
            Verdict::Invalid { .. } => 20,
            Verdict::ParseError(_) => 30,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::ValidWithHoles => "valid_with_holes",
            Verdict::Invalid { .. } => "invalid",
            Verdict::ParseError(_) => "parse_error",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Invalid { step, failure } => write!(f, "invalid at step {step}: {failure}"),
            Verdict::ParseError(msg) => write!(f, "parse error: {msg}"),
            other => f.write_str(other.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub file: String,
    pub steps_total: usize,
    pub steps_checked: usize,
    pub holes: usize,
    pub verdict: Verdict,
    pub wall_time_ms: f64,
    /// Every failing step; more than one only with `keep_going`.
    pub failures: Vec<(String, Failure)>,
}

impl CheckReport {
    fn parse_error(file: &str, msg: String, started: Instant) -> CheckReport {
        CheckReport {
            file: file.to_string(),
            steps_total: 0,
            steps_checked: 0,
            holes: 0,
            verdict: Verdict::ParseError(msg),
            wall_time_ms: elapsed_ms(started),
            failures: Vec::new(),
        }
    }
}

pub(crate) fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Checks the steps of `dag` in order. `script` is only used for its
/// declarations, which the parser has already resolved.
pub fn check_proof(_script: &Script, dag: &ProofDag, opts: CheckOptions) -> CheckReport {
    let started = Instant::now();
    let registry = Registry::standard();
    let mut known: HashMap<&str, &Term> = dag.assumptions.iter().map(|a| (a.id.as_str(), &a.term)).collect();
    let mut checked = 0;
    let mut holes = 0;
    let mut failures: Vec<(String, Failure)> = Vec::new();
    let mut premises: Vec<Term> = Vec::new();

    for step in &dag.steps {
        premises.clear();
        premises.extend(step.premises.iter().map(|p| known[p.as_str()].clone()));
        known.insert(&step.id, &step.conclusion);
        let outcome = match registry.get(&step.rule) {
            _ if step.rule == HOLE => None,
            None if opts.permissive => None,
            None => Some(Err(RuleError::UnknownRule(step.rule.clone()))),
            Some(checker) => {
                Some((checker.check)(&RuleInput { premises: &premises, args: &step.args, conclusion: &step.conclusion }))
            }
        };
        match outcome {
            None => holes += 1,
            Some(Ok(())) => checked += 1,
            Some(Err(e)) => {
                failures.push((step.id.clone(), e.into()));
                if !opts.keep_going {
                    break;
                }
            }
        }
    }

    if failures.is_empty() {
        let last = dag.final_step();
        if !last.conclusion.is_false() {
            failures.push((last.id.clone(), Failure::NotRefutation(last.conclusion.clone())));
        }
    }
    let verdict = match failures.first() {
        Some((step, failure)) => Verdict::Invalid { step: step.clone(), failure: failure.clone() },
        None if holes > 0 => Verdict::ValidWithHoles,
        None => Verdict::Valid,
    };
    CheckReport {
        file: String::new(),
        steps_total: dag.steps.len(),
        steps_checked: checked,
        holes,
        verdict,
        wall_time_ms: elapsed_ms(started),
        failures,
    }
}

/// Parses and checks a problem/proof pair given as text. Parse failures
/// become a `ParseError` verdict.
pub fn check_text(problem: &str, proof: &str, opts: CheckOptions) -> CheckReport {
    let started = Instant::now();
    let script = match parse_script(problem) {
        Ok(s) => s,
        Err(e) => return CheckReport::parse_error("", format!("problem: {e}"), started),
    };
    let dag = match parse_proof(proof, &script) {
        Ok(d) => d,
        Err(e) => return CheckReport::parse_error("", format!("proof: {e}"), started),
    };
    let mut report = check_proof(&script, &dag, opts);
    report.wall_time_ms = elapsed_ms(started);
    report
}

pub fn check_files(problem: &Path, proof: &Path, opts: CheckOptions) -> CheckReport {
    let started = Instant::now();
    let file = problem.display().to_string();
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let texts = read(problem).and_then(|a| read(proof).map(|b| (a, b)));
    let mut report = match texts {
        Ok((a, b)) => check_text(&a, &b, opts),
        Err(msg) => CheckReport::parse_error(&file, msg, started),
    };
    report.file = file;
    report.wall_time_ms = elapsed_ms(started);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::Side;

    const PROBLEM: &str = "(declare-const p Bool)(declare-const q Bool)\
        (assert (or p q))(assert (not p))(assert (not q))";

    const PROOF: &str = "\
(assume a0 (or p q))
(assume a1 (not p))
(assume a2 (not q))
(step t1 q :rule resolution :premises (a0 a1) :args (true p))
(step t2 false :rule resolution :premises (t1 a2) :args (true q))
";

    #[test]
    fn valid_refutation() {
        let r = check_text(PROBLEM, PROOF, CheckOptions::default());
        assert_eq!(r.verdict, Verdict::Valid);
        assert_eq!((r.steps_total, r.steps_checked, r.holes), (2, 2, 0));
        assert_eq!(r.verdict.exit_code(false), 0);
    }

    #[test]
    fn holes_are_counted() {
        let proof = PROOF.replace(":rule resolution :premises (a0 a1) :args (true p)", ":rule hole");
        let r = check_text(PROBLEM, &proof, CheckOptions::default());
        assert_eq!(r.verdict, Verdict::ValidWithHoles);
        assert_eq!((r.steps_checked, r.holes), (1, 1));
        assert_eq!(r.verdict.exit_code(false), 10);
        assert_eq!(r.verdict.exit_code(true), 0);
    }

    #[test]
    fn wrong_resolvent_is_reported() {
        let proof = PROOF.replace("(step t1 q", "(step t1 p");
        let r = check_text(PROBLEM, &proof, CheckOptions::default());
        assert!(matches!(
            r.verdict,
            Verdict::Invalid { ref step, failure: Failure::Rule(RuleError::ConclusionMismatch { .. }) } if step == "t1"
        ));
        assert_eq!(r.verdict.exit_code(true), 20);
        assert_eq!(r.steps_checked, 0);
    }

    #[test]
    fn corrupted_pivot() {
        let proof = PROOF.replace(":args (true p)", ":args (true q)");
        let r = check_text(PROBLEM, &proof, CheckOptions::default());
        assert!(matches!(
            r.verdict,
            Verdict::Invalid { failure: Failure::Rule(RuleError::PivotNotFound { side: Side::Second }), .. }
        ));
    }

    #[test]
    fn keep_going_collects_all_failures() {
        let proof = PROOF.replace(":args (true p)", ":args (true q)").replace(":args (true q))\n", ":args (false q))\n");
        let r = check_text(PROBLEM, &proof, CheckOptions { keep_going: true, permissive: false });
        assert_eq!(r.failures.len(), 2);
        let r = check_text(PROBLEM, &proof, CheckOptions::default());
        assert_eq!(r.failures.len(), 1);
    }

    #[test]
    fn final_step_must_be_false() {
        let proof = "(assume a0 (or p q))(assume a1 (not p))\
            (step t1 q :rule resolution :premises (a0 a1) :args (true p))";
        let r = check_text(PROBLEM, proof, CheckOptions::default());
        assert!(matches!(r.verdict, Verdict::Invalid { failure: Failure::NotRefutation(_), .. }));
    }

    #[test]
    fn unknown_rules() {
        let proof = PROOF.replace("resolution :premises (a0 a1)", "magic :premises (a0 a1)");
        let strict = check_text(PROBLEM, &proof, CheckOptions::default());
        assert!(matches!(strict.verdict, Verdict::Invalid { failure: Failure::Rule(RuleError::UnknownRule(_)), .. }));
        let lax = check_text(PROBLEM, &proof, CheckOptions { keep_going: false, permissive: true });
        assert_eq!(lax.verdict, Verdict::ValidWithHoles);
    }

    #[test]
    fn parse_errors() {
        let r = check_text("(assert", PROOF, CheckOptions::default());
        assert_eq!(r.verdict.exit_code(false), 30);
        let r = check_text(PROBLEM, "(step t1 false :rule hole :premises (zz))", CheckOptions::default());
        assert_eq!(r.verdict.label(), "parse_error");
    }
}
