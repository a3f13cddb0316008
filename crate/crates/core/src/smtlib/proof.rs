//! The step-based proof format.
//!
//! ```text
//! proof := (assume ID term)* (step ID term :rule NAME [:premises (ID+)] [:args (arg+)])+
//! arg   := term | INT | (/ INT INT) | true | false
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use super::reader::TermReader;
use super::script::Script;
use super::sexp::{read_all, Sexp};
use super::ParseError;
use crate::term::{Sort, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumption {
    pub id: String,
    pub term: Term,
}

/// One inference: a rule applied to earlier conclusions and arguments.
/// Numeric and Boolean arguments are kept as literal terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub id: String,
    pub rule: String,
    pub premises: Vec<String>,
    pub args: Vec<Term>,
    pub conclusion: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofDag {
    pub assumptions: Vec<Assumption>,
    pub steps: Vec<ProofStep>,
}

impl ProofDag {
    pub fn final_step(&self) -> &ProofStep {
        self.steps.last().expect("a parsed proof has at least one step")
    }

    /// Conclusions by id, assumptions included.
    pub fn conclusions(&self) -> HashMap<&str, &Term> {
        self.assumptions
            .iter()
            .map(|a| (a.id.as_str(), &a.term))
            .chain(self.steps.iter().map(|s| (s.id.as_str(), &s.conclusion)))
            .collect()
    }
}

pub fn is_valid_id(id: &str) -> bool {
    let mut chars = id.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn read_id<'a>(s: &'a Sexp, what: &str) -> Result<&'a str, ParseError> {
    match s.as_symbol() {
        Some(id) if is_valid_id(id) => Ok(id),
        _ => Err(s.error(format!("expected {what} matching [A-Za-z_][A-Za-z0-9_.]*"))),
    }
}

pub fn parse_proof(text: &str, within: &Script) -> Result<ProofDag, ParseError> {
    let sig = within.signature();
    let asserted: HashSet<&Term> = within.assertions.iter().collect();
    let mut seen: HashSet<String> = HashSet::new();
    let mut dag = ProofDag { assumptions: Vec::new(), steps: Vec::new() };

    for cmd in read_all(text)? {
        let items = cmd.expect_list("`assume` or `step`")?;
        let head = items.first().and_then(Sexp::as_symbol);
        match head {
            Some("assume") => {
                if !dag.steps.is_empty() {
                    return Err(cmd.error("`assume` must precede every `step`"));
                }
                if items.len() != 3 {
                    return Err(cmd.error("expected `(assume ID term)`"));
                }
                let id = read_id(&items[1], "an assumption id")?;
                if !seen.insert(id.to_string()) {
                    return Err(items[1].error(format!("duplicate id `{id}`")));
                }
                let term = TermReader::smtlib(&sig).read_sorted(&items[2], Some(&Sort::Bool))?;
                if !asserted.contains(&term) {
                    return Err(ParseError::AssumeMismatch(id.to_string()));
                }
                dag.assumptions.push(Assumption { id: id.to_string(), term });
            }
            Some("step") => {
                let step = read_step(&cmd, &items[1..], &sig, &seen)?;
                seen.insert(step.id.clone());
                dag.steps.push(step);
            }
            _ => return Err(cmd.error("expected `assume` or `step`")),
        }
    }
    if dag.steps.is_empty() {
        return Err(ParseError::Syntax { line: 1, column: 1, message: "proof has no steps".into() });
    }
    Ok(dag)
}

fn read_step(
    cmd: &Sexp,
    items: &[Sexp],
    sig: &super::reader::Signature,
    seen: &HashSet<String>,
) -> Result<ProofStep, ParseError> {
    if items.len() < 4 {
        return Err(cmd.error("expected `(step ID term :rule NAME ...)`"));
    }
    let id = read_id(&items[0], "a step id")?;
    if seen.contains(id) {
        return Err(items[0].error(format!("duplicate id `{id}`")));
    }
    let mut reader = TermReader::smtlib(sig);
    let conclusion = reader.read_sorted(&items[1], Some(&Sort::Bool))?;
    if items[2].as_keyword() != Some("rule") {
        return Err(items[2].error("expected `:rule`"));
    }
    let rule = read_id(&items[3], "a rule name")?.to_string();

    let mut premises = Vec::new();
    let mut args = Vec::new();
    let mut rest = &items[4..];
    if let Some(kw) = rest.first().filter(|k| k.as_keyword() == Some("premises")) {
        let list = rest.get(1).ok_or_else(|| kw.error("missing premise list"))?;
        let ids = list.expect_list("a premise list")?;
        if ids.is_empty() {
            return Err(list.error("empty premise list"));
        }
        for p in ids {
            let pid = read_id(p, "a premise id")?;
            if !seen.contains(pid) {
                return Err(ParseError::UnknownPremise(pid.to_string()));
            }
            premises.push(pid.to_string());
        }
        rest = &rest[2..];
    }
    if let Some(kw) = rest.first().filter(|k| k.as_keyword() == Some("args")) {
        let list = rest.get(1).ok_or_else(|| kw.error("missing argument list"))?;
        let terms = list.expect_list("an argument list")?;
        if terms.is_empty() {
            return Err(list.error("empty argument list"));
        }
        for a in terms {
            args.push(reader.read_sorted(a, None)?);
        }
        rest = &rest[2..];
    }
    if let Some(extra) = rest.first() {
        return Err(extra.error("unexpected trailing step attribute"));
    }
    Ok(ProofStep { id: id.to_string(), rule, premises, args, conclusion })
}

/// Prints a proof in the same grammar [`parse_proof`] reads.
pub fn print_proof(dag: &ProofDag) -> String {
    let mut out = String::new();
    for a in &dag.assumptions {
        writeln!(out, "(assume {} {})", a.id, a.term).unwrap();
    }
    for s in &dag.steps {
        write!(out, "(step {} {} :rule {}", s.id, s.conclusion, s.rule).unwrap();
        if !s.premises.is_empty() {
            write!(out, " :premises ({})", s.premises.join(" ")).unwrap();
        }
        if !s.args.is_empty() {
            let args: Vec<String> = s.args.iter().map(Term::to_string).collect();
            write!(out, " :args ({})", args.join(" ")).unwrap();
        }
        out.push_str(")\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::parse_script;

    #[test]
    fn single_step_refutation() {
        let script = parse_script("(assert false)").unwrap();
        let text = "(assume a0 false)(step t0 false :rule assume_elim :premises (a0))";
        let dag = parse_proof(text, &script).unwrap();
        assert_eq!(dag.assumptions.len(), 1);
        assert_eq!(dag.steps.len(), 1);
        assert_eq!(dag.final_step().id, "t0");
        assert_eq!(parse_proof(&print_proof(&dag), &script).unwrap(), dag);
    }

    #[test]
    fn forward_reference_is_unknown() {
        let script = parse_script("(assert false)").unwrap();
        let text = "(assume a0 false)(step t0 false :rule assume_elim :premises (t9))(step t9 false :rule hole)";
        assert_eq!(parse_proof(text, &script), Err(ParseError::UnknownPremise("t9".into())));
    }

    #[test]
    fn assume_must_match_an_assertion() {
        let script = parse_script("(declare-const x Int)(assert (= x 2))").unwrap();
        let text = "(assume a0 (= x 1))(step t0 false :rule hole)";
        assert_eq!(parse_proof(text, &script), Err(ParseError::AssumeMismatch("a0".into())));
    }

    #[test]
    fn grammar_violations() {
        let script = parse_script("(declare-const p Bool)(assert p)").unwrap();
        for bad in [
            "(assume a0 p)",
            "(step t0 false :rule hole)(assume a0 p)",
            "(assume a0 p)(assume a0 p)(step t0 false :rule hole)",
            "(step 0t false :rule hole)",
            "(step t0 false :premises (t0) :rule hole)",
            "(step t0 false :rule hole :premises ())",
            "(step t0 1 :rule hole)",
            "(step t0 false :rule hole :args (p) :premises (a0))",
        ] {
            assert!(parse_proof(bad, &script).is_err(), "{bad}");
        }
    }

    #[test]
    fn arguments_are_terms() {
        let script = parse_script("(declare-const x Real)(assert (< x 0.0))").unwrap();
        let text = "(step t0 false :rule hole :args (x 2 (/ 1 4) (- 3) true))";
        let dag = parse_proof(text, &script).unwrap();
        let args: Vec<String> = dag.steps[0].args.iter().map(Term::to_string).collect();
        assert_eq!(args, ["x", "2", "(/ 1 4)", "(- 3)", "true"]);
    }
}
