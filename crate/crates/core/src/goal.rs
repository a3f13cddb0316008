//! First-order goals and their translation to SMT-LIB.
//!
//! A goal file is a list of S-expressions:
//!
//! ```text
//! (sort NAME [:nonempty])
//! (const NAME SORT)          ; SORT may be Nat
//! (fun NAME (SORT+) SORT)
//! (hyp NAME term)
//! (goal term)
//! ```
//!
//! Terms use SMT-LIB syntax plus `iff`, and quantifier binders may have sort
//! `Nat`. [`preprocess`] removes `iff` and encodes `Nat` as guarded `Int`;
//! [`translate`] then emits a script asserting the hypotheses and the
//! negated conclusion.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::smtlib::{read_all, ParseError, Script, Signature, TermReader};
use crate::term::{FunSig, Op, Sort, Term, TermNode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalSort {
    pub name: Arc<str>,
    /// Declared inhabited with `:nonempty`.
    pub nonempty: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub sorts: Vec<GoalSort>,
    /// Nat constants appear here with sort Int and are listed in `nat_vars`.
    pub consts: Vec<(Arc<str>, Sort)>,
    pub funs: Vec<Arc<FunSig>>,
    pub hypotheses: Vec<(Arc<str>, Term)>,
    pub conclusion: Term,
    /// Constants and bound variables whose declared type is Nat.
    pub nat_vars: BTreeSet<Arc<str>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("sort `{0}` is quantified over but has no witness; declare it `:nonempty` or add a constant")]
    EmptySortRisk(Arc<str>),
    #[error("unsupported construct: {0}")]
    UnsupportedConstruct(String),
}

/// One preprocessing rewrite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub before: Term,
    pub after: Term,
    pub reason: &'static str,
}

/// Why a declared sort may be assumed inhabited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discharge {
    Declared,
    /// A closed term of the sort built from constants and functions.
    Witness(Term),
    /// The sort is never quantified over, so emptiness cannot matter.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obligation {
    pub sort: Arc<str>,
    pub discharge: Discharge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationRecord {
    pub script: Script,
    pub obligations: Vec<Obligation>,
    pub rewrites: Vec<Rewrite>,
}

pub fn parse_goal(text: &str) -> Result<Goal, GoalError> {
    let mut sig = Signature::default();
    let mut sorts = Vec::new();
    let mut consts = Vec::new();
    let mut funs = Vec::new();
    let mut hypotheses = Vec::new();
    let mut conclusion = None;
    let mut nat_vars = BTreeSet::new();
    let mut int_names: HashSet<Arc<str>> = HashSet::new();

    for cmd in read_all(text)? {
        let items = cmd.expect_list("a goal declaration")?;
        let head = items.first().and_then(|h| h.as_symbol()).ok_or_else(|| cmd.error("expected a declaration"))?;
        match (head, items.len()) {
            ("sort", 2 | 3) => {
                let name = items[1].expect_name("a sort name")?;
                let nonempty = match items.get(2) {
                    None => false,
                    Some(k) if k.as_keyword() == Some("nonempty") => true,
                    Some(k) => return Err(k.error("expected `:nonempty`").into()),
                };
                sig.declare_sort(&items[1], name)?;
                sorts.push(GoalSort { name: name.into(), nonempty });
            }
            ("const", 3) => {
                let name: Arc<str> = items[1].expect_name("a constant name")?.into();
                let sort = if items[2].is_symbol("Nat") {
                    nat_vars.insert(name.clone());
                    Sort::Int
                } else {
                    let s = sig.read_sort(&items[2])?;
                    if s == Sort::Int {
                        int_names.insert(name.clone());
                    }
                    s
                };
                sig.declare_const(&items[1], &name, sort.clone())?;
                consts.push((name, sort));
            }
            ("fun", 4) => {
                let name = items[1].expect_name("a function name")?;
                let domain = items[2].expect_list("a sort list")?;
                if domain.is_empty() {
                    return Err(items[2].error("functions take at least one argument; use `const`").into());
                }
                for s in domain.iter().chain(std::iter::once(&items[3])) {
                    if s.is_symbol("Nat") {
                        return Err(s.error("`Nat` is only allowed on constants and binders").into());
                    }
                }
                let args = domain.iter().map(|s| sig.read_sort(s)).collect::<Result<Vec<_>, _>>()?;
                let ret = sig.read_sort(&items[3])?;
                funs.push(sig.declare_fun(&items[1], FunSig { name: name.into(), args, ret })?);
            }
            ("hyp" | "goal", _) => {
                let (name, body) = match (head, items.len()) {
                    ("hyp", 3) => (Some(items[1].expect_name("a hypothesis name")?), &items[2]),
                    ("goal", 2) => (None, &items[1]),
                    _ => return Err(cmd.error(format!("malformed `{head}`")).into()),
                };
                let mut reader = TermReader::goal(&sig);
                let t = reader.read_sorted(body, Some(&Sort::Bool))?;
                nat_vars.extend(reader.nat_binders);
                int_names.extend(reader.int_binders);
                match name {
                    Some(n) => hypotheses.push((Arc::from(n), t)),
                    None if conclusion.is_some() => return Err(cmd.error("more than one `goal`").into()),
                    None => conclusion = Some(t),
                }
            }
            _ => return Err(cmd.error(format!("malformed or unknown declaration `{head}`")).into()),
        }
    }
    if let Some(n) = nat_vars.iter().find(|n| int_names.contains(*n)) {
        return Err(GoalError::UnsupportedConstruct(format!("`{n}` is declared both as Nat and as Int")));
    }
    let conclusion = conclusion
        .ok_or_else(|| ParseError::Syntax { line: 1, column: 1, message: "missing `(goal ...)`".into() })?;
    Ok(Goal { sorts, consts, funs, hypotheses, conclusion, nat_vars })
}

fn nonneg(name: &str) -> Term {
    Term::le(Term::int(0), Term::var(name, Sort::Int))
}

struct Preprocessor<'g> {
    nats: &'g BTreeSet<Arc<str>>,
    log: Vec<Rewrite>,
}

impl Preprocessor<'_> {
    fn mentions_nat(&self, t: &Term) -> bool {
        match t.node() {
            TermNode::Var(n, Sort::Int) => self.nats.contains(n),
            TermNode::App(_, args) => args.iter().any(|a| self.mentions_nat(a)),
            TermNode::ToReal(inner) => self.mentions_nat(inner),
            _ => false,
        }
    }

    // Nat-valued in the source goal: built from Nat variables and
    // non-negative numerals with + and *.
    fn nat_valued(&self, t: &Term) -> bool {
        match t.node() {
            TermNode::Var(n, Sort::Int) => self.nats.contains(n),
            TermNode::IntLit(v) => v >= &0.into(),
            TermNode::App(Op::Add | Op::Mul, args) => args.iter().all(|a| self.nat_valued(a)),
            _ => false,
        }
    }

    fn run(&mut self, t: &Term) -> Result<Term, GoalError> {
        match t.node() {
            TermNode::App(op, args) => {
                if matches!(op, Op::Sub | Op::Neg)
                    && args.iter().all(|a| self.nat_valued(a))
                    && args.iter().any(|a| self.mentions_nat(a))
                {
                    return Err(GoalError::UnsupportedConstruct(format!("Nat subtraction `{t}`")));
                }
                let new_args = args.iter().map(|a| self.run(a)).collect::<Result<Vec<_>, _>>()?;
                if *op == Op::Iff {
                    let out = Term::app(Op::Eq, new_args);
                    self.log.push(Rewrite { before: t.clone(), after: out.clone(), reason: "iff as Bool equality" });
                    return Ok(out);
                }
                Ok(Term::app(op.clone(), new_args))
            }
            TermNode::Forall(bound, body) => {
                let body = self.run(body)?;
                let guards: Vec<Term> = bound
                    .iter()
                    .filter(|(n, s)| *s == Sort::Int && self.nats.contains(n))
                    .map(|(n, _)| nonneg(n))
                    .collect();
                let Some(guard) = guards.into_iter().rev().reduce(|acc, g| Term::and(g, acc)) else {
                    return Ok(Term::forall(bound.clone(), body));
                };
                let out = Term::forall(bound.clone(), Term::implies(guard, body));
                self.log.push(Rewrite { before: t.clone(), after: out.clone(), reason: "Nat binder as guarded Int" });
                Ok(out)
            }
            TermNode::ToReal(inner) => Ok(Term::to_real(self.run(inner)?)),
            _ => Ok(t.clone()),
        }
    }
}

/// Like [`preprocess`], also returning every rewrite applied.
pub fn preprocess_logged(g: &Goal) -> Result<(Goal, Vec<Rewrite>), GoalError> {
    let mut pre = Preprocessor { nats: &g.nat_vars, log: Vec::new() };
    let mut hypotheses = Vec::with_capacity(g.hypotheses.len());
    for (name, sort) in &g.consts {
        if *sort == Sort::Int && g.nat_vars.contains(name) {
            let guard = nonneg(name);
            pre.log.push(Rewrite {
                before: Term::var(name, Sort::Int),
                after: guard.clone(),
                reason: "Nat constant as guarded Int",
            });
            hypotheses.push((Arc::from(format!("{name}_nonneg")), guard));
        }
    }
    for (name, h) in &g.hypotheses {
        hypotheses.push((name.clone(), pre.run(h)?));
    }
    let conclusion = pre.run(&g.conclusion)?;
    let out = Goal {
        sorts: g.sorts.clone(),
        consts: g.consts.clone(),
        funs: g.funs.clone(),
        hypotheses,
        conclusion,
        nat_vars: BTreeSet::new(),
    };
    Ok((out, pre.log))
}

/// Rewrites `iff` to `=` and `Nat` variables to `Int` variables guarded by
/// `0 <= n`. The result has no Nat variables, so preprocessing twice is the
/// same as preprocessing once.
pub fn preprocess(g: &Goal) -> Result<Goal, GoalError> {
    preprocess_logged(g).map(|(out, _)| out)
}

fn contains_iff(t: &Term) -> bool {
    match t.node() {
        TermNode::App(op, args) => *op == Op::Iff || args.iter().any(contains_iff),
        TermNode::Forall(_, body) => contains_iff(body),
        TermNode::ToReal(inner) => contains_iff(inner),
        _ => false,
    }
}

fn quantified_sorts(t: &Term, out: &mut HashSet<Sort>) {
    match t.node() {
        TermNode::App(_, args) => args.iter().for_each(|a| quantified_sorts(a, out)),
        TermNode::Forall(bound, body) => {
            out.extend(bound.iter().map(|(_, s)| s.clone()));
            quantified_sorts(body, out);
        }
        TermNode::ToReal(inner) => quantified_sorts(inner, out),
        _ => {}
    }
}

fn builtin_witness(s: &Sort) -> Option<Term> {
    match s {
        Sort::Bool => Some(Term::tt()),
        Sort::Int => Some(Term::int(0)),
        Sort::Real => Some(Term::rat(crate::rat::Rat::zero())),
        Sort::Uninterpreted(_) => None,
    }
}

// Closed terms for every sort reachable from constants through functions.
fn witnesses(g: &Goal) -> Vec<(Sort, Term)> {
    let mut found: Vec<(Sort, Term)> = Vec::new();
    let lookup = |found: &[(Sort, Term)], s: &Sort| {
        builtin_witness(s).or_else(|| found.iter().find(|(k, _)| k == s).map(|(_, t)| t.clone()))
    };
    for (name, sort) in &g.consts {
        if lookup(&found, sort).is_none() {
            found.push((sort.clone(), Term::var(name, sort.clone())));
        }
    }
    loop {
        let mut grew = false;
        for f in &g.funs {
            if lookup(&found, &f.ret).is_some() {
                continue;
            }
            let args: Option<Vec<Term>> = f.args.iter().map(|s| lookup(&found, s)).collect();
            if let Some(args) = args {
                found.push((f.ret.clone(), Term::apply(f, args)));
                grew = true;
            }
        }
        if !grew {
            return found;
        }
    }
}

/// Negation of the conclusion as asserted: Bool equalities become
/// `distinct`, everything else is wrapped in `not`.
pub fn negate_conclusion(t: &Term) -> Term {
    match t.as_eq() {
        Some((a, b)) if a.sort() == Sort::Bool => Term::distinct(a.clone(), b.clone()),
        _ => Term::not(t.clone()),
    }
}

/// Emits the script for a preprocessed goal. `rewrites` is left empty; use
/// [`pipeline`] to keep the preprocessing log.
pub fn translate(g: &Goal) -> Result<TranslationRecord, GoalError> {
    if !g.nat_vars.is_empty() {
        return Err(GoalError::UnsupportedConstruct("Nat variables remain; preprocess the goal first".into()));
    }
    let terms = || g.hypotheses.iter().map(|(_, h)| h).chain(std::iter::once(&g.conclusion));
    if terms().any(contains_iff) {
        return Err(GoalError::UnsupportedConstruct("`iff` remains; preprocess the goal first".into()));
    }
    let mut quantified = HashSet::new();
    terms().for_each(|t| quantified_sorts(t, &mut quantified));
    let found = witnesses(g);

    let mut obligations = Vec::with_capacity(g.sorts.len());
    for s in &g.sorts {
        let sort = Sort::Uninterpreted(s.name.clone());
        let discharge = if s.nonempty {
            Discharge::Declared
        } else if let Some((_, w)) = found.iter().find(|(k, _)| *k == sort) {
            Discharge::Witness(w.clone())
        } else if quantified.contains(&sort) {
            return Err(GoalError::EmptySortRisk(s.name.clone()));
        } else {
            Discharge::Vacuous
        };
        obligations.push(Obligation { sort: s.name.clone(), discharge });
    }

    let mut assertions: Vec<Term> = g.hypotheses.iter().map(|(_, h)| h.clone()).collect();
    assertions.push(negate_conclusion(&g.conclusion));
    let script = Script {
        logic: None,
        sort_decls: g.sorts.iter().map(|s| s.name.clone()).collect(),
        const_decls: g.consts.clone(),
        fun_decls: g.funs.clone(),
        assertions,
        has_check_sat: true,
    };
    Ok(TranslationRecord { script, obligations, rewrites: Vec::new() })
}

/// Preprocesses and translates, keeping the rewrite log.
pub fn pipeline(g: &Goal) -> Result<TranslationRecord, GoalError> {
    let (pre, rewrites) = preprocess_logged(g)?;
    let mut record = translate(&pre)?;
    record.rewrites = rewrites;
    Ok(record)
}
