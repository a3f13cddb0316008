//! The n-ary view of right-associated `or` and `and` chains.

use crate::term::{Op, Term};

/// A disjunction read as a flat literal sequence along the right spine of
/// binary `or`. The empty clause is `false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClauseView {
    pub literals: Vec<Term>,
}

impl ClauseView {
    pub fn new(literals: Vec<Term>) -> ClauseView {
        ClauseView { literals }
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Rebuilds the right-associated `or` chain.
    pub fn to_term(&self) -> Term {
        rebuild(&self.literals, Op::Or, Term::ff)
    }
}

fn spine(t: &Term, op: &Op) -> Vec<Term> {
    let mut out = Vec::new();
    let mut cur = t;
    while let Some(args) = cur.match_app(op, 2) {
        out.push(args[0].clone());
        cur = &args[1];
    }
    out.push(cur.clone());
    out
}

fn rebuild(lits: &[Term], op: Op, empty: fn() -> Term) -> Term {
    match lits.split_last() {
        None => empty(),
        Some((last, init)) => init
            .iter()
            .rev()
            .fold(last.clone(), |acc, l| Term::app(op.clone(), vec![l.clone(), acc])),
    }
}

pub fn flatten_or(t: &Term) -> ClauseView {
    if t.is_false() {
        return ClauseView::default();
    }
    ClauseView::new(spine(t, &Op::Or))
}

/// Conjuncts along the right spine of binary `and`; `true` is the empty
/// conjunction.
pub fn flatten_and(t: &Term) -> Vec<Term> {
    if t.as_bool() == Some(true) {
        return Vec::new();
    }
    spine(t, &Op::And)
}

pub fn rebuild_and(conjuncts: &[Term]) -> Term {
    rebuild(conjuncts, Op::And, Term::tt)
}
