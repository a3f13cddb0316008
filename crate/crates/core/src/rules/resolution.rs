//! Binary resolution over the n-ary clause view.

use super::{args, bool_arg, bool_sorted, expect_conclusion, premises, RuleError, RuleInput, Side};
use crate::clause::{flatten_or, ClauseView};
use crate::term::Term;

/// The resolvent of `c1` and `c2` on `pivot`. With `pol` the pivot occurs
/// positively in `c1` and negated in `c2`, otherwise the other way round.
/// Only the first occurrence on each side is removed.
pub fn resolve(c1: &ClauseView, c2: &ClauseView, pol: bool, pivot: &Term) -> Result<ClauseView, RuleError> {
    let negated = Term::not(pivot.clone());
    let (in_first, in_second) = if pol { (pivot, &negated) } else { (&negated, pivot) };
    let i = c1.literals.iter().position(|l| l == in_first).ok_or(RuleError::PivotNotFound { side: Side::First })?;
    let j = c2.literals.iter().position(|l| l == in_second).ok_or(RuleError::PivotNotFound { side: Side::Second })?;
    let mut out = Vec::with_capacity(c1.len() + c2.len() - 2);
    out.extend(c1.literals.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, l)| l.clone()));
    out.extend(c2.literals.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, l)| l.clone()));
    Ok(ClauseView::new(out))
}

pub fn check_resolution(
    c1: &ClauseView,
    c2: &ClauseView,
    pol: bool,
    pivot: &Term,
    claimed: &ClauseView,
) -> Result<(), RuleError> {
    let expected = resolve(c1, c2, pol, pivot)?;
    if expected.literals == claimed.literals {
        Ok(())
    } else {
        Err(RuleError::ConclusionMismatch { expected: expected.to_term(), found: claimed.to_term() })
    }
}

// A premise that is itself the pivot literal is a unit clause, even when
// the literal is a disjunction.
fn view_for(premise: &Term, literal: &Term) -> ClauseView {
    let view = flatten_or(premise);
    if premise == literal && !view.literals.contains(literal) {
        ClauseView::new(vec![premise.clone()])
    } else {
        view
    }
}

pub(super) fn rule(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let ps = premises(input, 2)?;
    let args = args(input, 2)?;
    let pol = bool_arg(args, 0)?;
    let pivot = &args[1];
    bool_sorted(pivot, 1)?;
    let negated = Term::not(pivot.clone());
    let (in_first, in_second) = if pol { (pivot, &negated) } else { (&negated, pivot) };
    let c1 = view_for(&ps[0], in_first);
    let c2 = view_for(&ps[1], in_second);
    let expected = resolve(&c1, &c2, pol, pivot)?;
    expect_conclusion(expected.to_term(), input.conclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Sort;

    fn atom(n: &str) -> Term {
        Term::var(n, Sort::Bool)
    }

    fn clause(lits: &[Term]) -> ClauseView {
        ClauseView::new(lits.to_vec())
    }

    #[test]
    fn textbook_instance() {
        let (p, q, r) = (atom("P"), atom("Q"), atom("R"));
        let c1 = clause(&[p.clone(), q.clone()]);
        let c2 = clause(&[Term::not(p.clone()), r.clone()]);
        assert_eq!(check_resolution(&c1, &c2, true, &p, &clause(&[q.clone(), r.clone()])), Ok(()));
        assert!(matches!(
            check_resolution(&c1, &c2, true, &p, &clause(&[r, q])),
            Err(RuleError::ConclusionMismatch { .. })
        ));
    }

    #[test]
    fn empty_resolvent() {
        let p = atom("P");
        let c1 = clause(&[p.clone()]);
        let c2 = clause(&[Term::not(p.clone())]);
        assert_eq!(check_resolution(&c1, &c2, true, &p, &clause(&[])), Ok(()));
        assert_eq!(resolve(&c1, &c2, true, &p).unwrap().to_term(), Term::ff());
    }

    #[test]
    fn only_first_occurrence_is_erased() {
        let (p, q) = (atom("P"), atom("Q"));
        let c1 = clause(&[p.clone(), q.clone(), p.clone()]);
        let c2 = clause(&[Term::not(p.clone())]);
        assert_eq!(check_resolution(&c1, &c2, true, &p, &clause(&[q, p.clone()])), Ok(()));
    }

    #[test]
    fn negative_polarity_and_missing_pivot() {
        let (p, q) = (atom("P"), atom("Q"));
        let c1 = clause(&[Term::not(p.clone()), q.clone()]);
        let c2 = clause(&[p.clone()]);
        assert_eq!(check_resolution(&c1, &c2, false, &p, &clause(&[q.clone()])), Ok(()));
        assert_eq!(
            check_resolution(&c1, &c2, true, &p, &clause(&[q.clone()])),
            Err(RuleError::PivotNotFound { side: Side::First })
        );
        assert_eq!(
            check_resolution(&c1, &clause(&[q.clone()]), false, &p, &clause(&[q])),
            Err(RuleError::PivotNotFound { side: Side::Second })
        );
    }

    #[test]
    fn disjunctive_unit_premise() {
        let (p, q, r) = (atom("P"), atom("Q"), atom("R"));
        let pq = Term::or(p, q);
        let premises = [pq.clone(), Term::or(Term::not(pq.clone()), r.clone())];
        let args = [Term::tt(), pq];
        let input = RuleInput { premises: &premises, args: &args, conclusion: &r };
        assert_eq!(rule(&input), Ok(()));
    }
}
