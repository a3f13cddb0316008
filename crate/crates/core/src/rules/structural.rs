//! Propositional and equational rules checked by rebuilding the expected
//! conclusion from the premises.

use std::sync::Arc;

use super::{
    args, bad_arg, bad_premise, count, expect_conclusion, index_arg, premises, CheckFn, RuleError, RuleInput,
};
use crate::clause::{flatten_and, flatten_or, ClauseView};
use crate::term::{Op, Sort, Term, TermNode};

pub const STRUCTURAL_RULES: &[(&str, CheckFn)] = &[
    ("assume_elim", assume_elim),
    ("refl", refl),
    ("symm", symm),
    ("trans", trans),
    ("cong", cong),
    ("eq_resolve", eq_resolve),
    ("not_not_elim", not_not_elim),
    ("contra", contra),
    ("and_elim", and_elim),
    ("or_intro", or_intro),
    ("equiv_elim1", equiv_elim1),
    ("equiv_elim2", equiv_elim2),
    ("not_equiv_elim1", not_equiv_elim1),
    ("not_equiv_elim2", not_equiv_elim2),
    ("distinct_elim", distinct_elim),
    ("factoring", factoring),
    ("instantiate", instantiate),
    ("forall_inst", forall_inst),
    ("eq_subst", eq_subst),
];

pub fn check_structural(rule: &str, premises: &[Term], args: &[Term], claimed: &Term) -> Result<(), RuleError> {
    let (_, check) = STRUCTURAL_RULES
        .iter()
        .find(|(name, _)| *name == rule)
        .ok_or_else(|| RuleError::UnknownRule(rule.to_string()))?;
    check(&RuleInput { premises, args, conclusion: claimed })
}

fn equality(t: &Term, index: usize) -> Result<(&Term, &Term), RuleError> {
    t.as_eq().ok_or_else(|| bad_premise(index, format!("`{t}` is not a binary equality")))
}

fn bool_equality(t: &Term, index: usize) -> Result<(&Term, &Term), RuleError> {
    let (l, r) = equality(t, index)?;
    if l.sort() != Sort::Bool {
        return Err(bad_premise(index, format!("`{t}` is not an equivalence")));
    }
    Ok((l, r))
}

fn assume_elim(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    args(input, 0)?;
    expect_conclusion(p[0].clone(), input.conclusion)
}

fn refl(input: &RuleInput<'_>) -> Result<(), RuleError> {
    premises(input, 0)?;
    let a = args(input, 1)?;
    expect_conclusion(Term::eq(a[0].clone(), a[0].clone()), input.conclusion)
}

/// Also flips negated equalities.
fn symm(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    args(input, 0)?;
    let expected = match p[0].as_not() {
        Some(inner) => {
            let (l, r) = equality(inner, 0)?;
            Term::not(Term::eq(r.clone(), l.clone()))
        }
        None => {
            let (l, r) = equality(&p[0], 0)?;
            Term::eq(r.clone(), l.clone())
        }
    };
    expect_conclusion(expected, input.conclusion)
}

fn trans(input: &RuleInput<'_>) -> Result<(), RuleError> {
    args(input, 0)?;
    let ps = input.premises;
    let (first, _) = equality(ps.first().ok_or(RuleError::EmptyPremises)?, 0)?;
    let mut end = first;
    for (i, p) in ps.iter().enumerate() {
        let (l, r) = equality(p, i)?;
        if i > 0 && l != end {
            return Err(bad_premise(i, format!("`{l}` does not continue the chain ending in `{end}`")));
        }
        end = r;
    }
    expect_conclusion(Term::eq(first.clone(), end.clone()), input.conclusion)
}

/// The function symbol comes from the claim; there must be one premise per
/// argument position.
fn cong(input: &RuleInput<'_>) -> Result<(), RuleError> {
    args(input, 0)?;
    let claimed = input.conclusion;
    let (l, _) = claimed.as_eq().ok_or_else(|| RuleError::NotAnEquality(claimed.clone()))?;
    let (op, l_args) = l.as_app().ok_or_else(|| bad_arg(0, format!("`{l}` is not an application")))?;
    count("premise(s)", l_args.len(), input.premises.len())?;
    let mut rights = Vec::with_capacity(l_args.len());
    for (i, (p, a)) in input.premises.iter().zip(l_args).enumerate() {
        let (pl, pr) = equality(p, i)?;
        if pl != a {
            return Err(bad_premise(i, format!("left side `{pl}` is not argument `{a}`")));
        }
        rights.push(pr.clone());
    }
    expect_conclusion(Term::eq(l.clone(), Term::app(op.clone(), rights)), claimed)
}

fn eq_resolve(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 2)?;
    args(input, 0)?;
    let (phi, psi) = bool_equality(&p[1], 1)?;
    if phi != &p[0] {
        return Err(bad_premise(0, format!("expected `{phi}`")));
    }
    expect_conclusion(psi.clone(), input.conclusion)
}

fn not_not_elim(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    args(input, 0)?;
    let inner = p[0].as_not().and_then(Term::as_not).ok_or_else(|| bad_premise(0, "expected a double negation"))?;
    expect_conclusion(inner.clone(), input.conclusion)
}

fn contra(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 2)?;
    args(input, 0)?;
    if p[1].as_not() != Some(&p[0]) {
        return Err(bad_premise(1, format!("expected `{}`", Term::not(p[0].clone()))));
    }
    expect_conclusion(Term::ff(), input.conclusion)
}

fn and_elim(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    let a = args(input, 1)?;
    let index = index_arg(a, 0)?;
    let conjuncts = flatten_and(&p[0]);
    let c = conjuncts.get(index).ok_or(RuleError::IndexOutOfRange { index, len: conjuncts.len() })?;
    expect_conclusion(c.clone(), input.conclusion)
}

// Subterms along the right spine of an `or` chain, starting at `t` itself.
fn or_spine(t: &Term) -> Vec<&Term> {
    let mut out = vec![t];
    let mut cur = t;
    while let Some(a) = cur.match_app(&Op::Or, 2) {
        out.push(&a[0]);
        cur = &a[1];
        out.push(cur);
    }
    out
}

/// Weakening: the premise must be a literal of the claimed clause, or a
/// suffix of its `or` spine. An index argument pins the position.
fn or_intro(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    let claimed = input.conclusion;
    let ok = match input.args {
        [] => or_spine(claimed).contains(&&p[0]),
        [_] => {
            let index = index_arg(input.args, 0)?;
            let view = flatten_or(claimed);
            if index >= view.len() {
                return Err(RuleError::IndexOutOfRange { index, len: view.len() });
            }
            let mut suffix = claimed;
            for _ in 0..index {
                suffix = &suffix.match_app(&Op::Or, 2).expect("index is within the spine")[1];
            }
            view.literals[index] == p[0] || suffix == &p[0]
        }
        more => return Err(RuleError::ArityMismatch { what: "argument(s)", expected: 1, found: more.len() }),
    };
    if ok {
        Ok(())
    } else {
        Err(RuleError::ConclusionMismatch { expected: Term::or(p[0].clone(), claimed.clone()), found: claimed.clone() })
    }
}

fn equiv_elim(input: &RuleInput<'_>, first: bool) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    args(input, 0)?;
    let (phi, psi) = bool_equality(&p[0], 0)?;
    let expected = if first {
        Term::or(Term::not(phi.clone()), psi.clone())
    } else {
        Term::or(phi.clone(), Term::not(psi.clone()))
    };
    expect_conclusion(expected, input.conclusion)
}

fn equiv_elim1(input: &RuleInput<'_>) -> Result<(), RuleError> {
    equiv_elim(input, true)
}

fn equiv_elim2(input: &RuleInput<'_>) -> Result<(), RuleError> {
    equiv_elim(input, false)
}

fn not_equiv_elim(input: &RuleInput<'_>, first: bool) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    args(input, 0)?;
    let inner = p[0].as_not().ok_or_else(|| bad_premise(0, "expected a negated equivalence"))?;
    let (phi, psi) = bool_equality(inner, 0)?;
    let expected = if first {
        Term::or(phi.clone(), psi.clone())
    } else {
        Term::or(Term::not(phi.clone()), Term::not(psi.clone()))
    };
    expect_conclusion(expected, input.conclusion)
}

fn not_equiv_elim1(input: &RuleInput<'_>) -> Result<(), RuleError> {
    not_equiv_elim(input, true)
}

fn not_equiv_elim2(input: &RuleInput<'_>) -> Result<(), RuleError> {
    not_equiv_elim(input, false)
}

/// `(= (distinct a b) (not (= a b)))`.
fn distinct_elim(input: &RuleInput<'_>) -> Result<(), RuleError> {
    premises(input, 0)?;
    args(input, 0)?;
    let claimed = input.conclusion;
    let (l, _) = claimed.as_eq().ok_or_else(|| RuleError::NotAnEquality(claimed.clone()))?;
    let d = l.match_app(&Op::Distinct, 2).ok_or_else(|| bad_arg(0, format!("`{l}` is not a binary distinct")))?;
    expect_conclusion(Term::eq(l.clone(), Term::not(Term::eq(d[0].clone(), d[1].clone()))), claimed)
}

/// Drops repeated literals, keeping first occurrences.
fn factoring(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    args(input, 0)?;
    let mut kept: Vec<Term> = Vec::new();
    for l in flatten_or(&p[0]).literals {
        if !kept.contains(&l) {
            kept.push(l);
        }
    }
    expect_conclusion(ClauseView::new(kept).to_term(), input.conclusion)
}

fn instance(quantified: &Term, terms: &[Term]) -> Result<Term, RuleError> {
    let TermNode::Forall(bound, body) = quantified.node() else {
        return Err(bad_premise(0, format!("`{quantified}` is not a universal formula")));
    };
    count("argument(s)", bound.len(), terms.len())?;
    let mut map: Vec<(Arc<str>, Sort, Term)> = Vec::with_capacity(bound.len());
    for (i, ((name, sort), t)) in bound.iter().zip(terms).enumerate() {
        if &t.sort() != sort {
            return Err(bad_arg(i, format!("`{t}` does not have sort {sort}")));
        }
        map.push((name.clone(), sort.clone(), t.clone()));
    }
    body.substitute(&map).map_err(|e| bad_arg(0, e.to_string()))
}

/// From `(forall (xs) phi)` and terms `ts` conclude `phi[ts/xs]`.
fn instantiate(input: &RuleInput<'_>) -> Result<(), RuleError> {
    let p = premises(input, 1)?;
    expect_conclusion(instance(&p[0], input.args)?, input.conclusion)
}

/// The tautology `(or (not Q) Q[ts])` for a universal `Q`.
fn forall_inst(input: &RuleInput<'_>) -> Result<(), RuleError> {
    premises(input, 0)?;
    let claimed = input.conclusion;
    let shape = || bad_arg(0, "conclusion must have the form `(or (not (forall ...)) ...)`");
    let parts = claimed.match_app(&Op::Or, 2).ok_or_else(shape)?;
    let q = parts[0].as_not().ok_or_else(shape)?;
    let expected = Term::or(parts[0].clone(), instance(q, input.args)?);
    expect_conclusion(expected, claimed)
}

// Whether `b` is `a` with some occurrences of `s` and `t` exchanged for one
// another. Binders that would capture a variable of `s` or `t` block
// replacement below them.
fn replaces(a: &Term, b: &Term, s: &Term, t: &Term) -> bool {
    if a == b || (a == s && b == t) || (a == t && b == s) {
        return true;
    }
    match (a.node(), b.node()) {
        (TermNode::App(o1, x1), TermNode::App(o2, x2)) => {
            o1 == o2 && x1.len() == x2.len() && x1.iter().zip(x2).all(|(x, y)| replaces(x, y, s, t))
        }
        (TermNode::ToReal(x), TermNode::ToReal(y)) => replaces(x, y, s, t),
        (TermNode::Forall(b1, x), TermNode::Forall(b2, y)) => {
            b1 == b2 && !b1.iter().any(|(n, _)| s.has_free_var(n) || t.has_free_var(n)) && replaces(x, y, s, t)
        }
        _ => false,
    }
}

/// The tautology `(or (not (= s t)) (or (not phi) psi))` where `psi` is
/// `phi` with some occurrences of `s` and `t` swapped.
fn eq_subst(input: &RuleInput<'_>) -> Result<(), RuleError> {
    premises(input, 0)?;
    args(input, 0)?;
    let claimed = input.conclusion;
    let shape = || bad_arg(0, "conclusion must have the form `(or (not (= s t)) (or (not phi) psi))`");
    let outer = claimed.match_app(&Op::Or, 2).ok_or_else(shape)?;
    let (s, t) = outer[0].as_not().and_then(Term::as_eq).ok_or_else(shape)?;
    let inner = outer[1].match_app(&Op::Or, 2).ok_or_else(shape)?;
    let phi = inner[0].as_not().ok_or_else(shape)?;
    let psi = &inner[1];
    if replaces(phi, psi, s, t) {
        Ok(())
    } else {
        Err(RuleError::ConclusionMismatch { expected: Term::or(inner[0].clone(), phi.clone()), found: claimed.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::FunSig;

    fn b(n: &str) -> Term {
        Term::var(n, Sort::Bool)
    }

    fn u(n: &str) -> Term {
        Term::var(n, Sort::uninterpreted("U"))
    }

    fn check(rule: &str, premises: &[Term], args: &[Term], claimed: Term) -> Result<(), RuleError> {
        check_structural(rule, premises, args, &claimed)
    }

    #[test]
    fn equality_rules() {
        let (x, y, z) = (u("x"), u("y"), u("z"));
        let xy = Term::eq(x.clone(), y.clone());
        let yz = Term::eq(y.clone(), z.clone());
        assert_eq!(check("refl", &[], &[x.clone()], Term::eq(x.clone(), x.clone())), Ok(()));
        assert_eq!(check("symm", &[xy.clone()], &[], Term::eq(y.clone(), x.clone())), Ok(()));
        assert_eq!(
            check("symm", &[Term::not(xy.clone())], &[], Term::not(Term::eq(y.clone(), x.clone()))),
            Ok(())
        );
        assert_eq!(check("trans", &[xy.clone(), yz.clone()], &[], Term::eq(x.clone(), z.clone())), Ok(()));
        assert!(check("trans", &[yz.clone(), xy.clone()], &[], Term::eq(y.clone(), y.clone())).is_err());
        assert!(check("trans", &[xy.clone(), yz], &[], Term::eq(z.clone(), x.clone())).is_err());
    }

    #[test]
    fn congruence() {
        let ut = Sort::uninterpreted("U");
        let f = Arc::new(FunSig { name: "f".into(), args: vec![ut.clone(), ut.clone()], ret: ut });
        let (x, y, z) = (u("x"), u("y"), u("z"));
        let xy = Term::eq(x.clone(), y.clone());
        let zz = Term::eq(z.clone(), z.clone());
        let claim = Term::eq(Term::apply(&f, vec![x.clone(), z.clone()]), Term::apply(&f, vec![y.clone(), z.clone()]));
        assert_eq!(check("cong", &[xy.clone(), zz], &[], claim.clone()), Ok(()));
        assert!(matches!(check("cong", &[xy], &[], claim), Err(RuleError::ArityMismatch { .. })));
    }

    #[test]
    fn propositional_rules() {
        let (p, q) = (b("p"), b("q"));
        let pq = Term::eq(p.clone(), q.clone());
        assert_eq!(check("eq_resolve", &[p.clone(), pq.clone()], &[], q.clone()), Ok(()));
        assert_eq!(check("not_not_elim", &[Term::not(Term::not(p.clone()))], &[], p.clone()), Ok(()));
        assert_eq!(check("contra", &[p.clone(), Term::not(p.clone())], &[], Term::ff()), Ok(()));
        assert!(check("contra", &[p.clone(), Term::not(q.clone())], &[], Term::ff()).is_err());
        assert_eq!(
            check("equiv_elim1", &[pq.clone()], &[], Term::or(Term::not(p.clone()), q.clone())),
            Ok(())
        );
        assert_eq!(
            check("equiv_elim2", &[pq.clone()], &[], Term::or(p.clone(), Term::not(q.clone()))),
            Ok(())
        );
        assert_eq!(
            check("not_equiv_elim2", &[Term::not(pq)], &[], Term::or(Term::not(p.clone()), Term::not(q.clone()))),
            Ok(())
        );
        assert_eq!(check("assume_elim", &[p.clone()], &[], p.clone()), Ok(()));
    }

    #[test]
    fn and_or_rules() {
        let (p, q, r) = (b("p"), b("q"), b("r"));
        let conj = Term::and(p.clone(), Term::and(q.clone(), r.clone()));
        assert_eq!(check("and_elim", &[conj.clone()], &[Term::int(2)], r.clone()), Ok(()));
        assert_eq!(
            check("and_elim", &[conj], &[Term::int(3)], r.clone()),
            Err(RuleError::IndexOutOfRange { index: 3, len: 3 })
        );
        let clause = Term::or(q.clone(), Term::or(p.clone(), r.clone()));
        assert_eq!(check("or_intro", &[p.clone()], &[], clause.clone()), Ok(()));
        assert_eq!(check("or_intro", &[p.clone()], &[Term::int(1)], clause.clone()), Ok(()));
        assert!(check("or_intro", &[p.clone()], &[Term::int(0)], clause.clone()).is_err());
        assert_eq!(check("or_intro", &[Term::or(p.clone(), r.clone())], &[], clause), Ok(()));
        let dup = Term::or(p.clone(), Term::or(q.clone(), p.clone()));
        assert_eq!(check("factoring", &[dup], &[], Term::or(p, q)), Ok(()));
    }

    #[test]
    fn quantifier_rules() {
        let ut = Sort::uninterpreted("U");
        let f = Arc::new(FunSig { name: "f".into(), args: vec![ut.clone()], ret: ut.clone() });
        let a = u("a");
        let q = Term::forall(vec![("a".into(), ut)], Term::eq(Term::apply(&f, vec![a.clone()]), a));
        let c = u("c");
        let inst = Term::eq(Term::apply(&f, vec![c.clone()]), c.clone());
        assert_eq!(check("instantiate", &[q.clone()], &[c.clone()], inst.clone()), Ok(()));
        assert!(check("instantiate", &[q.clone()], &[b("p")], inst.clone()).is_err());
        let taut = Term::or(Term::not(q.clone()), inst);
        assert_eq!(check("forall_inst", &[], &[c], taut), Ok(()));
    }

    #[test]
    fn substitution_tautology() {
        let ut = Sort::uninterpreted("U");
        let f = Arc::new(FunSig { name: "f".into(), args: vec![ut.clone(), ut.clone()], ret: ut.clone() });
        let (s, t, a) = (u("s"), u("t"), u("a"));
        let phi = Term::forall(
            vec![("a".into(), ut.clone())],
            Term::eq(Term::apply(&f, vec![s.clone(), a.clone()]), a.clone()),
        );
        let psi = Term::forall(
            vec![("a".into(), ut.clone())],
            Term::eq(Term::apply(&f, vec![t.clone(), a.clone()]), a.clone()),
        );
        let st = Term::eq(s.clone(), t.clone());
        let claim = |x: &Term, y: &Term| Term::or(Term::not(st.clone()), Term::or(Term::not(x.clone()), y.clone()));
        assert_eq!(check("eq_subst", &[], &[], claim(&phi, &psi)), Ok(()));
        assert_eq!(check("eq_subst", &[], &[], claim(&psi, &phi)), Ok(()));
        let other = Term::forall(vec![("a".into(), ut.clone())], Term::eq(Term::apply(&f, vec![a.clone(), a.clone()]), a.clone()));
        assert!(check("eq_subst", &[], &[], claim(&phi, &other)).is_err());
        // s = a cannot be used under a binder for a
        let sa = Term::eq(s.clone(), a.clone());
        let bound = Term::forall(vec![("a".into(), ut)], Term::eq(s.clone(), t.clone()));
        let swapped = match bound.node() {
            TermNode::Forall(bs, _) => Term::forall(bs.clone(), Term::eq(a.clone(), t.clone())),
            _ => unreachable!(),
        };
        let bad = Term::or(Term::not(sa), Term::or(Term::not(bound), swapped));
        assert!(check("eq_subst", &[], &[], bad).is_err());
    }

    #[test]
    fn distinct_as_negated_equality() {
        let (x, y) = (u("x"), u("y"));
        let claim = Term::eq(Term::distinct(x.clone(), y.clone()), Term::not(Term::eq(x.clone(), y.clone())));
        assert_eq!(check("distinct_elim", &[], &[], claim), Ok(()));
        let wrong = Term::eq(Term::distinct(x.clone(), y.clone()), Term::not(Term::eq(y, x)));
        assert!(check("distinct_elim", &[], &[], wrong).is_err());
    }
}
