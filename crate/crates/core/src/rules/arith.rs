//! Arithmetic rules: summing bounds, tangent planes, and the two
//! normalization-based equality rules.

use super::{args, bad_arg, bad_premise, bool_arg, expect_conclusion, premises, RuleError, RuleInput};
use crate::poly::{certify_poly_eq, ArithTy, AtomInterner, PolyEq};
use crate::rat::Rat;
use crate::term::{Op, Sort, Term, TermNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Eq,
}

/// One premise of a bound sum: `lhs rel rhs` over a single carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelChain {
    pub rel: Rel,
    pub lhs: Term,
    pub rhs: Term,
    pub carrier: ArithTy,
}

impl RelChain {
    pub fn new(rel: Rel, lhs: Term, rhs: Term) -> Result<RelChain, RuleError> {
        let carrier = match (lhs.sort(), rhs.sort()) {
            (Sort::Int, Sort::Int) => ArithTy::Int,
            (Sort::Real, Sort::Real) => ArithTy::Real,
            (l, r) => return Err(bad_premise(0, format!("sides have sorts {l} and {r}"))),
        };
        Ok(RelChain { rel, lhs, rhs, carrier })
    }

    pub fn from_term(t: &Term) -> Result<RelChain, RuleError> {
        let (rel, args) = match t.as_app() {
            Some((Op::Lt, a)) if a.len() == 2 => (Rel::Lt, a),
            Some((Op::Le, a)) if a.len() == 2 => (Rel::Le, a),
            Some((Op::Eq, a)) if a.len() == 2 => (Rel::Eq, a),
            _ => return Err(bad_premise(0, format!("`{t}` is not a <, <= or = relation"))),
        };
        RelChain::new(rel, args[0].clone(), args[1].clone())
    }

    pub fn to_term(&self) -> Term {
        let (l, r) = (self.lhs.clone(), self.rhs.clone());
        match self.rel {
            Rel::Lt => Term::lt(l, r),
            Rel::Le => Term::le(l, r),
            Rel::Eq => Term::eq(l, r),
        }
    }
}

/// The bound obtained by adding `premises` side by side. Sums associate to
/// the left in premise order; when any premise is over Real every Int side
/// is wrapped whole in `to_real`.
pub fn sum_ub_conclusion(premises: &[RelChain]) -> Result<Term, RuleError> {
    let first = premises.first().ok_or(RuleError::EmptyPremises)?;
    let lift = premises.iter().any(|p| p.carrier == ArithTy::Real);
    let side = |p: &RelChain, t: &Term| {
        if lift && p.carrier == ArithTy::Int {
            Term::to_real(t.clone())
        } else {
            t.clone()
        }
    };
    let mut lhs = side(first, &first.lhs);
    let mut rhs = side(first, &first.rhs);
    for p in &premises[1..] {
        lhs = Term::add(lhs, side(p, &p.lhs));
        rhs = Term::add(rhs, side(p, &p.rhs));
    }
    Ok(if premises.iter().any(|p| p.rel == Rel::Lt) { Term::lt(lhs, rhs) } else { Term::le(lhs, rhs) })
}

pub fn check_sum_ub(premises: &[RelChain], claimed: &Term) -> Result<(), RuleError> {
    expect_conclusion(sum_ub_conclusion(premises)?, claimed)
}

/// `(= (<= (* x y) tplane) ...)` for `sigma`, `(= (<= tplane (* x y)) ...)`
/// otherwise, where `tplane = b*x + a*y - a*b`.
pub fn mult_tangent_conclusion(x: &Term, y: &Term, a: &Rat, b: &Rat, sigma: bool) -> Term {
    let (ta, tb) = (Term::rat(a.clone()), Term::rat(b.clone()));
    let xy = Term::mul(x.clone(), y.clone());
    let tplane = Term::sub(
        Term::add(Term::mul(tb.clone(), x.clone()), Term::mul(ta.clone(), y.clone())),
        Term::mul(ta.clone(), tb.clone()),
    );
    let x_le_a = Term::le(x.clone(), ta.clone());
    let x_ge_a = Term::ge(x.clone(), ta);
    let y_le_b = Term::le(y.clone(), tb.clone());
    let y_ge_b = Term::ge(y.clone(), tb);
    if sigma {
        Term::eq(Term::le(xy, tplane), Term::or(Term::and(x_le_a, y_ge_b), Term::and(x_ge_a, y_le_b)))
    } else {
        Term::eq(Term::ge(xy, tplane), Term::or(Term::and(x_le_a, y_le_b), Term::and(x_ge_a, y_ge_b)))
    }
}

/// Compares after [`ac_normalize`], so operand order inside sums and
/// products of the claim does not matter.
pub fn check_mult_tangent(x: &Term, y: &Term, a: &Rat, b: &Rat, sigma: bool, claimed: &Term) -> Result<(), RuleError> {
    for (i, t) in [x, y].into_iter().enumerate() {
        if t.sort() != Sort::Real {
            return Err(bad_arg(i, format!("`{t}` is not Real")));
        }
    }
    let expected = mult_tangent_conclusion(x, y, a, b, sigma);
    if ac_normalize(&expected) == ac_normalize(claimed) {
        Ok(())
    } else {
        Err(RuleError::ConclusionMismatch { expected, found: claimed.clone() })
    }
}

pub fn check_poly_norm(claimed: &Term) -> Result<(), RuleError> {
    let (l, r) = claimed.as_eq().ok_or_else(|| RuleError::NotAnEquality(claimed.clone()))?;
    let mut atoms = AtomInterner::new();
    let e1 = atoms.convert(l)?;
    let e2 = atoms.convert(r)?;
    match certify_poly_eq(&e1, &e2) {
        PolyEq::Equal => Ok(()),
        PolyEq::NotEqual(diff) => Err(RuleError::NormalFormMismatch(diff)),
    }
}

/// Flattens nested `+` and `*` and sorts their operands by the structural
/// term order, everywhere in `t`.
pub fn ac_normalize(t: &Term) -> Term {
    match t.node() {
        TermNode::App(op @ (Op::Add | Op::Mul), args) => {
            let mut flat = Vec::with_capacity(args.len());
            for a in args {
                let a = ac_normalize(a);
                match a.as_app() {
                    Some((inner, xs)) if inner == op => flat.extend(xs.iter().cloned()),
                    _ => flat.push(a),
                }
            }
            flat.sort();
            Term::app(op.clone(), flat)
        }
        TermNode::App(op, args) => Term::app(op.clone(), args.iter().map(ac_normalize).collect()),
        TermNode::Forall(bound, body) => Term::forall(bound.clone(), ac_normalize(body)),
        TermNode::ToReal(inner) => Term::to_real(ac_normalize(inner)),
        _ => t.clone(),
    }
}

pub fn check_ac_norm(claimed: &Term) -> Result<(), RuleError> {
    let (l, r) = claimed.as_eq().ok_or_else(|| RuleError::NotAnEquality(claimed.clone()))?;
    let (nl, nr) = (ac_normalize(l), ac_normalize(r));
    if nl == nr {
        Ok(())
    } else {
        Err(RuleError::ConclusionMismatch { expected: nl, found: nr })
    }
}

pub(super) fn sum_ub_rule(input: &RuleInput<'_>) -> Result<(), RuleError> {
    args(input, 0)?;
    let chains = input
        .premises
        .iter()
        .enumerate()
        .map(|(i, p)| {
            RelChain::from_term(p).map_err(|e| match e {
                RuleError::PremiseShape { reason, .. } => bad_premise(i, reason),
                other => other,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_sum_ub(&chains, input.conclusion)
}

fn const_arg(args: &[Term], index: usize) -> Result<Rat, RuleError> {
    args[index].const_value().ok_or_else(|| bad_arg(index, "expected a numeric constant"))
}

pub(super) fn mult_tangent_rule(input: &RuleInput<'_>) -> Result<(), RuleError> {
    premises(input, 0)?;
    let a = args(input, 5)?;
    check_mult_tangent(&a[0], &a[1], &const_arg(a, 2)?, &const_arg(a, 3)?, bool_arg(a, 4)?, input.conclusion)
}

pub(super) fn poly_norm_rule(input: &RuleInput<'_>) -> Result<(), RuleError> {
    premises(input, 0)?;
    check_poly_norm(input.conclusion)
}

pub(super) fn ac_norm_rule(input: &RuleInput<'_>) -> Result<(), RuleError> {
    premises(input, 0)?;
    check_ac_norm(input.conclusion)
}
