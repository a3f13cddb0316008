//! Random instances of the arithmetic rules with point samplers.

use std::sync::Arc;

use rand::Rng;

use smtrecon_core::rules::{Rel, RelChain};
use smtrecon_core::{ArithTy, Rat, Sort, Term};

use crate::arith::{random_nonzero_rat, random_rat};
use crate::eval::{Interp, Value};

#[derive(Debug, Clone)]
struct Side {
    // The variable this side is built from.
    var: Arc<str>,
    term: Term,
}

/// Premises `l_i rel_i r_i` where one side of each premise is a bare
/// variable and the other a term over a second variable, so points that
/// satisfy every premise can be constructed directly.
#[derive(Debug, Clone)]
pub struct SumUbInstance {
    pub premises: Vec<RelChain>,
    sides: Vec<(Side, Side, bool)>,
}

fn sort_of(c: ArithTy) -> Sort {
    match c {
        ArithTy::Int => Sort::Int,
        ArithTy::Real => Sort::Real,
    }
}

fn number<R: Rng + ?Sized>(rng: &mut R, c: ArithTy) -> Rat {
    match c {
        ArithTy::Int => Rat::from(rng.random_range(-20i64..=20)),
        ArithTy::Real => random_rat(rng, 20, 7),
    }
}

fn literal<R: Rng + ?Sized>(rng: &mut R, c: ArithTy) -> Term {
    match c {
        ArithTy::Int => Term::int(rng.random_range(-4i64..=4)),
        ArithTy::Real => Term::rat(random_nonzero_rat(rng, 5, 3)),
    }
}

fn compound<R: Rng + ?Sized>(rng: &mut R, v: Term, c: ArithTy) -> Term {
    match rng.random_range(0..4) {
        0 => v,
        1 => Term::add(v, literal(rng, c)),
        2 => Term::mul(literal(rng, c), v),
        _ => Term::sub(Term::mul(v.clone(), v), literal(rng, c)),
    }
}

impl SumUbInstance {
    /// `n` premises over fresh variables. With `all_eq` every relation is
    /// `=`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, all_eq: bool) -> SumUbInstance {
        let mut premises = Vec::with_capacity(n);
        let mut sides = Vec::with_capacity(n);
        for i in 0..n {
            let carrier = if rng.random_bool(0.5) { ArithTy::Int } else { ArithTy::Real };
            let rel = if all_eq {
                Rel::Eq
            } else {
                [Rel::Lt, Rel::Le, Rel::Eq][rng.random_range(0..3)]
            };
            let (a, b): (Arc<str>, Arc<str>) = (format!("a{i}").into(), format!("b{i}").into());
            let va = Term::var(&a, sort_of(carrier));
            let vb = Term::var(&b, sort_of(carrier));
            // The compound side may be either one.
            let compound_left = rng.random_bool(0.5);
            let (l, r) = if compound_left {
                (Side { var: a, term: compound(rng, va, carrier) }, Side { var: b.clone(), term: vb })
            } else {
                (Side { var: a.clone(), term: va }, Side { var: b, term: compound(rng, vb, carrier) })
            };
            premises.push(RelChain { rel, lhs: l.term.clone(), rhs: r.term.clone(), carrier });
            sides.push((l, r, compound_left));
        }
        SumUbInstance { premises, sides }
    }

    /// A point for every variable. When `satisfying`, every premise holds
    /// at the point; otherwise values are uniform.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, satisfying: bool) -> Interp {
        let mut m = Interp::default();
        for (p, (l, r, compound_left)) in self.premises.iter().zip(&self.sides) {
            let c = p.carrier;
            if !satisfying {
                m.set(&l.var, number(rng, c));
                m.set(&r.var, number(rng, c));
                continue;
            }
            let gap = match p.rel {
                Rel::Eq => Rat::zero(),
                Rel::Le if rng.random_bool(0.3) => Rat::zero(),
                Rel::Lt | Rel::Le => match c {
                    ArithTy::Int => Rat::from(rng.random_range(1i64..=5)),
                    ArithTy::Real => random_nonzero_rat(rng, 5, 7).abs(),
                },
            };
            // Fix the compound side's variable, then solve for the bare one.
            if *compound_left {
                m.set(&l.var, number(rng, c));
                let lv = m.eval(&l.term).as_num().clone();
                m.set(&r.var, &lv + &gap);
            } else {
                m.set(&r.var, number(rng, c));
                let rv = m.eval(&r.term).as_num().clone();
                m.set(&l.var, &rv - &gap);
            }
        }
        m
    }

    /// All premise names with their sorts.
    pub fn declarations(&self) -> Vec<(Arc<str>, Sort)> {
        let mut out = Vec::new();
        for (p, (l, r, _)) in self.premises.iter().zip(&self.sides) {
            out.push((l.var.clone(), sort_of(p.carrier)));
            out.push((r.var.clone(), sort_of(p.carrier)));
        }
        out
    }
}

/// `(x, y, a, b, sigma)` for the tangent-plane rule, with `x` and `y` the
/// Real constants `x` and `y`.
#[derive(Debug, Clone)]
pub struct TangentInstance {
    pub x: Term,
    pub y: Term,
    pub a: Rat,
    pub b: Rat,
    pub sigma: bool,
}

impl TangentInstance {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> TangentInstance {
        TangentInstance {
            x: Term::var("x", Sort::Real),
            y: Term::var("y", Sort::Real),
            a: random_rat(rng, 12, 5),
            b: random_rat(rng, 12, 5),
            sigma: rng.random_bool(0.5),
        }
    }

    /// A point for `x` and `y`; about a quarter of the coordinates sit
    /// exactly on `a` or `b`, where the two cases of the rule meet.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Interp {
        let mut pick = |on: &Rat| if rng.random_bool(0.25) { on.clone() } else { random_rat(rng, 30, 7) };
        let (x, y) = (pick(&self.a), pick(&self.b));
        let mut m = Interp::default();
        m.consts.insert("x".into(), Value::Num(x));
        m.consts.insert("y".into(), Value::Num(y));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn satisfying_points_satisfy() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for n in 1..=6 {
            let inst = SumUbInstance::random(&mut rng, n, false);
            for _ in 0..20 {
                let m = inst.sample(&mut rng, true);
                for p in &inst.premises {
                    assert!(m.holds(&p.to_term()), "{}", p.to_term());
                }
            }
        }
    }
}
