//! Direct evaluation of terms in finite models.
//!
//! Uninterpreted sorts are finite carriers `0..n`, Int quantifiers range
//! over a fixed window of integers and functions are explicit tables. This
//! is deliberately naive: it is the reference the checker and the goal
//! translation are compared against.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use smtrecon_core::{FunSig, Op, Rat, Sort, Term, TermNode};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Bool(bool),
    Num(Rat),
    Elem(usize),
}

impl Value {
    pub fn as_bool(&self) -> bool {
        match self {
            Value::Bool(b) => *b,
            v => panic!("expected a Bool value, got {v:?}"),
        }
    }

    pub fn as_num(&self) -> &Rat {
        match self {
            Value::Num(q) => q,
            v => panic!("expected a number, got {v:?}"),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Value {
        Value::Bool(b)
    }
}

impl From<Rat> for Value {
    fn from(q: Rat) -> Value {
        Value::Num(q)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Interp {
    pub consts: HashMap<Arc<str>, Value>,
    pub funs: HashMap<Arc<str>, HashMap<Vec<Value>, Value>>,
    /// Size of each uninterpreted sort.
    pub carriers: HashMap<Arc<str>, usize>,
    /// Range of Int quantifiers.
    pub int_domain: Vec<i64>,
    /// Int binders with these names only range over the non-negative part
    /// of `int_domain`.
    pub nat_vars: BTreeSet<Arc<str>>,
}

impl Interp {
    pub fn with_consts<I, V>(consts: I) -> Interp
    where
        I: IntoIterator<Item = (&'static str, V)>,
        V: Into<Value>,
    {
        Interp { consts: consts.into_iter().map(|(k, v)| (Arc::from(k), v.into())).collect(), ..Interp::default() }
    }

    pub fn set(&mut self, name: &str, v: impl Into<Value>) {
        self.consts.insert(Arc::from(name), v.into());
    }

    /// Values a variable named `name` of sort `sort` ranges over.
    pub fn domain(&self, name: &str, sort: &Sort) -> Vec<Value> {
        match sort {
            Sort::Bool => vec![Value::Bool(false), Value::Bool(true)],
            Sort::Int => {
                let nat = self.nat_vars.contains(name);
                self.int_domain.iter().filter(|&&n| !nat || n >= 0).map(|&n| Value::Num(Rat::from(n))).collect()
            }
            Sort::Real => panic!("Real variables cannot be enumerated"),
            Sort::Uninterpreted(s) => {
                let n = *self.carriers.get(s).unwrap_or_else(|| panic!("no carrier for sort {s}"));
                (0..n).map(Value::Elem).collect()
            }
        }
    }

    pub fn eval(&self, t: &Term) -> Value {
        self.eval_in(t, &mut Vec::new())
    }

    pub fn holds(&self, t: &Term) -> bool {
        self.eval(t).as_bool()
    }

    fn eval_in(&self, t: &Term, env: &mut Vec<(Arc<str>, Value)>) -> Value {
        match t.node() {
            TermNode::Var(n, _) => env
                .iter()
                .rev()
                .find(|(k, _)| k == n)
                .map(|(_, v)| v.clone())
                .or_else(|| self.consts.get(n).cloned())
                .unwrap_or_else(|| panic!("no value for `{n}`")),
            TermNode::IntLit(n) => Value::Num(Rat::from(n.clone())),
            TermNode::RatLit(q) => Value::Num(q.clone()),
            TermNode::BoolLit(b) => Value::Bool(*b),
            TermNode::ToReal(inner) => self.eval_in(inner, env),
            TermNode::Forall(bound, body) => Value::Bool(self.forall(bound, body, env)),
            TermNode::App(op, args) => {
                let vals: Vec<Value> = args.iter().map(|a| self.eval_in(a, env)).collect();
                self.apply(op, &vals)
            }
        }
    }

    fn forall(&self, bound: &[(Arc<str>, Sort)], body: &Term, env: &mut Vec<(Arc<str>, Value)>) -> bool {
        let Some(((name, sort), rest)) = bound.split_first() else {
            return self.eval_in(body, env).as_bool();
        };
        self.domain(name, sort).into_iter().all(|v| {
            env.push((name.clone(), v));
            let r = self.forall(rest, body, env);
            env.pop();
            r
        })
    }

    fn apply(&self, op: &Op, vals: &[Value]) -> Value {
        let nums = || vals.iter().map(Value::as_num);
        let pairwise = |f: fn(&Rat, &Rat) -> bool| vals.windows(2).all(|w| f(w[0].as_num(), w[1].as_num()));
        match op {
            Op::Not => Value::Bool(!vals[0].as_bool()),
            Op::And => Value::Bool(vals.iter().all(Value::as_bool)),
            Op::Or => Value::Bool(vals.iter().any(Value::as_bool)),
            Op::Implies => {
                let (last, init) = vals.split_last().expect("=> has arguments");
                Value::Bool(init.iter().rev().fold(last.as_bool(), |acc, v| !v.as_bool() || acc))
            }
            Op::Iff | Op::Eq => Value::Bool(vals.windows(2).all(|w| w[0] == w[1])),
            Op::Distinct => {
                Value::Bool(vals.iter().enumerate().all(|(i, a)| vals[i + 1..].iter().all(|b| a != b)))
            }
            Op::Lt => Value::Bool(pairwise(|a, b| a < b)),
            Op::Le => Value::Bool(pairwise(|a, b| a <= b)),
            Op::Add => Value::Num(nums().fold(Rat::zero(), |acc, v| &acc + v)),
            Op::Mul => Value::Num(nums().fold(Rat::one(), |acc, v| &acc * v)),
            Op::Sub => {
                let mut it = nums();
                let first = it.next().expect("- has arguments").clone();
                Value::Num(it.fold(first, |acc, v| &acc - v))
            }
            Op::Neg => Value::Num(-vals[0].as_num().clone()),
            Op::Div => {
                let mut it = nums();
                let first = it.next().expect("/ has arguments").clone();
                Value::Num(it.fold(first, |acc, v| acc.checked_div(v).expect("division by zero in model")))
            }
            Op::Uf(sig) => self.apply_fun(sig, vals),
        }
    }

    fn apply_fun(&self, sig: &FunSig, vals: &[Value]) -> Value {
        self.funs
            .get(&sig.name)
            .and_then(|table| table.get(vals))
            .cloned()
            .unwrap_or_else(|| panic!("no table entry for {}{vals:?}", sig.name))
    }
}

/// Calls `f` on every model of the given signature, stopping early when it
/// returns `false`. Returns whether the enumeration ran to the end.
///
/// Constants and function results range over the carriers and, for Int,
/// over `int_domain` (non-negative part for names in `nat_vars`). Real
/// symbols are not supported. The number of models is the product of all
/// choices, so keep signatures tiny.
pub fn for_each_model(
    sorts: &[Arc<str>],
    consts: &[(Arc<str>, Sort)],
    funs: &[Arc<FunSig>],
    nat_vars: &BTreeSet<Arc<str>>,
    carrier: usize,
    int_domain: &[i64],
    mut f: impl FnMut(&Interp) -> bool,
) -> bool {
    let mut base = Interp {
        carriers: sorts.iter().map(|s| (s.clone(), carrier)).collect(),
        int_domain: int_domain.to_vec(),
        nat_vars: nat_vars.clone(),
        ..Interp::default()
    };

    enum Slot {
        Const(Arc<str>),
        Entry(Arc<str>, Vec<Value>),
    }
    let mut slots: Vec<(Slot, Vec<Value>)> = Vec::new();
    for (name, sort) in consts {
        slots.push((Slot::Const(name.clone()), base.domain(name, sort)));
    }
    for sig in funs {
        let mut tuples: Vec<Vec<Value>> = vec![Vec::new()];
        for s in &sig.args {
            let dom = base.domain("", s);
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    dom.iter().map(move |v| {
                        let mut t = t.clone();
                        t.push(v.clone());
                        t
                    })
                })
                .collect();
        }
        let range = base.domain("", &sig.ret);
        for t in tuples {
            slots.push((Slot::Entry(sig.name.clone(), t), range.clone()));
        }
    }
    if slots.iter().any(|(_, choices)| choices.is_empty()) {
        return true;
    }

    let mut pick = vec![0usize; slots.len()];
    loop {
        base.consts.clear();
        base.funs.clear();
        for ((slot, choices), &i) in slots.iter().zip(&pick) {
            let v = choices[i].clone();
            match slot {
                Slot::Const(name) => {
                    base.consts.insert(name.clone(), v);
                }
                Slot::Entry(name, args) => {
                    base.funs.entry(name.clone()).or_default().insert(args.clone(), v);
                }
            }
        }
        if !f(&base) {
            return false;
        }
        // Odometer step.
        let mut k = 0;
        loop {
            if k == slots.len() {
                return true;
            }
            pick[k] += 1;
            if pick[k] < slots[k].1.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Whether the premises entail the conclusion in every interpretation of
/// the Bool constants `atoms`.
pub fn entails(atoms: &[&str], premises: &[Term], conclusion: &Term) -> bool {
    let consts: Vec<(Arc<str>, Sort)> = atoms.iter().map(|a| (Arc::from(*a), Sort::Bool)).collect();
    for_each_model(&[], &consts, &[], &BTreeSet::new(), 0, &[], |m| {
        !premises.iter().all(|p| m.holds(p)) || m.holds(conclusion)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Term {
        Term::var(n, Sort::Bool)
    }

    #[test]
    fn connectives() {
        let m = Interp::with_consts([("p", true), ("q", false)]);
        assert!(m.holds(&Term::implies(p("q"), p("p"))));
        assert!(!m.holds(&Term::and(p("p"), p("q"))));
        assert!(m.holds(&Term::distinct(p("p"), p("q"))));
        assert!(m.holds(&Term::app(Op::Implies, vec![p("p"), p("q"), p("p")])));
    }

    #[test]
    fn arithmetic_and_quantifiers() {
        let mut m = Interp { int_domain: (-2..=2).collect(), ..Interp::default() };
        m.set("x", Rat::from(3));
        let x = Term::var("x", Sort::Int);
        let k = Term::var("k", Sort::Int);
        assert!(m.holds(&Term::lt(Term::sub(x.clone(), Term::int(1)), x.clone())));
        let all_small = Term::forall(vec![(Arc::from("k"), Sort::Int)], Term::lt(k.clone(), x));
        assert!(m.holds(&all_small));
        let nonneg = Term::forall(vec![(Arc::from("k"), Sort::Int)], Term::le(Term::int(0), k));
        assert!(!m.holds(&nonneg));
        m.nat_vars.insert(Arc::from("k"));
        assert!(m.holds(&nonneg));
    }

    #[test]
    fn model_enumeration_and_entailment() {
        let (a, b) = (p("a"), p("b"));
        assert!(entails(&["a", "b"], &[Term::or(a.clone(), b.clone()), Term::not(a.clone())], &b));
        assert!(!entails(&["a", "b"], &[Term::or(a.clone(), b.clone())], &b));
        let mut count = 0;
        let sig = Arc::new(FunSig { name: "f".into(), args: vec![Sort::uninterpreted("U")], ret: Sort::Bool });
        let done = for_each_model(&["U".into()], &[], &[sig], &BTreeSet::new(), 2, &[], |_| {
            count += 1;
            true
        });
        assert!(done);
        assert_eq!(count, 4);
    }
}
