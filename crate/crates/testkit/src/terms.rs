//! Random well-sorted terms, scripts and goals.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;

use smtrecon_core::goal::GoalSort;
use smtrecon_core::{FunSig, Goal, Op, Rat, Script, Sort, Term};

use crate::arith::{random_nonzero_rat, random_rat};

/// A binder the generator may introduce: name, sort and whether it is a
/// Nat binder (goal dialect only).
#[derive(Debug, Clone)]
pub struct Binder {
    pub name: Arc<str>,
    pub sort: Sort,
    pub nat: bool,
}

impl Binder {
    pub fn new(name: &str, sort: Sort) -> Binder {
        Binder { name: name.into(), sort, nat: false }
    }

    pub fn nat(name: &str) -> Binder {
        Binder { name: name.into(), sort: Sort::Int, nat: true }
    }
}

/// Generator state for one signature.
#[derive(Debug, Clone)]
pub struct TermGen {
    pub consts: Vec<(Arc<str>, Sort)>,
    pub funs: Vec<Arc<FunSig>>,
    pub binders: Vec<Binder>,
    pub iff: bool,
    pub reals: bool,
    /// Allows `-` and unary minus.
    pub minus: bool,
    /// Allows three-argument `=`.
    pub nary_eq: bool,
    /// Uf applications only take arguments of these sorts. Keeps function
    /// tables finite in brute-force models.
    pub uf_arg_ok: fn(&Sort) -> bool,
    scope: Vec<(Arc<str>, Sort)>,
    /// Nat binders actually used.
    pub nat_used: BTreeSet<Arc<str>>,
}

impl TermGen {
    pub fn new(consts: Vec<(Arc<str>, Sort)>, funs: Vec<Arc<FunSig>>, binders: Vec<Binder>) -> TermGen {
        TermGen {
            consts,
            funs,
            binders,
            iff: false,
            reals: true,
            minus: true,
            nary_eq: true,
            uf_arg_ok: |_| true,
            scope: Vec::new(),
            nat_used: BTreeSet::new(),
        }
    }

    fn vars_of(&self, sort: &Sort) -> Vec<Term> {
        // Innermost binding of each name wins, as in the reader.
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut out = Vec::new();
        for (n, s) in self.scope.iter().rev().chain(self.consts.iter().rev()) {
            if seen.insert(n) && s == sort {
                out.push(Term::var(n, s.clone()));
            }
        }
        out
    }

    fn funs_into(&self, sort: &Sort) -> Vec<Arc<FunSig>> {
        self.funs.iter().filter(|f| f.ret == *sort && f.args.iter().all(|s| (self.uf_arg_ok)(s))).cloned().collect()
    }

    /// Whether some term of `sort` can be built at depth 0.
    fn inhabited(&self, sort: &Sort) -> bool {
        !matches!(sort, Sort::Uninterpreted(_)) || !self.vars_of(sort).is_empty()
    }

    fn apply<R: Rng + ?Sized>(&mut self, rng: &mut R, f: &Arc<FunSig>, depth: u32) -> Option<Term> {
        let args = f.args.iter().map(|s| self.term(rng, s, depth)).collect::<Option<Vec<_>>>()?;
        Some(Term::apply(f, args))
    }

    fn leaf<R: Rng + ?Sized>(&mut self, rng: &mut R, sort: &Sort) -> Option<Term> {
        let vars = self.vars_of(sort);
        if !vars.is_empty() && (rng.random_bool(0.7) || matches!(sort, Sort::Uninterpreted(_))) {
            return vars.choose(rng).cloned();
        }
        Some(match sort {
            Sort::Bool => Term::bool(rng.random_bool(0.5)),
            Sort::Int => {
                let lo = if self.minus { -4 } else { 0 };
                Term::int(rng.random_range(lo..=4i64))
            }
            Sort::Real => Term::rat(if self.minus { random_rat(rng, 7, 4) } else { random_rat(rng, 7, 4).abs() }),
            Sort::Uninterpreted(_) => return None,
        })
    }

    /// A random term of sort `sort` of depth at most `depth`, or `None` when
    /// the sort has no terms in scope.
    pub fn term<R: Rng + ?Sized>(&mut self, rng: &mut R, sort: &Sort, depth: u32) -> Option<Term> {
        if depth == 0 || rng.random_bool(0.25) {
            if let Some(t) = self.leaf(rng, sort) {
                return Some(t);
            }
            if depth == 0 {
                return None;
            }
        }
        let d = depth - 1;
        match sort {
            Sort::Bool => self.bool_term(rng, d),
            Sort::Int | Sort::Real => self.num_term(rng, sort, d),
            Sort::Uninterpreted(_) => {
                let fs = self.funs_into(sort);
                match fs.choose(rng) {
                    Some(f) if rng.random_bool(0.6) => {
                        let f = f.clone();
                        self.apply(rng, &f, d).or_else(|| self.leaf(rng, sort))
                    }
                    _ => self.leaf(rng, sort),
                }
            }
        }
    }

    fn eq_sort<R: Rng + ?Sized>(&self, rng: &mut R) -> Sort {
        let mut options = vec![Sort::Bool, Sort::Int];
        if self.reals {
            options.push(Sort::Real);
        }
        for (_, s) in self.consts.iter().chain(&self.scope) {
            if matches!(s, Sort::Uninterpreted(_)) && !options.contains(s) {
                options.push(s.clone());
            }
        }
        options.choose(rng).expect("nonempty").clone()
    }

    fn num_sort<R: Rng + ?Sized>(&self, rng: &mut R) -> Sort {
        if self.reals && rng.random_bool(0.5) {
            Sort::Real
        } else {
            Sort::Int
        }
    }

    fn bool_term<R: Rng + ?Sized>(&mut self, rng: &mut R, d: u32) -> Option<Term> {
        let b = Sort::Bool;
        Some(match rng.random_range(0..12) {
            0 => Term::not(self.term(rng, &b, d)?),
            1 => Term::and(self.term(rng, &b, d)?, self.term(rng, &b, d)?),
            2 => Term::or(self.term(rng, &b, d)?, self.term(rng, &b, d)?),
            3 => Term::implies(self.term(rng, &b, d)?, self.term(rng, &b, d)?),
            4 if self.iff => Term::app(Op::Iff, vec![self.term(rng, &b, d)?, self.term(rng, &b, d)?]),
            4 | 5 => {
                let s = self.eq_sort(rng);
                let n = if self.nary_eq && rng.random_bool(0.2) { 3 } else { 2 };
                let args = (0..n).map(|_| self.term(rng, &s, d)).collect::<Option<Vec<_>>>()?;
                Term::app(Op::Eq, args)
            }
            6 => {
                let s = self.eq_sort(rng);
                Term::distinct(self.term(rng, &s, d)?, self.term(rng, &s, d)?)
            }
            7 | 8 => {
                let s = self.num_sort(rng);
                let (l, r) = (self.term(rng, &s, d)?, self.term(rng, &s, d)?);
                if rng.random_bool(0.5) {
                    Term::lt(l, r)
                } else {
                    Term::le(l, r)
                }
            }
            9 | 10 => self.quantified(rng, d)?,
            _ => match self.funs_into(&b).choose(rng).cloned() {
                Some(f) => self.apply(rng, &f, d)?,
                None => self.leaf(rng, &b)?,
            },
        })
    }

    fn quantified<R: Rng + ?Sized>(&mut self, rng: &mut R, d: u32) -> Option<Term> {
        let usable: Vec<Binder> = self
            .binders
            .iter()
            .filter(|b| !matches!(b.sort, Sort::Uninterpreted(_)) || self.inhabited(&b.sort))
            .cloned()
            .collect();
        if usable.is_empty() {
            return self.leaf(rng, &Sort::Bool);
        }
        let n = rng.random_range(1..=2.min(usable.len()));
        let chosen: Vec<Binder> = usable.choose_multiple(rng, n).cloned().collect();
        let mark = self.scope.len();
        self.scope.extend(chosen.iter().map(|b| (b.name.clone(), b.sort.clone())));
        let body = self.term(rng, &Sort::Bool, d);
        self.scope.truncate(mark);
        let body = body?;
        self.nat_used.extend(chosen.iter().filter(|b| b.nat).map(|b| b.name.clone()));
        Some(Term::forall(chosen.into_iter().map(|b| (b.name, b.sort)).collect(), body))
    }

    fn num_term<R: Rng + ?Sized>(&mut self, rng: &mut R, sort: &Sort, d: u32) -> Option<Term> {
        let real = *sort == Sort::Real;
        Some(match rng.random_range(0..8) {
            0 | 1 => Term::add(self.term(rng, sort, d)?, self.term(rng, sort, d)?),
            2 if self.minus => Term::sub(self.term(rng, sort, d)?, self.term(rng, sort, d)?),
            3 if self.minus => Term::neg(self.term(rng, sort, d)?),
            2..=4 => Term::mul(self.term(rng, sort, d)?, self.term(rng, sort, d)?),
            5 if real => Term::div(self.term(rng, sort, d)?, Term::rat(random_nonzero_rat(rng, 5, 3))),
            6 if real => Term::to_real(self.term(rng, &Sort::Int, d)?),
            _ => match self.funs_into(sort).choose(rng).cloned() {
                Some(f) => self.apply(rng, &f, d)?,
                None => self.leaf(rng, sort)?,
            },
        })
    }

    /// A Bool term; retries until one can be built.
    pub fn formula<R: Rng + ?Sized>(&mut self, rng: &mut R, depth: u32) -> Term {
        loop {
            if let Some(t) = self.term(rng, &Sort::Bool, depth) {
                return t;
            }
        }
    }
}

const CONST_NAMES: &[&str] = &["x", "y", "p", "q", "k", "e'", "n 1", "z.z"];
const FUN_NAMES: &[&str] = &["f", "g", "op", "h!"];
const SORT_NAMES: &[&str] = &["U", "G", "my sort"];

fn pick_sort<R: Rng + ?Sized>(rng: &mut R, sorts: &[Sort]) -> Sort {
    sorts.choose(rng).expect("nonempty").clone()
}

/// A random script with declarations and up to five assertions, for print
/// and parse round trips.
pub fn random_script<R: Rng + ?Sized>(rng: &mut R) -> Script {
    let n_sorts = rng.random_range(0..=2);
    let sort_decls: Vec<Arc<str>> = SORT_NAMES.choose_multiple(rng, n_sorts).map(|s| Arc::from(*s)).collect();
    let mut sorts = vec![Sort::Bool, Sort::Int, Sort::Real];
    sorts.extend(sort_decls.iter().map(|s| Sort::Uninterpreted(s.clone())));

    let n_consts = rng.random_range(0..=5);
    let const_decls: Vec<(Arc<str>, Sort)> =
        CONST_NAMES.choose_multiple(rng, n_consts).map(|c| (Arc::from(*c), pick_sort(rng, &sorts))).collect();
    let n_funs = rng.random_range(0..=2);
    let fun_decls: Vec<Arc<FunSig>> = FUN_NAMES
        .choose_multiple(rng, n_funs)
        .map(|f| {
            let arity = rng.random_range(1..=2);
            Arc::new(FunSig {
                name: (*f).into(),
                args: (0..arity).map(|_| pick_sort(rng, &sorts)).collect(),
                ret: pick_sort(rng, &sorts),
            })
        })
        .collect();

    let mut binders = vec![Binder::new("a", Sort::Bool), Binder::new("b", Sort::Int), Binder::new("c", Sort::Real)];
    for (i, s) in sort_decls.iter().enumerate() {
        binders.push(Binder::new(&format!("u{i}"), Sort::Uninterpreted(s.clone())));
    }
    let mut gen = TermGen::new(const_decls.clone(), fun_decls.clone(), binders);
    let n_asserts = rng.random_range(0..=5);
    let assertions = (0..n_asserts).map(|_| gen.formula(rng, 4)).collect();

    Script {
        logic: [None, Some("ALL"), Some("UFLIRA")].choose(rng).expect("nonempty").map(String::from),
        sort_decls,
        const_decls,
        fun_decls,
        assertions,
        has_check_sat: rng.random_bool(0.8),
    }
}

/// Knobs for [`random_goal`].
#[derive(Debug, Clone, Copy)]
pub struct GoalShape {
    pub max_depth: u32,
    pub max_hyps: usize,
    /// Admit Real constants; such goals cannot be brute-forced.
    pub reals: bool,
}

impl Default for GoalShape {
    fn default() -> GoalShape {
        GoalShape { max_depth: 3, max_hyps: 2, reals: false }
    }
}

/// A small random goal using `iff`, Nat constants and Nat binders. With the
/// default shape every symbol ranges over a finite set, so validity can be
/// decided by [`crate::goals::goal_valid`]: at most three Bool constants,
/// one Nat and one Int constant, one sort with at most one element
/// constant, and one unary predicate and one unary function on it.
pub fn random_goal<R: Rng + ?Sized>(rng: &mut R, shape: &GoalShape) -> Goal {
    let mut consts: Vec<(Arc<str>, Sort)> = Vec::new();
    let mut nat_vars = BTreeSet::new();
    for p in ["p", "q", "r"].iter().take(rng.random_range(0..=3)) {
        consts.push((Arc::from(*p), Sort::Bool));
    }
    if rng.random_bool(0.6) {
        consts.push((Arc::from("n"), Sort::Int));
        nat_vars.insert(Arc::from("n"));
    }
    if rng.random_bool(0.4) {
        consts.push((Arc::from("i"), Sort::Int));
    }
    if shape.reals && rng.random_bool(0.4) {
        consts.push((Arc::from("x"), Sort::Real));
    }
    let mut sorts = Vec::new();
    let mut funs = Vec::new();
    let mut binders = vec![Binder::nat("m"), Binder::new("j", Sort::Int), Binder::new("b", Sort::Bool)];
    if rng.random_bool(0.5) {
        let u = Sort::uninterpreted("U");
        sorts.push(GoalSort { name: "U".into(), nonempty: rng.random_bool(0.3) });
        if rng.random_bool(0.6) {
            consts.push((Arc::from("e"), u.clone()));
        }
        if rng.random_bool(0.6) {
            funs.push(Arc::new(FunSig { name: "P".into(), args: vec![u.clone()], ret: Sort::Bool }));
        }
        if rng.random_bool(0.4) {
            funs.push(Arc::new(FunSig { name: "f".into(), args: vec![u.clone()], ret: u.clone() }));
        }
        binders.push(Binder::new("a", u));
    }
    let mut gen = TermGen::new(consts.clone(), funs.clone(), binders);
    gen.iff = true;
    gen.reals = shape.reals;
    gen.minus = false;
    gen.nary_eq = false;
    gen.uf_arg_ok = |s| matches!(s, Sort::Uninterpreted(_));

    let hypotheses = (0..rng.random_range(0..=shape.max_hyps))
        .map(|i| (Arc::from(format!("h{i}")), gen.formula(rng, shape.max_depth)))
        .collect();
    let conclusion = gen.formula(rng, shape.max_depth);
    nat_vars.extend(gen.nat_used.iter().cloned());
    Goal { sorts, consts, funs, hypotheses, conclusion, nat_vars }
}

/// Shortcut used by fixtures: `Rat` from a fraction.
pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d).expect("nonzero denominator")
}
