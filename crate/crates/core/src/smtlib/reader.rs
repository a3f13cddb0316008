//! Turns S-expressions into sorted [`Term`]s against a [`Signature`].

use std::collections::HashMap;
use std::sync::Arc;

use super::sexp::{Atom, Sexp, SexpKind};
use super::ParseError;
use crate::rat::Rat;
use crate::term::{well_sorted, FunSig, Op, Sort, Term, TermNode};

/// A `define-fun` macro, expanded at every use.
#[derive(Debug, Clone)]
pub struct Define {
    pub params: Vec<(Arc<str>, Sort)>,
    pub ret: Sort,
    pub body: Term,
}

/// Declared sorts and symbols visible to a term reader.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    sorts: HashMap<String, Sort>,
    consts: HashMap<String, Term>,
    funs: HashMap<String, Arc<FunSig>>,
    defines: HashMap<String, Define>,
}

impl Signature {
    pub fn is_declared(&self, name: &str) -> bool {
        self.sorts.contains_key(name)
            || self.consts.contains_key(name)
            || self.funs.contains_key(name)
            || self.defines.contains_key(name)
    }

    fn fresh(&self, at: &Sexp, name: &str) -> Result<(), ParseError> {
        if name.is_empty() {
            return Err(at.error("empty symbol"));
        }
        if self.is_declared(name) || matches!(name, "Bool" | "Int" | "Real") {
            return Err(at.error(format!("`{name}` is already declared")));
        }
        Ok(())
    }

    pub fn declare_sort(&mut self, at: &Sexp, name: &str) -> Result<Sort, ParseError> {
        self.fresh(at, name)?;
        let sort = Sort::Uninterpreted(name.into());
        self.sorts.insert(name.to_string(), sort.clone());
        Ok(sort)
    }

    pub fn declare_const(&mut self, at: &Sexp, name: &str, sort: Sort) -> Result<Term, ParseError> {
        self.fresh(at, name)?;
        let t = Term::var(name, sort);
        self.consts.insert(name.to_string(), t.clone());
        Ok(t)
    }

    pub fn declare_fun(&mut self, at: &Sexp, sig: FunSig) -> Result<Arc<FunSig>, ParseError> {
        self.fresh(at, &sig.name)?;
        let sig = Arc::new(sig);
        self.funs.insert(sig.name.to_string(), sig.clone());
        Ok(sig)
    }

    pub fn define(&mut self, at: &Sexp, name: &str, def: Define) -> Result<(), ParseError> {
        self.fresh(at, name)?;
        self.defines.insert(name.to_string(), def);
        Ok(())
    }

    pub fn read_sort(&self, s: &Sexp) -> Result<Sort, ParseError> {
        match &s.kind {
            SexpKind::Atom(Atom::Symbol(name)) => match name.as_str() {
                "Bool" => Ok(Sort::Bool),
                "Int" => Ok(Sort::Int),
                "Real" => Ok(Sort::Real),
                _ => self.user_sort(s, name),
            },
            SexpKind::Atom(Atom::Quoted(name)) => self.user_sort(s, name),
            _ => Err(s.error("expected a sort")),
        }
    }

    fn user_sort(&self, s: &Sexp, name: &str) -> Result<Sort, ParseError> {
        self.sorts.get(name).cloned().ok_or_else(|| s.error(format!("unknown sort `{name}`")))
    }
}

enum Local {
    Bound(String, Term),
    Let(String, Term),
}

/// Reads terms. The goal dialect additionally accepts `iff` and `Nat`
/// binders, which are read as `Int` and reported through `nat_binders`;
/// binders written with `Int` are reported through `int_binders`.
pub struct TermReader<'s> {
    sig: &'s Signature,
    goal_dialect: bool,
    locals: Vec<Local>,
    pub nat_binders: Vec<Arc<str>>,
    pub int_binders: Vec<Arc<str>>,
}

impl<'s> TermReader<'s> {
    pub fn smtlib(sig: &'s Signature) -> TermReader<'s> {
        TermReader { sig, goal_dialect: false, locals: Vec::new(), nat_binders: Vec::new(), int_binders: Vec::new() }
    }

    pub fn goal(sig: &'s Signature) -> TermReader<'s> {
        TermReader { sig, goal_dialect: true, locals: Vec::new(), nat_binders: Vec::new(), int_binders: Vec::new() }
    }

    /// Reads a term and checks that it is well-sorted with the given sort.
    pub fn read_sorted(&mut self, s: &Sexp, want: Option<&Sort>) -> Result<Term, ParseError> {
        let t = self.read(s)?;
        let sort = well_sorted(&t)?;
        match want {
            Some(w) if *w != sort => Err(s.error(format!("expected a term of sort {w}, found {sort}"))),
            _ => Ok(t),
        }
    }

    pub fn with_params<T>(
        &mut self,
        params: &[(Arc<str>, Sort)],
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        let depth = self.locals.len();
        for (name, sort) in params {
            self.locals.push(Local::Bound(name.to_string(), Term::var(name, sort.clone())));
        }
        let out = f(self);
        self.locals.truncate(depth);
        out
    }

    fn resolve(&self, at: &Sexp, name: &str) -> Result<Term, ParseError> {
        for local in self.locals.iter().rev() {
            match local {
                Local::Bound(n, t) | Local::Let(n, t) if n == name => return Ok(t.clone()),
                _ => {}
            }
        }
        if let Some(def) = self.sig.defines.get(name) {
            if def.params.is_empty() {
                return Ok(def.body.clone());
            }
            return Err(at.error(format!("`{name}` expects {} argument(s)", def.params.len())));
        }
        self.sig
            .consts
            .get(name)
            .cloned()
            .ok_or_else(|| at.error(format!("undeclared symbol `{name}`")))
    }

    pub fn read(&mut self, s: &Sexp) -> Result<Term, ParseError> {
        match &s.kind {
            SexpKind::Atom(Atom::Numeral(n)) => Ok(Term::int(n.clone())),
            SexpKind::Atom(Atom::Decimal(q)) => Ok(Term::rat(q.clone())),
            SexpKind::Atom(Atom::Symbol(name)) => match name.as_str() {
                "true" => Ok(Term::tt()),
                "false" => Ok(Term::ff()),
                _ => self.resolve(s, name),
            },
            SexpKind::Atom(Atom::Quoted(name)) => self.resolve(s, name),
            SexpKind::Atom(_) => Err(s.error("expected a term")),
            SexpKind::List(items) => self.read_list(s, items),
        }
    }

    fn read_args(&mut self, items: &[Sexp]) -> Result<Vec<Term>, ParseError> {
        items.iter().map(|i| self.read(i)).collect()
    }

    fn read_list(&mut self, s: &Sexp, items: &[Sexp]) -> Result<Term, ParseError> {
        let (head, rest) = items.split_first().ok_or_else(|| s.error("empty application"))?;
        let arity = |n: usize, ok: bool| -> Result<(), ParseError> {
            if ok {
                Ok(())
            } else {
                Err(s.error(format!("wrong number of arguments ({n}) for `{}`", head.as_name().unwrap_or("?"))))
            }
        };
        let n = rest.len();
        if let Some(sym) = head.as_symbol() {
            match sym {
                "forall" | "exists" => return self.read_quantifier(s, sym == "exists", rest),
                "let" => return self.read_let(s, rest),
                "not" => {
                    arity(n, n == 1)?;
                    return Ok(Term::not(self.read(&rest[0])?));
                }
                "and" | "or" | "=>" => {
                    arity(n, n >= 2)?;
                    let op = match sym {
                        "and" => Op::And,
                        "or" => Op::Or,
                        _ => Op::Implies,
                    };
                    let args = self.read_args(rest)?;
                    return Ok(right_assoc(op, args));
                }
                "iff" if self.goal_dialect => {
                    arity(n, n == 2)?;
                    let args = self.read_args(rest)?;
                    return Ok(Term::app(Op::Iff, args));
                }
                "=" | "distinct" | "+" | "*" => {
                    arity(n, n >= 2)?;
                    let op = match sym {
                        "=" => Op::Eq,
                        "distinct" => Op::Distinct,
                        "+" => Op::Add,
                        _ => Op::Mul,
                    };
                    return Ok(Term::app(op, self.read_args(rest)?));
                }
                "<" | "<=" | ">" | ">=" => {
                    arity(n, n == 2)?;
                    let a = self.read(&rest[0])?;
                    let b = self.read(&rest[1])?;
                    return Ok(match sym {
                        "<" => Term::lt(a, b),
                        "<=" => Term::le(a, b),
                        ">" => Term::gt(a, b),
                        _ => Term::ge(a, b),
                    });
                }
                "-" => {
                    arity(n, n >= 1)?;
                    let args = self.read_args(rest)?;
                    return Ok(if n == 1 { Term::app(Op::Neg, args) } else { Term::app(Op::Sub, args) });
                }
                "/" => {
                    arity(n, n == 2)?;
                    let a = self.read(&rest[0])?;
                    let b = self.read(&rest[1])?;
                    if let (TermNode::IntLit(p), TermNode::IntLit(q)) = (a.node(), b.node()) {
                        let q = Rat::new(p.clone(), q.clone())
                            .map_err(|_| rest[1].error("zero denominator in rational literal"))?;
                        return Ok(Term::rat(q));
                    }
                    return Ok(Term::div(a, b));
                }
                "to_real" => {
                    arity(n, n == 1)?;
                    return Ok(Term::to_real(self.read(&rest[0])?));
                }
                "!" | "_" | "as" | "match" | "ite" => {
                    return Err(head.error(format!("unsupported construct `{sym}`")));
                }
                _ => {}
            }
        }
        let name = head.as_name().ok_or_else(|| head.error("expected a function symbol"))?;
        let args = self.read_args(rest)?;
        if let Some(def) = self.sig.defines.get(name) {
            arity(n, n == def.params.len())?;
            let map: Vec<_> = def
                .params
                .iter()
                .zip(args)
                .map(|((p, sort), a)| (p.clone(), sort.clone(), a))
                .collect();
            return def.body.substitute(&map).map_err(|e| s.error(e.to_string()));
        }
        match self.sig.funs.get(name) {
            Some(sig) => Ok(Term::apply(sig, args)),
            None => Err(head.error(format!("undeclared function `{name}`"))),
        }
    }

    fn read_binders(&mut self, list: &Sexp) -> Result<Vec<(Arc<str>, Sort)>, ParseError> {
        let items = list.expect_list("a binder list")?;
        if items.is_empty() {
            return Err(list.error("empty binder list"));
        }
        items
            .iter()
            .map(|b| {
                let pair = b.expect_list("a `(name sort)` binder")?;
                if pair.len() != 2 {
                    return Err(b.error("expected a `(name sort)` binder"));
                }
                let name: Arc<str> = pair[0].expect_name("a variable name")?.into();
                let sort = if self.goal_dialect && pair[1].is_symbol("Nat") {
                    self.nat_binders.push(name.clone());
                    Sort::Int
                } else {
                    let sort = self.sig.read_sort(&pair[1])?;
                    if sort == Sort::Int {
                        self.int_binders.push(name.clone());
                    }
                    sort
                };
                Ok((name, sort))
            })
            .collect()
    }

    fn read_quantifier(&mut self, s: &Sexp, exists: bool, rest: &[Sexp]) -> Result<Term, ParseError> {
        if rest.len() != 2 {
            return Err(s.error("quantifier expects a binder list and a body"));
        }
        let bound = self.read_binders(&rest[0])?;
        for (name, _) in &bound {
            let captured = self.locals.iter().any(|l| matches!(l, Local::Let(_, v) if v.has_free_var(name)));
            if captured {
                return Err(rest[0].error(format!("binder `{name}` would capture a let-bound variable")));
            }
        }
        let body = self.with_params(&bound, |r| r.read(&rest[1]))?;
        Ok(if exists {
            Term::not(Term::forall(bound, Term::not(body)))
        } else {
            Term::forall(bound, body)
        })
    }

    fn read_let(&mut self, s: &Sexp, rest: &[Sexp]) -> Result<Term, ParseError> {
        if rest.len() != 2 {
            return Err(s.error("let expects bindings and a body"));
        }
        let bindings = rest[0].expect_list("let bindings")?;
        let mut values = Vec::with_capacity(bindings.len());
        for b in bindings {
            let pair = b.expect_list("a `(name term)` binding")?;
            if pair.len() != 2 {
                return Err(b.error("expected a `(name term)` binding"));
            }
            values.push((pair[0].expect_name("a variable name")?.to_string(), self.read(&pair[1])?));
        }
        let depth = self.locals.len();
        self.locals.extend(values.into_iter().map(|(n, t)| Local::Let(n, t)));
        let body = self.read(&rest[1]);
        self.locals.truncate(depth);
        body
    }
}

fn right_assoc(op: Op, mut args: Vec<Term>) -> Term {
    let last = args.pop().expect("at least two arguments");
    args.into_iter().rev().fold(last, |acc, a| Term::app(op.clone(), vec![a, acc]))
}
