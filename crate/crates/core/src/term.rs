//! Sorted first-order terms shared by every other module.
//!
//! Terms are immutable and reference counted, so cloning is cheap and a
//! term can be handed to any number of checkers at once. Equality is purely
//! structural: bound variable names are significant and no AC reasoning is
//! applied.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sort {
    Bool,
    Int,
    Real,
    Uninterpreted(Arc<str>),
}

impl Sort {
    pub fn uninterpreted(name: &str) -> Sort {
        assert!(!name.is_empty(), "uninterpreted sort names must be nonempty");
        Sort::Uninterpreted(name.into())
    }

    pub fn is_arith(&self) -> bool {
        matches!(self, Sort::Int | Sort::Real)
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Bool => f.write_str("Bool"),
            Sort::Int => f.write_str("Int"),
            Sort::Real => f.write_str("Real"),
            Sort::Uninterpreted(name) => f.write_str(&quote_symbol(name)),
        }
    }
}

/// Signature of an uninterpreted function symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FunSig {
    pub name: Arc<str>,
    pub args: Vec<Sort>,
    pub ret: Sort,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Op {
    Not,
    And,
    Or,
    Implies,
    /// Only produced by the goal language; preprocessing rewrites it to `=`.
    Iff,
    Eq,
    Distinct,
    Lt,
    Le,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Uf(Arc<FunSig>),
}

impl Op {
    pub fn name(&self) -> &str {
        match self {
            Op::Not => "not",
            Op::And => "and",
            Op::Or => "or",
            Op::Implies => "=>",
            Op::Iff => "iff",
            Op::Eq => "=",
            Op::Distinct => "distinct",
            Op::Lt => "<",
            Op::Le => "<=",
            Op::Add => "+",
            Op::Sub | Op::Neg => "-",
            Op::Mul => "*",
            Op::Div => "/",
            Op::Uf(sig) => &sig.name,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TermNode {
    Var(Arc<str>, Sort),
    IntLit(BigInt),
    RatLit(Rat),
    BoolLit(bool),
    App(Op, Vec<Term>),
    Forall(Vec<(Arc<str>, Sort)>, Term),
    ToReal(Term),
}

#[derive(Clone, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Arc<TermNode>);

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ill-sorted term `{term}`: expected {expected}, found {found}")]
pub struct SortError {
    pub term: Term,
    pub expected: String,
    pub found: String,
}

impl SortError {
    fn new(term: &Term, expected: impl Into<String>, found: impl Into<String>) -> SortError {
        SortError { term: term.clone(), expected: expected.into(), found: found.into() }
    }
}

/// Raised by [`Term::substitute`] when a replacement would be captured by a
/// binder.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("substitution would capture variable `{0}`")]
pub struct CaptureError(pub Arc<str>);

impl Term {
    pub fn new(node: TermNode) -> Term {
        Term(Arc::new(node))
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    pub fn var(name: &str, sort: Sort) -> Term {
        Term::new(TermNode::Var(name.into(), sort))
    }

    pub fn int(n: impl Into<BigInt>) -> Term {
        Term::new(TermNode::IntLit(n.into()))
    }

    pub fn rat(q: Rat) -> Term {
        Term::new(TermNode::RatLit(q))
    }

    pub fn bool(b: bool) -> Term {
        Term::new(TermNode::BoolLit(b))
    }

    pub fn tt() -> Term {
        Term::bool(true)
    }

    pub fn ff() -> Term {
        Term::bool(false)
    }

    /// Builds an application. Negation of a numeric literal folds into the
    /// literal so that `(- 3)` has a single representation.
    pub fn app(op: Op, args: Vec<Term>) -> Term {
        if op == Op::Neg && args.len() == 1 {
            match args[0].node() {
                TermNode::IntLit(n) if !n.is_negative() => return Term::int(-n),
                TermNode::RatLit(q) if !q.is_negative() => return Term::rat(-q),
                _ => {}
            }
        }
        Term::new(TermNode::App(op, args))
    }

    pub fn not(t: Term) -> Term {
        Term::app(Op::Not, vec![t])
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::app(Op::And, vec![a, b])
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::app(Op::Or, vec![a, b])
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::app(Op::Implies, vec![a, b])
    }

    pub fn eq(a: Term, b: Term) -> Term {
        Term::app(Op::Eq, vec![a, b])
    }

    pub fn distinct(a: Term, b: Term) -> Term {
        Term::app(Op::Distinct, vec![a, b])
    }

    pub fn lt(a: Term, b: Term) -> Term {
        Term::app(Op::Lt, vec![a, b])
    }

    pub fn le(a: Term, b: Term) -> Term {
        Term::app(Op::Le, vec![a, b])
    }

    /// `a > b`, stored as `b < a`.
    pub fn gt(a: Term, b: Term) -> Term {
        Term::lt(b, a)
    }

    /// `a >= b`, stored as `b <= a`.
    pub fn ge(a: Term, b: Term) -> Term {
        Term::le(b, a)
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::app(Op::Add, vec![a, b])
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::app(Op::Sub, vec![a, b])
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::app(Op::Mul, vec![a, b])
    }

    pub fn neg(a: Term) -> Term {
        Term::app(Op::Neg, vec![a])
    }

    pub fn div(a: Term, b: Term) -> Term {
        Term::app(Op::Div, vec![a, b])
    }

    pub fn to_real(t: Term) -> Term {
        Term::new(TermNode::ToReal(t))
    }

    pub fn apply(sig: &Arc<FunSig>, args: Vec<Term>) -> Term {
        Term::app(Op::Uf(sig.clone()), args)
    }

    pub fn forall(bound: Vec<(Arc<str>, Sort)>, body: Term) -> Term {
        Term::new(TermNode::Forall(bound, body))
    }

    pub fn as_app(&self) -> Option<(&Op, &[Term])> {
        match self.node() {
            TermNode::App(op, args) => Some((op, args)),
            _ => None,
        }
    }

    /// Returns the arguments when `self` is an application of `op` with the
    /// given arity.
    pub fn match_app(&self, op: &Op, arity: usize) -> Option<&[Term]> {
        match self.as_app() {
            Some((o, args)) if o == op && args.len() == arity => Some(args),
            _ => None,
        }
    }

    pub fn as_not(&self) -> Option<&Term> {
        self.match_app(&Op::Not, 1).map(|a| &a[0])
    }

    pub fn as_eq(&self) -> Option<(&Term, &Term)> {
        self.match_app(&Op::Eq, 2).map(|a| (&a[0], &a[1]))
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self.node() {
            TermNode::BoolLit(b) => Some(*b),
            _ => None,
        }
    }

    pub fn is_false(&self) -> bool {
        self.as_bool() == Some(false)
    }

    /// Numeric literal value, for `IntLit` and `RatLit` nodes only.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.node() {
            TermNode::IntLit(n) => Some(Rat::from_int(n.clone())),
            TermNode::RatLit(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// Sort of a term already known to be well-sorted.
    pub fn sort(&self) -> Sort {
        match self.node() {
            TermNode::Var(_, s) => s.clone(),
            TermNode::IntLit(_) => Sort::Int,
            TermNode::RatLit(_) | TermNode::ToReal(_) => Sort::Real,
            TermNode::BoolLit(_) | TermNode::Forall(..) => Sort::Bool,
            TermNode::App(op, args) => match op {
                Op::Add | Op::Sub | Op::Mul | Op::Neg | Op::Div => args[0].sort(),
                Op::Uf(sig) => sig.ret.clone(),
                _ => Sort::Bool,
            },
        }
    }

    /// Value of a variable-free arithmetic term, if it has one.
    pub fn const_value(&self) -> Option<Rat> {
        match self.node() {
            TermNode::IntLit(_) | TermNode::RatLit(_) => self.as_rat(),
            TermNode::ToReal(t) => t.const_value(),
            TermNode::App(op, args) => {
                let mut vals = args.iter().map(Term::const_value);
                match op {
                    Op::Add => vals.try_fold(Rat::zero(), |acc, v| Some(&acc + &v?)),
                    Op::Mul => vals.try_fold(Rat::one(), |acc, v| Some(&acc * &v?)),
                    Op::Sub => {
                        let first = vals.next()??;
                        vals.try_fold(first, |acc, v| Some(&acc - &v?))
                    }
                    Op::Neg => Some(-vals.next()??),
                    Op::Div => {
                        let a = vals.next()??;
                        let b = vals.next()??;
                        a.checked_div(&b).ok()
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Whether a variable named `name` occurs free.
    pub fn has_free_var(&self, name: &str) -> bool {
        match self.node() {
            TermNode::Var(n, _) => &**n == name,
            TermNode::IntLit(_) | TermNode::RatLit(_) | TermNode::BoolLit(_) => false,
            TermNode::App(_, args) => args.iter().any(|a| a.has_free_var(name)),
            TermNode::Forall(bound, body) => {
                !bound.iter().any(|(n, _)| &**n == name) && body.has_free_var(name)
            }
            TermNode::ToReal(t) => t.has_free_var(name),
        }
    }

    /// Simultaneously replaces free variables by terms. A variable is
    /// identified by name and sort.
    pub fn substitute(&self, map: &[(Arc<str>, Sort, Term)]) -> Result<Term, CaptureError> {
        if map.is_empty() {
            return Ok(self.clone());
        }
        match self.node() {
            TermNode::Var(n, s) => Ok(map
                .iter()
                .find(|(m, ms, _)| m == n && ms == s)
                .map(|(_, _, t)| t.clone())
                .unwrap_or_else(|| self.clone())),
            TermNode::IntLit(_) | TermNode::RatLit(_) | TermNode::BoolLit(_) => Ok(self.clone()),
            TermNode::App(op, args) => {
                let args = args.iter().map(|a| a.substitute(map)).collect::<Result<_, _>>()?;
                Ok(Term::app(op.clone(), args))
            }
            TermNode::ToReal(t) => Ok(Term::to_real(t.substitute(map)?)),
            TermNode::Forall(bound, body) => {
                let inner: Vec<_> = map
                    .iter()
                    .filter(|(m, _, _)| !bound.iter().any(|(b, _)| b == m))
                    .cloned()
                    .collect();
                for (b, _) in bound {
                    let used = inner
                        .iter()
                        .any(|(m, _, t)| body.has_free_var(m) && t.has_free_var(b));
                    if used {
                        return Err(CaptureError(b.clone()));
                    }
                }
                Ok(Term::forall(bound.clone(), body.substitute(&inner)?))
            }
        }
    }
}

fn expect_sort(t: &Term, actual: &Sort, want: &Sort) -> Result<(), SortError> {
    if actual == want {
        Ok(())
    } else {
        Err(SortError::new(t, want.to_string(), actual.to_string()))
    }
}

fn expect_arity(t: &Term, n: usize, ok: bool, what: &str) -> Result<(), SortError> {
    if ok {
        Ok(())
    } else {
        Err(SortError::new(t, what, format!("{n} argument(s)")))
    }
}

/// Checks every sorting invariant of `t` and returns its sort.
pub fn well_sorted(t: &Term) -> Result<Sort, SortError> {
    match t.node() {
        TermNode::Var(name, sort) => {
            if name.is_empty() {
                return Err(SortError::new(t, "a nonempty variable name", "\"\""));
            }
            Ok(sort.clone())
        }
        TermNode::IntLit(_) => Ok(Sort::Int),
        TermNode::RatLit(_) => Ok(Sort::Real),
        TermNode::BoolLit(_) => Ok(Sort::Bool),
        TermNode::ToReal(inner) => {
            let s = well_sorted(inner)?;
            expect_sort(t, &s, &Sort::Int)?;
            Ok(Sort::Real)
        }
        TermNode::Forall(bound, body) => {
            if bound.is_empty() {
                return Err(SortError::new(t, "at least one bound variable", "none"));
            }
            let s = well_sorted(body)?;
            expect_sort(t, &s, &Sort::Bool)?;
            Ok(Sort::Bool)
        }
        TermNode::App(op, args) => {
            let sorts = args.iter().map(well_sorted).collect::<Result<Vec<_>, _>>()?;
            let n = sorts.len();
            match op {
                Op::Not => {
                    expect_arity(t, n, n == 1, "1 argument")?;
                    expect_sort(t, &sorts[0], &Sort::Bool)?;
                    Ok(Sort::Bool)
                }
                Op::And | Op::Or | Op::Implies | Op::Iff => {
                    expect_arity(t, n, n == 2, "2 arguments")?;
                    for s in &sorts {
                        expect_sort(t, s, &Sort::Bool)?;
                    }
                    Ok(Sort::Bool)
                }
                Op::Eq | Op::Distinct => {
                    expect_arity(t, n, n >= 2, "at least 2 arguments")?;
                    for s in &sorts[1..] {
                        expect_sort(t, s, &sorts[0])?;
                    }
                    Ok(Sort::Bool)
                }
                Op::Lt | Op::Le => {
                    expect_arity(t, n, n == 2, "2 arguments")?;
                    arith_operands(t, &sorts)?;
                    Ok(Sort::Bool)
                }
                Op::Add | Op::Sub | Op::Mul => {
                    expect_arity(t, n, n >= 2, "at least 2 arguments")?;
                    arith_operands(t, &sorts)
                }
                Op::Neg => {
                    expect_arity(t, n, n == 1, "1 argument")?;
                    arith_operands(t, &sorts)
                }
                Op::Div => {
                    expect_arity(t, n, n == 2, "2 arguments")?;
                    for s in &sorts {
                        expect_sort(t, s, &Sort::Real)?;
                    }
                    match args[1].const_value() {
                        Some(v) if !v.is_zero() => Ok(Sort::Real),
                        _ => Err(SortError::new(
                            t,
                            "a nonzero constant divisor",
                            args[1].to_string(),
                        )),
                    }
                }
                Op::Uf(sig) => {
                    expect_arity(t, n, n == sig.args.len() && n > 0, &format!("{} argument(s)", sig.args.len()))?;
                    for (s, want) in sorts.iter().zip(&sig.args) {
                        expect_sort(t, s, want)?;
                    }
                    Ok(sig.ret.clone())
                }
            }
        }
    }
}

fn arith_operands(t: &Term, sorts: &[Sort]) -> Result<Sort, SortError> {
    let first = &sorts[0];
    if !first.is_arith() {
        return Err(SortError::new(t, "Int or Real", first.to_string()));
    }
    for s in &sorts[1..] {
        expect_sort(t, s, first)?;
    }
    Ok(first.clone())
}

const RESERVED: &[&str] = &[
    "!", "_", "as", "BINARY", "DECIMAL", "exists", "forall", "HEXADECIMAL", "let", "match",
    "NUMERAL", "par", "STRING", "true", "false", "not", "and", "or", "=>", "=", "distinct", "<",
    "<=", ">", ">=", "+", "-", "*", "/", "to_real", "iff", "Bool", "Int", "Real", "Nat",
];

fn is_simple_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

/// Whether `name` can be written without `|...|` quoting and still read
/// back as a user symbol.
pub fn is_simple_symbol(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if is_simple_symbol_char(c) && !c.is_ascii_digit() => {}
        _ => return false,
    }
    chars.all(is_simple_symbol_char) && !RESERVED.contains(&name)
}

pub fn quote_symbol(name: &str) -> String {
    if is_simple_symbol(name) {
        name.to_string()
    } else {
        format!("|{name}|")
    }
}

fn fmt_numeral(f: &mut fmt::Formatter<'_>, n: &BigInt) -> fmt::Result {
    if n.is_negative() {
        write!(f, "(- {})", -n)
    } else {
        write!(f, "{n}")
    }
}

fn fmt_rat_lit(f: &mut fmt::Formatter<'_>, q: &Rat) -> fmt::Result {
    let mag = q.abs();
    let body = if mag.is_integer() {
        format!("{}.0", mag.numer())
    } else {
        format!("(/ {} {})", mag.numer(), mag.denom())
    };
    if q.is_negative() {
        write!(f, "(- {body})")
    } else {
        f.write_str(&body)
    }
}

/// Prints SMT-LIB concrete syntax.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TermNode::Var(name, _) => f.write_str(&quote_symbol(name)),
            TermNode::IntLit(n) => fmt_numeral(f, n),
            TermNode::RatLit(q) => fmt_rat_lit(f, q),
            TermNode::BoolLit(b) => write!(f, "{b}"),
            TermNode::ToReal(t) => write!(f, "(to_real {t})"),
            TermNode::Forall(bound, body) => {
                f.write_str("(forall (")?;
                for (i, (name, sort)) in bound.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "({} {sort})", quote_symbol(name))?;
                }
                write!(f, ") {body})")
            }
            TermNode::App(op, args) => {
                let head = match op {
                    Op::Uf(sig) => quote_symbol(&sig.name),
                    _ => op.name().to_string(),
                };
                write!(f, "({head}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
