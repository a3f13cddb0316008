//! Polynomial normal forms for mixed Int/Real arithmetic.
//!
//! An [`ArithExpr`] is normalized by [`to_poly`] into a canonical
//! [`Polynomial`]: monomials are sorted by their variable lists in
//! length-lexicographic order, like terms are merged and zero coefficients
//! dropped. Two expressions with equal normal forms denote the same value in
//! every context, which is what [`certify_poly_eq`] decides.
//!
//! Int and Real variables live in separate index spaces. Inside a monomial,
//! `IntVar(i)` is variable `2i` and `RealVar(i)` is variable `2i + 1`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rat::Rat;
use crate::term::{Op, Sort, Term, TermNode};

/// Orders variable lists by length, then lexicographically.
pub fn monomial_order(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Rat,
    /// Sorted, repetitions allowed (`x0*x0` is `[0, 0]`).
    pub vars: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: Rat, mut vars: Vec<u32>) -> Monomial {
        vars.sort_unstable();
        Monomial { coeff, vars }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            if self.vars[i] <= other.vars[j] {
                vars.push(self.vars[i]);
                i += 1;
            } else {
                vars.push(other.vars[j]);
                j += 1;
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        Monomial { coeff: &self.coeff * &other.coeff, vars }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    monos: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn constant(c: Rat) -> Polynomial {
        Polynomial::from_monomials(vec![Monomial::new(c, Vec::new())])
    }

    pub fn var(index: u32) -> Polynomial {
        Polynomial { monos: vec![Monomial::new(Rat::one(), vec![index])] }
    }

    /// Normalizes an arbitrary monomial list.
    pub fn from_monomials(mut monos: Vec<Monomial>) -> Polynomial {
        for m in &mut monos {
            m.vars.sort_unstable();
        }
        monos.sort_by(|a, b| monomial_order(&a.vars, &b.vars));
        let mut out: Vec<Monomial> = Vec::with_capacity(monos.len());
        for m in monos {
            match out.last_mut() {
                Some(last) if last.vars == m.vars => last.coeff = &last.coeff + &m.coeff,
                _ => out.push(m),
            }
        }
        out.retain(|m| !m.coeff.is_zero());
        Polynomial { monos: out }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    /// Sorted, duplicate-free, zero-free, every variable list sorted.
    pub fn is_canonical(&self) -> bool {
        self.monos.iter().all(|m| !m.coeff.is_zero() && m.vars.windows(2).all(|w| w[0] <= w[1]))
            && self.monos.windows(2).all(|w| monomial_order(&w[0].vars, &w[1].vars) == Ordering::Less)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.monos.len() + other.monos.len());
        let (mut i, mut j) = (0, 0);
        while i < self.monos.len() && j < other.monos.len() {
            let (a, b) = (&self.monos[i], &other.monos[j]);
            match monomial_order(&a.vars, &b.vars) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.coeff + &b.coeff;
                    if !c.is_zero() {
                        out.push(Monomial { coeff: c, vars: a.vars.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.monos[i..]);
        out.extend_from_slice(&other.monos[j..]);
        Polynomial { monos: out }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            monos: self.monos.iter().map(|m| Monomial { coeff: &m.coeff * c, vars: m.vars.clone() }).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut products = Vec::with_capacity(self.monos.len() * other.monos.len());
        for a in &self.monos {
            for b in &other.monos {
                products.push(a.mul(b));
            }
        }
        Polynomial::from_monomials(products)
    }

    /// Evaluates with even variables drawn from `ictx` and odd ones from
    /// `rctx`.
    pub fn denote(&self, ictx: &[BigInt], rctx: &[Rat]) -> Result<Rat, MissingVariable> {
        let mut total = Rat::zero();
        for m in &self.monos {
            let mut v = m.coeff.clone();
            for &x in &m.vars {
                v = &v * &lookup(x, ictx, rctx)?;
            }
            total = &total + &v;
        }
        Ok(total)
    }
}

fn lookup(x: u32, ictx: &[BigInt], rctx: &[Rat]) -> Result<Rat, MissingVariable> {
    let i = (x / 2) as usize;
    if x % 2 == 0 {
        ictx.get(i).map(|n| Rat::from_int(n.clone())).ok_or(MissingVariable::Int(x / 2))
    } else {
        rctx.get(i).cloned().ok_or(MissingVariable::Real(x / 2))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monos.is_empty() {
            return f.write_str("0");
        }
        for (k, m) in self.monos.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", m.coeff)?;
            for v in &m.vars {
                write!(f, "*x{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MissingVariable {
    #[error("no value for Int variable {0}")]
    Int(u32),
    #[error("no value for Real variable {0}")]
    Real(u32),
}

/// A rational known to be nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonZeroRat(Rat);

impl NonZeroRat {
    pub fn new(q: Rat) -> Option<NonZeroRat> {
        (!q.is_zero()).then_some(NonZeroRat(q))
    }

    pub fn get(&self) -> &Rat {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithTy {
    Int,
    Real,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArithExpr {
    IntVar(u32),
    RealVar(u32),
    Const(Rat),
    Add(Box<ArithExpr>, Box<ArithExpr>),
    Sub(Box<ArithExpr>, Box<ArithExpr>),
    Mul(Box<ArithExpr>, Box<ArithExpr>),
    Neg(Box<ArithExpr>),
    DivConst(Box<ArithExpr>, NonZeroRat),
    /// Lifts an Int-valued expression to Real.
    Cast(Box<ArithExpr>),
}

impl ArithExpr {
    pub fn add(a: ArithExpr, b: ArithExpr) -> ArithExpr {
        ArithExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: ArithExpr, b: ArithExpr) -> ArithExpr {
        ArithExpr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ArithExpr, b: ArithExpr) -> ArithExpr {
        ArithExpr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: ArithExpr) -> ArithExpr {
        ArithExpr::Neg(Box::new(a))
    }

    pub fn cast(a: ArithExpr) -> ArithExpr {
        ArithExpr::Cast(Box::new(a))
    }

    pub fn constant(q: impl Into<Rat>) -> ArithExpr {
        ArithExpr::Const(q.into())
    }

    /// `a / c`. Fails on a zero divisor.
    pub fn div_const(a: ArithExpr, c: Rat) -> Result<ArithExpr, crate::rat::DivisionByZero> {
        let c = NonZeroRat::new(c).ok_or(crate::rat::DivisionByZero)?;
        Ok(ArithExpr::DivConst(Box::new(a), c))
    }

    /// Whether the expression is well-typed at `want`. Integer constants
    /// are accepted at either type.
    pub fn has_type(&self, want: ArithTy) -> bool {
        use ArithExpr::*;
        match self {
            IntVar(_) => want == ArithTy::Int,
            RealVar(_) => want == ArithTy::Real,
            Const(c) => want == ArithTy::Real || c.is_integer(),
            Add(a, b) | Sub(a, b) | Mul(a, b) => a.has_type(want) && b.has_type(want),
            Neg(a) => a.has_type(want),
            DivConst(a, _) => want == ArithTy::Real && a.has_type(ArithTy::Real),
            Cast(a) => want == ArithTy::Real && a.has_type(ArithTy::Int),
        }
    }

    pub fn infer_type(&self) -> Option<ArithTy> {
        [ArithTy::Int, ArithTy::Real].into_iter().find(|&t| self.has_type(t))
    }
}

pub fn to_poly(e: &ArithExpr) -> Polynomial {
    use ArithExpr::*;
    match e {
        IntVar(i) => Polynomial::var(2 * i),
        RealVar(i) => Polynomial::var(2 * i + 1),
        Const(c) => Polynomial::constant(c.clone()),
        Add(a, b) => to_poly(a).add(&to_poly(b)),
        Sub(a, b) => to_poly(a).sub(&to_poly(b)),
        Mul(a, b) => to_poly(a).mul(&to_poly(b)),
        Neg(a) => to_poly(a).neg(),
        DivConst(a, c) => to_poly(a).scale(&c.get().recip().expect("divisor is nonzero")),
        Cast(a) => to_poly(a),
    }
}

pub fn denote(e: &ArithExpr, ictx: &[BigInt], rctx: &[Rat]) -> Result<Rat, MissingVariable> {
    use ArithExpr::*;
    Ok(match e {
        IntVar(i) => Rat::from_int(ictx.get(*i as usize).ok_or(MissingVariable::Int(*i))?.clone()),
        RealVar(i) => rctx.get(*i as usize).ok_or(MissingVariable::Real(*i))?.clone(),
        Const(c) => c.clone(),
        Add(a, b) => &denote(a, ictx, rctx)? + &denote(b, ictx, rctx)?,
        Sub(a, b) => &denote(a, ictx, rctx)? - &denote(b, ictx, rctx)?,
        Mul(a, b) => &denote(a, ictx, rctx)? * &denote(b, ictx, rctx)?,
        Neg(a) => -denote(a, ictx, rctx)?,
        DivConst(a, c) => denote(a, ictx, rctx)?.checked_div(c.get()).expect("divisor is nonzero"),
        Cast(a) => denote(a, ictx, rctx)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyEq {
    Equal,
    /// `to_poly(e2) - to_poly(e1)`, never zero.
    NotEqual(Polynomial),
}

pub fn certify_poly_eq(e1: &ArithExpr, e2: &ArithExpr) -> PolyEq {
    let (p1, p2) = (to_poly(e1), to_poly(e2));
    if p1 == p2 {
        PolyEq::Equal
    } else {
        PolyEq::NotEqual(p2.sub(&p1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unsupported construct in arithmetic term: {0}")]
pub struct UnsupportedConstruct(pub String);

/// Assigns indices to the arithmetic atoms of terms. Variables and
/// uninterpreted applications are atoms; Int and Real atoms are numbered
/// separately.
#[derive(Debug, Default)]
pub struct AtomInterner {
    ints: HashMap<Term, u32>,
    reals: HashMap<Term, u32>,
}

impl AtomInterner {
    pub fn new() -> AtomInterner {
        AtomInterner::default()
    }

    fn atom(&mut self, t: &Term) -> Result<ArithExpr, UnsupportedConstruct> {
        let (table, ctor): (_, fn(u32) -> ArithExpr) = match t.sort() {
            Sort::Int => (&mut self.ints, ArithExpr::IntVar),
            Sort::Real => (&mut self.reals, ArithExpr::RealVar),
            other => return Err(UnsupportedConstruct(format!("`{t}` has non-arithmetic sort {other}"))),
        };
        let next = table.len() as u32;
        Ok(ctor(*table.entry(t.clone()).or_insert(next)))
    }

    pub fn convert(&mut self, t: &Term) -> Result<ArithExpr, UnsupportedConstruct> {
        match t.node() {
            TermNode::Var(..) => self.atom(t),
            TermNode::IntLit(_) | TermNode::RatLit(_) => Ok(ArithExpr::Const(t.as_rat().expect("literal"))),
            TermNode::ToReal(inner) => Ok(ArithExpr::cast(self.convert(inner)?)),
            TermNode::App(Op::Uf(_), _) => self.atom(t),
            TermNode::App(op @ (Op::Add | Op::Sub | Op::Mul), args) if args.len() >= 2 => {
                let mut it = args.iter();
                let first = self.convert(it.next().expect("nonempty"))?;
                it.try_fold(first, |acc, a| {
                    let a = self.convert(a)?;
                    Ok(match op {
                        Op::Add => ArithExpr::add(acc, a),
                        Op::Sub => ArithExpr::sub(acc, a),
                        _ => ArithExpr::mul(acc, a),
                    })
                })
            }
            TermNode::App(Op::Neg, args) if args.len() == 1 => Ok(ArithExpr::neg(self.convert(&args[0])?)),
            TermNode::App(Op::Div, args) if args.len() == 2 => {
                let c = args[1]
                    .const_value()
                    .ok_or_else(|| UnsupportedConstruct(format!("non-constant divisor `{}`", args[1])))?;
                let inner = self.convert(&args[0])?;
                ArithExpr::div_const(inner, c).map_err(|_| UnsupportedConstruct(format!("zero divisor `{}`", args[1])))
            }
            _ => Err(UnsupportedConstruct(format!("`{t}`"))),
        }
    }
}
