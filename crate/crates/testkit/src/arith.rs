//! Random arithmetic expressions, equivalence-preserving rewrites and
//! exact rational sampling.

use num_bigint::BigInt;
use rand::Rng;

use smtrecon_core::{ArithExpr, ArithTy, Rat};

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_depth: u32,
    pub int_vars: u32,
    pub real_vars: u32,
    /// Expressions whose degree bound exceeds this are regenerated, which
    /// keeps normal forms small.
    pub max_degree: u32,
}

impl Default for Shape {
    fn default() -> Shape {
        Shape { max_depth: 6, int_vars: 3, real_vars: 3, max_degree: 8 }
    }
}

/// `p/q` with `|p| <= num` and `1 <= q <= den`.
pub fn random_rat<R: Rng + ?Sized>(rng: &mut R, num: i64, den: i64) -> Rat {
    Rat::new(rng.random_range(-num..=num), rng.random_range(1..=den)).expect("positive denominator")
}

pub fn random_nonzero_rat<R: Rng + ?Sized>(rng: &mut R, num: i64, den: i64) -> Rat {
    loop {
        let q = random_rat(rng, num, den);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Values for `IntVar(0..)` and `RealVar(0..)`.
pub fn random_context<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> (Vec<BigInt>, Vec<Rat>) {
    let ints = (0..shape.int_vars).map(|_| BigInt::from(rng.random_range(-10i64..=10))).collect();
    let reals = (0..shape.real_vars).map(|_| random_rat(rng, 10, 6)).collect();
    (ints, reals)
}

/// Upper bound on the total degree of the normal form.
pub fn degree(e: &ArithExpr) -> u32 {
    use ArithExpr::*;
    match e {
        IntVar(_) | RealVar(_) => 1,
        Const(_) => 0,
        Add(a, b) | Sub(a, b) => degree(a).max(degree(b)),
        Mul(a, b) => degree(a) + degree(b),
        Neg(a) | DivConst(a, _) | Cast(a) => degree(a),
    }
}

pub fn size(e: &ArithExpr) -> usize {
    use ArithExpr::*;
    match e {
        IntVar(_) | RealVar(_) | Const(_) => 1,
        Add(a, b) | Sub(a, b) | Mul(a, b) => 1 + size(a) + size(b),
        Neg(a) | DivConst(a, _) | Cast(a) => 1 + size(a),
    }
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, shape: &Shape, ty: ArithTy) -> ArithExpr {
    let vars = match ty {
        ArithTy::Int => shape.int_vars,
        ArithTy::Real => shape.real_vars,
    };
    if vars > 0 && rng.random_bool(0.7) {
        let i = rng.random_range(0..vars);
        return match ty {
            ArithTy::Int => ArithExpr::IntVar(i),
            ArithTy::Real => ArithExpr::RealVar(i),
        };
    }
    match ty {
        ArithTy::Int => ArithExpr::constant(Rat::from(rng.random_range(-5i64..=5))),
        ArithTy::Real => ArithExpr::Const(random_rat(rng, 6, 4)),
    }
}

fn gen<R: Rng + ?Sized>(rng: &mut R, shape: &Shape, ty: ArithTy, depth: u32) -> ArithExpr {
    if depth == 0 || rng.random_bool(0.3) {
        return leaf(rng, shape, ty);
    }
    let d = depth - 1;
    let choices = if ty == ArithTy::Real { 7 } else { 5 };
    match rng.random_range(0..choices) {
        0 | 1 => ArithExpr::add(gen(rng, shape, ty, d), gen(rng, shape, ty, d)),
        2 => ArithExpr::sub(gen(rng, shape, ty, d), gen(rng, shape, ty, d)),
        3 => ArithExpr::mul(gen(rng, shape, ty, d), gen(rng, shape, ty, d)),
        4 => ArithExpr::neg(gen(rng, shape, ty, d)),
        5 => ArithExpr::div_const(gen(rng, shape, ty, d), random_nonzero_rat(rng, 5, 3)).expect("nonzero"),
        _ => ArithExpr::cast(gen(rng, shape, ArithTy::Int, d)),
    }
}

/// A random well-typed expression of type `ty`.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, shape: &Shape, ty: ArithTy) -> ArithExpr {
    loop {
        let e = gen(rng, shape, ty, shape.max_depth);
        if degree(&e) <= shape.max_degree {
            return e;
        }
    }
}

fn int_const(n: i64) -> ArithExpr {
    ArithExpr::constant(Rat::from(n))
}

// One rewrite at the root that keeps value and type. Falls back to a
// generic rewrite when no structural one applies.
fn rewrite_root<R: Rng + ?Sized>(rng: &mut R, e: &ArithExpr, ty: ArithTy) -> ArithExpr {
    use ArithExpr::*;
    let specific = match e {
        Add(a, b) => match rng.random_range(0..2) {
            0 => Some(ArithExpr::add((**b).clone(), (**a).clone())),
            _ => match &**a {
                Add(x, y) => Some(ArithExpr::add((**x).clone(), ArithExpr::add((**y).clone(), (**b).clone()))),
                _ => None,
            },
        },
        Mul(a, b) => match (&**a, &**b, rng.random_range(0..2)) {
            (_, Add(x, y), 0) => Some(ArithExpr::add(
                ArithExpr::mul((**a).clone(), (**x).clone()),
                ArithExpr::mul((**a).clone(), (**y).clone()),
            )),
            (Add(x, y), _, 0) => Some(ArithExpr::add(
                ArithExpr::mul((**x).clone(), (**b).clone()),
                ArithExpr::mul((**y).clone(), (**b).clone()),
            )),
            _ => Some(ArithExpr::mul((**b).clone(), (**a).clone())),
        },
        Sub(a, b) => Some(ArithExpr::add((**a).clone(), ArithExpr::neg((**b).clone()))),
        Neg(a) => Some(ArithExpr::mul(int_const(-1), (**a).clone())),
        DivConst(a, c) => Some(ArithExpr::mul(ArithExpr::Const(c.get().recip().expect("nonzero")), (**a).clone())),
        Cast(inner) => match &**inner {
            Add(x, y) => Some(ArithExpr::add(ArithExpr::cast((**x).clone()), ArithExpr::cast((**y).clone()))),
            Mul(x, y) => Some(ArithExpr::mul(ArithExpr::cast((**x).clone()), ArithExpr::cast((**y).clone()))),
            Neg(x) => Some(ArithExpr::neg(ArithExpr::cast((**x).clone()))),
            Const(c) => Some(Const(c.clone())),
            _ => None,
        },
        Const(c) if rng.random_bool(0.5) => {
            let part = match ty {
                ArithTy::Int => Rat::from(rng.random_range(-3i64..=3)),
                ArithTy::Real => random_rat(rng, 3, 2),
            };
            Some(ArithExpr::add(Const(part.clone()), Const(c - &part)))
        }
        _ => None,
    };
    specific.unwrap_or_else(|| match rng.random_range(0..3) {
        0 => ArithExpr::add(e.clone(), int_const(0)),
        1 => ArithExpr::mul(int_const(1), e.clone()),
        _ => ArithExpr::neg(ArithExpr::neg(e.clone())),
    })
}

// Applies `f` to the `target`-th node in preorder, passing the type the
// node is expected to have.
fn at_node<R: Rng + ?Sized>(
    rng: &mut R,
    e: &ArithExpr,
    ty: ArithTy,
    target: &mut usize,
    f: &mut dyn FnMut(&mut R, &ArithExpr, ArithTy) -> ArithExpr,
) -> ArithExpr {
    use ArithExpr::*;
    if *target == 0 {
        *target = usize::MAX;
        return f(rng, e, ty);
    }
    *target -= 1;
    let mut go = |rng: &mut R, x: &ArithExpr, t: ArithTy, target: &mut usize| {
        if *target == usize::MAX {
            x.clone()
        } else {
            at_node(rng, x, t, target, f)
        }
    };
    match e {
        IntVar(_) | RealVar(_) | Const(_) => e.clone(),
        Add(a, b) => {
            let a = go(rng, a, ty, target);
            ArithExpr::add(a, go(rng, b, ty, target))
        }
        Sub(a, b) => {
            let a = go(rng, a, ty, target);
            ArithExpr::sub(a, go(rng, b, ty, target))
        }
        Mul(a, b) => {
            let a = go(rng, a, ty, target);
            ArithExpr::mul(a, go(rng, b, ty, target))
        }
        Neg(a) => ArithExpr::neg(go(rng, a, ty, target)),
        DivConst(a, c) => DivConst(Box::new(go(rng, a, ArithTy::Real, target)), c.clone()),
        Cast(a) => ArithExpr::cast(go(rng, a, ArithTy::Int, target)),
    }
}

/// `e` after one value-preserving rewrite at a random position.
pub fn rewrite<R: Rng + ?Sized>(rng: &mut R, e: &ArithExpr, ty: ArithTy) -> ArithExpr {
    let mut target = rng.random_range(0..size(e));
    at_node(rng, e, ty, &mut target, &mut |rng, x, t| rewrite_root(rng, x, t))
}

/// `e` with a random subterm replaced by a fresh random one of the same
/// type. Usually, not always, changes the value.
pub fn mutate<R: Rng + ?Sized>(rng: &mut R, e: &ArithExpr, ty: ArithTy, shape: &Shape) -> ArithExpr {
    let mut target = rng.random_range(0..size(e));
    at_node(rng, e, ty, &mut target, &mut |rng, _, t| gen(rng, shape, t, 2))
}

/// A pair of expressions of one random type. Half the pairs are related by
/// value-preserving rewrites only; the rest also carry a mutation.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> (ArithExpr, ArithExpr, ArithTy) {
    let ty = if rng.random_bool(0.5) { ArithTy::Int } else { ArithTy::Real };
    let e1 = random_expr(rng, shape, ty);
    let mut e2 = e1.clone();
    for _ in 0..rng.random_range(1..=4) {
        e2 = rewrite(rng, &e2, ty);
    }
    if rng.random_bool(0.5) {
        loop {
            let m = mutate(rng, &e2, ty, shape);
            if degree(&m) <= shape.max_degree {
                e2 = m;
                break;
            }
        }
    }
    (e1, e2, ty)
}
