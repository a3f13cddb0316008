//! Decision procedures for individual proof rules.
//!
//! Every rule sees the conclusions of its premises, its arguments and the
//! claimed conclusion, and either accepts or explains the rejection. The
//! [`Registry`] maps the rule names used in proof text to these checkers.

mod arith;
mod resolution;
mod structural;

use std::collections::HashMap;
use std::fmt;
use std::sync::LazyLock;

use thiserror::Error;

use crate::poly::{Polynomial, UnsupportedConstruct};
use crate::term::{Sort, Term, TermNode};

pub use arith::{
    ac_normalize, check_ac_norm, check_mult_tangent, check_poly_norm, check_sum_ub, mult_tangent_conclusion,
    sum_ub_conclusion, Rel, RelChain,
};
pub use resolution::{check_resolution, resolve};
pub use structural::{check_structural, STRUCTURAL_RULES};

/// The rule that is counted but never checked.
pub const HOLE: &str = "hole";

/// Rule names every standard registry provides.
pub const CORE_RULES: [&str; 18] = [
    "resolution",
    "arith_sum_ub",
    "arith_mult_tangent",
    "arith_poly_norm",
    "ac_norm",
    "refl",
    "symm",
    "trans",
    "cong",
    "eq_resolve",
    "not_not_elim",
    "contra",
    "and_elim",
    "or_intro",
    "equiv_elim1",
    "equiv_elim2",
    "assume_elim",
    HOLE,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::First => "first",
            Side::Second => "second",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("pivot not found in the {side} premise")]
    PivotNotFound { side: Side },
    #[error("conclusion mismatch: expected `{expected}`, found `{found}`")]
    ConclusionMismatch { expected: Term, found: Term },
    #[error("rule needs at least one premise")]
    EmptyPremises,
    #[error("`{0}` is not a binary equality")]
    NotAnEquality(Term),
    #[error(transparent)]
    Unsupported(#[from] UnsupportedConstruct),
    #[error("sides differ by the polynomial {0}")]
    NormalFormMismatch(Polynomial),
    #[error("expected {expected} {what}, found {found}")]
    ArityMismatch { what: &'static str, expected: usize, found: usize },
    #[error("argument {index}: {reason}")]
    BadArgument { index: usize, reason: String },
    #[error("premise {index}: {reason}")]
    PremiseShape { index: usize, reason: String },
    #[error("index {index} out of range for {len} element(s)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
}

pub struct RuleInput<'a> {
    pub premises: &'a [Term],
    pub args: &'a [Term],
    pub conclusion: &'a Term,
}

pub type CheckFn = fn(&RuleInput<'_>) -> Result<(), RuleError>;

#[derive(Clone, Copy)]
pub struct RuleChecker {
    pub name: &'static str,
    pub check: CheckFn,
}

impl fmt::Debug for RuleChecker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleChecker").field("name", &self.name).finish()
    }
}

#[derive(Debug)]
pub struct Registry {
    rules: HashMap<&'static str, RuleChecker>,
}

static STANDARD: LazyLock<Registry> = LazyLock::new(|| {
    let mut reg = Registry { rules: HashMap::new() };
    let arith: [(&'static str, CheckFn); 5] = [
        ("resolution", resolution::rule),
        ("arith_sum_ub", arith::sum_ub_rule),
        ("arith_mult_tangent", arith::mult_tangent_rule),
        ("arith_poly_norm", arith::poly_norm_rule),
        ("ac_norm", arith::ac_norm_rule),
    ];
    for (name, check) in arith.into_iter().chain(STRUCTURAL_RULES.iter().copied()) {
        reg.rules.insert(name, RuleChecker { name, check });
    }
    reg.rules.insert(HOLE, RuleChecker { name: HOLE, check: |_| Ok(()) });
    reg
});

impl Registry {
    pub fn standard() -> &'static Registry {
        &STANDARD
    }

    pub fn get(&self, name: &str) -> Option<&RuleChecker> {
        self.rules.get(name)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut names: Vec<_> = self.rules.keys().copied().collect();
        names.sort_unstable();
        names
    }

    pub fn check(&self, rule: &str, input: &RuleInput<'_>) -> Result<(), RuleError> {
        let checker = self.get(rule).ok_or_else(|| RuleError::UnknownRule(rule.to_string()))?;
        (checker.check)(input)
    }
}

fn count(what: &'static str, expected: usize, found: usize) -> Result<(), RuleError> {
    if expected == found {
        Ok(())
    } else {
        Err(RuleError::ArityMismatch { what, expected, found })
    }
}

fn premises<'a>(input: &RuleInput<'a>, n: usize) -> Result<&'a [Term], RuleError> {
    count("premise(s)", n, input.premises.len())?;
    Ok(input.premises)
}

fn args<'a>(input: &RuleInput<'a>, n: usize) -> Result<&'a [Term], RuleError> {
    count("argument(s)", n, input.args.len())?;
    Ok(input.args)
}

fn bad_arg(index: usize, reason: impl Into<String>) -> RuleError {
    RuleError::BadArgument { index, reason: reason.into() }
}

fn bad_premise(index: usize, reason: impl Into<String>) -> RuleError {
    RuleError::PremiseShape { index, reason: reason.into() }
}

fn bool_arg(args: &[Term], index: usize) -> Result<bool, RuleError> {
    args[index].as_bool().ok_or_else(|| bad_arg(index, "expected `true` or `false`"))
}

fn index_arg(args: &[Term], index: usize) -> Result<usize, RuleError> {
    match args[index].node() {
        TermNode::IntLit(n) => usize::try_from(n).map_err(|_| bad_arg(index, "expected a non-negative index")),
        _ => Err(bad_arg(index, "expected a numeral")),
    }
}

fn bool_sorted(t: &Term, index: usize) -> Result<(), RuleError> {
    if t.sort() == Sort::Bool {
        Ok(())
    } else {
        Err(bad_arg(index, format!("`{t}` is not a formula")))
    }
}

fn expect_conclusion(expected: Term, found: &Term) -> Result<(), RuleError> {
    if &expected == found {
        Ok(())
    } else {
        Err(RuleError::ConclusionMismatch { expected, found: found.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_every_core_rule() {
        let reg = Registry::standard();
        for name in CORE_RULES {
            assert!(reg.get(name).is_some(), "{name}");
        }
        let conclusion = Term::ff();
        let input = RuleInput { premises: &[], args: &[], conclusion: &conclusion };
        assert_eq!(reg.check(HOLE, &input), Ok(()));
        assert_eq!(reg.check("nope", &input), Err(RuleError::UnknownRule("nope".into())));
    }
}
