//! Brute-force semantics for goals and scripts over small finite models.

use std::collections::BTreeSet;
use std::sync::Arc;

use smtrecon_core::{Goal, Script};

use crate::eval::for_each_model;

/// Finite model bounds: every uninterpreted sort has `carrier` elements and
/// Int ranges over `int_domain`.
#[derive(Debug, Clone)]
pub struct Bounds {
    pub carrier: usize,
    pub int_domain: Vec<i64>,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { carrier: 2, int_domain: (-2..=2).collect() }
    }
}

/// Whether the hypotheses entail the conclusion in every model within
/// `bounds`. Nat constants and binders range over the non-negative part of
/// the Int window.
pub fn goal_valid(g: &Goal, bounds: &Bounds) -> bool {
    let sorts: Vec<Arc<str>> = g.sorts.iter().map(|s| s.name.clone()).collect();
    for_each_model(&sorts, &g.consts, &g.funs, &g.nat_vars, bounds.carrier, &bounds.int_domain, |m| {
        !g.hypotheses.iter().all(|(_, h)| m.holds(h)) || m.holds(&g.conclusion)
    })
}

/// Whether some model within `bounds` satisfies every assertion.
pub fn script_satisfiable(s: &Script, bounds: &Bounds) -> bool {
    !for_each_model(&s.sort_decls, &s.const_decls, &s.fun_decls, &BTreeSet::new(), bounds.carrier, &bounds.int_domain, |m| {
        !s.assertions.iter().all(|a| m.holds(a))
    })
}
