//! SMT-LIB 2 scripts and step-based proof text.
//!
//! Accepted commands: `declare-sort` (arity 0), `declare-const`,
//! `declare-fun`, `define-fun` (expanded at use), `assert`, `check-sat`,
//! `set-logic` (recorded only); `set-info` and `set-option` are ignored.
//! `let` is substituted away and `>`/`>=` are read as `<`/`<=` with the
//! operands swapped.

mod proof;
mod reader;
mod script;
mod sexp;

use thiserror::Error;

use crate::term::SortError;

pub use proof::{is_valid_id, parse_proof, print_proof, Assumption, ProofDag, ProofStep};
pub use reader::{Define, Signature, TermReader};
pub use script::{parse_script, print_script, Script};
pub use sexp::{read_all, Atom, Sexp, SexpKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error("unknown premise `{0}` (premises must refer to earlier ids)")]
    UnknownPremise(String),
    #[error("assumption `{0}` does not match any assertion of the problem")]
    AssumeMismatch(String),
}
