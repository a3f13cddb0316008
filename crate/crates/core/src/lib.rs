//! Translation of first-order goals into SMT-LIB problems and step-by-step
//! checking of SMT refutation proofs.
//!
//! The modules mirror the pipeline: [`goal`] preprocesses and translates a
//! goal, [`smtlib`] reads and writes problems and proofs, [`rules`] decides
//! individual inferences (with [`poly`] backing the polynomial
//! normalization rule) and [`check`] walks a whole proof. [`solver`] and
//! [`bench`] drive external solvers and batch runs.

pub mod bench;
pub mod check;
pub mod clause;
pub mod goal;
pub mod poly;
pub mod rat;
pub mod rules;
pub mod smtlib;
pub mod solver;
pub mod term;

pub use check::{check_files, check_proof, check_text, CheckOptions, CheckReport, Failure, Verdict};
pub use clause::{flatten_and, flatten_or, rebuild_and, ClauseView};
pub use goal::{parse_goal, pipeline, preprocess, translate, Goal, GoalError, TranslationRecord};
pub use poly::{certify_poly_eq, denote, to_poly, ArithExpr, ArithTy, Monomial, PolyEq, Polynomial};
pub use rat::{rat_arith, DivisionByZero, Rat, RatOp};
pub use rules::{Registry, RuleError};
pub use smtlib::{parse_proof, parse_script, print_proof, print_script, ParseError, ProofDag, ProofStep, Script};
pub use solver::{solve_external, SolveOutcome, SolverError};
pub use term::{well_sorted, FunSig, Op, Sort, SortError, Term, TermNode};
