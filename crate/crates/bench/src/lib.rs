//! Inputs shared by the benchmarks.

use std::path::PathBuf;

use smtrecon_core::{parse_proof, parse_script, ArithExpr, ProofDag, Script};
use smtrecon_testkit::arith::{random_pair, Shape};
use smtrecon_testkit::proofs::resolution_chain;
use smtrecon_testkit::seeded;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A parsed resolution chain of `steps` steps.
pub fn parsed_chain(steps: usize) -> (Script, ProofDag) {
    let (problem, proof) = resolution_chain(steps);
    let script = parse_script(&problem).unwrap();
    let dag = parse_proof(&proof, &script).unwrap();
    (script, dag)
}

/// Deterministic expression pairs for normalization.
pub fn poly_pairs(n: usize) -> Vec<(ArithExpr, ArithExpr)> {
    let mut rng = seeded(7);
    let shape = Shape::default();
    (0..n)
        .map(|_| {
            let (a, b, _) = random_pair(&mut rng, &shape);
            (a, b)
        })
        .collect()
}
