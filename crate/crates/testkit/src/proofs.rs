//! Generated problem/proof pairs.

use std::fmt::Write;

/// A refutation with exactly `steps` resolution steps (`steps >= 1`).
///
/// The problem asserts `p0`, the implications `(or (not p{i-1}) p{i})` and
/// finally `(not p{steps-1})`. Step `t{i}` derives `p{i}` from `p{i-1}`;
/// the last step resolves `p{steps-1}` against its negation.
pub fn resolution_chain(steps: usize) -> (String, String) {
    assert!(steps >= 1, "a refutation needs a step");
    let n = steps;
    let mut problem = String::with_capacity(n * 64);
    let mut proof = String::with_capacity(n * 160);
    for i in 0..n {
        writeln!(problem, "(declare-const p{i} Bool)").unwrap();
    }
    problem.push_str("(assert p0)\n");
    proof.push_str("(assume a0 p0)\n");
    for i in 1..n {
        writeln!(problem, "(assert (or (not p{}) p{i}))", i - 1).unwrap();
        writeln!(proof, "(assume c{i} (or (not p{}) p{i}))", i - 1).unwrap();
    }
    writeln!(problem, "(assert (not p{}))\n(check-sat)", n - 1).unwrap();
    writeln!(proof, "(assume neg (not p{}))", n - 1).unwrap();
    let mut prev = "a0".to_string();
    for i in 1..n {
        writeln!(proof, "(step t{i} p{i} :rule resolution :premises ({prev} c{i}) :args (true p{}))", i - 1).unwrap();
        prev = format!("t{i}");
    }
    writeln!(proof, "(step t{n} false :rule resolution :premises ({prev} neg) :args (true p{}))", n - 1).unwrap();
    (problem, proof)
}
