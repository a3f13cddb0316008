//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line, failing or not.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;

use smtrecon_core::clause::{flatten_or, ClauseView};
use smtrecon_core::poly::{AtomInterner, Monomial};
use smtrecon_core::rules::{
    check_mult_tangent, check_resolution, check_sum_ub, mult_tangent_conclusion, resolve, sum_ub_conclusion, Rel,
    RelChain, RuleError, CORE_RULES, HOLE,
};
use smtrecon_core::{
    certify_poly_eq, check_proof, denote, parse_goal, parse_proof, parse_script, pipeline, preprocess, print_proof,
    print_script, to_poly, ArithExpr, CheckOptions, Failure, ParseError, PolyEq, Polynomial, ProofDag, Rat, Script,
    Sort, Term, Verdict,
};
use smtrecon_testkit::arith::{random_context, random_pair, Shape};
use smtrecon_testkit::instances::{SumUbInstance, TangentInstance};
use smtrecon_testkit::proofs::resolution_chain;
use smtrecon_testkit::seeded;
use smtrecon_testkit::terms::{random_goal, random_script, GoalShape};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixtures().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Stems of every `NAME.smt2`/`NAME.cpcs` fixture pair.
fn fixture_stems() -> Vec<String> {
    let mut stems: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .filter_map(|e| {
            let path = e.unwrap().path();
            (path.extension()? == "cpcs").then(|| path.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    stems.sort();
    stems
}

fn load(stem: &str) -> (Script, ProofDag) {
    let script = parse_script(&read(&format!("{stem}.smt2"))).unwrap();
    let dag = parse_proof(&read(&format!("{stem}.cpcs")), &script).unwrap();
    (script, dag)
}

fn smtrecon(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_smtrecon")).args(args).output().expect("binary runs")
}

fn tokens(text: &str) -> Vec<String> {
    text.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn golden_translation() -> Outcome {
    let expected = read("group_identity.smt2");
    let record = parse_goal(&read("group_identity.goal")).and_then(|g| pipeline(&g)).map_err(|e| e.to_string())?;
    let text = print_script(&record.script);
    let (got, want) = (tokens(&text), tokens(&expected));
    if let Some(i) = got.iter().zip(&want).position(|(a, b)| a != b) {
        return Err(format!("token {i} differs: `{}` vs `{}`", got[i], want[i]));
    }
    ensure!(got.len() == want.len(), "{} tokens, expected {}", got.len(), want.len());
    ensure!(text == expected, "tokens agree but layout differs");
    Ok(format!("{} tokens identical", want.len()))
}

fn poly_example() -> Outcome {
    use ArithExpr::{IntVar, RealVar};
    let (x, y, z) = (IntVar(0), IntVar(1), RealVar(0));
    let four = &Rat::from(2) * &Rat::from(2);
    // 1 * cast(x + y) * z / 4 = 1 / (2 * 2) * (z * cast(y) + cast(x) * z)
    let lhs = ArithExpr::div_const(
        ArithExpr::mul(
            ArithExpr::mul(ArithExpr::constant(1), ArithExpr::cast(ArithExpr::add(x.clone(), y.clone()))),
            z.clone(),
        ),
        Rat::from(4),
    )
    .unwrap();
    let rhs = ArithExpr::mul(
        ArithExpr::div_const(ArithExpr::constant(1), four).unwrap(),
        ArithExpr::add(ArithExpr::mul(z.clone(), ArithExpr::cast(y)), ArithExpr::mul(ArithExpr::cast(x), z)),
    );
    ensure!(certify_poly_eq(&lhs, &rhs) == PolyEq::Equal, "sides not certified equal");

    // x -> 0, z -> 1, y -> 2: the normal form is 1/4 x z + 1/4 y z.
    let quarter = Rat::new(1, 4).unwrap();
    let expected =
        Polynomial::from_monomials(vec![Monomial::new(quarter.clone(), vec![0, 1]), Monomial::new(quarter, vec![1, 2])]);
    ensure!(to_poly(&lhs) == expected, "normal form {:?}", to_poly(&lhs));

    // The same equality as parsed from the fixture problem.
    let script = parse_script(&read("poly_norm.smt2")).unwrap();
    let asserted = script.assertions[0].as_not().cloned().ok_or("fixture assertion is not a negation")?;
    let (l, r) = asserted.as_eq().ok_or("fixture assertion is not an equality")?;
    let mut atoms = AtomInterner::new();
    let (pl, pr) = (atoms.convert(l).map_err(|e| e.to_string())?, atoms.convert(r).map_err(|e| e.to_string())?);
    ensure!(certify_poly_eq(&pl, &pr) == PolyEq::Equal, "parsed sides not certified equal");

    let at = |i: &[i64], q: Rat| {
        let ints: Vec<BigInt> = i.iter().map(|&n| BigInt::from(n)).collect();
        (denote(&lhs, &ints, &[q.clone()]).unwrap(), denote(&rhs, &ints, &[q]).unwrap())
    };
    ensure!(at(&[2, 3], Rat::from(4)) == (Rat::from(5), Rat::from(5)), "wrong value at x=2, y=3, z=4");
    let mut rng = seeded(101);
    let shape = Shape { int_vars: 2, real_vars: 1, ..Shape::default() };
    for _ in 0..100 {
        let (ints, reals) = random_context(&mut rng, &shape);
        let (a, b) = (denote(&lhs, &ints, &reals).unwrap(), denote(&rhs, &ints, &reals).unwrap());
        ensure!(a == b, "sides differ at {ints:?} {reals:?}: {a} vs {b}");
    }
    Ok("certified; normal form 1/4*x*z + 1/4*y*z; 100 contexts agree".into())
}

fn poly_differential() -> Outcome {
    let mut rng = seeded(102);
    let shape = Shape::default();
    ensure!(shape.max_depth <= 6 && shape.int_vars + shape.real_vars <= 6, "shape out of range");
    let (mut equal, mut unequal, mut separated, mut violations) = (0, 0, 0, 0);
    for _ in 0..1000 {
        let (e1, e2, _) = random_pair(&mut rng, &shape);
        match certify_poly_eq(&e1, &e2) {
            PolyEq::Equal => {
                equal += 1;
                for _ in 0..100 {
                    let (ints, reals) = random_context(&mut rng, &shape);
                    if denote(&e1, &ints, &reals).unwrap() != denote(&e2, &ints, &reals).unwrap() {
                        violations += 1;
                    }
                }
            }
            PolyEq::NotEqual(diff) => {
                unequal += 1;
                for _ in 0..5 {
                    let (ints, reals) = random_context(&mut rng, &shape);
                    let (a, b) = (denote(&e1, &ints, &reals).unwrap(), denote(&e2, &ints, &reals).unwrap());
                    ensure!(diff.denote(&ints, &reals).unwrap() == &b - &a, "difference certificate is wrong");
                    if a != b {
                        separated += 1;
                        break;
                    }
                }
            }
        }
    }
    ensure!(violations == 0, "{violations} disagreements among {equal} equal pairs");
    ensure!(equal >= 100 && unequal >= 100, "unbalanced suite: {equal} equal, {unequal} unequal");
    let rate = separated as f64 / unequal as f64;
    ensure!(rate >= 0.99, "only {separated}/{unequal} unequal pairs separated");
    Ok(format!("{equal} equal pairs, 0 violations; {separated}/{unequal} unequal pairs separated ({:.1}%)", rate * 100.0))
}

// Literal `l` is atom `l / 2`, negated when odd.
fn clause_holds(c: &[usize], assignment: u32) -> bool {
    c.iter().any(|&l| (assignment >> (l / 2) & 1 == 1) == (l % 2 == 0))
}

fn resolution_oracle() -> Outcome {
    let atoms: Vec<Term> = (0..4).map(|i| Term::var(&format!("p{i}"), Sort::Bool)).collect();
    let lits: Vec<Term> = atoms.iter().flat_map(|a| [a.clone(), Term::not(a.clone())]).collect();
    let mut clauses: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=3 {
        let mut layer = vec![vec![]];
        for _ in 0..len {
            layer = layer.into_iter().flat_map(|c: Vec<usize>| (0..8).map(move |l| [c.clone(), vec![l]].concat())).collect();
        }
        clauses.extend(layer);
    }
    ensure!(clauses.len() == 585, "{} clauses", clauses.len());
    let view = |c: &[usize]| ClauseView::new(c.iter().map(|&l| lits[l].clone()).collect());
    let views: Vec<ClauseView> = clauses.iter().map(|c| view(c)).collect();

    let (mut accepted, mut rejected, mut mutants) = (0u64, 0u64, 0u64);
    for (c1, v1) in clauses.iter().zip(&views) {
        for (c2, v2) in clauses.iter().zip(&views) {
            for (atom, pivot) in atoms.iter().enumerate() {
                for pol in [true, false] {
                    let (pos, neg) = (2 * atom, 2 * atom + 1);
                    let (in1, in2) = if pol { (pos, neg) } else { (neg, pos) };
                    let (i, j) = match (c1.iter().position(|&l| l == in1), c2.iter().position(|&l| l == in2)) {
                        (Some(i), Some(j)) => (i, j),
                        _ => {
                            ensure!(resolve(v1, v2, pol, pivot).is_err(), "accepted a missing pivot: {c1:?} {c2:?}");
                            rejected += 1;
                            continue;
                        }
                    };
                    let mut expected: Vec<usize> = c1.clone();
                    expected.remove(i);
                    let mut rest = c2.clone();
                    rest.remove(j);
                    expected.extend(rest);
                    let claimed = view(&expected);
                    ensure!(
                        check_resolution(v1, v2, pol, pivot, &claimed).is_ok(),
                        "rejected the resolvent of {c1:?} and {c2:?} on {atom} ({pol})"
                    );
                    accepted += 1;
                    for a in 0..16u32 {
                        if clause_holds(c1, a) && clause_holds(c2, a) {
                            ensure!(clause_holds(&expected, a), "{c1:?}, {c2:?} do not entail {expected:?}");
                        }
                    }
                    let mut variants: Vec<Vec<usize>> = Vec::new();
                    for k in 0..expected.len() {
                        for l in (0..8).filter(|&l| l != expected[k]) {
                            let mut m = expected.clone();
                            m[k] = l;
                            variants.push(m);
                        }
                        let mut m = expected.clone();
                        m.remove(k);
                        variants.push(m);
                    }
                    for k in 0..=expected.len() {
                        for l in 0..8 {
                            let mut m = expected.clone();
                            m.insert(k, l);
                            variants.push(m);
                        }
                    }
                    for m in variants {
                        ensure!(
                            matches!(
                                check_resolution(v1, v2, pol, pivot, &view(&m)),
                                Err(RuleError::ConclusionMismatch { .. })
                            ),
                            "accepted mutant {m:?} of {expected:?}"
                        );
                        mutants += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{accepted} accepted instances entailed, {rejected} missing pivots rejected, {mutants} mutants rejected"))
}

fn arithmetic_oracles() -> Outcome {
    let mut rng = seeded(105);
    let (mut points, mut premise_points) = (0u64, 0u64);
    for k in 0..1000 {
        let n = rng.random_range(1..=6);
        let inst = SumUbInstance::random(&mut rng, n, k % 10 == 0);
        let conclusion = sum_ub_conclusion(&inst.premises).map_err(|e| e.to_string())?;
        check_sum_ub(&inst.premises, &conclusion).map_err(|e| format!("own conclusion rejected: {e}"))?;
        let rel = RelChain::from_term(&conclusion).map_err(|e| e.to_string())?.rel;
        let strict = inst.premises.iter().any(|p| p.rel == Rel::Lt);
        let all_eq = inst.premises.iter().all(|p| p.rel == Rel::Eq);
        ensure!((rel == Rel::Lt) == strict, "relation {rel:?} for strict = {strict}");
        ensure!(!all_eq || rel == Rel::Le, "all-= chain concluded {rel:?}");
        for p in 0..1000 {
            let m = inst.sample(&mut rng, p % 2 == 0);
            points += 1;
            if inst.premises.iter().all(|q| m.holds(&q.to_term())) {
                premise_points += 1;
                ensure!(m.holds(&conclusion), "sum bound fails at a point satisfying {:?}", inst.premises);
            }
        }
    }
    ensure!(premise_points >= 500_000, "only {premise_points} points satisfy the premises");

    // x = y = 1 against x = 1, y = 1 sums to an upper bound, not an equality.
    let (x, y) = (Term::var("x", Sort::Int), Term::var("y", Sort::Real));
    let chain = [
        RelChain::new(Rel::Eq, x.clone(), Term::int(1)).unwrap(),
        RelChain::new(Rel::Eq, y.clone(), Term::rat(Rat::from(1))).unwrap(),
    ];
    let le = sum_ub_conclusion(&chain).map_err(|e| e.to_string())?;
    ensure!(RelChain::from_term(&le).map_err(|e| e.to_string())?.rel == Rel::Le, "all-= chain gave {le}");

    let mut tangent_points = 0u64;
    let mut sigmas = [0; 2];
    for _ in 0..1000 {
        let t = TangentInstance::random(&mut rng);
        sigmas[t.sigma as usize] += 1;
        let c = mult_tangent_conclusion(&t.x, &t.y, &t.a, &t.b, t.sigma);
        check_mult_tangent(&t.x, &t.y, &t.a, &t.b, t.sigma, &c).map_err(|e| format!("own conclusion rejected: {e}"))?;
        ensure!(
            check_mult_tangent(&t.x, &t.y, &t.a, &t.b, !t.sigma, &c).is_err(),
            "conclusion accepted for both sigma"
        );
        for _ in 0..1000 {
            let m = t.sample(&mut rng);
            ensure!(m.holds(&c), "tangent lemma fails: {c} at x={:?}, y={:?}", m.consts["x"], m.consts["y"]);
            tangent_points += 1;
        }
    }
    ensure!(sigmas[0] > 0 && sigmas[1] > 0, "one sigma never drawn");
    Ok(format!(
        "sum_ub: {points} points, {premise_points} satisfying, 0 violations; tangent: {tangent_points} points, 0 violations"
    ))
}

fn invalid_at(report: &Verdict, id: &str, want: fn(&Failure) -> bool) -> bool {
    matches!(report, Verdict::Invalid { step, failure } if step == id && want(failure))
}

fn end_to_end() -> Outcome {
    let opts = CheckOptions::default();
    let mut valid = 0;
    let mut used = BTreeSet::new();
    let mut loaded = Vec::new();
    for stem in fixture_stems() {
        let (script, dag) = load(&stem);
        let verdict = check_proof(&script, &dag, opts).verdict;
        let want = if stem == "holes" { Verdict::ValidWithHoles } else { Verdict::Valid };
        ensure!(verdict == want, "{stem}: {verdict}");
        used.extend(dag.steps.iter().map(|s| s.rule.clone()));
        if stem != "holes" {
            valid += 1;
            loaded.push((stem, script, dag));
        }
    }
    ensure!(valid >= 10, "only {valid} valid fixtures");
    ensure!(loaded.iter().any(|(s, ..)| s == "group_identity"), "no refutation of the translated example");
    let unused: Vec<&str> = CORE_RULES.iter().copied().filter(|r| !used.contains(*r)).collect();
    ensure!(unused.is_empty(), "rules never exercised: {unused:?}");

    let mut counts = [0usize; 4];
    for (stem, script, dag) in &loaded {
        for (i, step) in dag.steps.iter().enumerate() {
            // Corrupted pivot: the pivot is looked up with the wrong polarity.
            if step.rule == "resolution" {
                let mut m = dag.clone();
                let pol = m.steps[i].args[0].as_bool().unwrap();
                m.steps[i].args[0] = Term::bool(!pol);
                let v = check_proof(script, &m, opts).verdict;
                ensure!(
                    invalid_at(&v, &step.id, |f| matches!(f, Failure::Rule(RuleError::PivotNotFound { .. }))),
                    "{stem}/{}: flipped pivot gave {v}",
                    step.id
                );
                counts[0] += 1;
            }
            // Permuted conclusion: two literals or the sides of an equality swapped.
            let permuted = match step.rule.as_str() {
                "resolution" | "factoring" | "equiv_elim1" | "equiv_elim2" | "not_equiv_elim1" | "not_equiv_elim2" => {
                    let mut lits = flatten_or(&step.conclusion).literals;
                    (lits.len() >= 2 && lits[0] != lits[1]).then(|| {
                        lits.swap(0, 1);
                        ClauseView::new(lits).to_term()
                    })
                }
                "symm" | "trans" => {
                    step.conclusion.as_eq().filter(|(a, b)| a != b).map(|(a, b)| Term::eq(b.clone(), a.clone()))
                }
                _ => None,
            };
            if let Some(c) = permuted {
                let mut m = dag.clone();
                m.steps[i].conclusion = c;
                let v = check_proof(script, &m, opts).verdict;
                ensure!(
                    invalid_at(&v, &step.id, |f| matches!(f, Failure::Rule(RuleError::ConclusionMismatch { .. }))),
                    "{stem}/{}: permuted conclusion gave {v}",
                    step.id
                );
                counts[1] += 1;
            }
            // Forward premise reference: point at the next step.
            if !step.premises.is_empty() && i + 1 < dag.steps.len() {
                let mut m = dag.clone();
                let later = dag.steps[i + 1].id.clone();
                m.steps[i].premises[0] = later.clone();
                match parse_proof(&print_proof(&m), script) {
                    Err(ParseError::UnknownPremise(id)) if id == later => counts[2] += 1,
                    other => return Err(format!("{stem}/{}: forward reference gave {other:?}", step.id)),
                }
            }
        }
    }

    // Wrong cast placement: the cast wraps the integer sum instead of each summand.
    let (sum_script, _) = load("sum_ub");
    let proof = read("sum_ub.cpcs");
    let lhs = "(+ (+ (to_real a) (to_real c)) x)";
    let rhs = "(+ (+ (to_real b) (to_real d)) y)";
    ensure!(proof.contains(lhs) && proof.contains(rhs), "sum_ub fixture changed");
    // Only the derived step changes; the assumption must still match the problem.
    let recast = |f: &dyn Fn(&str) -> String| {
        proof.lines().map(|l| if l.starts_with("(step t1 ") { f(l) } else { l.to_string() } + "\n").collect::<String>()
    };
    for bad in [
        recast(&|l| l.replace(lhs, "(+ (to_real (+ a c)) x)")),
        recast(&|l| l.replace(rhs, "(+ (to_real (+ b d)) y)")),
        recast(&|l| l.replace(lhs, "(+ (to_real (+ a c)) x)").replace(rhs, "(+ (to_real (+ b d)) y)")),
    ] {
        let dag = parse_proof(&bad, &sum_script).map_err(|e| e.to_string())?;
        let v = check_proof(&sum_script, &dag, opts).verdict;
        ensure!(
            invalid_at(&v, "t1", |f| matches!(f, Failure::Rule(RuleError::ConclusionMismatch { .. }))),
            "wrong cast gave {v}"
        );
        counts[3] += 1;
    }

    let total: usize = counts.iter().sum();
    ensure!(total >= 30 && counts.iter().all(|&c| c > 0), "mutants per kind {counts:?}");
    Ok(format!(
        "{valid} fixtures valid, all {} rules exercised; {total} mutants rejected \
         ({} pivot, {} permuted, {} forward reference, {} cast)",
        CORE_RULES.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3]
    ))
}

fn hole_accounting() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for stem in fixture_stems().into_iter().filter(|s| s != "holes") {
        let (script, dag) = load(&stem);
        let problem = fixtures().join(format!("{stem}.smt2"));
        let problem = problem.to_str().unwrap();
        for i in 0..dag.steps.len() {
            let mut m = dag.clone();
            m.steps[i].rule = HOLE.to_string();
            m.steps[i].args.clear();
            ensure!(
                check_proof(&script, &m, CheckOptions::default()).verdict == Verdict::ValidWithHoles,
                "{stem}: hole at step {i} is not valid_with_holes"
            );
            let path = dir.path().join(format!("{stem}-{i}.cpcs"));
            std::fs::write(&path, print_proof(&m)).map_err(|e| e.to_string())?;
            let proof = path.to_str().unwrap();
            let o = smtrecon(&["check", problem, proof]);
            let out = String::from_utf8_lossy(&o.stdout);
            ensure!(
                o.status.code() == Some(10) && out.contains("verdict: valid_with_holes\n") && out.contains("holes: 1\n"),
                "{stem}: hole at step {i}: exit {:?}\n{out}",
                o.status.code()
            );
            let o = smtrecon(&["check", "--allow-holes", problem, proof]);
            ensure!(o.status.code() == Some(0), "{stem}: --allow-holes exit {:?}", o.status.code());
            runs += 1;
        }
    }
    Ok(format!("{runs} single-hole variants: exit 10, and 0 with --allow-holes"))
}

fn children_peak_rss_bytes() -> u64 {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    // SAFETY: getrusage only writes into the provided struct.
    let rc = unsafe { libc::getrusage(libc::RUSAGE_CHILDREN, usage.as_mut_ptr()) };
    assert_eq!(rc, 0, "getrusage failed");
    // ru_maxrss is in kilobytes on Linux.
    unsafe { usage.assume_init() }.ru_maxrss as u64 * 1024
}

fn scale_smoke() -> Outcome {
    const STEPS: usize = 100_000;
    let (problem, proof) = resolution_chain(STEPS);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (pp, qp) = (dir.path().join("chain.smt2"), dir.path().join("chain.cpcs"));
    std::fs::write(&pp, problem).map_err(|e| e.to_string())?;
    std::fs::write(&qp, proof).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let o = smtrecon(&["check", pp.to_str().unwrap(), qp.to_str().unwrap()]);
    let wall = started.elapsed();
    let out = String::from_utf8_lossy(&o.stdout);
    ensure!(o.status.code() == Some(0), "exit {:?}\n{out}", o.status.code());
    ensure!(out.contains(&format!("steps_total: {STEPS}\n")), "{out}");
    let peak = children_peak_rss_bytes();
    ensure!(peak < 1 << 30, "peak RSS {} MiB", peak >> 20);
    let check_ms = out.lines().find_map(|l| l.strip_prefix("check_ms: ")).unwrap_or("?");
    Ok(format!(
        "{STEPS} steps valid; peak RSS {} MiB; wall {:.2}s (check {check_ms} ms)",
        peak >> 20,
        wall.as_secs_f64()
    ))
}

fn round_trips() -> Outcome {
    let mut rng = seeded(109);
    for i in 0..500 {
        let s = random_script(&mut rng);
        let text = print_script(&s);
        let back = parse_script(&text).map_err(|e| format!("script {i}: {e}"))?;
        ensure!(back == s, "script {i} changed:\n{text}");
    }
    let shape = GoalShape { max_depth: 4, max_hyps: 3, reals: true };
    for i in 0..500 {
        let g = random_goal(&mut rng, &shape);
        let once = preprocess(&g).map_err(|e| format!("goal {i}: {e}"))?;
        let twice = preprocess(&once).map_err(|e| format!("goal {i}: {e}"))?;
        ensure!(twice == once, "goal {i} not idempotent: {}", g.conclusion);
    }
    Ok("500 scripts reparse identically; 500 goals preprocess idempotently".into())
}

struct Criterion {
    name: &'static str,
    run: fn() -> Outcome,
    budget: Option<Duration>,
}

fn main() {
    // Test filters passed by `cargo test` are ignored; `--list` prints nothing.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "golden translation", run: golden_translation, budget: secs(1) },
        Criterion { name: "poly_norm worked example", run: poly_example, budget: secs(1) },
        Criterion { name: "poly_norm differential suite", run: poly_differential, budget: secs(60) },
        Criterion { name: "resolution oracle", run: resolution_oracle, budget: secs(60) },
        Criterion { name: "arithmetic rule oracles", run: arithmetic_oracles, budget: secs(60) },
        Criterion { name: "end-to-end fixtures and mutants", run: end_to_end, budget: secs(5) },
        Criterion { name: "hole accounting", run: hole_accounting, budget: None },
        Criterion { name: "scale smoke test", run: scale_smoke, budget: None },
        Criterion { name: "round trips", run: round_trips, budget: None },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = started.elapsed();
        let result = result.and_then(|detail| match c.budget {
            Some(b) if took > b => Err(format!("{detail}; over the {}s budget", b.as_secs())),
            _ => Ok(detail),
        });
        match result {
            Ok(detail) => println!("PASS {} {}: {detail} [{:.2}s]", i + 1, c.name, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {}: {why} [{:.2}s]", i + 1, c.name, took.as_secs_f64());
            }
        }
    }
    println!("\nacceptance: {} passed; {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
