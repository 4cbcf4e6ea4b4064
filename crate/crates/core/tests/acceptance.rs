//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Expected values come from oracles written here, independent of the
//! library: a numeric Kleene evaluator (F=0, N=1, T=2 with min, max and
//! 2−x), hand-computed payoffs, and brute-force enumeration.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kleenebook::betting::{AnyBook, Verdict};
use kleenebook::gen::{self, FormulaGen, Target};
use kleenebook::kleene::{self, eval, meaning, meaning_by_scan, Formula, TruthValue, World};
use kleenebook::partial_set::{all_boolean_sets, generated_subalgebra, PartialSet, Universe};
use kleenebook::probability::{
    check_belief_axioms, check_derived_properties, induced_beliefs, measure_from_classical, ClassicalMeasure,
};
use kleenebook::synth::{
    self, check_classical_beliefs, stake_solver, synth_classical, synthesize_all, Certificate, ClassicalKind,
};
use rand::Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: usize, detail: String) -> Outcome {
    Outcome { pass: failures == 0, detail }
}

// ---- oracles -------------------------------------------------------------

fn digit(t: TruthValue) -> u8 {
    match t {
        TruthValue::F => 0,
        TruthValue::N => 1,
        TruthValue::T => 2,
    }
}

/// Independent strong Kleene evaluation on 0/1/2.
fn oracle(f: &Formula, w: &[u8]) -> u8 {
    match f {
        Formula::Var(i) => w[i - 1],
        Formula::Zero => 0,
        Formula::Neutral => 1,
        Formula::One => 2,
        Formula::Not(a) => 2 - oracle(a, w),
        Formula::And(a, b) => oracle(a, w).min(oracle(b, w)),
        Formula::Or(a, b) => oracle(a, w).max(oracle(b, w)),
    }
}

/// All of `{0,1,2}ⁿ`, first coordinate most significant.
fn all_worlds(n: usize) -> Vec<Vec<u8>> {
    (0..3usize.pow(n as u32))
        .map(|mut i| {
            let mut w = vec![0; n];
            for k in (0..n).rev() {
                w[k] = (i % 3) as u8;
                i /= 3;
            }
            w
        })
        .collect()
}

/// `(1,0)`, `(0,0)`, `(0,1)` for T, N, F.
fn pair_of(d: u8) -> (f64, f64) {
    match d {
        2 => (1.0, 0.0),
        1 => (0.0, 0.0),
        _ => (0.0, 1.0),
    }
}

fn info_leq(a: u8, b: u8) -> bool {
    a == b || a == 1
}

/// Payoff of a partial book at an oracle world, computed from scratch.
fn oracle_payoff(book: &AnyBook, w: &[u8]) -> (f64, f64) {
    let AnyBook::Partial(b) = book else { panic!("partial book expected") };
    b.bets().iter().fold((0.0, 0.0), |(u, v), bet| {
        let (a, c) = pair_of(oracle(&bet.formula, w));
        (u + bet.stake.u * (a - bet.quotient.x()), v + bet.stake.v * (c - bet.quotient.y()))
    })
}

const TOL: f64 = 1e-9;

// ---- criteria ------------------------------------------------------------

fn c1_die() -> Outcome {
    let u = Universe::labelled("die", ["1", "2", "3", "4", "5", "6"]);
    let ab = PartialSet::from_labels(u.clone(), &["2", "4", "6"], &["1", "3", "5"]).unwrap();
    let cd = PartialSet::from_labels(u.clone(), &["2", "4"], &["5"]).unwrap();
    let start = Instant::now();
    let mu = measure_from_classical(ClassicalMeasure::uniform(u).unwrap());
    let v1 = mu.measure(&ab).unwrap();
    let v2 = mu.measure(&cd).unwrap();
    let took = start.elapsed();
    let expect = [(v1, 0.5, 0.5), (v2, 1.0 / 3.0, 1.0 / 6.0)];
    let bad = expect.iter().filter(|(v, x, y)| (v.x() - x).abs() > TOL || (v.y() - y).abs() > TOL).count();
    let slow = usize::from(took >= Duration::from_millis(1));
    outcome(bad + slow, format!("mu(A,B) = {v1}, mu(C,D) = {v2}, {took:?}"))
}

fn c2_sum_rule() -> Outcome {
    let start = Instant::now();
    let mut rng = gen::rng(2);
    let mut failures = 0;
    let mut checks = 0;
    for n in 1..=3 {
        let g = FormulaGen::new(n);
        let ws: Vec<World> = kleene::worlds(n).unwrap().collect();
        for _ in 0..1000 {
            let (a, b) = (g.sample(&mut rng), g.sample(&mut rng));
            let (or, and) = (Formula::or(a.clone(), b.clone()), Formula::and(a.clone(), b.clone()));
            for w in &ws {
                let p = |f: &Formula| {
                    let v = eval(f, w).unwrap().pair();
                    (v.x(), v.y())
                };
                let lhs = (p(&or).0 + p(&and).0, p(&or).1 + p(&and).1);
                let rhs = (p(&a).0 + p(&b).0, p(&a).1 + p(&b).1);
                checks += 1;
                if lhs != rhs {
                    failures += 1;
                }
            }
        }
    }
    let took = start.elapsed();
    let slow = usize::from(took >= Duration::from_secs(5));
    outcome(failures + slow, format!("{checks} world checks, {failures} failures, {took:?}"))
}

fn soundness_failure(sc: &gen::Scenario, c: &Certificate) -> Option<String> {
    let n = sc.beliefs.arity();
    let case3 = c.construction == "axiom 3, case 3";
    let expected = if case3 { Verdict::WeakDutchBook } else { Verdict::DutchBook };
    if c.claimed != expected || !c.verdict.at_least(expected) {
        return Some(format!("verdict {:?} (claimed {:?})", c.verdict, c.claimed));
    }
    let AnyBook::Partial(book) = &c.book else { return Some("classical book".into()) };
    if book.bets().iter().any(|b| sc.beliefs.get(&b.formula) != Some(b.quotient)) {
        return Some("quotient differs from belief".into());
    }
    // Recompute every payoff independently and classify it.
    let pays: Vec<(Vec<u8>, (f64, f64))> = all_worlds(n)
        .into_iter()
        .map(|w| {
            let p = oracle_payoff(&c.book, &w);
            (w, p)
        })
        .collect();
    let strict = pays.iter().filter(|(_, (u, v))| u - v < -TOL).count();
    let diag = pays.iter().filter(|(_, (u, v))| (u - v).abs() <= TOL).count();
    let ok = if expected == Verdict::DutchBook {
        strict == pays.len()
    } else {
        strict + diag == pays.len() && strict > 0
    };
    if !ok {
        return Some(format!("oracle payoffs {pays:?}"));
    }
    let constant =
        matches!(sc.target, Target::Axiom1 | Target::Axiom2 | Target::Axiom4 | Target::Equivalence);
    if constant
        && pays.iter().any(|(_, p)| (p.0 - pays[0].1 .0).abs() > TOL || (p.1 - pays[0].1 .1).abs() > TOL)
    {
        return Some("payoff not constant".into());
    }
    None
}

fn c3_synthesis() -> Outcome {
    let start = Instant::now();
    let mut rng = gen::rng(3);
    let mut failures = Vec::new();
    let mut case3 = 0;
    for target in Target::ALL {
        for i in 0..500 {
            let n = 1 + i % 3;
            let sc = gen::scenario(target, n, &mut rng);
            let f = &sc.formulas;
            let b = &sc.beliefs;
            let r = match target {
                Target::Axiom1 => synth::synth_axiom1(&f[0], b),
                Target::Axiom2 => synth::synth_axiom2(&f[0], &f[1], b),
                Target::Axiom3 => synth::synth_axiom3(&f[0], b),
                Target::Axiom4 => synth::synth_axiom4(&f[0], b),
                Target::Equivalence => synth::synth_equivalence(&f[0], &f[1], b),
            };
            let problem = match r {
                Err(e) => Some(format!("no certificate: {e}")),
                Ok(c) => {
                    case3 += usize::from(c.construction == "axiom 3, case 3");
                    soundness_failure(&sc, &c)
                }
            };
            // Every planted violation must also surface through the full pipeline.
            let problem = problem.or_else(|| match synthesize_all(b) {
                Ok(r) if !r.certificates.is_empty() && r.unsynthesized.is_empty() => None,
                Ok(r) => Some(format!(
                    "synthesize_all: {} certificates, {} unsynthesized",
                    r.certificates.len(),
                    r.unsynthesized.len()
                )),
                Err(e) => Some(e.to_string()),
            });
            if let Some(p) = problem {
                failures.push(format!("{target:?} {:?}: {p}", sc.beliefs.to_json()));
            }
        }
    }
    let took = start.elapsed();
    let slow = usize::from(took >= Duration::from_secs(30));
    for f in failures.iter().take(3) {
        eprintln!("    {f}");
    }
    outcome(
        failures.len() + slow,
        format!("5 x 500 violations ({case3} weak-book cases), {} failures, {took:?}", failures.len()),
    )
}

fn c4_coherence() -> Outcome {
    let mut rng = gen::rng(4);
    let mut failures = 0;
    let mut entries = 0;
    for i in 0..200 {
        let n = 1 + i % 3;
        let g = FormulaGen { max_depth: 3, ..FormulaGen::new(n) };
        let base: Vec<Formula> = (0..4).map(|_| g.sample(&mut rng)).collect();
        let mut fam = base.clone();
        for a in &base {
            fam.push(Formula::not(a.clone()));
            let b = &base[rng.gen_range(0..base.len())];
            fam.push(Formula::or(a.clone(), b.clone()));
            fam.push(Formula::and(a.clone(), b.clone()));
            fam.push(Formula::and(a.clone(), a.clone()));
            fam.push(Formula::or(a.clone(), Formula::Neutral));
            fam.push(Formula::and(a.clone(), Formula::Neutral));
        }
        fam.push(Formula::Neutral);
        let p = ClassicalMeasure::uniform(kleene::world_universe(n).unwrap()).unwrap();
        let b = induced_beliefs(&p, n, fam).unwrap();
        entries += b.len();
        let r = check_belief_axioms(&b).unwrap();
        let d = check_derived_properties(&b).unwrap();
        let s = synthesize_all(&b).unwrap();
        if !r.violations.is_empty() || !d.is_empty() || !s.certificates.is_empty() {
            failures += 1;
        }
    }
    outcome(failures, format!("200 families, {entries} entries, {failures} incoherent"))
}

fn c5_solver() -> Outcome {
    let mut rng = gen::rng(5);
    let mut failures = 0;
    let mut min_margin = f64::INFINITY;
    let mut max_residual: f64 = 0.0;
    let mut families = [0usize; 3];
    let mut cases: Vec<(f64, f64, f64, f64)> =
        vec![(0.5, 0.2, 0.1, 0.4), (0.3, 0.0, 0.2, 0.5), (0.2, 0.5, 0.3, 0.0)];
    for i in 0..10_000 - cases.len() {
        cases.push(gen::balanced_quadruple(&mut rng, (i % 3) as u8));
    }
    for (x, y, z, w) in cases {
        families[if y == 0.0 {
            1
        } else if w == 0.0 {
            2
        } else {
            0
        }] += 1;
        match stake_solver(x, y, z, w) {
            Ok(s) => {
                let residual = (s.h * x + s.hp * z - (s.k * y + s.kp * w)).abs();
                let margin = (s.kp - s.h).min(s.k - s.hp);
                max_residual = max_residual.max(residual);
                min_margin = min_margin.min(margin);
                if residual > 1e-9 || margin <= 1e-12 {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    outcome(
        failures,
        format!(
            "10000 cases (interior {}, y=0 {}, w=0 {}), max residual {max_residual:.1e}, min margin {min_margin:.3e}, {failures} failures",
            families[0], families[1], families[2]
        ),
    )
}

fn c6_monotonicity() -> Outcome {
    let mut rng = gen::rng(6);
    let mut failures = 0;
    let mut pairs_checked = 0;
    for i in 0..1000 {
        let n = 1 + i % 3;
        let a = FormulaGen::new(n).sample(&mut rng);
        let ws = all_worlds(n);
        let vals: Vec<u8> = kleene::worlds(n).unwrap().map(|w| digit(eval(&a, &w).unwrap())).collect();
        for (i, s) in ws.iter().enumerate() {
            for (j, t) in ws.iter().enumerate() {
                if !s.iter().zip(t).all(|(x, y)| info_leq(*x, *y)) {
                    continue;
                }
                pairs_checked += 1;
                let mono = info_leq(vals[i], vals[j]);
                let persist = vals[i] != 2 || vals[j] == 2;
                if !mono || !persist || vals[i] != oracle(&a, s) {
                    failures += 1;
                }
            }
        }
    }
    outcome(failures, format!("1000 formulas, {pairs_checked} ordered world pairs, {failures} exceptions"))
}

/// Number of maps `{0,1,2}ⁿ → {0,1,2}` monotone for the information order.
fn monotone_count(n: usize) -> usize {
    let ws = all_worlds(n);
    let le: Vec<(usize, usize)> = (0..ws.len())
        .flat_map(|i| (0..ws.len()).map(move |j| (i, j)))
        .filter(|(i, j)| ws[*i].iter().zip(&ws[*j]).all(|(x, y)| info_leq(*x, *y)))
        .collect();
    all_worlds(ws.len()).iter().filter(|f| le.iter().all(|(i, j)| info_leq(f[*i], f[*j]))).count()
}

fn c7_non_surjective() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut detail = Vec::new();
    for n in 1..=2 {
        let u = kleene::world_universe(n).unwrap();
        let gens: Vec<PartialSet> = (1..=n).map(|i| meaning(&Formula::var(i), n).unwrap()).collect();
        let closure = generated_subalgebra(&u, &gens).unwrap();
        let set: HashSet<&PartialSet> = closure.iter().collect();
        let top = PartialSet::top(u.clone());
        let bottom = PartialSet::bottom(u.clone());
        let booleans = all_boolean_sets(&u);
        let leaked = booleans.iter().filter(|b| **b != top && **b != bottom && set.contains(b)).count();
        let expected = monotone_count(n);
        if leaked != 0 || !set.contains(&top) || !set.contains(&bottom) || closure.len() != expected {
            failures += 1;
        }
        detail.push(format!(
            "n={n}: closure {} (monotone-function oracle {expected}), {} Boolean sets, {leaked} non-trivial inside",
            closure.len(),
            booleans.len()
        ));
    }
    let took = start.elapsed();
    let slow = usize::from(took >= Duration::from_secs(10));
    outcome(failures + slow, format!("{}, {took:?}", detail.join("; ")))
}

fn c8_classical() -> Outcome {
    let mut rng = gen::rng(8);
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    let kinds = [ClassicalKind::Tautology, ClassicalKind::Contradiction, ClassicalKind::Additivity];
    for kind in kinds {
        for i in 0..500 {
            let n = 1 + i % 4;
            let (b, v) = gen::classical_scenario(kind, n, &mut rng);
            let found = check_classical_beliefs(&b).unwrap();
            let ok = match (found.iter().find(|f| f.kind == kind), synth_classical(&v, &b)) {
                (Some(_), Ok(c)) => {
                    let AnyBook::Classical(book) = &c.book else { unreachable!() };
                    let pays: Vec<f64> = all_worlds(n)
                        .iter()
                        .filter(|w| w.iter().all(|d| *d != 1))
                        .map(|w| {
                            book.bets()
                                .iter()
                                .map(|bet| {
                                    let t = if oracle(bet.formula(), w) == 2 { 1.0 } else { 0.0 };
                                    bet.stake() * (t - bet.quotient())
                                })
                                .sum()
                        })
                        .collect();
                    let max = pays.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    worst = worst.max(max);
                    pays.len() == 1 << n
                        && max < -TOL
                        && pays.iter().all(|p| (p - pays[0]).abs() <= TOL)
                        && c.verdict == Verdict::DutchBook
                }
                _ => false,
            };
            failures += usize::from(!ok);
        }
    }
    outcome(failures, format!("3 x 500 cases, n <= 4, largest payoff {worst:.4}, {failures} failures"))
}

fn c9_meaning() -> Outcome {
    let mut rng = gen::rng(9);
    let mut failures = 0;
    for i in 0..1000 {
        let n = 1 + i % 3;
        let a = FormulaGen::new(n).sample(&mut rng);
        let rec = meaning(&a, n).unwrap();
        let scan = meaning_by_scan(&a, n).unwrap();
        let ws = all_worlds(n);
        let pos: HashSet<usize> = (0..ws.len()).filter(|i| oracle(&a, &ws[*i]) == 2).collect();
        let neg: HashSet<usize> = (0..ws.len()).filter(|i| oracle(&a, &ws[*i]) == 0).collect();
        let rec_pos: HashSet<usize> = rec.pos().iter().collect();
        let rec_neg: HashSet<usize> = rec.neg().iter().collect();
        if rec != scan || rec_pos != pos || rec_neg != neg {
            failures += 1;
        }
    }
    outcome(failures, format!("1000 formulas, {failures} mismatches"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("die example", c1_die),
        ("sum rule", c2_sum_rule),
        ("synthesis soundness", c3_synthesis),
        ("coherence oracle", c4_coherence),
        ("stake solver", c5_solver),
        ("monotonicity and persistence", c6_monotonicity),
        ("non-surjectivity", c7_non_surjective),
        ("classical regression", c8_classical),
        ("recursive vs scan meaning", c9_meaning),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        all &= o.pass;
        println!("criterion {} {:<30} {}  {}", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
