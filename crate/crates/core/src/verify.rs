//! Built-in property suites, run by `kleenebook verify`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::{self, FormulaGen};
use crate::kleene::{self, eval, meaning, meaning_by_scan, worlds, Formula, TruthValue, World};
use crate::partial_set::{all_partial_sets, generated_subalgebra, PartialSet, Universe};
use crate::probability::{check_measure_axioms, measure_from_classical, ClassicalMeasure};
use crate::synth::stake_solver;
use rand::Rng;

pub const SUITES: [&str; 6] =
    ["sum-rule", "monotonicity", "correspondence", "measure", "solver", "corollary"];

/// Largest arity for which the corollary suite enumerates the closure.
pub const COROLLARY_MAX_ARITY: usize = 2;

/// Largest arity at which monotonicity compares every pair `s ⊴ t`; above
/// it only pairs differing in one position are compared (enough, since
/// `⊴` is the reflexive-transitive closure of those).
pub const ALL_PAIRS_MAX_ARITY: usize = 6;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    /// First few failures, and informational lines.
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.failures <= 5 {
                self.details.push(detail());
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(why) = &self.skipped {
            return write!(f, "{:<15} skipped ({why})", self.suite);
        }
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{:<15} {status}  {} cases, {} failures", self.suite, self.cases, self.failures)?;
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

pub fn run_suite(name: &str, arity: usize, seed: u64, iterations: usize) -> Result<SuiteReport> {
    kleene::check_arity(arity)?;
    if arity == 0 {
        return Err(Error::Input("verify needs arity at least 1".into()));
    }
    match name {
        "sum-rule" => sum_rule(arity, seed, iterations),
        "monotonicity" => monotonicity(arity, seed, iterations),
        "correspondence" => correspondence(arity, seed, iterations),
        "measure" => measure(seed, iterations),
        "solver" => solver(seed, iterations),
        "corollary" => corollary(arity),
        _ => Err(Error::Input(format!("unknown suite `{name}` (expected one of {})", SUITES.join(", ")))),
    }
}

pub fn run_all(arity: usize, seed: u64, iterations: usize) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, arity, seed, iterations)).collect()
}

fn table(f: &Formula, arity: usize) -> Result<Vec<TruthValue>> {
    worlds(arity)?.map(|w| eval(f, &w)).collect()
}

/// `V(α ∨ β) + V(α ∧ β) = V(α) + V(β)` as pairs, at every world.
pub fn sum_rule(arity: usize, seed: u64, iterations: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("sum-rule");
    let mut rng = gen::rng(seed);
    let g = FormulaGen::new(arity);
    for _ in 0..iterations {
        let (a, b) = (g.sample(&mut rng), g.sample(&mut rng));
        let (ta, tb) = (table(&a, arity)?, table(&b, arity)?);
        let bad = ta.iter().zip(&tb).position(|(x, y)| {
            let lhs = x.or(*y).pair().pair() + x.and(*y).pair().pair();
            lhs != x.pair().pair() + y.pair().pair()
        });
        r.check(bad.is_none(), || {
            format!("a = {a}, b = {b} at {}", World::from_index(bad.unwrap_or(0), arity))
        });
    }
    Ok(r)
}

/// Worlds `t` with `s ⊴ t`, or only the covers of `s` when `all` is false.
fn above(s: &World, all: bool) -> Vec<World> {
    let mut out = vec![s.values().to_vec()];
    for (i, v) in s.values().iter().enumerate() {
        if *v != TruthValue::N {
            continue;
        }
        if all {
            let mut next = Vec::with_capacity(out.len() * 3);
            for w in &out {
                for t in [TruthValue::F, TruthValue::T] {
                    let mut w2: Vec<TruthValue> = w.clone();
                    w2[i] = t;
                    next.push(w2);
                }
                next.push(w.clone());
            }
            out = next;
        } else {
            for t in [TruthValue::F, TruthValue::T] {
                let mut w2 = s.values().to_vec();
                w2[i] = t;
                out.push(w2);
            }
        }
    }
    out.into_iter().map(World::new).collect()
}

/// `s ⊴ t` implies `V_s(α) ⊴ V_t(α)`, and `s ⊨ α` implies `t ⊨ α`.
pub fn monotonicity(arity: usize, seed: u64, iterations: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("monotonicity");
    let all = arity <= ALL_PAIRS_MAX_ARITY;
    if !all {
        r.details.push("comparing covering pairs only".into());
    }
    let mut rng = gen::rng(seed);
    let g = FormulaGen::new(arity);
    let pairs: Vec<(usize, Vec<usize>)> =
        worlds(arity)?.map(|s| (s.index(), above(&s, all).iter().map(World::index).collect())).collect();
    for _ in 0..iterations {
        let a = g.sample(&mut rng);
        let t = table(&a, arity)?;
        let mut bad = None;
        'outer: for (s, ups) in &pairs {
            for u in ups {
                let mono = t[*s].info_leq(t[*u]);
                let persist = t[*s] != TruthValue::T || t[*u] == TruthValue::T;
                if !(mono && persist) {
                    bad = Some((*s, *u));
                    break 'outer;
                }
            }
        }
        r.check(bad.is_none(), || {
            let (s, u) = bad.unwrap_or_default();
            format!("{a}: {} vs {}", World::from_index(s, arity), World::from_index(u, arity))
        });
    }
    Ok(r)
}

/// `w ∈ M⁺(α)` iff `V_w(α) = T`, `w ∈ M⁻(α)` iff `V_w(α) = F`, and the
/// recursive meaning equals the world scan.
pub fn correspondence(arity: usize, seed: u64, iterations: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("correspondence");
    let mut rng = gen::rng(seed);
    let g = FormulaGen::new(arity);
    for _ in 0..iterations {
        let a = g.sample(&mut rng);
        let m = meaning(&a, arity)?;
        let t = table(&a, arity)?;
        let agree = t.iter().enumerate().all(|(i, v)| {
            m.pos().contains(i) == (*v == TruthValue::T) && m.neg().contains(i) == (*v == TruthValue::F)
        });
        let scan = meaning_by_scan(&a, arity)?;
        r.check(agree && scan == m, || format!("{a}: M = {m}, scan = {scan}"));
    }
    Ok(r)
}

/// The associated measure of the fair die, and of seeded random weightings
/// of the die, satisfies the measure axioms on all 729 partial sets.
pub fn measure(seed: u64, iterations: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("measure");
    let die = Universe::labelled("die", ["1", "2", "3", "4", "5", "6"]);
    let field = all_partial_sets(&die);
    let mut rng = gen::rng(seed);
    let mut ps = vec![ClassicalMeasure::uniform(die.clone())?];
    for _ in 0..iterations.min(4) {
        let raw: Vec<f64> = (0..6).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        ps.push(ClassicalMeasure::new(die.clone(), raw.iter().map(|w| w / total).collect())?);
    }
    for p in ps {
        let mu = measure_from_classical(p);
        let v = check_measure_axioms(|s| mu.measure(s), &field)?;
        r.check(v.is_empty(), || format!("{} violations, first axiom {}", v.len(), v[0].axiom));
    }
    Ok(r)
}

/// Solver output on random admissible inputs, across the three families.
pub fn solver(seed: u64, iterations: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("solver");
    let mut rng = gen::rng(seed);
    for i in 0..iterations {
        let (x, y, z, w) = gen::balanced_quadruple(&mut rng, (i % 3) as u8);
        let s = stake_solver(x, y, z, w);
        let ok = matches!(&s, Ok(s) if s.residual(x, y, z, w).abs() <= 1e-9 && s.margin() > 1e-12);
        r.check(ok, || format!("({x}, {y}, {z}, {w}) -> {s:?}"));
    }
    Ok(r)
}

/// The subalgebra generated by `M(p1), ..., M(pn)` contains no Boolean
/// partial set other than top and bottom.
pub fn corollary(arity: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("corollary");
    if arity > COROLLARY_MAX_ARITY {
        r.skipped = Some(format!("closure enumerated only for arity <= {COROLLARY_MAX_ARITY}"));
        return Ok(r);
    }
    let report = corollary_closure(arity)?;
    r.details.push(format!("closure of {} generators has {} elements", arity, report.closure.len()));
    let stray: Vec<&PartialSet> = report.closure.iter().filter(|s| s.is_boolean()).collect();
    r.check(stray.len() == 2, || format!("Boolean elements in closure: {stray:?}"));
    if let Some(w) = &report.missing_boolean {
        r.details.push(format!("Boolean partial set {w} is not in the closure"));
    }
    Ok(r)
}

pub struct CorollaryReport {
    pub closure: Vec<PartialSet>,
    /// First Boolean partial set other than top and bottom absent from the
    /// closure (in enumeration order).
    pub missing_boolean: Option<PartialSet>,
}

pub fn corollary_closure(arity: usize) -> Result<CorollaryReport> {
    let u = kleene::world_universe(arity)?;
    let gens = (1..=arity).map(|i| meaning(&Formula::var(i), arity)).collect::<Result<Vec<_>>>()?;
    let closure = generated_subalgebra(&u, &gens)?;
    let set: std::collections::HashSet<&PartialSet> = closure.iter().collect();
    let top = PartialSet::top(u.clone());
    let bottom = PartialSet::bottom(u.clone());
    // A Boolean set is fixed by its positive part; the singleton {first world}.
    let missing_boolean = (0..u.size())
        .map(|i| PartialSet::new(u.clone(), [i], (0..u.size()).filter(|j| *j != i)).expect("disjoint"))
        .find(|s| *s != top && *s != bottom && !set.contains(s));
    Ok(CorollaryReport { closure, missing_boolean })
}
