//! Seeded random formulas, belief values and incoherent scenarios.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kleene::Formula;
use crate::probability::BeliefAssignment;
use crate::synth::{ClassicalBeliefs, ClassicalKind, ClassicalViolation};
use crate::value::PartialValue;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random formulas over `p1..pn` of bounded depth.
#[derive(Clone, Copy, Debug)]
pub struct FormulaGen {
    pub arity: usize,
    pub max_depth: usize,
    /// Allow the constants `0` and `1` as leaves.
    pub constants: bool,
    /// Allow the constant `n` as a leaf.
    pub neutral: bool,
}

impl FormulaGen {
    pub fn new(arity: usize) -> Self {
        FormulaGen { arity, max_depth: 4, constants: true, neutral: true }
    }

    /// Formulas without `n`.
    pub fn classical(arity: usize) -> Self {
        FormulaGen { neutral: false, ..Self::new(arity) }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        self.sample_depth(rng, self.max_depth)
    }

    fn sample_depth<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.3) {
            return self.leaf(rng);
        }
        match rng.gen_range(0..5) {
            0 => Formula::not(self.sample_depth(rng, depth - 1)),
            1 | 2 => Formula::and(self.sample_depth(rng, depth - 1), self.sample_depth(rng, depth - 1)),
            _ => Formula::or(self.sample_depth(rng, depth - 1), self.sample_depth(rng, depth - 1)),
        }
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        let roll = rng.gen_range(0..20);
        match roll {
            0 if self.constants => Formula::Zero,
            1 if self.constants => Formula::One,
            2 if self.neutral => Formula::Neutral,
            _ => Formula::var(rng.gen_range(1..=self.arity.max(1))),
        }
    }
}

/// Uniform-ish element of `T`, rounded to a 1e-3 grid so that ties and
/// boundary values occur.
pub fn value<R: Rng + ?Sized>(rng: &mut R) -> PartialValue {
    let x = grid(rng.gen::<f64>());
    let y = grid(rng.gen::<f64>() * (1.0 - x));
    PartialValue::new(x, y).expect("inside T")
}

fn grid(x: f64) -> f64 {
    (x * 1000.0).floor() / 1000.0
}

/// An admissible stake-solver input: `(x, y), (z, w) ∈ T`, `x + z = y + w`,
/// `x ≠ w`. `family` picks interior (0), `y = 0` (1) or `w = 0` (2).
pub fn balanced_quadruple<R: Rng + ?Sized>(rng: &mut R, family: u8) -> (f64, f64, f64, f64) {
    loop {
        let (x, y, z, w) = match family {
            1 => {
                // y = 0: z = w − x needs w ≥ x and z + w ≤ 1.
                let x = rng.gen::<f64>() * 0.5;
                let w = x + rng.gen::<f64>() * ((1.0 + x) / 2.0 - x);
                (x, 0.0, w - x, w)
            }
            2 => {
                // w = 0: z = y − x needs y ≥ x and x + y ≤ 1.
                let x = rng.gen::<f64>() * 0.5;
                let y = x + rng.gen::<f64>() * (1.0 - 2.0 * x);
                (x, y, y - x, 0.0)
            }
            _ => {
                let x = rng.gen::<f64>();
                let y = rng.gen::<f64>() * (1.0 - x);
                let lo = (x - y).max(0.0);
                let w = lo + rng.gen::<f64>() * ((1.0 + x - y) / 2.0 - lo);
                (x, y, (y + w - x).max(0.0), w)
            }
        };
        let ok = (x - w).abs() > 1e-6
            && PartialValue::new(x, y).is_ok()
            && PartialValue::new(z, w).is_ok()
            && (family != 0 || (y > 0.0 && w > 0.0));
        if ok {
            return (x, y, z, w);
        }
    }
}

/// The violation a scenario is built to exhibit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Axiom1,
    Axiom2,
    Axiom3,
    Axiom4,
    Equivalence,
}

impl Target {
    pub const ALL: [Target; 5] =
        [Target::Axiom1, Target::Axiom2, Target::Axiom3, Target::Axiom4, Target::Equivalence];
}

/// A belief assignment with a planted violation on `formulas` (ordered as
/// in the matching `Violation`).
#[derive(Clone, Debug)]
pub struct Scenario {
    pub target: Target,
    pub formulas: Vec<Formula>,
    pub beliefs: BeliefAssignment,
}

fn far(a: f64, b: f64) -> bool {
    (a - b).abs() > 1e-6
}

/// Random formula `α` with `1 ⊨ α`.
fn tautology<R: Rng + ?Sized>(g: &FormulaGen, rng: &mut R) -> Formula {
    match rng.gen_range(0..4) {
        0 => Formula::One,
        1 => Formula::or(g.sample(rng), Formula::One),
        2 => Formula::not(Formula::and(Formula::Zero, g.sample(rng))),
        _ => Formula::or(Formula::One, g.sample(rng)),
    }
}

/// Random formula `α` with `n ⊨ α`.
fn above_neutral<R: Rng + ?Sized>(g: &FormulaGen, rng: &mut R) -> Formula {
    let v = Formula::var(rng.gen_range(1..=g.arity));
    match rng.gen_range(0..5) {
        0 => Formula::Neutral,
        1 => Formula::or(v.clone(), Formula::not(v)),
        2 => Formula::or(g.sample(rng), Formula::Neutral),
        3 => Formula::or(Formula::Neutral, tautology(g, rng)),
        _ => Formula::not(Formula::and(v.clone(), Formula::not(v))),
    }
}

/// A formula Kleene-equivalent to `a` but syntactically different.
fn equivalent_variant<R: Rng + ?Sized>(a: &Formula, rng: &mut R) -> Formula {
    let v = match (rng.gen_range(0..6), a) {
        (0, _) => Formula::and(a.clone(), a.clone()),
        (1, _) => Formula::or(a.clone(), a.clone()),
        (2, _) => Formula::not(Formula::not(a.clone())),
        (3, _) => Formula::or(a.clone(), Formula::Zero),
        (4, Formula::And(l, r)) => {
            Formula::not(Formula::or(Formula::not((**l).clone()), Formula::not((**r).clone())))
        }
        (4, Formula::Or(l, r)) => Formula::Or(r.clone(), l.clone()),
        _ => Formula::and(Formula::One, a.clone()),
    };
    if &v == a {
        Formula::and(a.clone(), a.clone())
    } else {
        v
    }
}

pub fn scenario<R: Rng + ?Sized>(target: Target, arity: usize, rng: &mut R) -> Scenario {
    let g = FormulaGen { max_depth: 3, ..FormulaGen::new(arity) };
    let mut b = BeliefAssignment::new(arity);
    let formulas = match target {
        Target::Axiom1 => {
            let a = tautology(&g, rng);
            let v = loop {
                let v = value(rng);
                if far(v.x(), 1.0) || far(v.y(), 0.0) {
                    break v;
                }
            };
            b.insert(a.clone(), v).unwrap();
            vec![a]
        }
        Target::Axiom2 => {
            let (a, c) = loop {
                let (a, c) = (g.sample(rng), g.sample(rng));
                if a != c {
                    break (a, c);
                }
            };
            let fs = vec![a.clone(), c.clone(), Formula::or(a.clone(), c.clone()), Formula::and(a, c)];
            let vs = loop {
                let vs: Vec<PartialValue> = (0..4).map(|_| value(rng)).collect();
                let d = (vs[0].pair() + vs[1].pair()) - (vs[2].pair() + vs[3].pair());
                if far(d.u, 0.0) || far(d.v, 0.0) {
                    break vs;
                }
            };
            for (f, v) in fs.iter().zip(vs) {
                b.insert(f.clone(), v).unwrap();
            }
            fs
        }
        Target::Axiom3 => {
            let a = g.sample(rng);
            let not = Formula::not(a.clone());
            let (va, vn) = if rng.gen_bool(0.4) {
                let family = rng.gen_range(0..3);
                let (x, y, z, w) = balanced_quadruple(rng, family);
                (PartialValue::new(x, y).unwrap(), PartialValue::new(z, w).unwrap())
            } else {
                loop {
                    let (va, vn) = (value(rng), value(rng));
                    if far(vn.x(), va.y()) || far(vn.y(), va.x()) {
                        break (va, vn);
                    }
                }
            };
            b.insert(a.clone(), va).unwrap();
            b.insert(not.clone(), vn).unwrap();
            vec![a, not]
        }
        Target::Axiom4 => {
            let a = above_neutral(&g, rng);
            let v = loop {
                let v = value(rng);
                if v.y() > 1e-6 {
                    break v;
                }
            };
            b.insert(a.clone(), v).unwrap();
            vec![a]
        }
        Target::Equivalence => {
            let a = g.sample(rng);
            let c = equivalent_variant(&a, rng);
            let (va, vc) = loop {
                let (va, vc) = if rng.gen_bool(0.3) {
                    // Equal coordinate differences.
                    let va = value(rng);
                    let d = rng.gen_range(-0.3..0.3);
                    match PartialValue::new(va.x() + d, va.y() + d) {
                        Ok(vc) => (va, vc),
                        Err(_) => continue,
                    }
                } else {
                    (value(rng), value(rng))
                };
                if far(va.x(), vc.x()) || far(va.y(), vc.y()) {
                    break (va, vc);
                }
            };
            b.insert(a.clone(), va).unwrap();
            b.insert(c.clone(), vc).unwrap();
            vec![a, c]
        }
    };
    Scenario { target, formulas, beliefs: b }
}

/// A classical belief map with a planted violation of `kind`, and the
/// violation itself.
pub fn classical_scenario<R: Rng + ?Sized>(
    kind: ClassicalKind,
    arity: usize,
    rng: &mut R,
) -> (ClassicalBeliefs, ClassicalViolation) {
    let g = FormulaGen { max_depth: 3, ..FormulaGen::classical(arity) };
    let unit = |rng: &mut R| grid(rng.gen::<f64>());
    let mut b = ClassicalBeliefs::new(arity);
    let (formulas, values) = match kind {
        ClassicalKind::Tautology | ClassicalKind::Contradiction => {
            let s = g.sample(rng);
            let (f, v) = if kind == ClassicalKind::Tautology {
                let f = [
                    Formula::or(s.clone(), Formula::not(s.clone())),
                    Formula::One,
                    Formula::not(Formula::Zero),
                ]
                .choose(rng)
                .cloned()
                .unwrap();
                (f, unit(rng).min(0.999))
            } else {
                let f = [
                    Formula::and(s.clone(), Formula::not(s.clone())),
                    Formula::Zero,
                    Formula::not(Formula::One),
                ]
                .choose(rng)
                .cloned()
                .unwrap();
                (f, unit(rng).max(0.001))
            };
            b.insert(f.clone(), v).unwrap();
            (vec![f], vec![v])
        }
        ClassicalKind::Equivalence => {
            let a = g.sample(rng);
            let c = equivalent_variant(&a, rng);
            let (va, vc) = loop {
                let (va, vc) = (unit(rng), unit(rng));
                if far(va, vc) {
                    break (va, vc);
                }
            };
            b.insert(a.clone(), va).unwrap();
            b.insert(c.clone(), vc).unwrap();
            (vec![a, c], vec![va, vc])
        }
        ClassicalKind::Additivity => {
            let (a, c) = loop {
                let (a, c) = (g.sample(rng), g.sample(rng));
                if a != c {
                    break (a, c);
                }
            };
            let fs = vec![a.clone(), c.clone(), Formula::or(a.clone(), c.clone()), Formula::and(a, c)];
            let vs = loop {
                let vs: Vec<f64> = (0..4).map(|_| unit(rng)).collect();
                if far(vs[0] + vs[1], vs[2] + vs[3]) {
                    break vs;
                }
            };
            for (f, v) in fs.iter().zip(&vs) {
                b.insert(f.clone(), *v).unwrap();
            }
            (fs, vs)
        }
    };
    (b, ClassicalViolation { kind, formulas, values })
}
