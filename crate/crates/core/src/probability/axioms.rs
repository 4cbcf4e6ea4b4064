//! Axiom checking for belief assignments.
//!
//! A partial probability function `π` satisfies
//!
//! 1. `1 ⊨ α` implies `π(α) = (1, 0)`;
//! 2. `π(α ∨ β) = π(α) + π(β) − π(α ∧ β)`;
//! 3. `π(¬α) = σ(π(α))`;
//! 4. `n ⊨ α` implies `(0, 0) ⪯ π(α)`.
//!
//! A belief assignment is finite, so only the instances whose formulas are
//! all present can be checked. Instances of axioms 2 and 3 are found
//! structurally: an entry `α | β` (or `α & β`) triggers an axiom-2 instance
//! and an entry `!α` an axiom-3 instance. Instances with a missing entry are
//! reported as unchecked, never as passing.

use serde::Serialize;

use super::BeliefAssignment;
use crate::error::Result;
use crate::kleene::{entails, Formula};
use crate::value::{PartialValue, RPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Axiom1,
    Axiom2,
    Axiom3,
    Axiom4,
    Equivalence,
    /// `π(n) = (0, 0)`
    DerivedNeutral,
    /// `α ⊨ 0` implies `π(α) = (0, 1)`
    DerivedContradiction,
    /// `α ⊨ n` implies `π(α) ⪯ (0, 0)`
    DerivedBelowNeutral,
    /// `π(α) = π(α ∨ n) + π(α ∧ n)`
    DerivedSplit,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::Axiom1 => "axiom 1 (1 |= a implies b(a) = (1,0))",
            ViolationKind::Axiom2 => "axiom 2 (b(a|c) + b(a&c) = b(a) + b(c))",
            ViolationKind::Axiom3 => "axiom 3 (b(!a) = sigma(b(a)))",
            ViolationKind::Axiom4 => "axiom 4 (n |= a implies (0,0) <= b(a))",
            ViolationKind::Equivalence => "equivalence (a == c implies b(a) = b(c))",
            ViolationKind::DerivedNeutral => "derived 1 (b(n) = (0,0))",
            ViolationKind::DerivedContradiction => "derived 2 (a |= 0 implies b(a) = (0,1))",
            ViolationKind::DerivedBelowNeutral => "derived 3 (a |= n implies b(a) <= (0,0))",
            ViolationKind::DerivedSplit => "derived 4 (b(a) = b(a|n) + b(a&n))",
        }
    }
}

/// A failed axiom instance: the witness formulas and their values, in the
/// order fixed by the kind:
///
/// * axioms 1 and 4, derived 2 and 3: `[α]`
/// * axiom 2: `[α, β, α | β, α & β]`
/// * axiom 3: `[α, !α]`
/// * equivalence: `[α, β]`
/// * derived 1: `[n]`
/// * derived 4: `[α, α | n, α & n]`
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub formulas: Vec<Formula>,
    pub values: Vec<PartialValue>,
}

impl Violation {
    fn new(kind: ViolationKind, formulas: Vec<Formula>, b: &BeliefAssignment) -> Self {
        let values = formulas.iter().map(|f| b.get(f).expect("witness formulas are present")).collect();
        Violation { kind, formulas, values }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> =
            self.formulas.iter().zip(&self.values).map(|(f, v)| format!("b({f}) = {v}")).collect();
        format!("{}: {}", self.kind.label(), parts.join(", "))
    }
}

/// An axiom instance that could not be checked because entries are missing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Unchecked {
    pub kind: ViolationKind,
    pub present: Vec<Formula>,
    pub missing: Vec<Formula>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    pub unchecked: Vec<Unchecked>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sum identity of axiom 2 as two sides: `b(α) + b(β)` and
/// `b(α ∨ β) + b(α ∧ β)`.
pub(crate) fn additivity_sides(values: &[PartialValue]) -> (RPair, RPair) {
    (values[0].pair() + values[1].pair(), values[2].pair() + values[3].pair())
}

pub fn check_belief_axioms(b: &BeliefAssignment) -> Result<AxiomReport> {
    let n = b.arity();
    let mut report = AxiomReport::default();

    for (f, v) in b.iter() {
        if entails(&[Formula::One], f, n)? && !v.approx_eq(PartialValue::TRUE) {
            report.violations.push(Violation::new(ViolationKind::Axiom1, vec![f.clone()], b));
        }
    }

    for (f, _) in b.iter() {
        let (a, c) = match f {
            Formula::Or(a, c) => (a, c),
            Formula::And(a, c) if !b.contains(&Formula::Or(a.clone(), c.clone())) => (a, c),
            _ => continue,
        };
        let quad = vec![
            (**a).clone(),
            (**c).clone(),
            Formula::Or(a.clone(), c.clone()),
            Formula::And(a.clone(), c.clone()),
        ];
        let missing: Vec<Formula> = quad.iter().filter(|g| !b.contains(g)).cloned().collect();
        if !missing.is_empty() {
            report.unchecked.push(Unchecked {
                kind: ViolationKind::Axiom2,
                present: quad.iter().filter(|g| b.contains(g)).cloned().collect(),
                missing,
            });
            continue;
        }
        let v = Violation::new(ViolationKind::Axiom2, quad, b);
        let (lhs, rhs) = additivity_sides(&v.values);
        if !lhs.approx_eq(rhs) {
            report.violations.push(v);
        }
    }

    for (f, v) in b.iter() {
        let Formula::Not(a) = f else { continue };
        match b.get(a) {
            None => report.unchecked.push(Unchecked {
                kind: ViolationKind::Axiom3,
                present: vec![f.clone()],
                missing: vec![(**a).clone()],
            }),
            Some(va) => {
                if !v.approx_eq(va.sigma()) {
                    report.violations.push(Violation::new(
                        ViolationKind::Axiom3,
                        vec![(**a).clone(), f.clone()],
                        b,
                    ));
                }
            }
        }
    }

    for (f, v) in b.iter() {
        if entails(&[Formula::Neutral], f, n)? && !PartialValue::NEUTRAL.leq(v) {
            report.violations.push(Violation::new(ViolationKind::Axiom4, vec![f.clone()], b));
        }
    }
    Ok(report)
}

/// Checks the consequences of the axioms on the present entries:
/// `b(n) = (0,0)`; `α ⊨ 0` gives `b(α) = (0,1)`; `α ⊨ n` gives
/// `b(α) ⪯ (0,0)`; and `b(α) = b(α ∨ n) + b(α ∧ n)`.
pub fn check_derived_properties(b: &BeliefAssignment) -> Result<Vec<Violation>> {
    let n = b.arity();
    let mut out = Vec::new();
    if let Some(v) = b.get(&Formula::Neutral) {
        if !v.approx_eq(PartialValue::NEUTRAL) {
            out.push(Violation::new(ViolationKind::DerivedNeutral, vec![Formula::Neutral], b));
        }
    }
    for (f, v) in b.iter() {
        if entails(std::slice::from_ref(f), &Formula::Zero, n)? && !v.approx_eq(PartialValue::FALSE) {
            out.push(Violation::new(ViolationKind::DerivedContradiction, vec![f.clone()], b));
        }
    }
    for (f, v) in b.iter() {
        if entails(std::slice::from_ref(f), &Formula::Neutral, n)? && !v.leq(PartialValue::NEUTRAL) {
            out.push(Violation::new(ViolationKind::DerivedBelowNeutral, vec![f.clone()], b));
        }
    }
    for (f, v) in b.iter() {
        let or = Formula::or(f.clone(), Formula::Neutral);
        let and = Formula::and(f.clone(), Formula::Neutral);
        if let (Some(vo), Some(va)) = (b.get(&or), b.get(&and)) {
            if !v.pair().approx_eq(vo.pair() + va.pair()) {
                out.push(Violation::new(ViolationKind::DerivedSplit, vec![f.clone(), or, and], b));
            }
        }
    }
    Ok(out)
}
