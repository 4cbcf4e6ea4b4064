//! Measures of partial probability.
//!
//! A measure `μ` on a field of partial sets must satisfy
//!
//! 1. `μ(S, ∅) = (1, 0)`;
//! 2. `μ(a) + μ(b) = μ(a ⊔ b) + μ(a ⊓ b)`;
//! 3. `μ(−a) = σ(μ(a))`;
//! 4. `(∅, ∅) ⊑ a` implies `(0, 0) ⪯ μ(a)`.
//!
//! Axiom 2 is checked in the additive form above. Printed with a minus sign
//! in front of `μ(a ⊓ b)` it would already fail for the measure associated
//! with a classical space, so the additive form is the one enforced here.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partial_set::{PartialSet, Universe};
use crate::value::{approx_eq, PartialValue, RPair};

/// A probability distribution on a finite sample space.
#[derive(Clone, Debug)]
pub struct ClassicalMeasure {
    universe: Arc<Universe>,
    weights: Vec<f64>,
}

impl ClassicalMeasure {
    pub fn new(universe: Arc<Universe>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != universe.size() {
            return Err(Error::InvalidMeasure(format!(
                "{} weights for {} atoms",
                weights.len(),
                universe.size()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidMeasure(format!("weight {w} is not a nonnegative real")));
        }
        let total: f64 = weights.iter().sum();
        if !approx_eq(total, 1.0) {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
        }
        Ok(ClassicalMeasure { universe, weights })
    }

    pub fn uniform(universe: Arc<Universe>) -> Result<Self> {
        let n = universe.size();
        if n == 0 {
            return Err(Error::InvalidMeasure("empty sample space".into()));
        }
        Self::new(universe, vec![1.0 / n as f64; n])
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn weight(&self, atom: usize) -> f64 {
        self.weights[atom]
    }
}

/// The measure `μ(A, B) = (p(A), p(B))` associated with a classical space.
#[derive(Clone, Debug)]
pub struct AssociatedMeasure {
    p: ClassicalMeasure,
}

pub fn measure_from_classical(p: ClassicalMeasure) -> AssociatedMeasure {
    AssociatedMeasure { p }
}

impl AssociatedMeasure {
    pub fn universe(&self) -> &Arc<Universe> {
        &self.p.universe
    }

    pub fn measure(&self, a: &PartialSet) -> Result<PartialValue> {
        let u = a.universe();
        if !(Arc::ptr_eq(u, &self.p.universe) || **u == *self.p.universe) {
            return Err(Error::UniverseMismatch {
                left: u.name().to_string(),
                right: self.p.universe.name().to_string(),
            });
        }
        let mass = |s: &crate::bitset::BitSet| s.iter().map(|i| self.p.weights[i]).sum::<f64>();
        // pos and neg are disjoint, so the two masses sum to at most 1.
        PartialValue::new(mass(a.pos()), mass(a.neg()))
    }
}

/// One failed instance of a measure axiom.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureViolation {
    /// Axiom number, 1 to 4.
    pub axiom: u8,
    pub witnesses: Vec<PartialSet>,
    pub observed: Vec<RPair>,
}

fn field_closure_error(field: &[PartialSet]) -> Option<String> {
    let set: HashSet<&PartialSet> = field.iter().collect();
    let u = field[0].universe().clone();
    for c in [PartialSet::bottom(u.clone()), PartialSet::neutral(u.clone()), PartialSet::top(u)] {
        if !set.contains(&c) {
            return Some(format!("missing constant {c}"));
        }
    }
    for (i, a) in field.iter().enumerate() {
        if !set.contains(&a.negate()) {
            return Some(format!("negation of {a} missing"));
        }
        // meet and join are commutative
        for b in &field[i..] {
            for (op, r) in [("meet", a.meet(b)), ("join", a.join(b))] {
                match r {
                    Ok(r) if set.contains(&r) => {}
                    Ok(r) => return Some(format!("{op} of {a} and {b} = {r} missing")),
                    Err(e) => return Some(e.to_string()),
                }
            }
        }
    }
    None
}

/// Checks the four measure axioms on every element and pair of `field`.
///
/// The field must contain the constants and be closed under the three
/// operations; otherwise `Error::FieldNotClosed` is returned before any
/// axiom is evaluated. An empty result means every instance holds.
pub fn check_measure_axioms<M>(mu: M, field: &[PartialSet]) -> Result<Vec<MeasureViolation>>
where
    M: Fn(&PartialSet) -> Result<PartialValue>,
{
    if field.is_empty() {
        return Err(Error::FieldNotClosed("empty field".into()));
    }
    if let Some(msg) = field_closure_error(field) {
        return Err(Error::FieldNotClosed(msg));
    }
    let u = field[0].universe().clone();
    let values: Vec<PartialValue> = field.iter().map(&mu).collect::<Result<_>>()?;
    let value_of = |s: &PartialSet| -> Result<PartialValue> { mu(s) };
    let mut out = Vec::new();

    let top = PartialSet::top(u.clone());
    let mt = value_of(&top)?;
    if !mt.approx_eq(PartialValue::TRUE) {
        out.push(MeasureViolation { axiom: 1, witnesses: vec![top], observed: vec![mt.pair()] });
    }

    for (i, a) in field.iter().enumerate() {
        for b in &field[i..] {
            let lhs = values[i].pair() + value_of(b)?.pair();
            let rhs = value_of(&a.join(b)?)?.pair() + value_of(&a.meet(b)?)?.pair();
            if !lhs.approx_eq(rhs) {
                out.push(MeasureViolation {
                    axiom: 2,
                    witnesses: vec![a.clone(), b.clone()],
                    observed: vec![lhs, rhs],
                });
            }
        }
    }

    for (a, va) in field.iter().zip(&values) {
        let vn = value_of(&a.negate())?;
        if !vn.approx_eq(va.sigma()) {
            out.push(MeasureViolation {
                axiom: 3,
                witnesses: vec![a.clone()],
                observed: vec![va.pair(), vn.pair()],
            });
        }
    }

    let neutral = PartialSet::neutral(u);
    for (a, va) in field.iter().zip(&values) {
        if neutral.leq(a)? && !PartialValue::NEUTRAL.leq(*va) {
            out.push(MeasureViolation { axiom: 4, witnesses: vec![a.clone()], observed: vec![va.pair()] });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_set::{all_partial_sets, generated_subalgebra};

    fn die() -> ClassicalMeasure {
        ClassicalMeasure::uniform(Universe::labelled("die", ["1", "2", "3", "4", "5", "6"])).unwrap()
    }

    #[test]
    fn die_values() {
        let mu = measure_from_classical(die());
        let u = mu.universe().clone();
        let ab = PartialSet::from_labels(u.clone(), &["2", "4", "6"], &["1", "3", "5"]).unwrap();
        let cd = PartialSet::from_labels(u.clone(), &["2", "4"], &["5"]).unwrap();
        let v = mu.measure(&ab).unwrap();
        assert!((v.x() - 0.5).abs() < 1e-9 && (v.y() - 0.5).abs() < 1e-9);
        let v = mu.measure(&cd).unwrap();
        assert!((v.x() - 1.0 / 3.0).abs() < 1e-9 && (v.y() - 1.0 / 6.0).abs() < 1e-9);
        assert_eq!(mu.measure(&PartialSet::neutral(u)).unwrap(), PartialValue::NEUTRAL);
        let other = PartialSet::neutral(Universe::indexed("x", 6));
        assert!(mu.measure(&other).is_err());
    }

    #[test]
    fn invalid_classical_measures() {
        let u = Universe::indexed("three", 3);
        assert!(ClassicalMeasure::new(u.clone(), vec![0.5, 0.5]).is_err());
        assert!(ClassicalMeasure::new(u.clone(), vec![0.5, 0.6, -0.1]).is_err());
        assert!(ClassicalMeasure::new(u.clone(), vec![0.5, 0.6, 0.1]).is_err());
        assert!(ClassicalMeasure::new(u, vec![0.2, 0.3, 0.5]).is_ok());
    }

    #[test]
    fn associated_measure_passes_on_full_field() {
        let u = Universe::indexed("three", 3);
        let p = ClassicalMeasure::new(u.clone(), vec![0.2, 0.3, 0.5]).unwrap();
        let mu = measure_from_classical(p);
        let field = all_partial_sets(&u);
        assert_eq!(field.len(), 27);
        assert!(check_measure_axioms(|s| mu.measure(s), &field).unwrap().is_empty());
    }

    #[test]
    fn associated_measure_passes_on_subfield() {
        let u = Universe::indexed("four", 4);
        let mu = measure_from_classical(ClassicalMeasure::uniform(u.clone()).unwrap());
        let g = PartialSet::new(u.clone(), [0], [1, 2]).unwrap();
        let field = generated_subalgebra(&u, &[g]).unwrap();
        assert!(check_measure_axioms(|s| mu.measure(s), &field).unwrap().is_empty());
    }

    #[test]
    fn detects_axiom_1_and_3_failures() {
        let u = Universe::indexed("three", 3);
        let field = all_partial_sets(&u);
        let mu = measure_from_classical(ClassicalMeasure::uniform(u.clone()).unwrap());
        let top = PartialSet::top(u.clone());
        let shrunk = |s: &PartialSet| {
            if *s == top {
                PartialValue::new(0.9, 0.0)
            } else {
                mu.measure(s)
            }
        };
        let v = check_measure_axioms(shrunk, &field).unwrap();
        assert!(v.iter().any(|v| v.axiom == 1));

        let skew = PartialSet::new(u.clone(), [0], [1]).unwrap();
        let lopsided = |s: &PartialSet| {
            if *s == skew {
                PartialValue::new(0.3, 0.1)
            } else {
                mu.measure(s)
            }
        };
        let v = check_measure_axioms(lopsided, &field).unwrap();
        assert!(v.iter().any(|v| v.axiom == 3 && v.witnesses.contains(&skew)));
    }

    #[test]
    fn rejects_unclosed_field() {
        let u = Universe::indexed("two", 2);
        let mu = measure_from_classical(ClassicalMeasure::uniform(u.clone()).unwrap());
        let field = vec![
            PartialSet::bottom(u.clone()),
            PartialSet::neutral(u.clone()),
            PartialSet::top(u.clone()),
            PartialSet::new(u.clone(), [0], []).unwrap(),
        ];
        assert!(matches!(check_measure_axioms(|s| mu.measure(s), &field), Err(Error::FieldNotClosed(_))));
    }
}
