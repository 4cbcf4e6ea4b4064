//! Two-valued counterpart: real-valued beliefs, classical bets and payoffs
//! over the `2ⁿ` classical worlds.

use indexmap::IndexMap;
use serde::Serialize;

use super::certificate::{Certificate, Descriptor, Observed};
use crate::betting::{AnyBook, Book, ClassicalBet, Verdict};
use crate::error::{Error, Result};
use crate::kleene::{entails_classically, equivalent_classically, Formula};
use crate::value::{approx_eq, EPS};

/// Real-valued beliefs over classical formulas.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClassicalBeliefs {
    arity: usize,
    entries: IndexMap<Formula, f64>,
}

impl ClassicalBeliefs {
    pub fn new(arity: usize) -> Self {
        ClassicalBeliefs { arity, entries: IndexMap::new() }
    }

    pub fn from_entries(arity: usize, entries: impl IntoIterator<Item = (Formula, f64)>) -> Result<Self> {
        let mut b = Self::new(arity);
        for (f, v) in entries {
            b.insert(f, v)?;
        }
        Ok(b)
    }

    pub fn insert(&mut self, f: Formula, v: f64) -> Result<()> {
        if !f.is_classical() {
            return Err(Error::NonClassicalFormula(f.to_string()));
        }
        if f.max_var() > self.arity {
            return Err(Error::VarOutOfRange { index: f.max_var(), arity: self.arity });
        }
        if !v.is_finite() || !(-EPS..=1.0 + EPS).contains(&v) {
            return Err(Error::Input(format!("belief {v} outside [0, 1]")));
        }
        if self.entries.contains_key(&f) {
            return Err(Error::DuplicateFormula(f.to_string()));
        }
        self.entries.insert(f, v);
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, f: &Formula) -> Option<f64> {
        self.entries.get(f).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, f64)> {
        self.entries.iter().map(|(f, v)| (f, *v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicalKind {
    /// `⊨ α` and `b(α) < 1`
    Tautology,
    /// `⊨ ¬α` and `b(α) > 0`
    Contradiction,
    /// `b(α ∨ β) + b(α ∧ β) ≠ b(α) + b(β)`
    Additivity,
    /// `α ≡ β` and `b(α) ≠ b(β)`
    Equivalence,
}

/// Formulas and values follow the partial conventions: additivity lists
/// `[α, β, α ∨ β, α ∧ β]`, equivalence `[α, β]`, the rest `[α]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalViolation {
    pub kind: ClassicalKind,
    pub formulas: Vec<Formula>,
    pub values: Vec<f64>,
}

pub fn check_classical_beliefs(b: &ClassicalBeliefs) -> Result<Vec<ClassicalViolation>> {
    let n = b.arity;
    let one = |kind, f: &Formula, v| ClassicalViolation { kind, formulas: vec![f.clone()], values: vec![v] };
    let mut out = Vec::new();
    for (f, v) in b.iter() {
        if v < 1.0 - EPS && entails_classically(&[], f, n)? {
            out.push(one(ClassicalKind::Tautology, f, v));
        }
    }
    for (f, v) in b.iter() {
        if v > EPS && entails_classically(&[], &Formula::not(f.clone()), n)? {
            out.push(one(ClassicalKind::Contradiction, f, v));
        }
    }
    for (f, _) in b.iter() {
        let Formula::Or(a, c) = f else { continue };
        let quad = [(**a).clone(), (**c).clone(), f.clone(), Formula::And(a.clone(), c.clone())];
        let Some(values) = quad.iter().map(|g| b.get(g)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        if !approx_eq(values[0] + values[1], values[2] + values[3]) {
            out.push(ClassicalViolation { kind: ClassicalKind::Additivity, formulas: quad.to_vec(), values });
        }
    }
    let entries: Vec<_> = b.iter().collect();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let ((fa, va), (fb, vb)) = (entries[i], entries[j]);
            if !approx_eq(va, vb) && equivalent_classically(fa, fb, n)? {
                out.push(ClassicalViolation {
                    kind: ClassicalKind::Equivalence,
                    formulas: vec![fa.clone(), fb.clone()],
                    values: vec![va, vb],
                });
            }
        }
    }
    Ok(out)
}

/// Builds the classical Dutch Book for `v`:
///
/// * tautology: `{(α, b(α), −1)}`, payoff `b(α) − 1`;
/// * contradiction: `{(α, b(α), 1)}`, payoff `−b(α)`;
/// * additivity, with `x, y, z, w` the beliefs in `α, β, α∨β, α∧β`: stake 1
///   on the compounds and −1 on `α`, `β` when `z + w > x + y`, payoff
///   `x + y − z − w`; all stakes negated otherwise;
/// * equivalence: stake 1 on the higher-valued formula and −1 on the other,
///   payoff `−|b(α) − b(β)|`.
pub fn synth_classical(v: &ClassicalViolation, b: &ClassicalBeliefs) -> Result<Certificate> {
    let n = b.arity;
    let f = &v.formulas;
    let val = |g: &Formula| b.get(g).ok_or_else(|| Error::MissingEntry(g.to_string()));
    let unmet = |m: String| Err(Error::Precondition(m));
    let (label, bets): (&str, Vec<(Formula, f64)>) = match v.kind {
        ClassicalKind::Tautology => {
            let x = val(&f[0])?;
            if !entails_classically(&[], &f[0], n)? || x >= 1.0 - EPS {
                return unmet(format!("no tautology violation at {}", f[0]));
            }
            ("classical tautology", vec![(f[0].clone(), -1.0)])
        }
        ClassicalKind::Contradiction => {
            let x = val(&f[0])?;
            if !entails_classically(&[], &Formula::not(f[0].clone()), n)? || x <= EPS {
                return unmet(format!("no contradiction violation at {}", f[0]));
            }
            ("classical contradiction", vec![(f[0].clone(), 1.0)])
        }
        ClassicalKind::Additivity => {
            let (a, c) = (&f[0], &f[1]);
            let or = Formula::or(a.clone(), c.clone());
            let and = Formula::and(a.clone(), c.clone());
            let (x, y, z, w) = (val(a)?, val(c)?, val(&or)?, val(&and)?);
            if approx_eq(x + y, z + w) {
                return unmet("sum identity holds".into());
            }
            let s = if z + w > x + y { 1.0 } else { -1.0 };
            ("classical additivity", vec![(or, s), (and, s), (a.clone(), -s), (c.clone(), -s)])
        }
        ClassicalKind::Equivalence => {
            let (xa, xb) = (val(&f[0])?, val(&f[1])?);
            if approx_eq(xa, xb) || !equivalent_classically(&f[0], &f[1], n)? {
                return unmet(format!("no equivalence violation between {} and {}", f[0], f[1]));
            }
            let s = if xa > xb { 1.0 } else { -1.0 };
            ("classical equivalence", vec![(f[0].clone(), s), (f[1].clone(), -s)])
        }
    };
    let bets = bets
        .into_iter()
        .map(|(g, s)| ClassicalBet::new(g.clone(), val(&g)?, s))
        .collect::<Result<Vec<_>>>()?;
    let desc = Descriptor {
        kind: format!(
            "classical-{}",
            serde_json::to_value(v.kind).ok().and_then(|x| x.as_str().map(str::to_owned)).unwrap_or_default()
        ),
        formulas: f.iter().map(|g| g.to_string()).collect(),
        values: Observed::Classical(v.values.clone()),
    };
    Certificate::build(desc, label, AnyBook::Classical(Book::new(n, bets)?), Verdict::DutchBook, vec![])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleene::parse;
    use crate::synth::certificate::Payoff;

    fn beliefs(n: usize, entries: &[(&str, f64)]) -> ClassicalBeliefs {
        ClassicalBeliefs::from_entries(n, entries.iter().map(|(s, v)| (parse(s, n).unwrap(), *v))).unwrap()
    }

    fn constant(c: &Certificate) -> f64 {
        match c.constant_payoff {
            Some(Payoff::Real(x)) => x,
            ref other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tautology() {
        let b = beliefs(1, &[("p1 | !p1", 0.9)]);
        let vs = check_classical_beliefs(&b).unwrap();
        assert_eq!(vs.len(), 1);
        let c = synth_classical(&vs[0], &b).unwrap();
        assert!((constant(&c) + 0.1).abs() < 1e-12);
        assert_eq!(c.verdict, Verdict::DutchBook);
    }

    #[test]
    fn contradiction() {
        let b = beliefs(1, &[("p1 & !p1", 0.2)]);
        let vs = check_classical_beliefs(&b).unwrap();
        assert_eq!(vs[0].kind, ClassicalKind::Contradiction);
        let c = synth_classical(&vs[0], &b).unwrap();
        assert!((constant(&c) + 0.2).abs() < 1e-12);
    }

    #[test]
    fn additivity() {
        let b = beliefs(2, &[("p1", 0.4), ("p2", 0.3), ("p1 | p2", 0.6), ("p1 & p2", 0.3)]);
        let vs = check_classical_beliefs(&b).unwrap();
        assert_eq!(vs.len(), 1);
        let c = synth_classical(&vs[0], &b).unwrap();
        assert!((constant(&c) + 0.2).abs() < 1e-12);

        let b = beliefs(2, &[("p1", 0.5), ("p2", 0.4), ("p1 | p2", 0.6), ("p1 & p2", 0.1)]);
        let c = synth_classical(&check_classical_beliefs(&b).unwrap()[0], &b).unwrap();
        assert!((constant(&c) + 0.2).abs() < 1e-12);
    }

    #[test]
    fn equivalence() {
        let b = beliefs(2, &[("p1 & p2", 0.3), ("p2 & p1", 0.5)]);
        let vs = check_classical_beliefs(&b).unwrap();
        assert_eq!(vs[0].kind, ClassicalKind::Equivalence);
        let c = synth_classical(&vs[0], &b).unwrap();
        assert!((constant(&c) + 0.2).abs() < 1e-12);
    }

    #[test]
    fn coherent_beliefs_have_no_violations() {
        let b =
            beliefs(2, &[("p1", 0.5), ("p2", 0.5), ("p1 | p2", 0.75), ("p1 & p2", 0.25), ("p1 | !p1", 1.0)]);
        assert!(check_classical_beliefs(&b).unwrap().is_empty());
    }

    #[test]
    fn rejects_neutral_constant() {
        assert!(ClassicalBeliefs::from_entries(1, [(Formula::Neutral, 0.5)]).is_err());
    }
}
