use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::measure::ClassicalMeasure;
use super::measure_from_classical;
use crate::error::{Error, Result};
use crate::kleene::{self, Formula};
use crate::value::PartialValue;

/// A finite map from formulas to partial probability values.
///
/// Entries keep insertion order, which fixes the order of every report
/// derived from the assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct BeliefAssignment {
    arity: usize,
    entries: IndexMap<Formula, PartialValue>,
}

impl BeliefAssignment {
    pub fn new(arity: usize) -> Self {
        BeliefAssignment { arity, entries: IndexMap::new() }
    }

    pub fn from_entries(
        arity: usize,
        entries: impl IntoIterator<Item = (Formula, PartialValue)>,
    ) -> Result<Self> {
        let mut b = Self::new(arity);
        for (f, v) in entries {
            b.insert(f, v)?;
        }
        Ok(b)
    }

    /// Adds an entry; duplicates (structural equality) and out-of-range
    /// variables are rejected.
    pub fn insert(&mut self, f: Formula, v: PartialValue) -> Result<()> {
        if f.max_var() > self.arity {
            return Err(Error::VarOutOfRange { index: f.max_var(), arity: self.arity });
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

    pub fn get(&self, f: &Formula) -> Option<PartialValue> {
        self.entries.get(f).copied()
    }

    pub fn value(&self, f: &Formula) -> Result<PartialValue> {
        self.get(f).ok_or_else(|| Error::MissingEntry(f.to_string()))
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.entries.contains_key(f)
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.entries.get_index_of(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, PartialValue)> {
        self.entries.iter().map(|(f, v)| (f, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_file(&self) -> BeliefFile {
        BeliefFile {
            arity: self.arity,
            beliefs: self.iter().map(|(f, v)| BeliefEntry { formula: f.to_string(), value: v }).collect(),
        }
    }

    pub fn from_file(file: &BeliefFile) -> Result<Self> {
        let mut b = Self::new(file.arity);
        for e in &file.beliefs {
            b.insert(kleene::parse(&e.formula, file.arity)?, e.value)?;
        }
        Ok(b)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: BeliefFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("belief file serializes")
    }
}

/// On-disk form: `{"arity": n, "beliefs": [{"formula": "...", "value": [x, y]}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeliefFile {
    pub arity: usize,
    pub beliefs: Vec<BeliefEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeliefEntry {
    pub formula: String,
    pub value: PartialValue,
}

/// Beliefs `b(α) = μ(M(α))` where `μ` is the measure associated with a
/// classical distribution `p` on the worlds `Kⁿ`.
pub fn induced_beliefs(
    p: &ClassicalMeasure,
    arity: usize,
    formulas: impl IntoIterator<Item = Formula>,
) -> Result<BeliefAssignment> {
    let mu = measure_from_classical(p.clone());
    let mut b = BeliefAssignment::new(arity);
    for f in formulas {
        if b.contains(&f) {
            continue;
        }
        let v = mu.measure(&kleene::meaning(&f, arity)?)?;
        b.insert(f, v)?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_errors() {
        let text = r#"{"arity": 2, "beliefs": [
            {"formula": "p1", "value": [0.5, 0.3]},
            {"formula": "!p1", "value": [0.3, 0.5]}
        ]}"#;
        let b = BeliefAssignment::from_json(text).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(BeliefAssignment::from_json(&b.to_json()).unwrap(), b);

        assert!(BeliefAssignment::from_json("{").is_err());
        let dup = r#"{"arity": 1, "beliefs": [
            {"formula": "p1", "value": [0.5, 0.3]},
            {"formula": "(p1)", "value": [0.5, 0.3]}]}"#;
        assert!(matches!(BeliefAssignment::from_json(dup), Err(Error::DuplicateFormula(_))));
        let bad = r#"{"arity": 1, "beliefs": [{"formula": "p1", "value": [0.9, 0.3]}]}"#;
        assert!(BeliefAssignment::from_json(bad).is_err());
        let range = r#"{"arity": 1, "beliefs": [{"formula": "p2", "value": [0.1, 0.3]}]}"#;
        assert!(matches!(BeliefAssignment::from_json(range), Err(Error::VarOutOfRange { .. })));
    }
}
