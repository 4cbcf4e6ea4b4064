//! Certificates: a violation, the book built against it, and the result of
//! re-checking that book over every world.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::betting::{classify, classify_real, AnyBook, Detection, Region, Verdict};
use crate::error::{Error, Result};
use crate::kleene::{self, World};
use crate::value::{PartialValue, RPair};

/// Full payoff tables are printed up to this arity; above it only the
/// distinct payoffs are listed.
pub const FULL_TABLE_MAX_ARITY: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Observed {
    Partial(Vec<PartialValue>),
    Classical(Vec<f64>),
}

/// The broken instance a certificate answers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Descriptor {
    pub kind: String,
    pub formulas: Vec<String>,
    pub values: Observed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Payoff {
    Pair(RPair),
    Real(f64),
}

impl Payoff {
    pub fn region(self) -> Region {
        match self {
            Payoff::Pair(p) => classify(p),
            Payoff::Real(x) => classify_real(x),
        }
    }

    fn approx_eq(self, other: Payoff) -> bool {
        match (self, other) {
            (Payoff::Pair(a), Payoff::Pair(b)) => a.approx_eq(b),
            (Payoff::Real(a), Payoff::Real(b)) => crate::value::approx_eq(a, b),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PayoffClass {
    pub payoff: Payoff,
    pub region: Region,
    pub count: usize,
    pub first_world: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PayoffTable {
    Full(BTreeMap<String, Payoff>),
    Summary(Vec<PayoffClass>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub violation: Descriptor,
    /// Which branch of the construction produced the book.
    pub construction: String,
    #[serde(serialize_with = "ser_book")]
    pub book: AnyBook,
    /// What the construction promises.
    pub claimed: Verdict,
    /// What exhaustive detection found; never weaker than `claimed`.
    pub verdict: Verdict,
    pub witness: Option<String>,
    /// Set when every world gets the same payoff.
    pub constant_payoff: Option<Payoff>,
    pub payoffs: PayoffTable,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn ser_book<S: Serializer>(b: &AnyBook, s: S) -> Result<S::Ok, S::Error> {
    b.to_file().serialize(s)
}

/// Payoff of `book` at every world it ranges over, in world order.
pub fn payoff_rows(book: &AnyBook) -> Result<Vec<(World, Payoff)>> {
    match book {
        AnyBook::Partial(b) => {
            kleene::worlds(b.arity())?.map(|w| b.payoff(&w).map(|p| (w, Payoff::Pair(p)))).collect()
        }
        AnyBook::Classical(b) => {
            kleene::classical_worlds(b.arity())?.map(|w| b.payoff(&w).map(|p| (w, Payoff::Real(p)))).collect()
        }
    }
}

impl Certificate {
    /// Runs detection on `book` and packages the result. Fails with
    /// [`Error::Unverified`] when the verdict is weaker than `claimed`.
    pub fn build(
        violation: Descriptor,
        construction: impl Into<String>,
        book: AnyBook,
        claimed: Verdict,
        notes: Vec<String>,
    ) -> Result<Self> {
        let Detection { verdict, witness, .. } = book.detect()?;
        if !verdict.at_least(claimed) {
            return Err(Error::Unverified(format!(
                "{} book: expected {claimed}, detected {verdict}",
                violation.kind
            )));
        }
        let rows = payoff_rows(&book)?;
        let constant_payoff = match rows.split_first() {
            Some(((_, p0), rest)) if rest.iter().all(|(_, p)| p.approx_eq(*p0)) => Some(*p0),
            _ => None,
        };
        let payoffs = if book.arity() <= FULL_TABLE_MAX_ARITY {
            PayoffTable::Full(rows.iter().map(|(w, p)| (w.to_string(), *p)).collect())
        } else {
            let mut classes: Vec<PayoffClass> = Vec::new();
            for (w, p) in &rows {
                match classes.iter_mut().find(|c| c.payoff.approx_eq(*p)) {
                    Some(c) => c.count += 1,
                    None => classes.push(PayoffClass {
                        payoff: *p,
                        region: p.region(),
                        count: 1,
                        first_world: w.to_string(),
                    }),
                }
            }
            PayoffTable::Summary(classes)
        };
        Ok(Certificate {
            violation,
            construction: construction.into(),
            book,
            claimed,
            verdict,
            witness: witness.map(|w| w.to_string()),
            constant_payoff,
            payoffs,
            notes,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}
