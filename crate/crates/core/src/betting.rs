//! Classical and partial bets, payoffs, and exhaustive Dutch Book detection.
//!
//! A classical bet `(α, x, r)` pays `r(V_w(α) − x)`. A partial bet
//! `(α, (x, y), (h, k))` pays `(h, k)(V_w(α) − (x, y))` with the truth value
//! embedded in R² and the product taken pointwise, so
//!
//! | `V_w(α)` | payoff            |
//! |----------|-------------------|
//! | T        | `(h(1−x), −ky)`   |
//! | N        | `(−hx, −ky)`      |
//! | F        | `(−hx, k(1−y))`   |
//!
//! Payoffs in R² are sorted into the diagonal `δ`, the region below it
//! (`δ⁺`, first component larger: net gain) and the region above it
//! (`δ⁻`, net loss). Detection of partial books ranges over every world of
//! `Kⁿ`, classical books over the `2ⁿ` classical worlds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kleene::{self, eval, Formula, TruthValue, World};
use crate::value::{PartialValue, RPair, EPS};

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalBet {
    formula: Formula,
    quotient: f64,
    stake: f64,
}

impl ClassicalBet {
    pub fn new(formula: Formula, quotient: f64, stake: f64) -> Result<Self> {
        if !formula.is_classical() {
            return Err(Error::NonClassicalFormula(formula.to_string()));
        }
        if !quotient.is_finite() || !stake.is_finite() {
            return Err(Error::NonFinite("classical bet"));
        }
        if !(-EPS..=1.0 + EPS).contains(&quotient) {
            return Err(Error::Input(format!("betting quotient {quotient} outside [0, 1]")));
        }
        Ok(ClassicalBet { formula, quotient, stake })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn quotient(&self) -> f64 {
        self.quotient
    }

    pub fn stake(&self) -> f64 {
        self.stake
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialBet {
    pub formula: Formula,
    pub quotient: PartialValue,
    pub stake: RPair,
}

impl PartialBet {
    pub fn new(formula: Formula, quotient: PartialValue, stake: RPair) -> Self {
        PartialBet { formula, quotient, stake }
    }
}

/// `r(V_w(α) − x)` on a classical world.
pub fn classical_payoff(bet: &ClassicalBet, w: &World) -> Result<f64> {
    if !w.is_classical() {
        return Err(Error::NonClassicalWorld(w.to_string()));
    }
    let truth = match eval(&bet.formula, w)? {
        TruthValue::T => 1.0,
        _ => 0.0,
    };
    Ok(bet.stake * (truth - bet.quotient))
}

/// `(h, k)(V_w(α) − (x, y))`.
pub fn partial_payoff(bet: &PartialBet, w: &World) -> Result<RPair> {
    let truth = eval(&bet.formula, w)?.pair().pair();
    Ok(bet.stake * (truth - bet.quotient.pair()))
}

/// A finite list of bets over a language of fixed arity.
#[derive(Clone, Debug, PartialEq)]
pub struct Book<B> {
    arity: usize,
    bets: Vec<B>,
}

pub type PartialBook = Book<PartialBet>;
pub type ClassicalBook = Book<ClassicalBet>;

trait HasFormula {
    fn formula(&self) -> &Formula;
}

impl HasFormula for PartialBet {
    fn formula(&self) -> &Formula {
        &self.formula
    }
}

impl HasFormula for ClassicalBet {
    fn formula(&self) -> &Formula {
        &self.formula
    }
}

#[allow(private_bounds)]
impl<B: HasFormula> Book<B> {
    pub fn new(arity: usize, bets: Vec<B>) -> Result<Self> {
        for b in &bets {
            let m = b.formula().max_var();
            if m > arity {
                return Err(Error::VarOutOfRange { index: m, arity });
            }
        }
        Ok(Book { arity, bets })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bets(&self) -> &[B] {
        &self.bets
    }

    pub fn is_empty(&self) -> bool {
        self.bets.is_empty()
    }

    /// Bets of `self` followed by those of `other`.
    pub fn concat(&self, other: &Self) -> Result<Self>
    where
        B: Clone,
    {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        let mut bets = self.bets.clone();
        bets.extend(other.bets.iter().cloned());
        Ok(Book { arity: self.arity, bets })
    }

    fn check_world(&self, w: &World) -> Result<()> {
        if w.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: w.arity() });
        }
        Ok(())
    }
}

impl PartialBook {
    /// `[B](w)`: the pointwise sum of the member payoffs.
    pub fn payoff(&self, w: &World) -> Result<RPair> {
        self.check_world(w)?;
        self.bets.iter().map(|b| partial_payoff(b, w)).sum()
    }

    /// The same bets with every stake negated: the bookmaker's side.
    pub fn negated(&self) -> Self {
        Book {
            arity: self.arity,
            bets: self.bets.iter().map(|b| PartialBet { stake: -b.stake, ..b.clone() }).collect(),
        }
    }
}

impl ClassicalBook {
    pub fn payoff(&self, w: &World) -> Result<f64> {
        self.check_world(w)?;
        self.bets.iter().map(|b| classical_payoff(b, w)).sum()
    }
}

pub fn book_payoff(book: &PartialBook, w: &World) -> Result<RPair> {
    book.payoff(w)
}

pub fn classical_book_payoff(book: &ClassicalBook, w: &World) -> Result<f64> {
    book.payoff(w)
}

/// Position of an R² payoff relative to the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// `u < v`: more loss than reward.
    DeltaMinus,
    /// `u = v` within tolerance.
    Delta,
    /// `u > v`: more reward than loss.
    DeltaPlus,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::DeltaMinus => "delta-",
            Region::Delta => "delta",
            Region::DeltaPlus => "delta+",
        })
    }
}

pub fn classify(p: RPair) -> Region {
    let d = p.u - p.v;
    if d < -EPS {
        Region::DeltaMinus
    } else if d > EPS {
        Region::DeltaPlus
    } else {
        Region::Delta
    }
}

/// Sign of a classical payoff, on the same scale as [`Region`].
pub fn classify_real(x: f64) -> Region {
    classify(RPair::new(x, 0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Neither,
    WeakDutchBook,
    DutchBook,
}

impl Verdict {
    /// A Dutch Book is also a weak one.
    pub fn at_least(self, other: Verdict) -> bool {
        self >= other
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DutchBook => "Dutch Book",
            Verdict::WeakDutchBook => "Weak Dutch Book",
            Verdict::Neither => "neither",
        })
    }
}

/// Outcome of an exhaustive scan.
///
/// The witness is the lexicographically first world that settles the
/// verdict: for `WeakDutchBook` a strict-loss world; for `Neither` a world
/// with net gain if any, else the first world (no strict loss anywhere).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Detection {
    pub verdict: Verdict,
    #[serde(serialize_with = "ser_world_opt")]
    pub witness: Option<World>,
    /// The book had no bets; the verdict is `Neither` by definition.
    pub empty_book: bool,
}

fn ser_world_opt<S: serde::Serializer>(w: &Option<World>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.collect_str(w),
        None => s.serialize_none(),
    }
}

fn scan(regions: impl Iterator<Item = (World, Region)>, empty: bool) -> Detection {
    let mut first: Option<World> = None;
    let mut first_loss: Option<World> = None;
    let mut first_gain: Option<World> = None;
    let mut all_loss = true;
    for (w, r) in regions {
        if first.is_none() {
            first = Some(w.clone());
        }
        match r {
            Region::DeltaMinus => {
                if first_loss.is_none() {
                    first_loss = Some(w);
                }
            }
            Region::Delta => all_loss = false,
            Region::DeltaPlus => {
                all_loss = false;
                first_gain = Some(w);
                break;
            }
        }
    }
    let (verdict, witness) = if empty {
        (Verdict::Neither, None)
    } else if let Some(w) = first_gain {
        (Verdict::Neither, Some(w))
    } else if all_loss && first_loss.is_some() {
        (Verdict::DutchBook, None)
    } else if let Some(w) = first_loss {
        (Verdict::WeakDutchBook, Some(w))
    } else {
        (Verdict::Neither, first)
    };
    Detection { verdict, witness, empty_book: empty }
}

/// Exhaustive (weak) Dutch Book detection over all `3ⁿ` worlds.
pub fn detect(book: &PartialBook) -> Result<Detection> {
    let ws: Vec<World> = kleene::worlds(book.arity)?.collect();
    let regions =
        ws.into_iter().map(|w| book.payoff(&w).map(|p| (w, classify(p)))).collect::<Result<Vec<_>>>()?;
    Ok(scan(regions.into_iter(), book.is_empty()))
}

/// Classical detection over the `2ⁿ` classical worlds: Dutch Book iff the
/// payoff is negative everywhere; weak iff never positive and negative
/// somewhere.
pub fn detect_classical(book: &ClassicalBook) -> Result<Detection> {
    let ws: Vec<World> = kleene::classical_worlds(book.arity)?.collect();
    let regions =
        ws.into_iter().map(|w| book.payoff(&w).map(|p| (w, classify_real(p)))).collect::<Result<Vec<_>>>()?;
    Ok(scan(regions.into_iter(), book.is_empty()))
}

/// On-disk form of a book:
/// `{"arity": n, "kind": "partial" | "classical", "bets": [{"formula", "quotient", "stake"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BookFile {
    Partial { arity: usize, bets: Vec<PartialBetEntry> },
    Classical { arity: usize, bets: Vec<ClassicalBetEntry> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialBetEntry {
    pub formula: String,
    pub quotient: PartialValue,
    pub stake: RPair,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalBetEntry {
    pub formula: String,
    pub quotient: f64,
    pub stake: f64,
}

/// Either kind of book.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyBook {
    Partial(PartialBook),
    Classical(ClassicalBook),
}

impl AnyBook {
    pub fn from_file(file: &BookFile) -> Result<Self> {
        Ok(match file {
            BookFile::Partial { arity, bets } => {
                let bets = bets
                    .iter()
                    .map(|b| {
                        let stake = RPair::checked(b.stake.u, b.stake.v)?;
                        Ok(PartialBet::new(kleene::parse(&b.formula, *arity)?, b.quotient, stake))
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnyBook::Partial(Book::new(*arity, bets)?)
            }
            BookFile::Classical { arity, bets } => {
                let bets = bets
                    .iter()
                    .map(|b| ClassicalBet::new(kleene::parse(&b.formula, *arity)?, b.quotient, b.stake))
                    .collect::<Result<Vec<_>>>()?;
                AnyBook::Classical(Book::new(*arity, bets)?)
            }
        })
    }

    pub fn to_file(&self) -> BookFile {
        match self {
            AnyBook::Partial(b) => BookFile::Partial {
                arity: b.arity,
                bets: b
                    .bets
                    .iter()
                    .map(|x| PartialBetEntry {
                        formula: x.formula.to_string(),
                        quotient: x.quotient,
                        stake: x.stake,
                    })
                    .collect(),
            },
            AnyBook::Classical(b) => BookFile::Classical {
                arity: b.arity,
                bets: b
                    .bets
                    .iter()
                    .map(|x| ClassicalBetEntry {
                        formula: x.formula.to_string(),
                        quotient: x.quotient,
                        stake: x.stake,
                    })
                    .collect(),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: BookFile = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("book file serializes")
    }

    pub fn arity(&self) -> usize {
        match self {
            AnyBook::Partial(b) => b.arity,
            AnyBook::Classical(b) => b.arity,
        }
    }

    pub fn detect(&self) -> Result<Detection> {
        match self {
            AnyBook::Partial(b) => detect(b),
            AnyBook::Classical(b) => detect_classical(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleene::parse;
    use proptest::prelude::*;

    fn w(s: &str) -> World {
        s.parse().unwrap()
    }

    fn pv(x: f64, y: f64) -> PartialValue {
        PartialValue::new(x, y).unwrap()
    }

    #[test]
    fn classical_payoffs() {
        let bet = ClassicalBet::new(Formula::var(1), 0.3, 10.0).unwrap();
        assert!((classical_payoff(&bet, &w("T")).unwrap() - 7.0).abs() < 1e-12);
        assert!((classical_payoff(&bet, &w("F")).unwrap() + 3.0).abs() < 1e-12);
        let zero = ClassicalBet::new(Formula::var(1), 0.3, 0.0).unwrap();
        assert_eq!(classical_payoff(&zero, &w("T")).unwrap(), 0.0);
        assert!(matches!(classical_payoff(&bet, &w("N")), Err(Error::NonClassicalWorld(_))));
        assert!(ClassicalBet::new(Formula::Neutral, 0.3, 1.0).is_err());
        assert!(ClassicalBet::new(Formula::One, 1.3, 1.0).is_err());
    }

    #[test]
    fn partial_payoffs() {
        let bet = PartialBet::new(Formula::var(1), pv(0.2, 0.3), RPair::new(10.0, 5.0));
        assert!(partial_payoff(&bet, &w("T")).unwrap().approx_eq(RPair::new(8.0, -1.5)));
        assert!(partial_payoff(&bet, &w("N")).unwrap().approx_eq(RPair::new(-2.0, -1.5)));
        assert!(partial_payoff(&bet, &w("F")).unwrap().approx_eq(RPair::new(-2.0, 3.5)));
        let bad = PartialBet::new(Formula::var(2), pv(0.2, 0.3), RPair::new(1.0, 1.0));
        assert!(partial_payoff(&bad, &w("T")).is_err());
    }

    #[test]
    fn book_payoffs() {
        let empty = PartialBook::new(1, vec![]).unwrap();
        assert_eq!(empty.payoff(&w("N")).unwrap(), RPair::ZERO);
        let bet = PartialBet::new(Formula::var(1), pv(0.2, 0.3), RPair::new(10.0, 5.0));
        let one = PartialBook::new(1, vec![bet.clone()]).unwrap();
        for s in ["F", "N", "T"] {
            assert_eq!(one.payoff(&w(s)).unwrap(), partial_payoff(&bet, &w(s)).unwrap());
        }
        assert!(matches!(one.payoff(&w("TT")), Err(Error::ArityMismatch { .. })));
        assert!(
            PartialBook::new(1, vec![PartialBet::new(Formula::var(2), pv(0.0, 0.0), RPair::ZERO)]).is_err()
        );
    }

    #[test]
    fn classification() {
        assert_eq!(classify(RPair::new(-1.0, 2.0)), Region::DeltaMinus);
        assert_eq!(classify(RPair::new(3.0, 3.0)), Region::Delta);
        assert_eq!(classify(RPair::new(0.5, -0.5)), Region::DeltaPlus);
        assert_eq!(classify(RPair::new(0.1 + 0.2, 0.3)), Region::Delta);
    }

    #[test]
    fn detection_examples() {
        let alpha = parse("1 | p1", 1).unwrap();
        let book =
            PartialBook::new(1, vec![PartialBet::new(alpha, pv(0.6, 0.2), RPair::new(-1.0, -1.0))]).unwrap();
        for s in ["F", "N", "T"] {
            assert!(book.payoff(&w(s)).unwrap().approx_eq(RPair::new(-0.4, 0.2)));
        }
        assert_eq!(detect(&book).unwrap().verdict, Verdict::DutchBook);

        let empty = detect(&PartialBook::new(2, vec![]).unwrap()).unwrap();
        assert_eq!(empty.verdict, Verdict::Neither);
        assert!(empty.empty_book);

        let taut = parse("p1 | !p1", 1).unwrap();
        let cbook = ClassicalBook::new(1, vec![ClassicalBet::new(taut, 0.9, -1.0).unwrap()]).unwrap();
        for cw in ["F", "T"] {
            assert!((cbook.payoff(&w(cw)).unwrap() + 0.1).abs() < 1e-12);
        }
        assert_eq!(detect_classical(&cbook).unwrap().verdict, Verdict::DutchBook);
    }

    #[test]
    fn weak_and_neither_witnesses() {
        // Diagonal at N, strict loss at T and F.
        let p1 = Formula::var(1);
        let weak = PartialBook::new(
            1,
            vec![
                PartialBet::new(p1.clone(), pv(0.5, 0.2), RPair::new(1.0, 0.25)),
                PartialBet::new(Formula::not(p1.clone()), pv(0.1, 0.4), RPair::new(0.0, 1.125)),
            ],
        )
        .unwrap();
        let d = detect(&weak).unwrap();
        assert_eq!(d.verdict, Verdict::WeakDutchBook);
        assert_eq!(d.witness, Some(w("F")));

        let gain =
            PartialBook::new(1, vec![PartialBet::new(p1, pv(0.2, 0.3), RPair::new(10.0, 5.0))]).unwrap();
        let d = detect(&gain).unwrap();
        assert_eq!(d.verdict, Verdict::Neither);
        assert_eq!(d.witness, Some(w("T")));
    }

    #[test]
    fn book_file_roundtrip() {
        let text = r#"{"arity": 1, "kind": "partial", "bets": [
            {"formula": "1 | p1", "quotient": [0.6, 0.2], "stake": [-1, -1]}]}"#;
        let b = AnyBook::from_json(text).unwrap();
        assert_eq!(AnyBook::from_json(&b.to_json()).unwrap(), b);
        assert_eq!(b.detect().unwrap().verdict, Verdict::DutchBook);
        let text = r#"{"arity": 1, "kind": "classical", "bets": [
            {"formula": "p1 | !p1", "quotient": 0.9, "stake": -1}]}"#;
        let b = AnyBook::from_json(text).unwrap();
        assert!(matches!(b, AnyBook::Classical(_)));
        assert_eq!(b.detect().unwrap().verdict, Verdict::DutchBook);
        assert!(AnyBook::from_json(r#"{"arity": 1, "kind": "other", "bets": []}"#).is_err());
    }

    fn arb_bet() -> impl Strategy<Value = PartialBet> {
        let formulas = ["p1", "!p1", "p1 & p2", "p2 | n", "!(p1 | p2)", "1", "0"];
        (0..formulas.len(), 0.0f64..=1.0, 0.0f64..=1.0, -5.0f64..5.0, -5.0f64..5.0).prop_map(
            move |(i, a, b, h, k)| {
                PartialBet::new(parse(formulas[i], 2).unwrap(), pv(a, (1.0 - a) * b), RPair::new(h, k))
            },
        )
    }

    proptest! {
        #[test]
        fn payoff_is_linear(xs in proptest::collection::vec(arb_bet(), 0..4), ys in proptest::collection::vec(arb_bet(), 0..4)) {
            let a = PartialBook::new(2, xs)?;
            let b = PartialBook::new(2, ys)?;
            let ab = a.concat(&b)?;
            for wd in kleene::worlds(2)? {
                prop_assert!(ab.payoff(&wd)?.approx_eq(a.payoff(&wd)? + b.payoff(&wd)?));
            }
        }

        #[test]
        fn stake_negation_flips_payoff(xs in proptest::collection::vec(arb_bet(), 1..4)) {
            let a = PartialBook::new(2, xs)?;
            let neg = a.negated();
            for wd in kleene::worlds(2)? {
                prop_assert!(neg.payoff(&wd)?.approx_eq(-a.payoff(&wd)?));
            }
            if detect(&a)?.verdict == Verdict::DutchBook {
                for wd in kleene::worlds(2)? {
                    prop_assert_eq!(classify(neg.payoff(&wd)?), Region::DeltaPlus);
                }
            }
        }
    }
}
