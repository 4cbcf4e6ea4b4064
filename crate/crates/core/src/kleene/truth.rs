use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::value::PartialValue;

/// A Kleene truth value. Declaration order gives the truth order `F < N < T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    F,
    N,
    T,
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::F, TruthValue::N, TruthValue::T];

    /// Embedding into partial probability values:
    /// `F ↦ (0,1)`, `N ↦ (0,0)`, `T ↦ (1,0)`.
    pub fn pair(self) -> PartialValue {
        match self {
            TruthValue::F => PartialValue::FALSE,
            TruthValue::N => PartialValue::NEUTRAL,
            TruthValue::T => PartialValue::TRUE,
        }
    }

    pub fn and(self, other: Self) -> Self {
        self.min(other)
    }

    pub fn or(self, other: Self) -> Self {
        self.max(other)
    }

    pub fn is_classical(self) -> bool {
        self != TruthValue::N
    }

    /// Information order: `x ⊴ y` iff `x = y` or `x = N`.
    pub fn info_leq(self, other: Self) -> bool {
        self == other || self == TruthValue::N
    }

    pub fn letter(self) -> char {
        match self {
            TruthValue::F => 'F',
            TruthValue::N => 'N',
            TruthValue::T => 'T',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'F' => Some(TruthValue::F),
            'N' => Some(TruthValue::N),
            'T' => Some(TruthValue::T),
            _ => None,
        }
    }

    pub(crate) fn digit(self) -> usize {
        self as usize
    }
}

impl std::ops::Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        match self {
            TruthValue::F => TruthValue::T,
            TruthValue::N => TruthValue::N,
            TruthValue::T => TruthValue::F,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A point of `Kⁿ`: one truth value per variable, `p1` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World(Vec<TruthValue>);

impl World {
    pub fn new(values: Vec<TruthValue>) -> Self {
        World(values)
    }

    /// The world at position `index` of the lexicographic enumeration of
    /// `Kⁿ` (p1 most significant, `F < N < T`).
    pub fn from_index(mut index: usize, arity: usize) -> Self {
        let mut v = vec![TruthValue::F; arity];
        for slot in v.iter_mut().rev() {
            *slot = TruthValue::ALL[index % 3];
            index /= 3;
        }
        World(v)
    }

    /// Inverse of [`World::from_index`].
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, t| acc * 3 + t.digit())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.0
    }

    /// Value of `p_i`, 1-based.
    pub fn get(&self, var: usize) -> TruthValue {
        self.0[var - 1]
    }

    pub fn is_classical(&self) -> bool {
        self.0.iter().all(|t| t.is_classical())
    }

    /// The all-neutral world.
    pub fn neutral(arity: usize) -> Self {
        World(vec![TruthValue::N; arity])
    }
}

impl FromStr for World {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(TruthValue::from_letter)
            .collect::<Option<Vec<_>>>()
            .map(World)
            .ok_or_else(|| Error::BadWorld(s.to_string()))
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "World({self})")
    }
}
