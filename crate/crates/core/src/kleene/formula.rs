use std::fmt;

use serde::{Serialize, Serializer};

/// A formula of the n-ary Kleene language: variables `p1..pn`, the
/// constants `0`, `1`, `n`, and `!`, `&`, `|`.
///
/// Equality is structural; no normalisation is applied.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// 1-based variable index.
    Var(usize),
    Zero,
    One,
    Neutral,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(i: usize) -> Self {
        Formula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Largest variable index, 0 if the formula has none.
    pub fn max_var(&self) -> usize {
        match self {
            Formula::Var(i) => *i,
            Formula::Zero | Formula::One | Formula::Neutral => 0,
            Formula::Not(a) => a.max_var(),
            Formula::And(a, b) | Formula::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// True iff the formula does not mention the constant `n`.
    pub fn is_classical(&self) -> bool {
        match self {
            Formula::Neutral => false,
            Formula::Var(_) | Formula::Zero | Formula::One => true,
            Formula::Not(a) => a.is_classical(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_classical() && b.is_classical(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Binary operators are left-associative, so a right operand of equal
        // precedence needs parentheses to print back to the same tree.
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, min: u8) -> fmt::Result {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        match self {
            Formula::Var(i) => write!(f, "p{i}"),
            Formula::Zero => f.write_str("0"),
            Formula::One => f.write_str("1"),
            Formula::Neutral => f.write_str("n"),
            Formula::Not(a) => {
                f.write_str("!")?;
                child(f, a, 3)
            }
            Formula::And(a, b) => {
                child(f, a, 2)?;
                f.write_str(" & ")?;
                child(f, b, 3)
            }
            Formula::Or(a, b) => {
                child(f, a, 1)?;
                f.write_str(" | ")?;
                child(f, b, 2)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "Var({i})"),
            Formula::Zero => f.write_str("Zero"),
            Formula::One => f.write_str("One"),
            Formula::Neutral => f.write_str("Neutral"),
            Formula::Not(a) => write!(f, "Not({a:?})"),
            Formula::And(a, b) => write!(f, "And({a:?}, {b:?})"),
            Formula::Or(a, b) => write!(f, "Or({a:?}, {b:?})"),
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
