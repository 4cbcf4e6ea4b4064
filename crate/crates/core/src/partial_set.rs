//! Partial sets over a finite universe.
//!
//! A partial set is a pair `(pos, neg)` of disjoint subsets: atoms in `pos`
//! are positive occurrences, atoms in `neg` negative ones, and the remainder
//! is undetermined. `meet`, `join` and `negate` make the collection of all
//! partial sets on a universe `S` into an algebra with constants
//! `bottom = (∅, S)`, `top = (S, ∅)` and `neutral = (∅, ∅)`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite, explicitly enumerated universe of atoms.
///
/// Two universes are the same iff they have the same name, size and labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    name: String,
    size: usize,
    labels: Labels,
}

/// How atoms are printed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Labels {
    Index,
    Names(Vec<String>),
    /// Fixed-width base-3 code, most significant digit first.
    Ternary {
        width: usize,
        digits: [char; 3],
    },
}

impl Universe {
    /// Universe whose atoms are `0..size`, printed by index.
    pub fn indexed(name: impl Into<String>, size: usize) -> Arc<Self> {
        Arc::new(Universe { name: name.into(), size, labels: Labels::Index })
    }

    /// Universe of all `3^width` ternary codes; atom `i` prints as the
    /// base-3 expansion of `i` spelled with `digits`.
    pub fn ternary(name: impl Into<String>, width: usize, digits: [char; 3]) -> Arc<Self> {
        Arc::new(Universe {
            name: name.into(),
            size: 3usize.pow(width as u32),
            labels: Labels::Ternary { width, digits },
        })
    }

    /// Universe with one labelled atom per entry, in the given order.
    pub fn labelled<I, S>(name: impl Into<String>, labels: I) -> Arc<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Arc::new(Universe { name: name.into(), size: labels.len(), labels: Labels::Names(labels) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, atom: usize) -> String {
        match &self.labels {
            Labels::Names(l) => l[atom].clone(),
            Labels::Index => atom.to_string(),
            Labels::Ternary { width, digits } => {
                let mut out = vec![digits[0]; *width];
                let mut code = atom;
                for slot in out.iter_mut().rev() {
                    *slot = digits[code % 3];
                    code /= 3;
                }
                out.into_iter().collect()
            }
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Labels::Names(l) => l.iter().position(|x| x == label),
            Labels::Index => label.parse().ok().filter(|&i| i < self.size),
            Labels::Ternary { width, digits } => {
                if label.chars().count() != *width {
                    return None;
                }
                label
                    .chars()
                    .try_fold(0usize, |acc, c| digits.iter().position(|&d| d == c).map(|d| acc * 3 + d))
            }
        }
    }
}

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::UniverseMismatch { left: a.name.clone(), right: b.name.clone() })
    }
}

/// A pair of disjoint subsets of a universe. Equality is extensional.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialSet {
    universe: Arc<Universe>,
    pos: BitSet,
    neg: BitSet,
}

impl PartialSet {
    pub fn from_bits(universe: Arc<Universe>, pos: BitSet, neg: BitSet) -> Result<Self> {
        for s in [&pos, &neg] {
            if s.len() != universe.size {
                return Err(Error::AtomOutOfRange { index: s.len().max(1) - 1, size: universe.size });
            }
        }
        if let Some(atom) = pos.intersection(&neg).iter().next() {
            return Err(Error::NotDisjoint { atom });
        }
        Ok(PartialSet { universe, pos, neg })
    }

    /// Builds a partial set from atom indices.
    pub fn new(
        universe: Arc<Universe>,
        pos: impl IntoIterator<Item = usize>,
        neg: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let size = universe.size;
        let collect = |it: &mut dyn Iterator<Item = usize>| -> Result<BitSet> {
            let mut s = BitSet::empty(size);
            for index in it {
                if index >= size {
                    return Err(Error::AtomOutOfRange { index, size });
                }
                s.insert(index);
            }
            Ok(s)
        };
        let pos = collect(&mut pos.into_iter())?;
        let neg = collect(&mut neg.into_iter())?;
        Self::from_bits(universe, pos, neg)
    }

    /// Builds a partial set from atom labels.
    pub fn from_labels(universe: Arc<Universe>, pos: &[&str], neg: &[&str]) -> Result<Self> {
        let lookup = |l: &&str| {
            universe.index_of(l).ok_or_else(|| Error::Input(format!("no atom `{l}` in `{}`", universe.name)))
        };
        let pos = pos.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let neg = neg.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        Self::new(universe, pos, neg)
    }

    /// `(S, ∅)`
    pub fn top(universe: Arc<Universe>) -> Self {
        let n = universe.size;
        PartialSet { universe, pos: BitSet::full(n), neg: BitSet::empty(n) }
    }

    /// `(∅, S)`
    pub fn bottom(universe: Arc<Universe>) -> Self {
        let n = universe.size;
        PartialSet { universe, pos: BitSet::empty(n), neg: BitSet::full(n) }
    }

    /// `(∅, ∅)`
    pub fn neutral(universe: Arc<Universe>) -> Self {
        let n = universe.size;
        PartialSet { universe, pos: BitSet::empty(n), neg: BitSet::empty(n) }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn pos(&self) -> &BitSet {
        &self.pos
    }

    pub fn neg(&self) -> &BitSet {
        &self.neg
    }

    /// `(A, B) ⊓ (C, D) = (A ∩ C, B ∪ D)`
    pub fn meet(&self, other: &Self) -> Result<Self> {
        same_universe(&self.universe, &other.universe)?;
        let out = PartialSet {
            universe: self.universe.clone(),
            pos: self.pos.intersection(&other.pos),
            neg: self.neg.union(&other.neg),
        };
        debug_assert!(out.pos.is_disjoint(&out.neg));
        Ok(out)
    }

    /// `(A, B) ⊔ (C, D) = (A ∪ C, B ∩ D)`
    pub fn join(&self, other: &Self) -> Result<Self> {
        same_universe(&self.universe, &other.universe)?;
        let out = PartialSet {
            universe: self.universe.clone(),
            pos: self.pos.union(&other.pos),
            neg: self.neg.intersection(&other.neg),
        };
        debug_assert!(out.pos.is_disjoint(&out.neg));
        Ok(out)
    }

    /// `−(A, B) = (B, A)`
    pub fn negate(&self) -> Self {
        PartialSet { universe: self.universe.clone(), pos: self.neg.clone(), neg: self.pos.clone() }
    }

    /// `(A, B) ⊑ (C, D)` iff `A ⊆ C` and `D ⊆ B`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        same_universe(&self.universe, &other.universe)?;
        Ok(self.pos.is_subset(&other.pos) && other.neg.is_subset(&self.neg))
    }

    /// True iff every atom is settled, i.e. `pos ∪ neg = S`.
    pub fn is_boolean(&self) -> bool {
        self.pos.union(&self.neg).count() == self.universe.size
    }

    fn fmt_side(&self, side: &BitSet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, atom) in side.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.universe.label(atom))?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for PartialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.fmt_side(&self.pos, f)?;
        f.write_str(", ")?;
        self.fmt_side(&self.neg, f)?;
        f.write_str(")")
    }
}

impl fmt::Debug for PartialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialSet[{}]{}", self.universe.name, self)
    }
}

/// Smallest subalgebra of `D(universe)` containing `generators` and the
/// three constants, closed under `meet`, `join` and `negate`.
///
/// Elements are returned in discovery order: constants, generators, then
/// closure products.
pub fn generated_subalgebra(universe: &Arc<Universe>, generators: &[PartialSet]) -> Result<Vec<PartialSet>> {
    for g in generators {
        same_universe(universe, &g.universe)?;
    }
    let mut seen: HashSet<PartialSet> = HashSet::new();
    let mut elems: Vec<PartialSet> = Vec::new();
    let mut push = |s: PartialSet, elems: &mut Vec<PartialSet>| {
        if seen.insert(s.clone()) {
            elems.push(s);
        }
    };
    for c in [
        PartialSet::bottom(universe.clone()),
        PartialSet::neutral(universe.clone()),
        PartialSet::top(universe.clone()),
    ] {
        push(c, &mut elems);
    }
    for g in generators {
        push(g.clone(), &mut elems);
    }
    // Each pair (j, i) with j <= i is combined once, when i is processed.
    let mut i = 0;
    while i < elems.len() {
        let e = elems[i].clone();
        push(e.negate(), &mut elems);
        for j in 0..=i {
            let m = e.meet(&elems[j])?;
            let jn = e.join(&elems[j])?;
            push(m, &mut elems);
            push(jn, &mut elems);
        }
        i += 1;
    }
    Ok(elems)
}

/// Every partial set on a universe (`3^|S|` of them). Intended for small
/// universes only.
pub fn all_partial_sets(universe: &Arc<Universe>) -> Vec<PartialSet> {
    let n = universe.size;
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut pos = BitSet::empty(n);
            let mut neg = BitSet::empty(n);
            for atom in 0..n {
                match code % 3 {
                    1 => pos.insert(atom),
                    2 => neg.insert(atom),
                    _ => {}
                }
                code /= 3;
            }
            PartialSet { universe: universe.clone(), pos, neg }
        })
        .collect()
}

/// Every Boolean partial set on a universe (`2^|S|` of them).
pub fn all_boolean_sets(universe: &Arc<Universe>) -> Vec<PartialSet> {
    let n = universe.size;
    assert!(n < usize::BITS as usize);
    (0..(1usize << n))
        .map(|mask| {
            let mut pos = BitSet::empty(n);
            for atom in 0..n {
                if mask >> atom & 1 == 1 {
                    pos.insert(atom);
                }
            }
            let neg = pos.complement();
            PartialSet { universe: universe.clone(), pos, neg }
        })
        .collect()
}
