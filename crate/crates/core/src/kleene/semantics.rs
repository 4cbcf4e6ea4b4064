//! Valuation (`V_w`) and meaning (`M`) semantics over `Kⁿ`, plus the
//! consequence relation, equivalence, the information order and the
//! classical restrictions.

use std::sync::{Arc, OnceLock};

use super::{Formula, TruthValue, World};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::partial_set::{PartialSet, Universe};

/// Largest arity for which worlds are enumerated (`3^12 = 531441`).
pub const MAX_ARITY: usize = 12;

pub fn check_arity(arity: usize) -> Result<()> {
    if arity > MAX_ARITY {
        Err(Error::ArityCap { arity, cap: MAX_ARITY })
    } else {
        Ok(())
    }
}

fn check_formula(f: &Formula, arity: usize) -> Result<()> {
    match f.max_var() {
        m if m > arity => Err(Error::VarOutOfRange { index: m, arity }),
        _ => Ok(()),
    }
}

/// The shared universe `Kⁿ`; atom `i` is `World::from_index(i, arity)`.
pub fn world_universe(arity: usize) -> Result<Arc<Universe>> {
    static CACHE: OnceLock<Vec<Arc<Universe>>> = OnceLock::new();
    check_arity(arity)?;
    let cache = CACHE.get_or_init(|| {
        (0..=MAX_ARITY).map(|n| Universe::ternary(format!("K^{n}"), n, ['F', 'N', 'T'])).collect()
    });
    Ok(cache[arity].clone())
}

/// All `3ⁿ` worlds in lexicographic order (`F < N < T`, p1 most significant).
pub fn worlds(arity: usize) -> Result<impl Iterator<Item = World>> {
    check_arity(arity)?;
    Ok((0..3usize.pow(arity as u32)).map(move |i| World::from_index(i, arity)))
}

/// All `2ⁿ` classical worlds in lexicographic order (`F < T`).
pub fn classical_worlds(arity: usize) -> Result<impl Iterator<Item = World>> {
    check_arity(arity)?;
    Ok((0..1usize << arity).map(move |mask| {
        World::new(
            (0..arity)
                .map(|i| if mask >> (arity - 1 - i) & 1 == 1 { TruthValue::T } else { TruthValue::F })
                .collect(),
        )
    }))
}

pub(crate) fn eval_in(f: &Formula, w: &World) -> TruthValue {
    match f {
        Formula::Var(i) => w.get(*i),
        Formula::Zero => TruthValue::F,
        Formula::One => TruthValue::T,
        Formula::Neutral => TruthValue::N,
        Formula::Not(a) => !eval_in(a, w),
        Formula::And(a, b) => match eval_in(a, w) {
            TruthValue::F => TruthValue::F,
            va => va.and(eval_in(b, w)),
        },
        Formula::Or(a, b) => match eval_in(a, w) {
            TruthValue::T => TruthValue::T,
            va => va.or(eval_in(b, w)),
        },
    }
}

/// `V_w(f)`: the homomorphic extension of `w` to formulas.
pub fn eval(f: &Formula, w: &World) -> Result<TruthValue> {
    if f.max_var() > w.arity() {
        return Err(Error::ArityMismatch { expected: f.max_var(), found: w.arity() });
    }
    Ok(eval_in(f, w))
}

/// `M(f) ∈ D(Kⁿ)`, computed by the recursion `M(α∧β) = M(α) ⊓ M(β)`,
/// `M(α∨β) = M(α) ⊔ M(β)`, `M(¬α) = −M(α)` on top of the variable and
/// constant meanings.
pub fn meaning(f: &Formula, arity: usize) -> Result<PartialSet> {
    let universe = world_universe(arity)?;
    check_formula(f, arity)?;
    meaning_rec(f, arity, &universe)
}

fn meaning_rec(f: &Formula, arity: usize, u: &Arc<Universe>) -> Result<PartialSet> {
    Ok(match f {
        Formula::Var(i) => {
            // Digit of p_i in the base-3 world index.
            let stride = 3usize.pow((arity - i) as u32);
            let mut pos = BitSet::empty(u.size());
            let mut neg = BitSet::empty(u.size());
            for idx in 0..u.size() {
                match (idx / stride) % 3 {
                    0 => neg.insert(idx),
                    2 => pos.insert(idx),
                    _ => {}
                }
            }
            PartialSet::from_bits(u.clone(), pos, neg)?
        }
        Formula::Zero => PartialSet::bottom(u.clone()),
        Formula::One => PartialSet::top(u.clone()),
        Formula::Neutral => PartialSet::neutral(u.clone()),
        Formula::Not(a) => meaning_rec(a, arity, u)?.negate(),
        Formula::And(a, b) => meaning_rec(a, arity, u)?.meet(&meaning_rec(b, arity, u)?)?,
        Formula::Or(a, b) => meaning_rec(a, arity, u)?.join(&meaning_rec(b, arity, u)?)?,
    })
}

/// `M(f)` computed pointwise: positive models are the worlds where `f` is
/// `T`, negative models those where it is `F`.
pub fn meaning_by_scan(f: &Formula, arity: usize) -> Result<PartialSet> {
    let universe = world_universe(arity)?;
    check_formula(f, arity)?;
    let mut pos = BitSet::empty(universe.size());
    let mut neg = BitSet::empty(universe.size());
    for (idx, w) in worlds(arity)?.enumerate() {
        match eval_in(f, &w) {
            TruthValue::T => pos.insert(idx),
            TruthValue::F => neg.insert(idx),
            TruthValue::N => {}
        }
    }
    PartialSet::from_bits(universe, pos, neg)
}

/// `Γ ⊨ α`: at every world of `Kⁿ`, the infimum of the premises' values
/// (`T` for no premises) is at most the conclusion's value.
pub fn entails(premises: &[Formula], conclusion: &Formula, arity: usize) -> Result<bool> {
    check_arity(arity)?;
    for f in premises.iter().chain([conclusion]) {
        check_formula(f, arity)?;
    }
    let mut ws = worlds(arity)?;
    Ok(ws.all(|w| {
        let inf = premises.iter().map(|g| eval_in(g, &w)).min().unwrap_or(TruthValue::T);
        inf <= eval_in(conclusion, &w)
    }))
}

/// `α ≡ β` iff `V_w(α) = V_w(β)` at every world.
pub fn equivalent(a: &Formula, b: &Formula, arity: usize) -> Result<bool> {
    check_arity(arity)?;
    check_formula(a, arity)?;
    check_formula(b, arity)?;
    let mut ws = worlds(arity)?;
    Ok(ws.all(|w| eval_in(a, &w) == eval_in(b, &w)))
}

/// Pointwise information order on worlds.
pub fn info_leq(s: &World, t: &World) -> Result<bool> {
    if s.arity() != t.arity() {
        return Err(Error::ArityMismatch { expected: s.arity(), found: t.arity() });
    }
    Ok(s.values().iter().zip(t.values()).all(|(a, b)| a.info_leq(*b)))
}

fn require_classical(f: &Formula) -> Result<()> {
    if f.is_classical() {
        Ok(())
    } else {
        Err(Error::NonClassicalFormula(f.to_string()))
    }
}

/// Two-valued consequence over the `2ⁿ` classical worlds.
pub fn entails_classically(premises: &[Formula], conclusion: &Formula, arity: usize) -> Result<bool> {
    for f in premises.iter().chain([conclusion]) {
        require_classical(f)?;
        check_formula(f, arity)?;
    }
    let mut ws = classical_worlds(arity)?;
    Ok(ws.all(|w| {
        let inf = premises.iter().map(|g| eval_in(g, &w)).min().unwrap_or(TruthValue::T);
        inf <= eval_in(conclusion, &w)
    }))
}

pub fn equivalent_classically(a: &Formula, b: &Formula, arity: usize) -> Result<bool> {
    Ok(entails_classically(std::slice::from_ref(a), b, arity)?
        && entails_classically(std::slice::from_ref(b), a, arity)?)
}

/// A classical formula whose classical models are exactly `models`: the
/// disjunction of one minterm per world, in lexicographic world order.
/// The empty set yields `0`.
pub fn dnf_formula_for(models: &[World], arity: usize) -> Result<Formula> {
    check_arity(arity)?;
    let mut sorted: Vec<&World> = Vec::with_capacity(models.len());
    for w in models {
        if w.arity() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: w.arity() });
        }
        if !w.is_classical() {
            return Err(Error::NonClassicalWorld(w.to_string()));
        }
        sorted.push(w);
    }
    sorted.sort();
    sorted.dedup();
    let minterm = |w: &World| -> Formula {
        (1..=arity)
            .map(|i| match w.get(i) {
                TruthValue::T => Formula::var(i),
                _ => Formula::not(Formula::var(i)),
            })
            .reduce(Formula::and)
            .unwrap_or(Formula::One)
    };
    Ok(sorted.into_iter().map(minterm).reduce(Formula::or).unwrap_or(Formula::Zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleene::parse;
    use Formula as F;
    use TruthValue::*;

    fn w(s: &str) -> World {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        let and = F::and(F::var(1), F::var(2));
        let or = F::or(F::var(1), F::var(2));
        assert_eq!(eval(&and, &w("NF")).unwrap(), F);
        assert_eq!(eval(&or, &w("NN")).unwrap(), N);
        assert_eq!(eval(&F::not(F::Neutral), &w("T")).unwrap(), N);
        assert!(matches!(eval(&F::var(2), &w("T")), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn meaning_examples() {
        let u = world_universe(1).unwrap();
        let m = meaning(&F::var(1), 1).unwrap();
        assert_eq!(m, PartialSet::from_labels(u.clone(), &["T"], &["F"]).unwrap());
        assert_eq!(meaning(&F::Neutral, 1).unwrap(), PartialSet::neutral(u.clone()));
        let lem = F::or(F::var(1), F::not(F::var(1)));
        assert_eq!(meaning(&lem, 1).unwrap(), PartialSet::from_labels(u, &["F", "T"], &[]).unwrap());
        assert!(matches!(meaning(&F::var(1), 13), Err(Error::ArityCap { .. })));
        assert!(matches!(meaning(&F::var(3), 2), Err(Error::VarOutOfRange { .. })));
    }

    #[test]
    fn meaning_paths_agree_on_samples() {
        for (s, n) in [("p1 & !p2 | n", 2), ("!(p1 | p3) & (p2 | 0)", 3), ("1", 0), ("p2", 4)] {
            let f = parse(s, n).unwrap();
            assert_eq!(meaning(&f, n).unwrap(), meaning_by_scan(&f, n).unwrap(), "{s}");
        }
    }

    #[test]
    fn entailment_examples() {
        let lem = F::or(F::var(1), F::not(F::var(1)));
        assert!(entails(&[F::Neutral], &lem, 1).unwrap());
        assert!(!entails(&[F::One], &lem, 1).unwrap());
        assert!(entails(&[], &F::One, 0).unwrap());
        assert!(!entails(&[], &lem, 1).unwrap());
        assert!(matches!(entails(&[], &F::One, 13), Err(Error::ArityCap { .. })));
    }

    #[test]
    fn equivalence_examples() {
        let p1 = F::var(1);
        let p2 = F::var(2);
        assert!(equivalent(&F::and(p1.clone(), p1.clone()), &p1, 1).unwrap());
        assert!(!equivalent(&F::or(p1.clone(), F::not(p1.clone())), &F::One, 1).unwrap());
        assert!(equivalent(
            &F::not(F::and(p1.clone(), p2.clone())),
            &F::or(F::not(p1.clone()), F::not(p2.clone())),
            2
        )
        .unwrap());
        assert!(!equivalent(&p1, &p2, 2).unwrap());
    }

    #[test]
    fn info_order_examples() {
        assert!(info_leq(&w("NN"), &w("TF")).unwrap());
        assert!(!info_leq(&w("TN"), &w("FN")).unwrap());
        assert!(info_leq(&w("TNF"), &w("TNF")).unwrap());
        assert!(info_leq(&w("T"), &w("TF")).is_err());
    }

    #[test]
    fn dnf_examples() {
        assert_eq!(dnf_formula_for(&[], 2).unwrap(), F::Zero);
        assert_eq!(dnf_formula_for(&[w("TF")], 2).unwrap(), F::and(F::var(1), F::not(F::var(2))));
        let all: Vec<World> = classical_worlds(2).unwrap().collect();
        let f = dnf_formula_for(&all, 2).unwrap();
        assert_eq!(f.to_string(), "!p1 & !p2 | !p1 & p2 | p1 & !p2 | p1 & p2");
        for cw in classical_worlds(2).unwrap() {
            assert_eq!(eval(&f, &cw).unwrap(), T);
        }
        assert!(matches!(dnf_formula_for(&[w("NT")], 2), Err(Error::NonClassicalWorld(_))));
    }

    #[test]
    fn classical_consequence() {
        let contradiction = F::and(F::var(1), F::not(F::var(1)));
        assert!(entails_classically(&[], &F::not(contradiction.clone()), 1).unwrap());
        // Not a Kleene tautology.
        assert!(!entails(&[], &F::not(contradiction), 1).unwrap());
        assert!(entails_classically(&[], &F::Neutral, 1).is_err());
        assert_eq!(
            classical_worlds(2).unwrap().map(|w| w.to_string()).collect::<Vec<_>>(),
            ["FF", "FT", "TF", "TT"]
        );
    }
}
