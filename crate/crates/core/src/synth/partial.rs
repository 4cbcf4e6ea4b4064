//! Books against belief assignments that break the partial axioms.
//!
//! Every bet is placed at the agent's own rate: the quotient of a bet on
//! `α` is `b(α)`.

use serde::Serialize;

use super::certificate::{Certificate, Descriptor, Observed};
use super::solver::stake_solver;
use crate::betting::{classify, AnyBook, Book, PartialBet, Region, Verdict};
use crate::error::{Error, Result};
use crate::kleene::{self, entails, equivalent, meaning, Formula};
use crate::probability::axioms::additivity_sides;
use crate::probability::{check_belief_axioms, BeliefAssignment, Unchecked, Violation, ViolationKind};
use crate::value::{PartialValue, RPair, EPS};

const ONE: RPair = RPair::new(1.0, 1.0);

fn value(b: &BeliefAssignment, f: &Formula) -> Result<PartialValue> {
    b.get(f).ok_or_else(|| Error::MissingEntry(f.to_string()))
}

fn descriptor(kind: ViolationKind, formulas: &[&Formula], values: Vec<PartialValue>) -> Descriptor {
    Descriptor {
        kind: serde_json::to_value(kind).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(),
        formulas: formulas.iter().map(|f| f.to_string()).collect(),
        values: Observed::Partial(values),
    }
}

fn book(b: &BeliefAssignment, bets: Vec<(&Formula, PartialValue, RPair)>) -> Result<AnyBook> {
    let bets = bets.into_iter().map(|(f, q, s)| PartialBet::new(f.clone(), q, s)).collect();
    Ok(AnyBook::Partial(Book::new(b.arity(), bets)?))
}

fn unmet(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// `1 ⊨ α` with `b(α) ≠ (1, 0)`: sell `α` at stake `(−1, −1)`. The payoff
/// is `(x − 1, y)` at every world.
pub fn synth_axiom1(alpha: &Formula, b: &BeliefAssignment) -> Result<Certificate> {
    let v = value(b, alpha)?;
    if !entails(&[Formula::One], alpha, b.arity())? {
        return Err(unmet(format!("1 does not entail {alpha}")));
    }
    if v.approx_eq(PartialValue::TRUE) {
        return Err(unmet(format!("b({alpha}) = (1,0)")));
    }
    Certificate::build(
        descriptor(ViolationKind::Axiom1, &[alpha], vec![v]),
        "axiom 1",
        book(b, vec![(alpha, v, -ONE)])?,
        Verdict::DutchBook,
        vec![],
    )
}

/// Additivity. With `D = (b(α) + b(β)) − (b(α∨β) + b(α∧β))`, stake `s` on
/// both compounds and `−s` on `α`, `β` yields the constant payoff `s·D`
/// (pointwise), since the truth values cancel at every world. `s` is chosen
/// from the position of `D`:
///
/// * below the diagonal: `s = (1, 1)`;
/// * above it: `s = (−1, −1)`;
/// * on it, `D = (d, d)`: `s = (1, −1)` if `d < 0`, else `(−1, 1)`.
///
/// The first two cover both orderings of comparable sides; the third only
/// arises for incomparable sides and is labelled "extended".
pub fn synth_axiom2(alpha: &Formula, beta: &Formula, b: &BeliefAssignment) -> Result<Certificate> {
    let or = Formula::or(alpha.clone(), beta.clone());
    let and = Formula::and(alpha.clone(), beta.clone());
    let values = [alpha, beta, &or, &and].iter().map(|f| value(b, f)).collect::<Result<Vec<_>>>()?;
    let (lhs, rhs) = additivity_sides(&values);
    if lhs.approx_eq(rhs) {
        return Err(unmet("both sides of the sum identity agree"));
    }
    let d = lhs - rhs;
    let comparable = lhs.preceq(rhs) || rhs.preceq(lhs);
    let s = match classify(d) {
        Region::DeltaMinus => ONE,
        Region::DeltaPlus => -ONE,
        Region::Delta if d.u + d.v < 0.0 => RPair::new(1.0, -1.0),
        Region::Delta => RPair::new(-1.0, 1.0),
    };
    let label = if lhs.preceq(rhs) {
        "axiom 2, case 1"
    } else if rhs.preceq(lhs) {
        "axiom 2, case 2"
    } else {
        "axiom 2, extended"
    };
    let mut notes = vec![];
    if !comparable {
        notes.push(format!(
            "sides {lhs} and {rhs} are incomparable; stakes chosen from the position of their difference"
        ));
    }
    Certificate::build(
        descriptor(ViolationKind::Axiom2, &[alpha, beta, &or, &and], values.clone()),
        label,
        book(
            b,
            vec![(&or, values[2], s), (&and, values[3], s), (alpha, values[0], -s), (beta, values[1], -s)],
        )?,
        Verdict::DutchBook,
        notes,
    )
}

/// Negation, with `(x, y) = b(α)` and `(z, w) = b(¬α)`.
///
/// * `x + z < y + w`: stake `(−1, −1)` on both.
/// * `y + w < x + z`: stake `(1, 1)` on both.
/// * `x + z = y + w`: stakes `(h, k)` on `α` and `(h', k')` on `¬α` from
///   [`stake_solver`]. Payoffs lie strictly below the diagonal where `α` is
///   decided and on it where `α` is `N`, giving a weak Dutch Book. When `α`
///   is `N` at every world it is equivalent to `¬α` and the equivalence
///   construction is used instead.
pub fn synth_axiom3(alpha: &Formula, b: &BeliefAssignment) -> Result<Certificate> {
    let not = Formula::not(alpha.clone());
    let v = value(b, alpha)?;
    let vn = value(b, &not)?;
    if vn.approx_eq(v.sigma()) {
        return Err(unmet(format!("b({not}) = sigma(b({alpha}))")));
    }
    let desc = descriptor(ViolationKind::Axiom3, &[alpha, &not], vec![v, vn]);
    let (x, y, z, w) = (v.x(), v.y(), vn.x(), vn.y());
    let gap = (x + z) - (y + w);
    if gap < -EPS {
        let bk = book(b, vec![(alpha, v, -ONE), (&not, vn, -ONE)])?;
        return Certificate::build(desc, "axiom 3, case 1", bk, Verdict::DutchBook, vec![]);
    }
    if gap > EPS {
        let bk = book(b, vec![(alpha, v, ONE), (&not, vn, ONE)])?;
        return Certificate::build(desc, "axiom 3, case 2", bk, Verdict::DutchBook, vec![]);
    }

    let m = meaning(alpha, b.arity())?;
    if m.pos().is_empty() && m.neg().is_empty() {
        let mut cert = equivalence_book(alpha, &not, v, vn, b)?;
        cert.violation = desc;
        cert.construction = "axiom 3, case 3 via equivalence".into();
        cert.notes.push(format!("{alpha} is N at every world, so it is equivalent to {not}"));
        return Ok(cert);
    }
    let s = stake_solver(x, y, z, w)?;
    let bk = book(b, vec![(alpha, v, RPair::new(s.h, s.k)), (&not, vn, RPair::new(s.hp, s.kp))])?;
    let notes = vec![
        format!("stakes h={}, k={}, h'={}, k'={}", s.h, s.k, s.hp, s.kp),
        "stakes satisfy h < k' and h' < k".into(),
    ];
    Certificate::build(desc, "axiom 3, case 3", bk, Verdict::WeakDutchBook, notes)
}

/// `n ⊨ α` with `b(α) = (x, y)`, `y > 0`: stake `(0, −1)`, payoff `(0, y)`.
pub fn synth_axiom4(alpha: &Formula, b: &BeliefAssignment) -> Result<Certificate> {
    let v = value(b, alpha)?;
    if !entails(&[Formula::Neutral], alpha, b.arity())? {
        return Err(unmet(format!("n does not entail {alpha}")));
    }
    if PartialValue::NEUTRAL.leq(v) {
        return Err(unmet(format!("(0,0) <= b({alpha})")));
    }
    Certificate::build(
        descriptor(ViolationKind::Axiom4, &[alpha], vec![v]),
        "axiom 4",
        book(b, vec![(alpha, v, RPair::new(0.0, -1.0))])?,
        Verdict::DutchBook,
        vec![],
    )
}

/// `α ≡ β` with `b(α) = (x, y) ≠ (z, w) = b(β)`. The truth values cancel,
/// leaving a constant payoff:
///
/// * `z − x < w − y`: `(1, 1)` on `α`, `(−1, −1)` on `β`, payoff `(z−x, w−y)`;
/// * `w − y < z − x`: swapped, payoff `(x−z, y−w)`;
/// * equal differences `d`: `(1, −1)`, `(−1, 1)` if `d < 0`, else swapped,
///   payoff `(−|d|, |d|)`.
pub fn synth_equivalence(alpha: &Formula, beta: &Formula, b: &BeliefAssignment) -> Result<Certificate> {
    let va = value(b, alpha)?;
    let vb = value(b, beta)?;
    if !equivalent(alpha, beta, b.arity())? {
        return Err(unmet(format!("{alpha} and {beta} are not equivalent")));
    }
    if va.approx_eq(vb) {
        return Err(unmet(format!("b({alpha}) = b({beta})")));
    }
    equivalence_book(alpha, beta, va, vb, b)
}

fn equivalence_book(
    alpha: &Formula,
    beta: &Formula,
    va: PartialValue,
    vb: PartialValue,
    b: &BeliefAssignment,
) -> Result<Certificate> {
    let du = vb.x() - va.x();
    let dv = vb.y() - va.y();
    let (label, s) = if du < dv - EPS {
        ("equivalence, case 1", ONE)
    } else if dv < du - EPS {
        ("equivalence, case 2", -ONE)
    } else if du + dv < 0.0 {
        ("equivalence, case 3", RPair::new(1.0, -1.0))
    } else {
        ("equivalence, case 3", RPair::new(-1.0, 1.0))
    };
    Certificate::build(
        descriptor(ViolationKind::Equivalence, &[alpha, beta], vec![va, vb]),
        label,
        book(b, vec![(alpha, va, s), (beta, vb, -s)])?,
        Verdict::DutchBook,
        vec![],
    )
}

/// A violation that was detected but has no verified book.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Unsynthesized {
    pub violation: Violation,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SynthesisReport {
    pub certificates: Vec<Certificate>,
    pub unsynthesized: Vec<Unsynthesized>,
    pub unchecked: Vec<Unchecked>,
}

impl SynthesisReport {
    pub fn is_clean(&self) -> bool {
        self.certificates.is_empty() && self.unsynthesized.is_empty()
    }
}

/// Checks the axioms, builds a book for each violation in report order, then
/// builds one for every pair of equivalent entries with different values
/// (in entry order).
pub fn synthesize_all(b: &BeliefAssignment) -> Result<SynthesisReport> {
    kleene::check_arity(b.arity())?;
    let report = check_belief_axioms(b)?;
    let mut out = SynthesisReport { unchecked: report.unchecked, ..Default::default() };

    for v in report.violations {
        let f = &v.formulas;
        let r = match v.kind {
            ViolationKind::Axiom1 => synth_axiom1(&f[0], b),
            ViolationKind::Axiom2 => synth_axiom2(&f[0], &f[1], b),
            ViolationKind::Axiom3 => synth_axiom3(&f[0], b),
            ViolationKind::Axiom4 => synth_axiom4(&f[0], b),
            _ => continue,
        };
        push(&mut out, v, r)?;
    }

    let entries: Vec<(&Formula, PartialValue)> = b.iter().collect();
    let meanings = entries.iter().map(|(f, _)| meaning(f, b.arity())).collect::<Result<Vec<_>>>()?;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if meanings[i] != meanings[j] || entries[i].1.approx_eq(entries[j].1) {
                continue;
            }
            let (fa, fb) = (entries[i].0, entries[j].0);
            let v = Violation {
                kind: ViolationKind::Equivalence,
                formulas: vec![fa.clone(), fb.clone()],
                values: vec![entries[i].1, entries[j].1],
            };
            let r = synth_equivalence(fa, fb, b);
            push(&mut out, v, r)?;
        }
    }
    Ok(out)
}

fn push(out: &mut SynthesisReport, v: Violation, r: Result<Certificate>) -> Result<()> {
    match r {
        Ok(c) => out.certificates.push(c),
        Err(e @ (Error::Unverified(_) | Error::Solver(_) | Error::Precondition(_))) => {
            out.unsynthesized.push(Unsynthesized { violation: v, reason: e.to_string() })
        }
        Err(e) => return Err(e),
    }
    Ok(())
}
