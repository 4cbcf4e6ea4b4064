//! Real pairs: partial probability values, stakes and payoffs.
//!
//! `RPair` is an unconstrained element of R² with pointwise arithmetic.
//! `PartialValue` is the subset `T = {(x, y) ∈ [0,1]² : x + y ≤ 1}`.
//! Both are ordered by `(x, y) ⪯ (w, z)` iff `x ≤ w` and `z ≤ y`: the
//! natural order on the first coordinate, reversed on the second.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Global comparison tolerance for reals.
pub const EPS: f64 = 1e-9;

pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS
}

/// Unconstrained element of R².
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct RPair {
    pub u: f64,
    pub v: f64,
}

impl RPair {
    pub const ZERO: RPair = RPair { u: 0.0, v: 0.0 };

    pub const fn new(u: f64, v: f64) -> Self {
        RPair { u, v }
    }

    pub fn checked(u: f64, v: f64) -> Result<Self> {
        if u.is_finite() && v.is_finite() {
            Ok(RPair { u, v })
        } else {
            Err(Error::NonFinite("pair"))
        }
    }

    pub fn approx_eq(self, other: RPair) -> bool {
        approx_eq(self.u, other.u) && approx_eq(self.v, other.v)
    }

    /// `self ⪯ other` within tolerance.
    pub fn preceq(self, other: RPair) -> bool {
        self.u <= other.u + EPS && other.v <= self.v + EPS
    }

    /// Strict: `self ⪯ other` and not approximately equal.
    pub fn prec(self, other: RPair) -> bool {
        self.preceq(other) && !self.approx_eq(other)
    }

    pub fn swap(self) -> Self {
        RPair { u: self.v, v: self.u }
    }
}

impl From<[f64; 2]> for RPair {
    fn from([u, v]: [f64; 2]) -> Self {
        RPair { u, v }
    }
}

impl From<RPair> for [f64; 2] {
    fn from(p: RPair) -> Self {
        [p.u, p.v]
    }
}

impl Add for RPair {
    type Output = RPair;
    fn add(self, o: RPair) -> RPair {
        RPair::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for RPair {
    type Output = RPair;
    fn sub(self, o: RPair) -> RPair {
        RPair::new(self.u - o.u, self.v - o.v)
    }
}

/// Pointwise product.
impl Mul for RPair {
    type Output = RPair;
    fn mul(self, o: RPair) -> RPair {
        RPair::new(self.u * o.u, self.v * o.v)
    }
}

impl Neg for RPair {
    type Output = RPair;
    fn neg(self) -> RPair {
        RPair::new(-self.u, -self.v)
    }
}

impl std::iter::Sum for RPair {
    fn sum<I: Iterator<Item = RPair>>(iter: I) -> RPair {
        iter.fold(RPair::ZERO, Add::add)
    }
}

impl fmt::Display for RPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_real(self.u), fmt_real(self.v))
    }
}

/// Prints a real rounded well below the tolerance, so float noise like
/// `0.30000000000000004` shows as `0.3`.
pub fn fmt_real(x: f64) -> String {
    let r = (x * 1e12).round() / 1e12;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

/// A partial probability value `(x, y)`: `x` is the degree of belief that
/// the event happens, `y` that it fails.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct PartialValue {
    x: f64,
    y: f64,
}

impl PartialValue {
    pub const TRUE: PartialValue = PartialValue { x: 1.0, y: 0.0 };
    pub const NEUTRAL: PartialValue = PartialValue { x: 0.0, y: 0.0 };
    pub const FALSE: PartialValue = PartialValue { x: 0.0, y: 1.0 };

    /// Validates `x, y ∈ [0, 1]` and `x + y ≤ 1`, each within [`EPS`].
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let ok = x.is_finite()
            && y.is_finite()
            && x >= -EPS
            && y >= -EPS
            && x <= 1.0 + EPS
            && y <= 1.0 + EPS
            && x + y <= 1.0 + EPS;
        if ok {
            Ok(PartialValue { x, y })
        } else {
            Err(Error::InvalidValue { x, y })
        }
    }

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn y(self) -> f64 {
        self.y
    }

    pub fn pair(self) -> RPair {
        RPair::new(self.x, self.y)
    }

    /// `σ(x, y) = (y, x)`
    pub fn sigma(self) -> Self {
        PartialValue { x: self.y, y: self.x }
    }

    /// `self ⪯ other` within tolerance.
    pub fn leq(self, other: PartialValue) -> bool {
        self.pair().preceq(other.pair())
    }

    pub fn approx_eq(self, other: PartialValue) -> bool {
        self.pair().approx_eq(other.pair())
    }
}

impl TryFrom<[f64; 2]> for PartialValue {
    type Error = Error;
    fn try_from([x, y]: [f64; 2]) -> Result<Self> {
        PartialValue::new(x, y)
    }
}

impl From<PartialValue> for [f64; 2] {
    fn from(p: PartialValue) -> Self {
        [p.x, p.y]
    }
}

impl From<PartialValue> for RPair {
    fn from(p: PartialValue) -> Self {
        p.pair()
    }
}

impl fmt::Display for PartialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pair().fmt(f)
    }
}

/// `pv_leq` under its usual name.
pub fn pv_leq(a: PartialValue, b: PartialValue) -> bool {
    a.leq(b)
}

pub fn sigma(a: PartialValue) -> PartialValue {
    a.sigma()
}
