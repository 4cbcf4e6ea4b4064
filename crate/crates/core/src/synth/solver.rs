//! Stakes for the balanced case of the negation axiom.
//!
//! Given `(x, y), (z, w) ∈ T` with `x + z = y + w` and `(y, x) ≠ (z, w)`,
//! find `h, h', k, k'` with
//!
//! * `h·x + h'·z = k·y + k'·w`, and
//! * `h < k'` and `h' < k`.
//!
//! Writing `k' = q + h` and `k = t + h'` reduces this to finding `q, t > 0`
//! on the line `q·w + t·y = (h − h')(x − w)`. The free choices are fixed:
//! `h, h'` are 0 or 1, `t` is half the t-intercept when `y, w > 0`, and the
//! remaining free parameter is 1 when `y = 0` or `w = 0`.

use serde::Serialize;

use crate::error::{Error, Result, SolverPrecondition};
use crate::value::{approx_eq, PartialValue, EPS};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StakeQuadruple {
    pub h: f64,
    pub hp: f64,
    pub k: f64,
    pub kp: f64,
}

impl StakeQuadruple {
    /// `h·x + h'·z − (k·y + k'·w)`
    pub fn residual(&self, x: f64, y: f64, z: f64, w: f64) -> f64 {
        self.h * x + self.hp * z - (self.k * y + self.kp * w)
    }

    /// Smaller of `k' − h` and `k − h'`; positive iff both strict
    /// inequalities hold.
    pub fn margin(&self) -> f64 {
        (self.kp - self.h).min(self.k - self.hp)
    }
}

pub fn stake_solver(x: f64, y: f64, z: f64, w: f64) -> Result<StakeQuadruple> {
    let fail = |p| Err(Error::Solver(p));
    if PartialValue::new(x, y).is_err() || PartialValue::new(z, w).is_err() {
        return fail(SolverPrecondition::NotInT);
    }
    if approx_eq(y, z) && approx_eq(x, w) {
        return fail(SolverPrecondition::EqualToSigma);
    }
    if !approx_eq(x + z, y + w) {
        return fail(SolverPrecondition::SumMismatch);
    }
    // With the sums balanced, x = w forces y = z.
    if (x - w).abs() <= EPS {
        return fail(SolverPrecondition::EqualToSigma);
    }

    if y > 0.0 && w > 0.0 {
        let (h, hp) = if x > w { (1.0, 0.0) } else { (0.0, 1.0) };
        let d = (h - hp) * (x - w);
        let t = d / y / 2.0;
        let q = -(y / w) * t + d / w;
        Ok(StakeQuadruple { h, hp, k: t + hp, kp: q + h })
    } else if y == 0.0 {
        // w > 0 and z > 0 here; q = (h' − h) z / w.
        let (h, hp) = (0.0, 1.0);
        let q = (hp - h) * z / w;
        let t = 1.0;
        Ok(StakeQuadruple { h, hp, k: t + hp, kp: q + h })
    } else {
        // w = 0: t = (h − h') x / y.
        let (h, hp) = (1.0, 0.0);
        let t = (h - hp) * x / y;
        let q = 1.0;
        Ok(StakeQuadruple { h, hp, k: t + hp, kp: q + h })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn interior_case() {
        let s = stake_solver(0.5, 0.2, 0.1, 0.4).unwrap();
        assert_eq!((s.h, s.hp), (1.0, 0.0));
        assert!(close(s.k, 0.25) && close(s.kp, 1.125), "{s:?}");
        assert!(close(1.0 * 0.5 + 0.0 * 0.1, 0.5));
        assert!(close(s.k * 0.2 + s.kp * 0.4, 0.5));
        assert!(s.h < s.kp && s.hp < s.k);
    }

    #[test]
    fn interior_case_with_x_below_w() {
        let s = stake_solver(0.1, 0.4, 0.5, 0.2).unwrap();
        assert_eq!((s.h, s.hp), (0.0, 1.0));
        assert!(s.residual(0.1, 0.4, 0.5, 0.2).abs() < 1e-12);
        assert!(s.margin() > 0.0);
    }

    #[test]
    fn boundary_cases() {
        let s = stake_solver(0.3, 0.0, 0.2, 0.5).unwrap();
        assert_eq!((s.h, s.hp), (0.0, 1.0));
        assert!(close(s.kp, 0.4) && close(s.k, 2.0));
        assert!(close(0.0 * 0.3 + 1.0 * 0.2, 0.2) && close(s.k * 0.0 + s.kp * 0.5, 0.2));

        let s = stake_solver(0.2, 0.5, 0.3, 0.0).unwrap();
        assert_eq!((s.h, s.hp), (1.0, 0.0));
        assert!(close(s.k, 0.4) && close(s.kp, 2.0));
        assert!(s.residual(0.2, 0.5, 0.3, 0.0).abs() < 1e-12);
    }

    #[test]
    fn preconditions() {
        use SolverPrecondition::*;
        assert_eq!(stake_solver(0.5, 0.5, 0.5, 0.5), Err(Error::Solver(EqualToSigma)));
        assert_eq!(stake_solver(0.3, 0.2, 0.2, 0.3), Err(Error::Solver(EqualToSigma)));
        assert_eq!(stake_solver(0.8, 0.5, 0.1, 0.1), Err(Error::Solver(NotInT)));
        assert_eq!(stake_solver(0.5, 0.2, 0.1, 0.3), Err(Error::Solver(SumMismatch)));
    }

    proptest! {
        #[test]
        fn satisfies_both_conditions(x in 0.0f64..=1.0, a in 0.0f64..=1.0, c in 0.0f64..=1.0) {
            // z = y + w - x must land in [0, 1 - w].
            let y = a * (1.0 - x);
            let lo = (x - y).max(0.0);
            let w = lo + c * ((1.0 + x - y) / 2.0 - lo);
            let z = (y + w - x).max(0.0);
            prop_assume!((x - w).abs() > 1e-6);
            let s = stake_solver(x, y, z, w)?;
            prop_assert!(s.residual(x, y, z, w).abs() <= 1e-9);
            prop_assert!(s.kp - s.h > 1e-12);
            prop_assert!(s.k - s.hp > 1e-12);
        }
    }
}
