//! Weierstrass models over Q, their invariants and 3-adic valuations.

mod tate;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use tate::{tate_algorithm, Kodaira, LocalData, Reduction, TateError};

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular model: discriminant is zero")]
    SingularModel,
    #[error("residue degree must be at least 1")]
    InvalidResidueDegree,
}

/// A 3-adic valuation: an integer, or `Infinite` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// Exponent of 3 in a nonzero integer; `None` for zero.
pub fn val3_int(x: &BigInt) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let three = BigInt::from(3);
    let mut v = 0;
    let mut rest = x.abs();
    loop {
        let (q, r) = rest.div_rem(&three);
        if !r.is_zero() {
            return Some(v);
        }
        rest = q;
        v += 1;
    }
}

pub fn val3(x: &Rat) -> Valuation {
    match val3_int(x.numer()) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = val3_int(x.denom()).expect("denominator is nonzero");
            Valuation::Finite(vn as i64 - vd as i64)
        }
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over an unramified
/// extension of Q_3 with residue field F_{3^n}, `n = residue_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassModel {
    #[serde(with = "crate::serde_rat")]
    pub a1: Rat,
    #[serde(with = "crate::serde_rat")]
    pub a2: Rat,
    #[serde(with = "crate::serde_rat")]
    pub a3: Rat,
    #[serde(with = "crate::serde_rat")]
    pub a4: Rat,
    #[serde(with = "crate::serde_rat")]
    pub a6: Rat,
    pub residue_degree: u32,
}

impl WeierstrassModel {
    pub fn new(coeffs: [Rat; 5], residue_degree: u32) -> Result<Self, CurveError> {
        if residue_degree == 0 {
            return Err(CurveError::InvalidResidueDegree);
        }
        let [a1, a2, a3, a4, a6] = coeffs;
        let model = WeierstrassModel { a1, a2, a3, a4, a6, residue_degree };
        Invariants::from_coefficients(&model.coefficients())?;
        Ok(model)
    }

    pub fn from_ints(coeffs: [i64; 5], residue_degree: u32) -> Result<Self, CurveError> {
        Self::new(coeffs.map(|c| Rat::from_integer(c.into())), residue_degree)
    }

    pub fn coefficients(&self) -> [Rat; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|a| a.is_integer())
    }

    /// The model obtained by `(x, y) -> (u^2 x, u^3 y)`, i.e. `a_i -> a_i / u^i`.
    pub fn scaled(&self, u: &Rat) -> Self {
        assert!(!u.is_zero(), "scaling factor must be nonzero");
        let [a1, a2, a3, a4, a6] = self.coefficients();
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        WeierstrassModel {
            a1: a1 / u,
            a2: a2 / u2,
            a3: a3 / u3,
            a4: a4 / u4,
            a6: a6 / u6,
            residue_degree: self.residue_degree,
        }
    }

    /// Completes the square (characteristic 0) to reach `y^2 = x^3 + a2 x^2 + a4 x + a6`.
    pub fn short_form(&self) -> Self {
        let inv = invariants(self);
        let four = Rat::from_integer(4.into());
        let two = Rat::from_integer(2.into());
        WeierstrassModel {
            a1: Rat::zero(),
            a2: &inv.b2 / &four,
            a3: Rat::zero(),
            a4: &inv.b4 / &two,
            a6: &inv.b6 / &four,
            residue_degree: self.residue_degree,
        }
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.coefficients().map(|a| crate::serde_rat::rat_to_string(&a));
        write!(f, "[{a1},{a2},{a3},{a4},{a6}] (n={})", self.residue_degree)
    }
}

/// The standard b-, c-invariants, discriminant and j-invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Rat,
    pub b4: Rat,
    pub b6: Rat,
    pub b8: Rat,
    pub c4: Rat,
    pub c6: Rat,
    pub delta: Rat,
    pub j: Rat,
}

impl Invariants {
    pub fn from_coefficients(coeffs: &[Rat; 5]) -> Result<Self, CurveError> {
        let [a1, a2, a3, a4, a6] = coeffs;
        let r = |n: i64| Rat::from_integer(n.into());

        let b2 = a1 * a1 + r(4) * a2;
        let b4 = r(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + r(4) * a6;
        let b8 = a1 * a1 * a6 + r(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - r(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + r(36) * &b2 * &b4 - r(216) * &b6;
        let delta = -(&b2 * &b2 * &b8) - r(8) * &b4 * &b4 * &b4 - r(27) * &b6 * &b6
            + r(9) * &b2 * &b4 * &b6;
        if delta.is_zero() {
            return Err(CurveError::SingularModel);
        }
        let j = &c4 * &c4 * &c4 / &delta;
        Ok(Invariants { b2, b4, b6, b8, c4, c6, delta, j })
    }
}

pub fn invariants(m: &WeierstrassModel) -> Invariants {
    Invariants::from_coefficients(&m.coefficients()).expect("model was checked nonsingular at construction")
}

/// Potentially good reduction at 3 iff the j-invariant is 3-integral.
pub fn potentially_good(inv: &Invariants) -> bool {
    val3(&inv.j) >= Valuation::Finite(0)
}
