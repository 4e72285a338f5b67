//! Tate's algorithm at p = 3.
//!
//! The model is first scaled to an integral one, then the usual sequence of
//! tests is run with 3-adic valuations computed on exact integers. Every
//! root-finding step over the residue field is an exhaustive search over
//! F_3 = {0, 1, 2}: a repeated root of a cubic or quadratic over a perfect
//! field is rational, so searching F_3 for a common root of the polynomial
//! and its derivative decides both existence and location.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{invariants, potentially_good, val3_int, Rat, WeierstrassModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TateError {
    #[error("Tate's algorithm reached an impossible state: {0}")]
    InternalContradiction(String),
}

/// Kodaira symbol of the special fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    /// `I_nu`, nu >= 1.
    In(u32),
    II,
    III,
    IV,
    I0Star,
    /// `I_nu^*`, nu >= 1.
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => f.write_str("I0"),
            Kodaira::In(nu) => write!(f, "I{nu}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::I0Star => f.write_str("I0*"),
            Kodaira::InStar(nu) => write!(f, "I{nu}*"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = match s {
            "I0" => Kodaira::I0,
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "I0*" => Kodaira::I0Star,
            "IV*" => Kodaira::IVStar,
            "III*" => Kodaira::IIIStar,
            "II*" => Kodaira::IIStar,
            _ => {
                let body = s.strip_prefix('I').ok_or_else(|| format!("unknown Kodaira symbol {s:?}"))?;
                let (digits, star) = match body.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (body, false),
                };
                let nu: u32 = digits.parse().map_err(|_| format!("unknown Kodaira symbol {s:?}"))?;
                if nu == 0 {
                    return Err(format!("unknown Kodaira symbol {s:?}"));
                }
                if star {
                    Kodaira::InStar(nu)
                } else {
                    Kodaira::In(nu)
                }
            }
        };
        Ok(parsed)
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Kodaira {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reduction {
    Good,
    Multiplicative,
    Additive,
}

/// Output of Tate's algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub minimal_model: WeierstrassModel,
    pub kodaira: Kodaira,
    pub v_delta_min: u32,
    pub reduction: Reduction,
    pub potentially_good: bool,
}

/// Integral model with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntModel {
    a1: BigInt,
    a2: BigInt,
    a3: BigInt,
    a4: BigInt,
    a6: BigInt,
}

impl IntModel {
    fn b2(&self) -> BigInt {
        &self.a1 * &self.a1 + 4 * &self.a2
    }

    fn b4(&self) -> BigInt {
        2 * &self.a4 + &self.a1 * &self.a3
    }

    fn b6(&self) -> BigInt {
        &self.a3 * &self.a3 + 4 * &self.a6
    }

    fn b8(&self) -> BigInt {
        let IntModel { a1, a2, a3, a4, a6 } = self;
        a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    fn delta(&self) -> BigInt {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// Substitution `x = x' + r`, `y = y' + s x' + t`.
    fn transform(&mut self, r: &BigInt, s: &BigInt, t: &BigInt) {
        let IntModel { a1, a2, a3, a4, a6 } = self.clone();
        self.a1 = &a1 + 2 * s;
        self.a2 = &a2 - s * &a1 + 3 * r - s * s;
        self.a3 = &a3 + r * &a1 + 2 * t;
        self.a4 = &a4 - s * &a3 + 2 * r * &a2 - (t + r * s) * &a1 + 3 * r * r - 2 * s * t;
        self.a6 = &a6 + r * &a4 + r * r * &a2 + r * r * r - t * &a3 - t * t - r * t * &a1;
    }

    /// `a_i -> a_i / 3^i`; caller guarantees divisibility.
    fn scale_down(&mut self) {
        for (a, i) in [
            (&mut self.a1, 1u32),
            (&mut self.a2, 2),
            (&mut self.a3, 3),
            (&mut self.a4, 4),
            (&mut self.a6, 6),
        ] {
            let (q, r) = a.div_rem(&pow3(i));
            debug_assert!(r.is_zero());
            *a = q;
        }
    }

    fn to_model(&self, residue_degree: u32) -> WeierstrassModel {
        WeierstrassModel {
            a1: Rat::from_integer(self.a1.clone()),
            a2: Rat::from_integer(self.a2.clone()),
            a3: Rat::from_integer(self.a3.clone()),
            a4: Rat::from_integer(self.a4.clone()),
            a6: Rat::from_integer(self.a6.clone()),
            residue_degree,
        }
    }
}

fn pow3(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(3), k as usize)
}

fn divisible(x: &BigInt, k: u32) -> bool {
    x.is_multiple_of(&pow3(k))
}

/// `(x / 3^k) mod 3` as an element of {0, 1, 2}; `x` must be divisible by `3^k`.
fn residue(x: &BigInt, k: u32) -> i64 {
    let q = x / pow3(k);
    let r = q.mod_floor(&BigInt::from(3));
    i64::try_from(r).expect("residue fits")
}

fn mod3(x: i64) -> i64 {
    x.rem_euclid(3)
}

/// Evaluates `sum c_i T^i` at `t` modulo 3.
fn eval_mod3(coeffs: &[i64], t: i64) -> i64 {
    mod3(coeffs.iter().rev().fold(0, |acc, &c| acc * t + c))
}

fn derivative(coeffs: &[i64]) -> Vec<i64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect()
}

/// The repeated root in F_3 of a polynomial over F_3 (coefficients in
/// ascending order), found by exhaustive search; `None` when all roots are
/// simple.
fn repeated_root(coeffs: &[i64]) -> Option<i64> {
    let d = derivative(coeffs);
    (0..3).find(|&t| eval_mod3(coeffs, t) == 0 && eval_mod3(&d, t) == 0)
}

fn contradiction(msg: &str) -> TateError {
    TateError::InternalContradiction(msg.to_string())
}

/// Runs Tate's algorithm at p = 3 and returns the local data of `m`.
pub fn tate_algorithm(m: &WeierstrassModel) -> Result<LocalData, TateError> {
    let n = m.residue_degree;
    let potentially_good = potentially_good(&invariants(m));

    // clear denominators with u = 1/lcm(denominators)
    let lcm = m
        .coefficients()
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let integral = m.scaled(&Rat::new(BigInt::one(), lcm));
    let mut e = IntModel {
        a1: integral.a1.to_integer(),
        a2: integral.a2.to_integer(),
        a3: integral.a3.to_integer(),
        a4: integral.a4.to_integer(),
        a6: integral.a6.to_integer(),
    };

    loop {
        let delta = e.delta();
        let vd = val3_int(&delta).ok_or_else(|| contradiction("zero discriminant"))? as u32;
        let done = |e: &IntModel, kodaira: Kodaira, reduction: Reduction| {
            Ok(LocalData {
                minimal_model: e.to_model(n),
                kodaira,
                v_delta_min: vd,
                reduction,
                potentially_good,
            })
        };

        if vd == 0 {
            return done(&e, Kodaira::I0, Reduction::Good);
        }

        // move the singular point of the reduction to (0, 0)
        let (a1, a2, a3, a4, a6) = (
            residue(&e.a1, 0),
            residue(&e.a2, 0),
            residue(&e.a3, 0),
            residue(&e.a4, 0),
            residue(&e.a6, 0),
        );
        let singular = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .find(|&(x, y)| {
                let f = y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
                let fx = a1 * y - 3 * x * x - 2 * a2 * x - a4;
                let fy = 2 * y + a1 * x + a3;
                mod3(f) == 0 && mod3(fx) == 0 && mod3(fy) == 0
            })
            .ok_or_else(|| contradiction("no singular point on the reduction"))?;
        e.transform(&singular.0.into(), &BigInt::zero(), &singular.1.into());

        if !divisible(&e.b2(), 1) {
            return done(&e, Kodaira::In(vd), Reduction::Multiplicative);
        }
        if !divisible(&e.a6, 2) {
            return done(&e, Kodaira::II, Reduction::Additive);
        }
        if !divisible(&e.b8(), 3) {
            return done(&e, Kodaira::III, Reduction::Additive);
        }
        if !divisible(&e.b6(), 3) {
            return done(&e, Kodaira::IV, Reduction::Additive);
        }

        // reach 3 | a1, a2; 9 | a3, a4; 27 | a6
        let (s, t) = (0..3i64)
            .flat_map(|s| (0..3i64).map(move |t| (s, 3 * t)))
            .find(|&(s, t)| {
                let mut c = e.clone();
                c.transform(&BigInt::zero(), &s.into(), &t.into());
                divisible(&c.a1, 1)
                    && divisible(&c.a2, 1)
                    && divisible(&c.a3, 2)
                    && divisible(&c.a4, 2)
                    && divisible(&c.a6, 3)
            })
            .ok_or_else(|| contradiction("no change of coordinates for the I0* test"))?;
        e.transform(&BigInt::zero(), &s.into(), &t.into());

        // P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3
        let cubic = [residue(&e.a6, 3), residue(&e.a4, 2), residue(&e.a2, 1), 1];
        let Some(root) = repeated_root(&cubic) else {
            return done(&e, Kodaira::I0Star, Reduction::Additive);
        };
        let triple = mod3(cubic[2]) == 0 && mod3(cubic[1]) == 0;
        e.transform(&(3 * BigInt::from(root)), &BigInt::zero(), &BigInt::zero());

        if !triple {
            let nu = subprocedure_instar(&mut e, vd)?;
            return done(&e, Kodaira::InStar(nu), Reduction::Additive);
        }

        // Y^2 + a3,2 Y - a6,4
        let quad = [-residue(&e.a6, 4), residue(&e.a3, 2), 1];
        let Some(y0) = repeated_root(&quad) else {
            return done(&e, Kodaira::IVStar, Reduction::Additive);
        };
        e.transform(&BigInt::zero(), &BigInt::zero(), &(9 * BigInt::from(y0)));
        if !divisible(&e.a4, 4) {
            return done(&e, Kodaira::IIIStar, Reduction::Additive);
        }
        if !divisible(&e.a6, 6) {
            return done(&e, Kodaira::IIStar, Reduction::Additive);
        }

        // not minimal
        e.scale_down();
    }
}

/// Determines nu for type `I_nu^*`, alternating between the quadratics in
/// Y and X until one of them has distinct roots. On entry the double root
/// of the cubic sits at T = 0.
fn subprocedure_instar(e: &mut IntModel, vd: u32) -> Result<u32, TateError> {
    let mut nu = 1u32;
    loop {
        if nu + 6 > vd {
            return Err(contradiction("I_nu^* loop exceeded the discriminant valuation"));
        }
        if nu % 2 == 1 {
            let k = (nu + 3) / 2;
            let quad = [-residue(&e.a6, 2 * k), residue(&e.a3, k), 1];
            match repeated_root(&quad) {
                None => return Ok(nu),
                Some(y0) => e.transform(&BigInt::zero(), &BigInt::zero(), &(pow3(k) * y0)),
            }
        } else {
            let k = nu / 2 + 1;
            let quad = [residue(&e.a6, 2 * k + 1), residue(&e.a4, k + 1), residue(&e.a2, 1)];
            match repeated_root(&quad) {
                None => return Ok(nu),
                Some(x0) => e.transform(&(pow3(k) * x0), &BigInt::zero(), &BigInt::zero()),
            }
        }
        nu += 1;
    }
}
