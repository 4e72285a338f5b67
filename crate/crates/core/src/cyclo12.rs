//! Exact arithmetic in Q(zeta_12).
//!
//! Elements are `c0 + c1 z + c2 z^2 + c3 z^3` with `z^4 = z^2 - 1`, where `z`
//! is embedded in C as `e^(i pi / 6)`. Under this embedding `i = z^3`,
//! `sqrt(3) = 2z - z^3` and `i sqrt(3) = 2z^2 - 1`; every sign convention in
//! the crate goes back to that last choice.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::serde_rat::{parse_rat, rat_to_string};
use crate::weierstrass::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "CycloRepr", try_from = "CycloRepr")]
pub struct Cyclo12 {
    coords: [Rat; 4],
}

/// Wire form: exact coordinates as rational strings plus an advisory
/// complex approximation rounded to 10 decimal places.
#[derive(Serialize, Deserialize)]
struct CycloRepr {
    exact: [String; 4],
    approx: [f64; 2],
}

impl From<Cyclo12> for CycloRepr {
    fn from(x: Cyclo12) -> Self {
        let z = x.embed();
        CycloRepr { exact: x.coords.each_ref().map(rat_to_string), approx: [round10(z.re), round10(z.im)] }
    }
}

impl TryFrom<CycloRepr> for Cyclo12 {
    type Error = String;

    fn try_from(r: CycloRepr) -> Result<Self, Self::Error> {
        let mut coords: [Rat; 4] = Default::default();
        for (c, s) in coords.iter_mut().zip(&r.exact) {
            *c = parse_rat(s).ok_or_else(|| format!("invalid rational {s:?}"))?;
        }
        Ok(Cyclo12 { coords })
    }
}

fn round10(v: f64) -> f64 {
    let r = (v * 1e10).round() / 1e10;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl Cyclo12 {
    pub fn new(coords: [Rat; 4]) -> Self {
        Cyclo12 { coords }
    }

    pub fn from_ints(coords: [i64; 4]) -> Self {
        Cyclo12 { coords: coords.map(|c| Rat::from_integer(c.into())) }
    }

    pub fn from_rat(x: Rat) -> Self {
        Cyclo12 { coords: [x, Rat::zero(), Rat::zero(), Rat::zero()] }
    }

    pub fn from_int(x: i64) -> Self {
        Self::from_rat(Rat::from_integer(x.into()))
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.coords
    }

    /// The primitive 12th root of unity `z`.
    pub fn zeta12() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` if the element is the rational number q.
    pub fn as_rational(&self) -> Option<Rat> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Cyclo12 { coords: self.coords.each_ref().map(|c| c * k) }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo12::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Complex conjugation, the automorphism `z -> z^(-1) = z - z^3`.
    pub fn conj(&self) -> Self {
        let zinv = Self::from_ints([0, 1, 0, -1]);
        let mut acc = Cyclo12::zero();
        let mut power = Cyclo12::one();
        for c in &self.coords {
            acc = &acc + &power.scale(c);
            power = &power * &zinv;
        }
        acc
    }

    /// Multiplicative inverse, by solving `self * y = 1` as a 4x4 rational system.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        // column j holds the coordinates of self * z^j
        let mut cols = Vec::with_capacity(4);
        let mut col = self.clone();
        for _ in 0..4 {
            cols.push(col.coords.clone());
            col = &col * &Self::zeta12();
        }
        let mut m: Vec<Vec<Rat>> = (0..4)
            .map(|i| {
                let mut row: Vec<Rat> = (0..4).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rat::one() } else { Rat::zero() });
                row
            })
            .collect();
        for col in 0..4 {
            let p = (col..4).find(|&r| !m[r][col].is_zero()).ok_or(CycloError::DivisionByZero)?;
            m.swap(col, p);
            let pivot = m[col][col].clone();
            m[col].iter_mut().for_each(|v| *v = &*v / &pivot);
            for r in 0..4 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in 0..5 {
                        let delta = &f * &m[col][j];
                        m[r][j] = &m[r][j] - delta;
                    }
                }
            }
        }
        Ok(Cyclo12 { coords: [m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone()] })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    /// Evaluates at `z = e^(i pi / 6)`. Display only.
    pub fn embed(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for c in &self.coords {
            acc += power * c.to_f64().unwrap_or(f64::NAN);
            power *= z;
        }
        acc
    }
}

impl Zero for Cyclo12 {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        Cyclo12::is_zero(self)
    }
}

impl One for Cyclo12 {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Default for Cyclo12 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add<&Cyclo12> for &Cyclo12 {
    type Output = Cyclo12;
    fn add(self, rhs: &Cyclo12) -> Cyclo12 {
        Cyclo12 { coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]) }
    }
}

impl Sub<&Cyclo12> for &Cyclo12 {
    type Output = Cyclo12;
    fn sub(self, rhs: &Cyclo12) -> Cyclo12 {
        Cyclo12 { coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]) }
    }
}

impl Mul<&Cyclo12> for &Cyclo12 {
    type Output = Cyclo12;
    fn mul(self, rhs: &Cyclo12) -> Cyclo12 {
        let mut prod: [Rat; 7] = Default::default();
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] = &prod[i + j] + a * b;
            }
        }
        // z^k = z^(k-2) - z^(k-4) for k >= 4
        for k in (4..7).rev() {
            let c = std::mem::take(&mut prod[k]);
            if !c.is_zero() {
                prod[k - 2] = &prod[k - 2] + &c;
                prod[k - 4] = &prod[k - 4] - &c;
            }
        }
        let [c0, c1, c2, c3, ..] = prod;
        Cyclo12 { coords: [c0, c1, c2, c3] }
    }
}

impl Neg for &Cyclo12 {
    type Output = Cyclo12;
    fn neg(self) -> Cyclo12 {
        Cyclo12 { coords: self.coords.each_ref().map(|c| -c) }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Cyclo12> for Cyclo12 {
            type Output = Cyclo12;
            fn $method(self, rhs: Cyclo12) -> Cyclo12 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclo12> for Cyclo12 {
            type Output = Cyclo12;
            fn $method(self, rhs: &Cyclo12) -> Cyclo12 {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Cyclo12 {
    type Output = Cyclo12;
    fn neg(self) -> Cyclo12 {
        -&self
    }
}

impl fmt::Debug for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo12({self})")
    }
}

impl fmt::Display for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = rat_to_string(&c.abs_value());
            let sign = if c < &Rat::zero() { "-" } else { "+" };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            match (k, mag.as_str()) {
                (0, m) => out.push_str(m),
                (1, "1") => out.push('z'),
                (_, "1") => out.push_str(&format!("z^{k}")),
                (1, m) => out.push_str(&format!("{m}*z")),
                (_, m) => out.push_str(&format!("{m}*z^{k}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

trait AbsValue {
    fn abs_value(&self) -> Self;
}

impl AbsValue for BigRational {
    fn abs_value(&self) -> Self {
        if self < &BigRational::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

/// Frequently used elements of Q(zeta_12).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub i: Cyclo12,
    pub sqrt3: Cyclo12,
    pub i_sqrt3: Cyclo12,
    pub zeta3: Cyclo12,
    pub zeta4: Cyclo12,
}

pub fn constants() -> Constants {
    Constants {
        i: i(),
        sqrt3: sqrt3(),
        i_sqrt3: i_sqrt3(),
        zeta3: zeta3(),
        zeta4: i(),
    }
}

pub fn i() -> Cyclo12 {
    Cyclo12::from_ints([0, 0, 0, 1])
}

pub fn sqrt3() -> Cyclo12 {
    Cyclo12::from_ints([0, 2, 0, -1])
}

pub fn i_sqrt3() -> Cyclo12 {
    Cyclo12::from_ints([-1, 0, 2, 0])
}

/// `(-1 + i sqrt(3)) / 2 = z^2 - 1`.
pub fn zeta3() -> Cyclo12 {
    Cyclo12::from_ints([-1, 0, 1, 0])
}

/// The value of the unramified character on Frobenius over F_{3^n}:
/// `(i sqrt(3))^n`.
pub fn chi_frob(n: u32) -> Cyclo12 {
    i_sqrt3().pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-9
    }

    #[test]
    fn constant_identities() {
        let c = constants();
        assert_eq!(c.i.pow(2), Cyclo12::from_int(-1));
        assert_eq!(c.i_sqrt3.pow(2), Cyclo12::from_int(-3));
        assert_eq!(c.sqrt3.pow(2), Cyclo12::from_int(3));
        assert_eq!(c.zeta4.pow(2), Cyclo12::from_int(-1));
        assert_eq!(c.zeta3.pow(3), Cyclo12::one());
        assert!(!c.zeta3.is_one());
        assert_eq!(&c.i * &c.sqrt3, c.i_sqrt3);
        let two_zeta3 = &Cyclo12::from_int(-1) + &c.i_sqrt3;
        assert_eq!(c.zeta3.scale(&Rat::from_integer(2.into())), two_zeta3);
        // i sqrt 3 = zeta3 - zeta3^2
        assert_eq!(&c.zeta3 - &c.zeta3.pow(2), c.i_sqrt3);
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(i_sqrt3().conj(), -i_sqrt3());
        assert_eq!(i().conj(), -i());
        assert_eq!(sqrt3().conj(), sqrt3());
        assert_eq!(zeta3().conj(), zeta3().pow(2));
    }

    #[test]
    fn embedding_examples() {
        assert!(close(Cyclo12::one().embed(), Complex64::new(1.0, 0.0)));
        assert!(close(i_sqrt3().embed(), Complex64::new(0.0, 3f64.sqrt())));
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(close(zeta3().embed(), w));
        assert!(close(sqrt3().embed(), Complex64::new(3f64.sqrt(), 0.0)));
    }

    #[test]
    fn chi_frob_values() {
        assert_eq!(chi_frob(1), i_sqrt3());
        assert_eq!(chi_frob(1).coords(), Cyclo12::from_ints([-1, 0, 2, 0]).coords());
        assert_eq!(chi_frob(2), Cyclo12::from_int(-3));
        assert_eq!(chi_frob(4), Cyclo12::from_int(9));
        for n in (2..=12).step_by(2) {
            assert_eq!(chi_frob(n).as_rational(), Some(Rat::from_integer((-3i64).pow(n / 2).into())));
        }
        for n in 1..=8 {
            let norm = &chi_frob(n) * &chi_frob(n).conj();
            assert_eq!(norm, Cyclo12::from_int(3i64.pow(n)));
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Cyclo12::zero().inv(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn serde_round_trip_and_format() {
        let x = i_sqrt3();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"exact":["-1","0","2","0"],"approx":[0.0,1.7320508076]}"#);
        let back: Cyclo12 = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
        let half: Cyclo12 = serde_json::from_str(r#"{"exact":["1/2","0","0","0"],"approx":[0,0]}"#).unwrap();
        assert_eq!(half, Cyclo12::from_rat(Rat::new(1.into(), 2.into())));
    }

    #[test]
    fn display() {
        assert_eq!(i_sqrt3().to_string(), "-1 + 2*z^2");
        assert_eq!(Cyclo12::zero().to_string(), "0");
        assert_eq!(sqrt3().to_string(), "2*z - z^3");
    }

    fn small() -> impl Strategy<Value = Cyclo12> {
        proptest::array::uniform4((-6i64..=6, 1i64..=4)).prop_map(|c| {
            Cyclo12::new(c.map(|(n, d)| Rat::new(n.into(), d.into())))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn inverses(a in small()) {
            prop_assume!(!a.is_zero());
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism(a in small(), b in small()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert!(close(a.conj().embed(), a.embed().conj()));
        }

        #[test]
        fn embedding_is_multiplicative(a in small(), b in small()) {
            let lhs = (&a * &b).embed();
            let rhs = a.embed() * b.embed();
            prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
        }
    }
}
