//! Finite fields F_{3^d} for d <= 16.
//!
//! Elements are coefficient vectors over F_3 in the power basis of a root
//! `t` of the field modulus. The modulus of degree d is the lexicographically
//! least monic irreducible polynomial under the coefficient order
//! (c_0, c_1, ..., c_d), so every construction is reproducible bit for bit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    CapacityExceeded(usize),
    #[error("field degree must be at least 1")]
    InvalidDegree,
    #[error("modulus is not a monic irreducible polynomial")]
    NotIrreducible,
    #[error("coefficient vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    degree: usize,
    /// Ascending coefficients, length `degree + 1`, monic.
    modulus: Vec<u8>,
}

pub type Field = Arc<FieldDescriptor>;

impl FieldDescriptor {
    /// Builds F_{3^degree} with the deterministic modulus. Constructions are
    /// memoised per degree.
    pub fn new(degree: usize) -> Result<Field, GfError> {
        static CACHE: [OnceLock<Field>; MAX_DEGREE + 1] = [const { OnceLock::new() }; MAX_DEGREE + 1];
        if degree == 0 {
            return Err(GfError::InvalidDegree);
        }
        if degree > MAX_DEGREE {
            return Err(GfError::CapacityExceeded(degree));
        }
        Ok(Arc::clone(CACHE[degree].get_or_init(|| Self::search(degree))))
    }

    fn search(degree: usize) -> Field {
        let mut tail = vec![0u8; degree];
        loop {
            let mut candidate = tail.clone();
            candidate.push(1);
            if is_irreducible(&candidate) {
                return Arc::new(FieldDescriptor { degree, modulus: candidate });
            }
            // lexicographic successor with c_0 most significant
            let mut i = degree;
            loop {
                if i == 0 {
                    unreachable!("irreducible polynomials exist in every degree");
                }
                i -= 1;
                if tail[i] < 2 {
                    tail[i] += 1;
                    tail[i + 1..].iter_mut().for_each(|c| *c = 0);
                    break;
                }
            }
        }
    }

    pub fn with_modulus(modulus: Vec<u8>) -> Result<Field, GfError> {
        let degree = modulus.len().checked_sub(1).ok_or(GfError::InvalidDegree)?;
        if degree == 0 {
            return Err(GfError::InvalidDegree);
        }
        if degree > MAX_DEGREE {
            return Err(GfError::CapacityExceeded(degree));
        }
        if modulus.iter().any(|&c| c > 2) || !is_irreducible(&modulus) {
            return Err(GfError::NotIrreducible);
        }
        Ok(Arc::new(FieldDescriptor { degree, modulus }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Number of elements, 3^degree.
    pub fn order(&self) -> u64 {
        3u64.pow(self.degree as u32)
    }

    pub fn zero(self: &Arc<Self>) -> GfElem {
        GfElem { field: Arc::clone(self), coeffs: vec![0; self.degree] }
    }

    pub fn one(self: &Arc<Self>) -> GfElem {
        self.constant(1)
    }

    /// The image of an integer in the prime field.
    pub fn constant(self: &Arc<Self>, c: i64) -> GfElem {
        let mut e = self.zero();
        e.coeffs[0] = c.rem_euclid(3) as u8;
        e
    }

    /// The class of `t`, a root of the modulus.
    pub fn generator(self: &Arc<Self>) -> GfElem {
        let mut e = self.zero();
        if self.degree == 1 {
            // t = -c_0 in F_3
            e.coeffs[0] = (3 - self.modulus[0]) % 3;
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<u8>) -> Result<GfElem, GfError> {
        if coeffs.len() != self.degree {
            return Err(GfError::WrongLength { expected: self.degree, got: coeffs.len() });
        }
        Ok(GfElem { field: Arc::clone(self), coeffs: coeffs.into_iter().map(|c| c % 3).collect() })
    }

    /// The element whose base-3 digits (least significant first) are its coefficients.
    pub fn from_index(self: &Arc<Self>, mut index: u64) -> GfElem {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (index % 3) as u8;
            index /= 3;
        }
        e
    }

    /// All elements, in index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    fn reduce(&self, mut prod: Vec<u8>) -> Vec<u8> {
        let d = self.degree;
        for i in (d..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..d {
                let sub = (c * self.modulus[j]) % 3;
                prod[i - d + j] = (prod[i - d + j] + 3 - sub) % 3;
            }
        }
        prod.truncate(d);
        prod.resize(d, 0);
        prod
    }
}

/// Reduces `work` in place modulo the monic `den` and reports whether the
/// remainder vanishes.
fn divides(den: &[u8], work: &mut [u8]) -> bool {
    let dd = den.len() - 1;
    for top in (dd..work.len()).rev() {
        let c = work[top];
        if c != 0 {
            let shift = top - dd;
            for (j, &m) in den.iter().enumerate() {
                work[shift + j] = (work[shift + j] + 3 - (c * m) % 3) % 3;
            }
        }
    }
    work[..dd].iter().all(|&c| c == 0)
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u8]) -> bool {
    let Some(&lead) = poly.last() else { return false };
    if lead != 1 || poly.len() < 2 {
        return false;
    }
    let deg = poly.len() - 1;
    let mut work = vec![0u8; poly.len()];
    let mut divisor = vec![0u8; deg / 2 + 1];
    for k in 1..=deg / 2 {
        divisor[..k].fill(0);
        divisor[k] = 1;
        loop {
            work.copy_from_slice(poly);
            if divides(&divisor[..=k], &mut work) {
                return false;
            }
            // next monic divisor of degree k
            let Some(i) = divisor[..k].iter().position(|&c| c < 2) else { break };
            divisor[..i].fill(0);
            divisor[i] += 1;
        }
    }
    true
}

#[derive(Clone)]
pub struct GfElem {
    field: Field,
    coeffs: Vec<u8>,
}

impl PartialEq for GfElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for GfElem {}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfElem(d={}, {:?})", self.field.degree, self.coeffs)
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl GfElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * 3 + c as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check(&self, other: &GfElem) -> Result<(), GfError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<u8>) -> GfElem {
        GfElem { field: Arc::clone(&self.field), coeffs }
    }

    pub fn try_add(&self, other: &GfElem) -> Result<GfElem, GfError> {
        self.check(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % 3).collect()))
    }

    pub fn try_sub(&self, other: &GfElem) -> Result<GfElem, GfError> {
        self.check(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + 3 - b) % 3).collect()))
    }

    pub fn try_mul(&self, other: &GfElem) -> Result<GfElem, GfError> {
        self.check(other)?;
        let d = self.field.degree;
        let mut prod = vec![0u8; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                prod[i + j] = (prod[i + j] + a * b) % 3;
            }
        }
        Ok(self.with_coeffs(self.field.reduce(prod)))
    }

    pub fn try_div(&self, other: &GfElem) -> Result<GfElem, GfError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<GfElem, GfError> {
        if self.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn pow(&self, mut k: u64) -> GfElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// `x -> x^(3^n)`, as n successive cubings.
    pub fn frobenius(&self, n: u32) -> GfElem {
        let mut x = self.clone();
        for _ in 0..n {
            let sq = &x * &x;
            x = &sq * &x;
        }
        x
    }

    /// Whether `self` is a square in its own field (Euler's criterion).
    pub fn is_square(&self) -> bool {
        self.is_zero() || self.pow((self.field.order() - 1) / 2).is_one()
    }
}

/// `x -> x^(3^n)`.
pub fn frobenius(x: &GfElem, n: u32) -> GfElem {
    x.frobenius(n)
}

pub fn is_square(x: &GfElem) -> bool {
    x.is_square()
}

/// Membership in the subfield F_{3^n}: `x^(3^n) = x`.
pub fn subfield_test(x: &GfElem, n: u32) -> bool {
    &x.frobenius(n) == x
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&GfElem> for &GfElem {
            type Output = GfElem;
            fn $method(self, rhs: &GfElem) -> GfElem {
                self.$checked(rhs).expect("operands belong to different fields")
            }
        }
        impl $trait<GfElem> for GfElem {
            type Output = GfElem;
            fn $method(self, rhs: GfElem) -> GfElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &GfElem {
    type Output = GfElem;
    fn neg(self) -> GfElem {
        self.with_coeffs(self.coeffs.iter().map(|c| (3 - c) % 3).collect())
    }
}

impl Neg for GfElem {
    type Output = GfElem;
    fn neg(self) -> GfElem {
        -&self
    }
}
