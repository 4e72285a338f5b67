//! The groups C3:C4 (even residue degree) and C3:D4 (odd residue degree)
//! with the faithful two-dimensional representation psi.
//!
//! Presentation: `s^3 = t^4 = 1`, `t s t^-1 = s^-1`, and in the odd case also
//! `f^2 = 1`, `s f = f s`, `f t f = t^-1`. Elements are kept in the normal
//! form `s^a t^b f^c`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo12::{self, Cyclo12};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("elements belong to groups of different parity")]
    ParityMismatch,
    #[error("unknown conjugacy class label {label:?} for {parity:?} parity")]
    UnknownLabel { label: String, parity: Parity },
}

/// Parity of the residue degree n; decides which group is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn group_order(self) -> usize {
        match self {
            Parity::Even => 12,
            Parity::Odd => 24,
        }
    }

    pub fn group_name(self) -> &'static str {
        match self {
            Parity::Even => "C3:C4",
            Parity::Odd => "C3:D4",
        }
    }

    fn index(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// `sigma^s tau^t phi^f` in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub s: u8,
    pub t: u8,
    pub f: u8,
    pub parity: Parity,
}

impl GroupElement {
    /// Reduces exponents into normal form. `f` is forced to 0 for even parity.
    pub fn new(s: i64, t: i64, f: i64, parity: Parity) -> Self {
        let f = match parity {
            Parity::Even => 0,
            Parity::Odd => f.rem_euclid(2) as u8,
        };
        GroupElement { s: s.rem_euclid(3) as u8, t: t.rem_euclid(4) as u8, f, parity }
    }

    pub fn identity(parity: Parity) -> Self {
        Self::new(0, 0, 0, parity)
    }

    pub fn sigma(parity: Parity) -> Self {
        Self::new(1, 0, 0, parity)
    }

    pub fn tau(parity: Parity) -> Self {
        Self::new(0, 1, 0, parity)
    }

    /// Only meaningful in the odd group.
    pub fn phi() -> Self {
        Self::new(0, 0, 1, Parity::Odd)
    }

    pub fn is_identity(&self) -> bool {
        self.s == 0 && self.t == 0 && self.f == 0
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, GroupError> {
        if self.parity != other.parity {
            return Err(GroupError::ParityMismatch);
        }
        // t^b s^d = s^(d (-1)^b) t^b ; f^c t^e = t^(e (-1)^c) f^c ; f commutes with s
        let sign = |e: u8| if e % 2 == 0 { 1 } else { -1 };
        Ok(Self::new(
            self.s as i64 + sign(self.t) * other.s as i64,
            self.t as i64 + sign(self.f) * other.t as i64,
            (self.f + other.f) as i64,
            self.parity,
        ))
    }

    pub fn inverse(&self) -> Self {
        elements(self.parity)
            .into_iter()
            .find(|h| self.try_mul(h).unwrap().is_identity())
            .expect("finite group element has an inverse")
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.parity), |acc, _| acc.try_mul(self).unwrap())
    }

    pub fn order(&self) -> u32 {
        (1..=12).find(|&k| self.pow(k).is_identity()).expect("element order divides 12")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let mut parts = Vec::new();
        for (name, e) in [("sigma", self.s), ("tau", self.t), ("phi", self.f)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        f.write_str(&parts.join(" "))
    }
}

/// All elements in normal-form order.
pub fn elements(parity: Parity) -> Vec<GroupElement> {
    let fs = match parity {
        Parity::Even => 0..1,
        Parity::Odd => 0..2,
    };
    let mut out = Vec::with_capacity(parity.group_order());
    for f in fs {
        for t in 0..4 {
            for s in 0..3 {
                out.push(GroupElement::new(s, t, f, parity));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClassLabel {
    pub label: &'static str,
    pub size: usize,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label)
    }
}

/// Labels with their representatives `(s, t, f)`, in table order.
/// In C3:C4 the element `sigma tau` is conjugate to `tau`, so 4B is
/// represented by `tau^-1`.
const EVEN_CLASSES: [(&str, (i64, i64, i64)); 6] =
    [("1", (0, 0, 0)), ("2", (0, 2, 0)), ("3", (1, 0, 0)), ("4A", (0, 1, 0)), ("4B", (0, 3, 0)), ("6", (1, 2, 0))];

const ODD_CLASSES: [(&str, (i64, i64, i64)); 9] = [
    ("1", (0, 0, 0)),
    ("2A", (0, 2, 0)),
    ("2B", (0, 0, 1)),
    ("2C", (0, 1, 1)),
    ("3", (1, 0, 0)),
    ("4", (0, 1, 0)),
    ("6A", (1, 0, 1)),
    ("6B", (2, 0, 1)),
    ("6C", (1, 2, 0)),
];

fn class_list(parity: Parity) -> &'static [(&'static str, (i64, i64, i64))] {
    match parity {
        Parity::Even => &EVEN_CLASSES,
        Parity::Odd => &ODD_CLASSES,
    }
}

struct ClassTable {
    classes: Vec<ClassLabel>,
    /// class index for each element, indexed like `elements(parity)`
    of_element: Vec<usize>,
}

fn element_index(g: &GroupElement) -> usize {
    g.f as usize * 12 + g.t as usize * 3 + g.s as usize
}

fn orbit(g: &GroupElement) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = elements(g.parity)
        .iter()
        .map(|h| h.try_mul(g).unwrap().try_mul(&h.inverse()).unwrap())
        .collect();
    out.sort_by_key(element_index);
    out.dedup();
    out
}

fn class_table(parity: Parity) -> &'static ClassTable {
    static TABLES: [OnceLock<ClassTable>; 2] = [OnceLock::new(), OnceLock::new()];
    TABLES[parity.index()].get_or_init(|| {
        let mut of_element = vec![usize::MAX; parity.group_order()];
        let mut classes = Vec::new();
        for (k, &(label, (s, t, f))) in class_list(parity).iter().enumerate() {
            let members = orbit(&GroupElement::new(s, t, f, parity));
            for m in &members {
                assert_eq!(of_element[element_index(m)], usize::MAX, "class {label} overlaps another class");
                of_element[element_index(m)] = k;
            }
            classes.push(ClassLabel { label, size: members.len() });
        }
        assert!(of_element.iter().all(|&k| k != usize::MAX), "listed classes do not cover the group");
        ClassTable { classes, of_element }
    })
}

/// Classes in table order, with sizes computed from conjugation orbits.
pub fn classes(parity: Parity) -> &'static [ClassLabel] {
    &class_table(parity).classes
}

pub fn conjugacy_class(g: &GroupElement) -> ClassLabel {
    let table = class_table(g.parity);
    table.classes[table.of_element[element_index(g)]]
}

pub fn class_by_label(label: &str, parity: Parity) -> Result<ClassLabel, GroupError> {
    classes(parity)
        .iter()
        .copied()
        .find(|c| c.label == label)
        .ok_or_else(|| GroupError::UnknownLabel { label: label.to_string(), parity })
}

/// Value of the character of psi on a class.
pub fn psi_character(label: &str, parity: Parity) -> Result<Cyclo12, GroupError> {
    class_by_label(label, parity)?;
    let int = Cyclo12::from_int;
    let value = match (parity, label) {
        (_, "1") => int(2),
        (Parity::Even, "2") | (Parity::Odd, "2A") => int(-2),
        (_, "3") => int(-1),
        (Parity::Even, "6") | (Parity::Odd, "6C") => int(1),
        (Parity::Odd, "6A") => -cyclo12::i_sqrt3(),
        (Parity::Odd, "6B") => cyclo12::i_sqrt3(),
        _ => int(0),
    };
    Ok(value)
}

/// A 2x2 matrix over Q(zeta_12), serialized as nested rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rep2x2 {
    pub rows: [[Cyclo12; 2]; 2],
}

impl Rep2x2 {
    pub fn new(m11: Cyclo12, m12: Cyclo12, m21: Cyclo12, m22: Cyclo12) -> Self {
        Rep2x2 { rows: [[m11, m12], [m21, m22]] }
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Rep2x2 { rows: m.map(|r| r.map(Cyclo12::from_int)) }
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0], [0, 1]])
    }

    pub fn diag(a: Cyclo12, b: Cyclo12) -> Self {
        Self::new(a, Cyclo12::from_int(0), Cyclo12::from_int(0), b)
    }

    pub fn scalar(c: Cyclo12) -> Self {
        Self::diag(c.clone(), c)
    }

    pub fn scale(&self, c: &Cyclo12) -> Self {
        Rep2x2 { rows: self.rows.each_ref().map(|r| r.each_ref().map(|x| x * c)) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.rows, &other.rows);
        Rep2x2 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))),
        }
    }

    pub fn trace(&self) -> Cyclo12 {
        &self.rows[0][0] + &self.rows[1][1]
    }

    pub fn det(&self) -> Cyclo12 {
        let r = &self.rows;
        &(&r[0][0] * &r[1][1]) - &(&r[0][1] * &r[1][0])
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        Self::new(r[0][0].clone(), r[1][0].clone(), r[0][1].clone(), r[1][1].clone())
    }

    /// `None` when the matrix is singular.
    pub fn inverse(&self) -> Option<Self> {
        let inv_det = self.det().inv().ok()?;
        let r = &self.rows;
        Some(Self::new(r[1][1].clone(), -&r[0][1], -&r[1][0], r[0][0].clone()).scale(&inv_det))
    }

    /// Smallest k in 1..=max with `self^k = 1`.
    pub fn multiplicative_order(&self, max: u32) -> Option<u32> {
        let id = Self::identity();
        let mut acc = self.clone();
        for k in 1..=max {
            if acc == id {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

fn generator_images(parity: Parity) -> [Rep2x2; 3] {
    let z = cyclo12::zeta3();
    let zinv = z.pow(2);
    let sigma = match parity {
        Parity::Odd => Rep2x2::diag(zinv, z),
        Parity::Even => Rep2x2::diag(z, zinv),
    };
    let tau = Rep2x2::from_ints([[0, 1], [-1, 0]]);
    let phi = Rep2x2::from_ints([[1, 0], [0, -1]]);
    [sigma, tau, phi]
}

/// The matrix of psi on a group element. The parity is taken from the element.
pub fn psi_matrix(g: &GroupElement) -> Rep2x2 {
    let [sigma, tau, phi] = generator_images(g.parity);
    let pow = |m: &Rep2x2, k: u8| (0..k).fold(Rep2x2::identity(), |acc, _| acc.mul(m));
    pow(&sigma, g.s).mul(&pow(&tau, g.t)).mul(&pow(&phi, g.f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub class: String,
    pub size: usize,
    pub value: Cyclo12,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub parity: Parity,
    pub entries: Vec<CharacterEntry>,
}

impl CharacterTable {
    pub fn value(&self, label: &str) -> Option<&Cyclo12> {
        self.entries.iter().find(|e| e.class == label).map(|e| &e.value)
    }
}

pub fn psi_table(parity: Parity) -> CharacterTable {
    let entries = classes(parity)
        .iter()
        .map(|c| CharacterEntry {
            class: c.label.to_string(),
            size: c.size,
            value: psi_character(c.label, parity).expect("listed label"),
        })
        .collect();
    CharacterTable { parity, entries }
}

/// Character of the dual representation: complex conjugate of psi.
pub fn etale_dual(parity: Parity) -> CharacterTable {
    let mut table = psi_table(parity);
    for e in &mut table.entries {
        e.value = e.value.conj();
    }
    table
}
