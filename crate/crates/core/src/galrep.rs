//! Inertia classification at p = 3 and assembly of `rho = chi (x) psi`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::{self, CountError, ReducedCurve};
use crate::cyclo12::{self, Cyclo12};
use crate::grouprep::{self, CharacterTable, GroupElement, Parity, Rep2x2};
use crate::weierstrass::{
    invariants, tate_algorithm, Kodaira, LocalData, Rat, Reduction, TateError, WeierstrassModel,
};

/// Sign in `tr psi(sigma phi) = eps * i sqrt(3)`, fixed by the n = 1 count.
pub const EPSILON: i64 = -1;

pub const NOTE_INERTIA_FIELD: &str =
    "The image of inertia is Gal(L/K^nr) with L = K^nr(E[2], Delta^(1/4)).";
pub const NOTE_TAME: &str =
    "Tame inertia image: the representation itself is not constructed, only its inertia group is reported.";
pub const NOTE_FACTORISATION: &str =
    "rho = chi (x) psi, with chi unramified (chi(Frob) = (i sqrt 3)^n, trivial on inertia) and psi the faithful 2-dimensional representation of the finite Galois group.";
pub const NOTE_BASIS: &str =
    "Matrices are written in a basis where rho(Frob) and rho(sigma) are diagonal. The off-diagonal form of rho(tau) is a choice of basis; traces do not depend on it.";
pub const NOTE_ETALE: &str =
    "Etale cohomology convention: rho_et(g) = (rho(g)^-1)^T, and Frobenius entries refer to the Geometric Frobenius Automorphism Frob^-1, so chi_et(Frob^-1) = chi(Frob).";
pub const NOTE_SHORT_FORM: &str = "short_form is the input model written as y^2 = f(x) by completing the square.";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalrepError {
    #[error("out of scope: potentially multiplicative reduction (v(j) < 0)")]
    OutOfScope(Box<LocalData>),
    #[error("classifier contradiction: {0}")]
    ClassifierContradiction(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Image of inertia under rho.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InertiaImage {
    #[serde(rename = "TRIVIAL")]
    Trivial,
    C2,
    C3,
    C4,
    C6,
    C3xC4,
}

impl InertiaImage {
    pub fn order(self) -> u32 {
        match self {
            InertiaImage::Trivial => 1,
            InertiaImage::C2 => 2,
            InertiaImage::C3 => 3,
            InertiaImage::C4 => 4,
            InertiaImage::C6 => 6,
            InertiaImage::C3xC4 => 12,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InertiaImage::Trivial => "TRIVIAL",
            InertiaImage::C2 => "C2",
            InertiaImage::C3 => "C3",
            InertiaImage::C4 => "C4",
            InertiaImage::C6 => "C6",
            InertiaImage::C3xC4 => "C3xC4",
        }
    }
}

/// The classification cases in order, each as (fires, side condition holds, image).
fn classification_cases(kodaira: Kodaira, v: u32) -> [(bool, bool, InertiaImage); 6] {
    use Kodaira::*;
    [
        (kodaira == I0Star, v == 6, InertiaImage::C2),
        (kodaira == III, v == 3, InertiaImage::C4),
        (kodaira == IIIStar, v == 9, InertiaImage::C4),
        (v % 4 == 0, true, InertiaImage::C3),
        (v % 4 == 2 && kodaira != I0Star, true, InertiaImage::C6),
        (v % 2 == 1 && kodaira != III && kodaira != IIIStar, true, InertiaImage::C3xC4),
    ]
}

/// Number of classification cases that fire; exactly one for valid input.
pub fn fired_cases(ld: &LocalData) -> usize {
    classification_cases(ld.kodaira, ld.v_delta_min).iter().filter(|c| c.0).count()
}

pub fn classify_inertia(ld: &LocalData) -> Result<InertiaImage, GalrepError> {
    match (ld.reduction, ld.potentially_good) {
        (Reduction::Good, _) => return Ok(InertiaImage::Trivial),
        (_, false) => return Err(GalrepError::OutOfScope(Box::new(ld.clone()))),
        (Reduction::Multiplicative, true) => {
            return Err(GalrepError::ClassifierContradiction("multiplicative reduction with integral j".into()))
        }
        (Reduction::Additive, true) => {}
    }
    let fired: Vec<_> = classification_cases(ld.kodaira, ld.v_delta_min).into_iter().filter(|c| c.0).collect();
    match fired.as_slice() {
        [(_, true, image)] => Ok(*image),
        [(_, false, _)] => Err(GalrepError::ClassifierContradiction(format!(
            "type {} with v(Delta) = {} violates its valuation condition",
            ld.kodaira, ld.v_delta_min
        ))),
        _ => Err(GalrepError::ClassifierContradiction(format!(
            "{} cases fire for type {} with v(Delta) = {}",
            fired.len(),
            ld.kodaira,
            ld.v_delta_min
        ))),
    }
}

/// `T^2 - a T + q` for good reduction over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Charpoly {
    #[serde(with = "i128_string")]
    pub a: i128,
    #[serde(with = "i128_string")]
    pub q: i128,
    pub polynomial: String,
}

impl Charpoly {
    pub fn new(a: i128, q: i128) -> Self {
        let middle = match a {
            0 => String::new(),
            a if a > 0 => format!(" - {a}T"),
            a => format!(" + {}T", -a),
        };
        Charpoly { a, q, polynomial: format!("T^2{middle} + {q}") }
    }
}

/// Large integers travel as decimal strings.
mod i128_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generators {
    pub sigma: Rep2x2,
    pub tau: Rep2x2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Rep2x2>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisRepReport {
    pub local_data: LocalData,
    #[serde(with = "crate::serde_rat")]
    pub j_invariant: Rat,
    pub inertia: InertiaImage,
    pub inertia_order: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius_charpoly: Option<Charpoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois_group_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub short_form: Option<WeierstrassModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_frob: Option<Cyclo12>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_table: Option<CharacterTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_frob: Option<Rep2x2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_generators: Option<Generators>,
    /// Trace of rho(sigma Frob) on the Tate module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_frob_trace: Option<Cyclo12>,
    pub etale: bool,
    pub notes: Vec<String>,
}

/// Reduction mod 3 of a model with good reduction, as `y^2 = x^3 + a x^2 + b x + c`.
/// Completing the square uses 1/4 = 1 and 1/2 = 2 in F_3.
pub fn reduced_curve(minimal: &WeierstrassModel) -> Result<ReducedCurve, GalrepError> {
    let inv = invariants(minimal);
    let mod3 = |x: &Rat| -> Result<i64, GalrepError> {
        if !x.is_integer() {
            return Err(GalrepError::ClassifierContradiction(format!("non-integral invariant {x} in minimal model")));
        }
        let r = x.to_integer() % num_bigint::BigInt::from(3);
        Ok(i64::try_from(r).expect("residue fits"))
    };
    Ok(ReducedCurve::new(mod3(&inv.b2)?, 2 * mod3(&inv.b4)?, mod3(&inv.b6)?)?)
}

fn empty_report(ld: LocalData, j: Rat, inertia: InertiaImage, n: u32, etale: bool) -> GaloisRepReport {
    GaloisRepReport {
        local_data: ld,
        j_invariant: j,
        inertia,
        inertia_order: inertia.order(),
        n,
        frobenius_charpoly: None,
        parity: None,
        galois_group_name: None,
        short_form: None,
        chi_frob: None,
        psi_table: None,
        rho_frob: None,
        rho_generators: None,
        sigma_frob_trace: None,
        etale,
        notes: Vec::new(),
    }
}

/// Frobenius image on the Tate module: scalar for even n, `chi diag(1, -1)` for odd n.
pub fn rho_frob(n: u32) -> Rep2x2 {
    let chi = cyclo12::chi_frob(n);
    match Parity::of(n) {
        Parity::Even => Rep2x2::scalar(chi),
        Parity::Odd => Rep2x2::diag(chi.clone(), -chi),
    }
}

fn dual(m: &Rep2x2) -> Rep2x2 {
    m.inverse().expect("representation matrices are invertible").transpose()
}

pub fn build_representation(model: &WeierstrassModel, etale: bool) -> Result<GaloisRepReport, GalrepError> {
    let ld = tate_algorithm(model)?;
    let j = invariants(model).j;
    let n = model.residue_degree;
    let inertia = classify_inertia(&ld)?;
    let mut report = empty_report(ld, j, inertia, n, etale);
    match inertia {
        InertiaImage::Trivial => {
            let curve = reduced_curve(&report.local_data.minimal_model)?;
            let trace = counting::frobenius_trace(&curve, n)?;
            report.frobenius_charpoly = Some(Charpoly::new(trace.a_n, 3i128.pow(n)));
        }
        InertiaImage::C2 | InertiaImage::C3 | InertiaImage::C4 | InertiaImage::C6 => {
            report.notes = vec![NOTE_INERTIA_FIELD.into(), NOTE_TAME.into()];
        }
        InertiaImage::C3xC4 => fill_wild(&mut report, model, etale),
    }
    Ok(report)
}

fn fill_wild(report: &mut GaloisRepReport, model: &WeierstrassModel, etale: bool) {
    let n = report.n;
    let parity = Parity::of(n);
    let chi = cyclo12::chi_frob(n);
    let psi = |g: GroupElement| grouprep::psi_matrix(&g);
    let mut gens = Generators {
        sigma: psi(GroupElement::sigma(parity)),
        tau: psi(GroupElement::tau(parity)),
        phi: (parity == Parity::Odd).then(|| psi(GroupElement::phi())),
    };
    // psi(Frob) is psi(phi) for odd n and trivial for even n
    let sigma_frob = GroupElement::new(1, 0, if parity == Parity::Odd { 1 } else { 0 }, parity);
    let sigma_frob_trace = &psi(sigma_frob).trace() * &chi;

    let mut frob = rho_frob(n);
    let mut table = grouprep::psi_table(parity);
    if etale {
        // rho_et(Frob^-1) = rho(Frob)^T
        frob = frob.transpose();
        table = grouprep::etale_dual(parity);
        gens = Generators { sigma: dual(&gens.sigma), tau: dual(&gens.tau), phi: gens.phi.as_ref().map(dual) };
    }

    report.parity = Some(parity);
    report.galois_group_name = Some(parity.group_name().to_string());
    report.short_form = Some(model.short_form());
    report.chi_frob = Some(chi);
    report.psi_table = Some(table);
    report.rho_frob = Some(frob);
    report.rho_generators = Some(gens);
    report.sigma_frob_trace = Some(sigma_frob_trace);
    report.notes = vec![NOTE_INERTIA_FIELD.into(), NOTE_FACTORISATION.into(), NOTE_BASIS.into(), NOTE_SHORT_FORM.into()];
    if etale {
        report.notes.push(NOTE_ETALE.into());
    }
}

/// Both sides of the sigma Frob trace identity for odd n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCheck {
    pub n: u32,
    /// `tr psi(sigma phi) * chi(Frob)` from the character tables.
    pub from_characters: Cyclo12,
    /// `3^n - #solutions` from the fixed-point count.
    pub from_count: i64,
    pub agree: bool,
}

/// Recomputes tr rho(sigma Frob) from the hard-coded sign and from a point
/// count, for odd n up to the counting capacity.
pub fn verify_sigma_frob_trace(n: u32) -> Result<TraceCheck, GalrepError> {
    if n % 2 == 0 {
        return Err(GalrepError::InvalidArgument(format!("n = {n} must be odd")));
    }
    let from_characters = &psi_sigma_phi_trace() * &cyclo12::chi_frob(n);
    let from_count = counting::trace_sigma_frob(n)?;
    let agree = from_characters == Cyclo12::from_int(from_count);
    Ok(TraceCheck { n, from_characters, from_count, agree })
}

/// `tr psi(sigma phi) = EPSILON * i sqrt(3)`.
fn psi_sigma_phi_trace() -> Cyclo12 {
    let t = grouprep::psi_matrix(&GroupElement::new(1, 0, 1, Parity::Odd)).trace();
    debug_assert_eq!(t, cyclo12::i_sqrt3().scale(&Rat::from_integer(EPSILON.into())));
    t
}
