//! Exact computation of the l-adic Galois representation attached to an
//! elliptic curve over an unramified extension of the 3-adic numbers.
//!
//! The crate is organised bottom-up:
//!
//! - [`weierstrass`]: rational Weierstrass models, 3-adic valuations and
//!   Tate's algorithm at p = 3.
//! - [`gf3n`]: the finite fields F_{3^d} used for point counting.
//! - [`counting`]: point counts, Frobenius traces and the fixed-point count
//!   for sigma * Frob acting on the reduced curve y^2 = x^3 - x.
//! - [`cyclo12`]: exact arithmetic in Q(zeta_12), where every character
//!   value and Frobenius eigenvalue lives.
//! - [`grouprep`]: the groups C3:C4 and C3:D4 with their faithful
//!   two-dimensional representation.
//! - [`galrep`]: inertia classification and assembly of the full report
//!   rho = chi (x) psi.

pub mod counting;
pub mod cyclo12;
pub mod galrep;
pub mod gf3n;
pub mod grouprep;
pub mod serde_rat;
pub mod weierstrass;

pub use cyclo12::Cyclo12;
pub use galrep::{build_representation, classify_inertia, GaloisRepReport, InertiaImage};
pub use grouprep::{GroupElement, Parity, Rep2x2};
pub use weierstrass::{tate_algorithm, Kodaira, LocalData, Rat, Reduction, WeierstrassModel};
