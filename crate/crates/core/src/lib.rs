//! Exact computational toolkit for deformation-theoretic checks on curves
//! and surfaces in projective space.
//!
//! Layers, bottom up:
//! - [`polyring`]: homogeneous polynomials over the rationals,
//! - [`groebner`]: Buchberger engine, ideal operations, Hilbert functions,
//! - [`resolve`]: graded modules, syzygies, minimal resolutions, Ext, normal modules,
//! - [`sheafcoh`]: sheaf cohomology on P^n via local duality, Rao tables, splitting types on P^1,
//! - [`checks`]: the verification pipeline producing [`checks::CheckReport`]s.

pub mod budget;
pub mod checks;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod polyring;
pub mod resolve;
pub mod sheafcoh;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::Rational;
pub use polyring::{Monomial, Poly, Polynomial, Ring, RingDescriptor};
