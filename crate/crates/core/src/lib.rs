//! Exact commutative algebra for double structures on rational normal curves.
//!
//! The crate builds the ideal of a multiplicity-two structure `X` on a
//! rational normal curve `C ⊂ P^n` from a surjection `μ` given by binary
//! forms, and computes its invariants: Gröbner bases, saturation, Hilbert
//! polynomials, minimal free resolutions, Rao functions, global sections of
//! `O_X(d)` and the dimension of the tangent space to the Hilbert scheme.
//!
//! Everything is exact. Coefficients are rationals (or a prime field on
//! request) and no floating point is used anywhere.

pub mod cohomology;
pub mod doubling;
pub mod error;
pub mod exec;
pub mod families;
pub mod groebner;
pub mod idealops;
pub mod invariants;
pub mod linalg;
pub mod polyring;
pub mod resolution;
pub mod rnc;
pub mod verify;

pub use error::{Error, Result};
