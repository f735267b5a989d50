//! Exact scalars, monomials, monomial orders and sparse polynomials.

pub mod binary;
pub mod monomial;
pub mod poly;
pub mod scalar;
pub mod text;

pub use binary::{gcd_binary, no_common_zero, BinaryForm};
pub use monomial::{monomials_of_degree, Mono, MonoOrder, OrderKind, MAX_VARS};
pub use poly::{Ctx, Poly, Ring, Term};
pub use scalar::{Field, Scalar};
