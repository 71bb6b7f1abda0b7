//! Exact coefficient arithmetic, monomials and orders, sparse polynomials.

mod field;
mod matrix;
mod monomial;
mod poly;
mod ring;

pub use field::{Coefficient, Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME, MIN_PRIME};
pub use matrix::{subsets, PolyMatrix};
pub use monomial::{InnerOrder, Monomial, MonomialOrder, MAX_EXPONENT, MAX_VARS};
pub use poly::{Binding, Poly, Term};
pub use ring::{Block, BlockRole, PolyRing, RingRef};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("bad matrix shape: {0}")]
    Shape(String),
    #[error("coefficient not representable in the target field")]
    NotRepresentable,
}
