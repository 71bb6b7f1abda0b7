//! Groebner bases and the ideal operations built on them.

mod buchberger;
mod engine;
mod ideal;
mod ops;

pub use buchberger::{normal_form, s_polynomial};
pub use engine::{Budget, CachedBasis, Engine, GbCache, GbStats, Selection, ENGINE_VERSION};
pub use ideal::Ideal;
pub use ops::{
    dimension, eliminate, eliminate_named, intersect, quotient_basis_size, radical_membership,
    saturate, saturate_by_ideal, variety_contains,
};

use thiserror::Error;

use crate::polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("resource limit exceeded: {0}")]
    Budget(String),
    #[error("S-polynomial of a zero polynomial")]
    ZeroInput,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
