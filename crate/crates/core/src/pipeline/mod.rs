//! The likelihood geometry of a model: singular locus, conormal and dual
//! varieties, Hadamard products, ML degree and the data singular locus.

mod context;
mod geometry;
mod modular;
mod spec;

pub use context::{GeometryContext, TheoremDims, TheoremReport};
pub use geometry::{
    codimension, conormal_ideal, dual_ideal, dual_names, hadamard_minors, hadamard_product,
    incidence_form, jacobian, minors_ideal, raw_duality, singular_ideal, RawDuality,
};
pub use modular::{agrees_mod_p, reduce_mod_p};
pub use spec::{point_ideal, LikelihoodRing, ModelSpec};

use thiserror::Error;

use crate::groebner::GbError;
use crate::polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("invalid model: {0}")]
    Model(String),
    #[error("model not generically reduced/equidimensional as assumed: {0}")]
    NotEquidimensional(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("ML degree differs across seeds: {0:?}")]
    Unstable(Vec<(u64, u64)>),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
