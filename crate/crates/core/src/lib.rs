//! Exact polynomial algebra, Groebner bases, and the likelihood geometry of
//! algebraic statistical models.

pub mod groebner;
pub mod pipeline;
pub mod polyring;
pub mod textio;

pub use groebner::{Engine, GbError, Ideal};
pub use pipeline::{GeometryContext, ModelSpec, PipelineError};
pub use polyring::{Field, FieldSpec, Poly, PolyRing, PrimeField, Rationals};
