//! Model files, the polynomial grammar, and deterministic text/JSON output.

mod model_file;
mod parse;
mod render;

pub use model_file::{parse_model, ModelFile};
pub use parse::parse_polynomial;
pub use render::{
    canonical_generators, display_form, ideal_doc, render_ideal, render_polynomial, ring_doc,
    BlockDoc, IdealDoc, OutputFormat, RenderOptions, RingDoc,
};

use thiserror::Error;

use crate::groebner::Ideal;
use crate::polyring::{BlockRole, Field, MonomialOrder, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable '{name}' at {line}:{column}")]
    UnknownVariable {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: equation is not homogeneous: {equation}")]
    NonHomogeneous { line: usize, equation: String },
    #[error("invalid model: {0}")]
    States(String),
    #[error("line {line}: duplicate '{key}' directive")]
    DuplicateDirective { line: usize, key: String },
    #[error("invalid ideal document: {0}")]
    Document(String),
}

impl IdealDoc {
    pub fn from_json(text: &str) -> Result<IdealDoc, ParseError> {
        let doc: IdealDoc =
            serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))?;
        if let Some(v) = doc.format {
            if v != 1 {
                return Err(ParseError::Document(format!("unsupported format version {v}")));
            }
        }
        Ok(doc)
    }

    /// Build the ideal over `field` with the given active order. Generator
    /// parse errors report the generator index as the line number.
    pub fn to_ideal<F: Field>(&self, field: F, order: MonomialOrder) -> Result<Ideal<F>, ParseError> {
        let blocks: Vec<(BlockRole, Vec<String>)> = if self.ring.blocks.is_empty() {
            vec![(BlockRole::Generic, self.ring.vars.clone())]
        } else {
            let listed: Vec<String> =
                self.ring.blocks.iter().flat_map(|b| b.vars.clone()).collect();
            if listed != self.ring.vars {
                return Err(ParseError::Document(
                    "blocks do not partition vars in sequence".into(),
                ));
            }
            self.ring
                .blocks
                .iter()
                .map(|b| (b.role, b.vars.clone()))
                .collect()
        };
        let ring = PolyRing::with_blocks(field, blocks, order)
            .map_err(|e| ParseError::Document(e.to_string()))?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, src) in self.generators.iter().enumerate() {
            gens.push(parse::parse_polynomial_at(src, &ring, i + 1, 1)?);
        }
        Ok(Ideal::new(&ring, gens))
    }
}
