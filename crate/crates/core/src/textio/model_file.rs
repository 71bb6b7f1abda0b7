//! The model-file format.
//!
//! ```text
//! format: 1            # optional
//! label: ternary cubic # optional
//! field: fp:2147483647 # optional, `q` or `fp[:prime]`
//! states: 3
//! eq: p2*(p1-p2)^2 + (p0-p2)^3
//! ```
//!
//! Equations use the variables `p0 .. p(states-1), ps`. The sum relation
//! `p0 + ... + p(states-1) - ps` is implied and must not be written.

use super::parse::parse_polynomial_at;
use super::ParseError;
use crate::pipeline::{ModelSpec, PipelineError};
use crate::polyring::{Field, FieldSpec};

/// A parsed but not yet field-bound model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub format: Option<u32>,
    pub states: usize,
    /// Equation sources with the (line, column) where each one starts.
    pub equations: Vec<(usize, usize, String)>,
    pub field: Option<FieldSpec>,
    pub label: Option<String>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile, ParseError> {
        let mut format = None;
        let mut states = None;
        let mut field = None;
        let mut label = None;
        let mut equations = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let indent = raw.len() - trimmed.len();
            let Some(colon) = trimmed.find(':') else {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column: indent + 1,
                    message: "expected 'key: value'".into(),
                });
            };
            let key = trimmed[..colon].trim();
            let value_raw = &trimmed[colon + 1..];
            let value_col = indent + colon + 2 + (value_raw.len() - value_raw.trim_start().len());
            // strip comments from directive values (equations handle their own)
            let value = value_raw.split('#').next().unwrap_or("").trim();
            let dup = |key: &str| ParseError::DuplicateDirective {
                line: line_no,
                key: key.to_string(),
            };
            match key {
                "format" => {
                    if format.is_some() {
                        return Err(dup(key));
                    }
                    let v: u32 = value.parse().map_err(|_| ParseError::Syntax {
                        line: line_no,
                        column: value_col,
                        message: "format must be an integer".into(),
                    })?;
                    if v != 1 {
                        return Err(ParseError::Syntax {
                            line: line_no,
                            column: value_col,
                            message: format!("unsupported format version {v}"),
                        });
                    }
                    format = Some(v);
                }
                "states" => {
                    if states.is_some() {
                        return Err(dup(key));
                    }
                    let v: usize = value.parse().map_err(|_| ParseError::Syntax {
                        line: line_no,
                        column: value_col,
                        message: "states must be a positive integer".into(),
                    })?;
                    states = Some(v);
                }
                "field" => {
                    if field.is_some() {
                        return Err(dup(key));
                    }
                    field = Some(FieldSpec::parse(value).ok_or_else(|| ParseError::Syntax {
                        line: line_no,
                        column: value_col,
                        message: format!("unknown field '{value}' (use q or fp[:prime])"),
                    })?);
                }
                "label" => {
                    if label.is_some() {
                        return Err(dup(key));
                    }
                    label = Some(value.to_string());
                }
                "eq" => {
                    equations.push((line_no, value_col, value_raw.trim().to_string()));
                }
                other => {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        column: indent + 1,
                        message: format!("unknown directive '{other}'"),
                    })
                }
            }
        }
        let states = states.ok_or(ParseError::States("missing 'states:' line".into()))?;
        if states < 2 {
            return Err(ParseError::States(format!("states must be at least 2, got {states}")));
        }
        Ok(ModelFile {
            format,
            states,
            equations,
            field,
            label,
        })
    }

    /// Parse the equations over `field` and validate the model.
    pub fn into_spec<F: Field>(&self, field: F) -> Result<ModelSpec<F>, ParseError> {
        let ring = ModelSpec::primal_ring(field.clone(), self.states)
            .map_err(|e| ParseError::States(e.to_string()))?;
        let mut polys = Vec::new();
        for (line, col, src) in &self.equations {
            let f = parse_polynomial_at(src, &ring, *line, *col)?;
            if !f.is_homogeneous() {
                return Err(ParseError::NonHomogeneous {
                    line: *line,
                    equation: src.clone(),
                });
            }
            polys.push(f);
        }
        let label = self.label.clone().unwrap_or_else(|| "model".into());
        ModelSpec::new(field, self.states, polys, label).map_err(|e| match e {
            PipelineError::Model(msg) => ParseError::States(msg),
            other => ParseError::States(other.to_string()),
        })
    }
}

/// Parse a model file over the given field.
pub fn parse_model<F: Field>(text: &str, field: F) -> Result<ModelSpec<F>, ParseError> {
    ModelFile::parse(text)?.into_spec(field)
}
