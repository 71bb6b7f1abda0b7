use mlsing_core::groebner::GbError;
use mlsing_core::pipeline::PipelineError;
use mlsing_core::polyring::PolyError;
use mlsing_core::textio::ParseError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_UNSTABLE: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Unstable(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Parse { .. } => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Unstable(_) => EXIT_UNSTABLE,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<GbError> for CliError {
    fn from(e: GbError) -> Self {
        match e {
            GbError::Budget(m) => CliError::Budget(format!("budget exceeded: {m}")),
            GbError::ZeroInput => CliError::Invariant(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Gb(g) => g.into(),
            PipelineError::Poly(p) => p.into(),
            PipelineError::Model(_) | PipelineError::NotEquidimensional(_) => {
                CliError::Input(e.to_string())
            }
            PipelineError::Degenerate(_) | PipelineError::Unstable(_) => {
                CliError::Unstable(e.to_string())
            }
            PipelineError::Invariant(_) => CliError::Invariant(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_errors_map_to_exit_codes() {
        let code = |e: PipelineError| CliError::from(e).exit_code();
        assert_eq!(code(PipelineError::Model("x".into())), EXIT_INPUT);
        assert_eq!(code(PipelineError::NotEquidimensional("x".into())), EXIT_INPUT);
        assert_eq!(code(PipelineError::Gb(GbError::Budget("x".into()))), EXIT_BUDGET);
        assert_eq!(code(PipelineError::Unstable(vec![(0, 10), (1, 9)])), EXIT_UNSTABLE);
        assert_eq!(code(PipelineError::Degenerate("x".into())), EXIT_UNSTABLE);
        assert_eq!(code(PipelineError::Invariant("x".into())), EXIT_INVARIANT);
        assert_eq!(code(PipelineError::Poly(PolyError::RingMismatch)), EXIT_INPUT);
    }
}
