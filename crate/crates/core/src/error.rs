use thiserror::Error;

/// Failures raised by constructions. Axiom violations are not errors; they are
/// reported as witnesses in an [`AxiomReport`](crate::report::AxiomReport).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition error: {0}")]
    Composition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("coherence error: {0}")]
    Coherence(String),
    #[error("no lift: {0}")]
    NoLift(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("construction error: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn composition(msg: impl Into<String>) -> Self {
        Error::Composition(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
