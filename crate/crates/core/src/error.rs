use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("unsupported spherical-harmonic basis: {0}")]
    UnsupportedBasis(String),
    #[error("time tail not controlled: {0}")]
    TailNotControlled(String),
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
