//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not a generalized Cartan matrix: {0}")]
    NotCartan(String),
    #[error("matrix is not symmetrizable (block starting at index {0})")]
    NotSymmetrizable(usize),
    #[error("{0} is not a root in the table")]
    NotARoot(String),
    #[error("inversion set leaves the root table (depth cap {0})")]
    DepthExceeded(i64),
    #[error("degree cap exceeded: requested {requested}, available {available}")]
    CapExceeded { requested: i64, available: i64 },
    #[error("geometric inverse requires a direction of positive degree, got d = {0}")]
    NonpositiveDegreeDirection(i64),
    #[error("series has a term outside Q_+ at {0}; engine invariant violated")]
    NegativeSupport(String),
    #[error("specialization is inconsistent: {0}")]
    InconsistentSpecialization(String),
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("non-integer multiplicity at offset {0}; root data inconsistent")]
    NonIntegerMultiplicity(String),
    #[error("|m|_P^s needs omega exponents: A is singular and none were supplied")]
    MissingOmegaExponents,
    #[error("gamma-factor pole at s = {0}")]
    PoleEncountered(String),
    #[error("convergence bound requires Re(s_i) > 1 for all i")]
    RegionViolation,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
