//! Exact arithmetic toolkit for terminal Fano 3-fold weighted hypersurfaces.
//!
//! The crate enumerates quasi-smooth terminal weighted hypersurface families,
//! computes their singularity baskets and anticanonical invariants, carries out
//! the weighted blow-up intersection calculus used in exclusion arguments,
//! analyses cE / cD/2 hypersurface germs and their discrepancy-1 divisors, and
//! builds and verifies the rank-2 toric link data for families 100-103 and 110.
//!
//! All scalars are exact rationals; there is no floating point anywhere.

pub mod ambient;
pub mod birational;
pub mod cli;
pub mod families;
pub mod germs;
pub mod links;
pub mod qpoly;
pub mod rat;

pub use qpoly::{QPoly, WeightVec};
pub use rat::Rat;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("input error: {0}")]
    Input(String),
    #[error("substitution not defined: {0}")]
    Substitution(String),
    #[error("weight of the zero polynomial is undefined")]
    ZeroWeight,
    #[error("truncation order {have} is too small, need at least {need}")]
    Truncation { have: u32, need: u32 },
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("non-terminal configuration: {0}")]
    NonTerminal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
