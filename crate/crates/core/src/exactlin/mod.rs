//! Dense exact linear algebra over prime fields.
//!
//! Everything above this layer compares submodules by comparing canonical
//! bases, so [`Subspace`] always stores its basis in reduced column echelon
//! form with strictly increasing pivot rows.

mod lattice;
mod matrix;
mod subspace;

pub use lattice::{enumerate_invariant_subspaces, invariant_closure, EnumerationBudget};
pub use matrix::{inv_mod, is_prime, pow_mod, FpMatrix};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("ragged row {row}: expected {expected} entries, found {found}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
}

pub type Result<T> = std::result::Result<T, LinAlgError>;
