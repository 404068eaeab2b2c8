//! Filtered (φ,N)-modules: the data type, its constructions, the
//! admissibility checks and the Frobenius and five-step filtrations.

mod filtration;
mod flag;
mod module;
mod validate;

pub use filtration::{
    eigenspace_decomposition, exceptional_subquotient, frobenius_filtration, gb_filtration, is_regular, w_ranks,
    FiveStep, WRanks,
};
pub use flag::WeightedFlag;
pub use module::{FilPhiNModule, RankOneData};
pub use validate::{validate, AdmissibilityReport, Axiom, AxiomOutcome, DeclaredHypotheses, Witness};

use crate::exactlin::{LinError, Scalar};
use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error(transparent)]
    Linear(#[from] LinError),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("module must have positive dimension")]
    ZeroDimensional,
    #[error("at least one embedding is required")]
    NoEmbeddings,
    #[error("{what} is {rows}x{cols}, expected {n}x{n}")]
    OperatorShape { what: &'static str, rows: usize, cols: usize, n: usize },
    #[error("flag has {got} steps, expected {expected}")]
    FlagLength { expected: usize, got: usize },
    #[error("flag step {step} lives in dimension {got}, expected {expected}")]
    FlagAmbient { step: usize, expected: usize, got: usize },
    #[error("flag step {step} has dimension {got}, expected {expected}")]
    FlagStepDimension { step: usize, expected: usize, got: usize },
    #[error("flag step {step} is not contained in the previous step")]
    FlagNotNested { step: usize },
    #[error("flag weights must be nondecreasing")]
    WeightsNotSorted,
    #[error("induced flag is not complete")]
    InducedFlag,
    #[error("embedding {embedding}: flag is on dimension {got}, module has dimension {expected}")]
    FlagDimension { embedding: usize, expected: usize, got: usize },
    #[error("subspace lives in dimension {got}, module has dimension {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("subspace is not stable under {0}")]
    NotStable(&'static str),
    #[error("the relation N phi = p phi N fails")]
    RelationFails,
    #[error("Frobenius is not invertible")]
    NotInvertible,
    #[error("modules are incompatible: {0}")]
    Incompatible(String),
    #[error("dimension {0} is too small, need at least 2")]
    TooSmall(usize),
    #[error("eigenspace for {eigenvalue} (index {index}) has dimension {dim}, expected 1")]
    EigenspaceDimension { index: usize, eigenvalue: Scalar, dim: usize },
    #[error("submodule is not regular: {0}")]
    NotRegular(&'static str),
    #[error("rank bookkeeping is inconsistent: dim W = {dim}, W0 = {w0}, W1 = {w1}")]
    RankParity { dim: usize, w0: usize, w1: usize },
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
