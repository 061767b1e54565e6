//! Normal forms of monodromy matrices with eigenvalue ±1.
//!
//! Conjugators are always built as `T = S⁻¹` where `S` completes a primitive
//! eigenvector to a basis, and every result is re-checked exactly before it
//! is returned.

mod basis;
mod classify;
mod completion;
mod reductions;
mod signature;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact_int::ExactIntError;

pub use basis::{
    change_basis, double_cover, verify_theorem1, ActionVector, BasisChange, DoubleCover, MaslovVector, TheoremVerdict,
};
pub use classify::{classify, verify_classification, Classification, ClassificationResult, FormTag};
pub use completion::{conjugate_to_e1, unimodular_completion};
pub use reductions::{
    block_diagonalize, block_triangular, check_block_solution, reduce_mg2, BlockDiagonalization, Mg2Reduction,
};
pub use signature::{characteristic_polynomial, eigen_signature, EigenSignature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error(transparent)]
    Exact(#[from] ExactIntError),
    #[error("matrix is not in SL(n,Z) (det {0})")]
    NotSpecialLinear(BigInt),
    #[error("matrix is not unimodular (det {0})")]
    NotUnimodular(BigInt),
    #[error("dimensions do not agree")]
    NotSquare,
    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),
    #[error("{0} is not an eigenvalue")]
    NoEigenvalue(i32),
    #[error("expected algebraic multiplicity 3 and geometric multiplicity 2 for +1, got {ma} and {mg}")]
    WrongMultiplicity { ma: usize, mg: usize },
    #[error("a 1x1 matrix with entry -1 cannot be completed inside SL(1,Z)")]
    NotCompletable,
}
