//! Exact dense linear algebra over the rationals: echelon forms, kernels,
//! affine feasibility with certificates, subspaces and congruence
//! diagonalization of symmetric forms.

mod congruence;
mod echelon;
mod matrix;
mod subspace;

pub use congruence::{congruence_diagonalize, signature, Congruence, Signature};
pub use echelon::{nullspace, rank, rref, solve_affine, Feasibility, LinearSystem, Rref, SparseRow};
pub use matrix::{axpy, dot, is_zero_vec, scale_vec, unit, RMatrix};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}
