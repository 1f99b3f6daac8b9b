//! Exact-arithmetic workbench for metric nilpotent Lie algebras.
//!
//! Everything is computed over the rationals: the isotropy algebra of
//! skew-symmetric derivations, pointwise and linear geodesic graphs, natural
//! reductivity as a linear feasibility problem, Lorentz double extensions,
//! and invariant-complement probes for the isotropy action.

pub mod analysis;
pub mod derivations;
pub mod double_extension;
pub mod exec;
pub mod geodesic;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod module_theory;
pub mod presets;
pub mod rational;

pub use exec::Execution;
pub use lie::{BilinearForm, LieAlgebra, LieError, MetricLieAlgebra, StructureConstants};
pub use linalg::{RMatrix, Signature, Subspace};
pub use rational::Rational;
