//! Derivation algebras: `Der(n)` and its subalgebra of skew-symmetric
//! derivations, which plays the role of the isotropy algebra `h` of the
//! nilmanifold.
//!
//! Both are kernels of linear systems in the `dim²` entries of an unknown
//! matrix `D`; entry `D[r][c]` is unknown number `r * dim + c`.

use crate::exec::Execution;
use crate::lie::{LieAlgebra, MetricLieAlgebra, StructureConstants};
use crate::linalg::{LinearSystem, RMatrix, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error("commutator of basis elements {0} and {1} leaves the computed span")]
    NotClosed(usize, usize),
    #[error("operator is {found}x{found}, expected {expected}x{expected}")]
    Shape { expected: usize, found: usize },
}

/// A Lie algebra of endomorphisms of `Q^dim`, with a canonical basis and the
/// structure constants of the commutator in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationAlgebra {
    ambient: usize,
    basis: Vec<RMatrix>,
    span: Subspace,
    structure: StructureConstants,
}

impl DerivationAlgebra {
    /// Wraps a subspace of `dim²`-space whose elements are closed under
    /// commutator. The basis is the RREF basis of `span`.
    pub fn from_span(ambient: usize, span: Subspace, exec: Execution) -> Result<Self, DerivationError> {
        assert_eq!(span.ambient_dim(), ambient * ambient);
        let basis: Vec<RMatrix> = span
            .basis_vectors()
            .into_iter()
            .map(|v| RMatrix::from_flat(ambient, ambient, v))
            .collect();
        let m = basis.len();
        let pairs: Vec<(usize, usize)> =
            (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        let coords = exec.map_slice(&pairs, |&(a, b)| {
            let comm = basis[a].commutator(&basis[b]);
            span.coordinates(comm.as_flat())
        });
        let mut structure = StructureConstants::zero(m);
        for (&(a, b), c) in pairs.iter().zip(coords) {
            let c = c.ok_or(DerivationError::NotClosed(a, b))?;
            for (k, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    structure.set_bracket(a, b, k, v);
                }
            }
        }
        Ok(DerivationAlgebra { ambient, basis, span, structure })
    }

    /// Dimension of the algebra itself.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the space the operators act on.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[RMatrix] {
        &self.basis
    }

    pub fn operator(&self, a: usize) -> &RMatrix {
        &self.basis[a]
    }

    /// `[B_a, B_b] = Σ_c structure(a, b, c) B_c`.
    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    /// The algebra as a subspace of `dim²`-space (row-major flattening).
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn coordinates(&self, d: &RMatrix) -> Option<Vec<Rational>> {
        if d.rows() != self.ambient || d.cols() != self.ambient {
            return None;
        }
        self.span.coordinates(d.as_flat())
    }

    pub fn contains(&self, d: &RMatrix) -> bool {
        self.coordinates(d).is_some()
    }

    /// `Σ_a coeffs[a] B_a`.
    pub fn combine(&self, coeffs: &[Rational]) -> RMatrix {
        assert_eq!(coeffs.len(), self.dim());
        RMatrix::from_flat(self.ambient, self.ambient, self.span.combine(coeffs))
    }
}

/// Rows `D[e_i,e_j] − [De_i,e_j] − [e_i,De_j] = 0` for all `i < j`.
pub fn derivation_system(l: &LieAlgebra, exec: Execution) -> LinearSystem {
    let n = l.dim();
    let var = |r: usize, c: usize| r * n + c;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let blocks = exec.map_slice(&pairs, |&(i, j)| {
        let mut rows = Vec::with_capacity(n);
        for k in 0..n {
            let mut row = Vec::new();
            for m in 0..n {
                let c = l.constant(i, j, m);
                if !c.is_zero() {
                    row.push((var(k, m), c.clone()));
                }
            }
            for r in 0..n {
                let a = l.constant(r, j, k);
                if !a.is_zero() {
                    row.push((var(r, i), -a));
                }
                let b = l.constant(i, r, k);
                if !b.is_zero() {
                    row.push((var(r, j), -b));
                }
            }
            rows.push(row);
        }
        rows
    });
    let mut sys = LinearSystem::new(n * n);
    for row in blocks.into_iter().flatten() {
        if !row.is_empty() {
            sys.push(row, Rational::zero());
        }
    }
    sys
}

/// Rows `DᵀG + GD = 0` (upper triangle).
pub fn skew_system(gram: &RMatrix) -> LinearSystem {
    let n = gram.rows();
    let var = |r: usize, c: usize| r * n + c;
    let mut sys = LinearSystem::new(n * n);
    for p in 0..n {
        for q in p..n {
            // (DᵀG)[p][q] = Σ_r D[r][p] G[r][q];  (GD)[p][q] = Σ_r G[p][r] D[r][q]
            let mut row = Vec::new();
            for r in 0..n {
                if !gram[(r, q)].is_zero() {
                    row.push((var(r, p), gram[(r, q)].clone()));
                }
                if !gram[(p, r)].is_zero() {
                    row.push((var(r, q), gram[(p, r)].clone()));
                }
            }
            sys.push(row, Rational::zero());
        }
    }
    sys
}

/// `Der(L)`.
pub fn derivation_algebra(l: &LieAlgebra, exec: Execution) -> Result<DerivationAlgebra, DerivationError> {
    let span = derivation_system(l, exec).nullspace();
    DerivationAlgebra::from_span(l.dim(), span, exec)
}

/// Skew-symmetric derivations of `(n, ⟨,⟩)`.
pub fn skew_derivation_algebra(
    m: &MetricLieAlgebra,
    exec: Execution,
) -> Result<DerivationAlgebra, DerivationError> {
    // Skew rows first: they are short and cut the unknowns roughly in half
    // before the longer derivation rows are reduced.
    let mut sys = skew_system(m.gram());
    sys.extend(derivation_system(m.algebra(), exec));
    let span = sys.nullspace();
    DerivationAlgebra::from_span(m.dim(), span, exec)
}

pub fn is_derivation(l: &LieAlgebra, d: &RMatrix) -> bool {
    let n = l.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let cols: Vec<Vec<Rational>> = (0..n).map(|i| d.column(i)).collect();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = d.mul_vec(&l.bracket_basis(i, j));
            let a = l.bracket(&cols[i], &crate::linalg::unit(n, j));
            let b = l.bracket(&crate::linalg::unit(n, i), &cols[j]);
            lhs.iter().zip(a.iter().zip(&b)).all(|(x, (y, z))| *x == y + z)
        })
    })
}

/// `DᵀG + GD = 0`.
pub fn is_skew(gram: &RMatrix, d: &RMatrix) -> bool {
    if d.rows() != gram.rows() || d.cols() != gram.cols() {
        return false;
    }
    (&d.transpose().matmul(gram) + &gram.matmul(d)).is_zero()
}

pub fn act(d: &RMatrix, x: &[Rational]) -> Vec<Rational> {
    d.mul_vec(x)
}
