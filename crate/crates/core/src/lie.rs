//! Lie algebras given by structure constants, symmetric bilinear forms, and
//! metric Lie algebras built from the two.

use crate::linalg::{
    congruence_diagonalize, nullspace, unit, LinalgError, RMatrix, Signature, Subspace,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constants are not antisymmetric at [e{i}, e{j}] component e{k}")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails for basis triple ({}, {}, {}) ({count} violated triples)", .triple.0, .triple.1, .triple.2)]
    Jacobi { triple: (usize, usize, usize), count: usize },
    #[error("change-of-basis matrix is singular")]
    SingularChangeOfBasis,
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate (signature {minus}-/{plus}+/{zero}0)", minus = .0.minus, plus = .0.plus, zero = .0.zero)]
    Degenerate(Signature),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Structure constants `c[i][j][k]`, meaning `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// No Lie axioms are enforced here; see [`LieAlgebra::new`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StructureConstants {
    dim: usize,
    data: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, data: vec![Rational::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[self.idx(i, j, k)]
    }

    /// Sets a single entry without mirroring.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let n = self.idx(i, j, k);
        self.data[n] = v;
    }

    /// Sets `[e_i, e_j]_k = v` and `[e_j, e_i]_k = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.set_raw(j, i, k, -&v);
        self.set_raw(i, j, k, v);
    }

    /// First `(i, j, k)` with `c[i][j][k] ≠ -c[j][i][k]`.
    pub fn antisymmetry_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if *self.get(i, j, k) != -self.get(j, i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn ad_basis(&self, i: usize) -> RMatrix {
        let n = self.dim;
        let mut m = RMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] = self.get(i, j, k).clone();
            }
        }
        m
    }

    fn bracket_with(&self, ads: &[RMatrix], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, v) in ads[i].mul_vec(y).into_iter().enumerate() {
                if !v.is_zero() {
                    out[k] += xi * v;
                }
            }
        }
        out
    }

    /// Basis triples `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_defect(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let ads: Vec<RMatrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let ij = ads[i].column(j);
                for k in j + 1..n {
                    let jk = ads[j].column(k);
                    let ki = ads[k].column(i);
                    let a = ads[i].mul_vec(&jk);
                    let b = ads[j].mul_vec(&ki);
                    let c = ads[k].mul_vec(&ij);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }
}

/// A finite-dimensional Lie algebra over Q with validated structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    consts: StructureConstants,
    labels: Vec<String>,
    ads: Vec<RMatrix>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(consts: StructureConstants) -> Result<Self, LieError> {
        if let Some((i, j, k)) = consts.antisymmetry_defect() {
            return Err(LieError::NotAntisymmetric { i, j, k });
        }
        let defects = consts.jacobi_defect();
        if let Some(&triple) = defects.first() {
            return Err(LieError::Jacobi { triple, count: defects.len() });
        }
        let n = consts.dim();
        let ads = (0..n).map(|i| consts.ad_basis(i)).collect();
        let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
        Ok(LieAlgebra { consts, labels, ads })
    }

    /// Builds from one-sided bracket entries `[e_i, e_j] ∋ coeff · e_k`,
    /// mirrored with sign. Repeated `(i, j, k)` entries accumulate.
    pub fn from_brackets(
        dim: usize,
        entries: &[(usize, usize, usize, Rational)],
    ) -> Result<Self, LieError> {
        let mut c = StructureConstants::zero(dim);
        for (i, j, k, v) in entries {
            for &idx in [i, j, k] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                if !v.is_zero() {
                    return Err(LieError::NotAntisymmetric { i: *i, j: *j, k: *k });
                }
                continue;
            }
            let cur = c.get(*i, *j, *k).clone();
            c.set_bracket(*i, *j, *k, cur + v);
        }
        Self::new(c)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(StructureConstants::zero(dim)).expect("abelian algebra is valid")
    }

    /// `[e1, e2] = e3`.
    pub fn heisenberg3() -> Self {
        Self::from_brackets(3, &[(0, 1, 2, Rational::one())]).expect("Heisenberg algebra is valid")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.consts.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.consts
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.consts.get(i, j, k)
    }

    /// `[x, y]`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert!(x.len() == self.dim() && y.len() == self.dim(), "dimension mismatch in bracket");
        self.consts.bracket_with(&self.ads, x, y)
    }

    /// `[e_i, e_j]` as a vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.ads[i].column(j)
    }

    /// Matrix of `ad(e_i)`.
    pub fn ad_basis(&self, i: usize) -> &RMatrix {
        &self.ads[i]
    }

    /// Matrix of `ad(x) = [x, ·]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> RMatrix {
        assert_eq!(x.len(), self.dim());
        let n = self.dim();
        let mut m = RMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.ads[i].scale(xi);
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.ads.iter().all(RMatrix::is_zero)
    }

    /// `[U, V]`.
    pub fn bracket_subspaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for x in u.basis_vectors() {
            for y in v.basis_vectors() {
                let b = self.bracket(&x, &y);
                if b.iter().any(|t| !t.is_zero()) {
                    vecs.push(b);
                }
            }
        }
        Subspace::span(self.dim(), &vecs)
    }

    /// `[n, n]`.
    pub fn derived_algebra(&self) -> Subspace {
        let whole = Subspace::full(self.dim());
        self.bracket_subspaces(&whole, &whole)
    }

    /// `n¹ = n, n^{k+1} = [n, n^k]`, listed until the chain reaches zero or
    /// stabilizes. For a nilpotent algebra the last entry is the zero subspace.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let whole = Subspace::full(self.dim());
        let mut chain = vec![whole.clone()];
        loop {
            let last = chain.last().expect("chain is nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_subspaces(&whole, last);
            if next == *last {
                break;
            }
            chain.push(next);
        }
        chain
    }

    /// Step `r` with `n^{r+1} = 0 ≠ n^r` (abelian = 1, zero algebra = 0);
    /// `None` if not nilpotent.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let chain = self.lower_central_series();
        let last = chain.last().expect("chain is nonempty");
        if last.is_zero() {
            Some(chain.len() - 1)
        } else {
            None
        }
    }

    /// `{x : [x, u] = 0 for all u ∈ U}`.
    pub fn centralizer(&self, u: &Subspace) -> Subspace {
        let n = self.dim();
        let mut stacked = RMatrix::zeros(0, n);
        for v in u.basis_vectors() {
            // [x, v] = -ad(v) x
            stacked = stacked.vstack(&self.ad_matrix(&v));
        }
        nullspace(&stacked)
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim()))
    }

    pub fn is_ideal(&self, u: &Subspace) -> bool {
        self.bracket_subspaces(&Subspace::full(self.dim()), u).is_subspace_of(u)
    }

    /// Structure constants relative to the basis given by the columns of
    /// `change` (which must be invertible).
    pub fn change_basis(&self, change: &RMatrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if change.rows() != n || change.cols() != n {
            return Err(LieError::DimensionMismatch { expected: n, found: change.rows() });
        }
        let inv = change.inverse().ok_or(LieError::SingularChangeOfBasis)?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|a| change.column(a)).collect();
        let mut c = StructureConstants::zero(n);
        for a in 0..n {
            for b in a + 1..n {
                let coords = inv.mul_vec(&self.bracket(&cols[a], &cols[b]));
                for (k, v) in coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        c.set_bracket(a, b, k, v);
                    }
                }
            }
        }
        LieAlgebra::new(c)
    }

    /// Block direct sum; basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n1, n2) = (self.dim(), other.dim());
        let mut c = StructureConstants::zero(n1 + n2);
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    c.set_raw(i, j, k, self.constant(i, j, k).clone());
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    c.set_raw(n1 + i, n1 + j, n1 + k, other.constant(i, j, k).clone());
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        LieAlgebra::new(c).expect("direct sum of Lie algebras is a Lie algebra").with_labels(labels)
    }
}

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: RMatrix,
}

impl BilinearForm {
    pub fn new(gram: RMatrix) -> Result<Self, LieError> {
        if !gram.is_symmetric() {
            return Err(LieError::NotSymmetric);
        }
        Ok(BilinearForm { gram })
    }

    pub fn euclidean(n: usize) -> Self {
        BilinearForm { gram: RMatrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RMatrix {
        &self.gram
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.gram.bilinear(x, y)
    }

    /// `⟨e_i, e_j⟩`.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.gram[(i, j)]
    }

    pub fn signature(&self) -> Signature {
        congruence_diagonalize(&self.gram).expect("gram is symmetric").signature
    }

    /// `U^⊥ = {x : ⟨x, u⟩ = 0 for all u ∈ U}`.
    pub fn orthogonal_complement(&self, u: &Subspace) -> Subspace {
        assert_eq!(u.ambient_dim(), self.dim());
        nullspace(&u.basis().matmul(&self.gram))
    }

    /// Gram matrix of the form restricted to `U`, in the canonical basis of `U`.
    pub fn restrict(&self, u: &Subspace) -> BilinearForm {
        let b = u.basis();
        BilinearForm { gram: b.matmul(&self.gram).matmul(&b.transpose()) }
    }

    /// `U ∩ U^⊥`, the radical of the form restricted to `U`.
    pub fn radical_in(&self, u: &Subspace) -> Subspace {
        u.intersect(&self.orthogonal_complement(u)).expect("same ambient dimension")
    }

    pub fn direct_sum(&self, other: &BilinearForm) -> BilinearForm {
        BilinearForm { gram: self.gram.block_diag(&other.gram) }
    }
}

/// A Lie algebra with a nondegenerate symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricLieAlgebra {
    algebra: LieAlgebra,
    form: BilinearForm,
    signature: Signature,
}

impl MetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, form: BilinearForm) -> Result<Self, LieError> {
        if algebra.dim() != form.dim() {
            return Err(LieError::DimensionMismatch { expected: algebra.dim(), found: form.dim() });
        }
        let signature = form.signature();
        if !signature.is_nondegenerate() {
            return Err(LieError::Degenerate(signature));
        }
        Ok(MetricLieAlgebra { algebra, form, signature })
    }

    pub fn from_gram(algebra: LieAlgebra, gram: RMatrix) -> Result<Self, LieError> {
        Self::new(algebra, BilinearForm::new(gram)?)
    }

    pub fn euclidean(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        Self::new(algebra, BilinearForm::euclidean(n)).expect("identity form is nondegenerate")
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn gram(&self) -> &RMatrix {
        self.form.gram()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.form.inner(x, y)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.algebra.bracket(x, y)
    }

    pub fn is_lorentz(&self) -> bool {
        self.signature.is_lorentz()
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.is_riemannian()
    }

    pub fn orthogonal_complement(&self, u: &Subspace) -> Subspace {
        self.form.orthogonal_complement(u)
    }

    /// Same algebra, different metric.
    pub fn with_gram(&self, gram: RMatrix) -> Result<Self, LieError> {
        Self::from_gram(self.algebra.clone(), gram)
    }

    /// Re-expresses bracket and metric in the basis given by the columns of `change`.
    pub fn change_basis(&self, change: &RMatrix) -> Result<Self, LieError> {
        let algebra = self.algebra.change_basis(change)?;
        let gram = change.transpose().matmul(self.gram()).matmul(change);
        Self::from_gram(algebra, gram)
    }

    /// Orthogonal direct sum; basis of `self` first.
    pub fn direct_sum(&self, other: &MetricLieAlgebra) -> MetricLieAlgebra {
        MetricLieAlgebra {
            algebra: self.algebra.direct_sum(&other.algebra),
            form: self.form.direct_sum(&other.form),
            signature: self.signature.add(&other.signature),
        }
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        unit(self.dim(), i)
    }
}

/// Orthogonal projection of `first ⊕ second` onto one summand, as a
/// `(dim summand) × (first + second)` matrix.
pub fn summand_projection(first: usize, second: usize, take_second: bool) -> RMatrix {
    let (rows, offset) = if take_second { (second, first) } else { (first, 0) };
    let mut p = RMatrix::zeros(rows, first + second);
    for i in 0..rows {
        p[(i, offset + i)] = Rational::one();
    }
    p
}
