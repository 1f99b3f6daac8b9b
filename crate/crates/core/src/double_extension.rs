//! Lorentz double extensions `m_0 → m_1 = ℝe ⊕ m_0 → n = ℝf ⊕ m_1`.
//!
//! Built algebras use the basis order `(f, e, m_0)` with
//! `⟨f, e⟩ = 1`, `f` and `e` null and orthogonal to `m_0`.

use crate::derivations::is_derivation;
use crate::exec::Execution;
use crate::geodesic::{go_sample_report, GoSampleSummary};
use crate::lie::{LieAlgebra, LieError, MetricLieAlgebra};
use crate::linalg::{unit, RMatrix, Signature, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DoubleExtensionError {
    #[error("cocycle must be an antisymmetric {expected}x{expected} matrix")]
    BadCocycle { expected: usize },
    #[error("derivation must be a {expected}x{expected} matrix on span(e, m0)")]
    BadDerivationShape { expected: usize },
    #[error("cocycle fails the 2-cocycle condition: {0}")]
    CocycleJacobi(LieError),
    #[error("derivation data is not a derivation of m1")]
    NotDerivation,
    #[error("derivation data is not nilpotent")]
    NotNilpotentDerivation,
    #[error("extended bracket fails validation: {0}")]
    Jacobi(LieError),
    #[error("metric is not Lorentz (signature {minus}-/{plus}+/{zero}0)", minus = .0.minus, plus = .0.plus, zero = .0.zero)]
    NotLorentz(Signature),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("restriction of the metric to [n,n] is nondegenerate, so no double-extension structure is forced")]
    NondegenerateDerived,
    #[error("e-perp is not a subalgebra")]
    NotSubalgebra,
    #[error("quotient bracket is not a Lie bracket: {0}")]
    Quotient(LieError),
}

/// `(m_0, ⟨,⟩_0)`, a cocycle `ω` with `[X, Y]_1 = [X, Y]_0 + ω(X, Y) e`, and
/// `D = ad(f)|_{m_1}` in the basis `(e, m_0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleExtensionData {
    pub base: MetricLieAlgebra,
    pub cocycle: RMatrix,
    pub derivation: RMatrix,
}

fn check_shapes(data: &DoubleExtensionData) -> Result<usize, DoubleExtensionError> {
    let m = data.base.dim();
    let c = &data.cocycle;
    if c.rows() != m || c.cols() != m || !c.is_antisymmetric() {
        return Err(DoubleExtensionError::BadCocycle { expected: m });
    }
    let d = &data.derivation;
    if d.rows() != m + 1 || d.cols() != m + 1 {
        return Err(DoubleExtensionError::BadDerivationShape { expected: m + 1 });
    }
    Ok(m)
}

/// `m_1 = ℝe ⊕ m_0`, basis `(e, m_0)`.
pub fn central_extension(data: &DoubleExtensionData) -> Result<LieAlgebra, DoubleExtensionError> {
    let m = check_shapes(data)?;
    let base = data.base.algebra();
    let mut entries = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..m {
                let c = base.constant(i, j, k);
                if !c.is_zero() {
                    entries.push((i + 1, j + 1, k + 1, c.clone()));
                }
            }
            if !data.cocycle[(i, j)].is_zero() {
                entries.push((i + 1, j + 1, 0, data.cocycle[(i, j)].clone()));
            }
        }
    }
    LieAlgebra::from_brackets(m + 1, &entries).map_err(DoubleExtensionError::CocycleJacobi)
}

/// The double extension `(ℝf ⊕ ℝe ⊕ m_0, ⟨,⟩)`, signature `(p+1, q+1)`.
pub fn build(data: &DoubleExtensionData) -> Result<MetricLieAlgebra, DoubleExtensionError> {
    let m1 = central_extension(data)?;
    let d = &data.derivation;
    if !is_derivation(&m1, d) {
        return Err(DoubleExtensionError::NotDerivation);
    }
    if d.nilpotency_index().is_none() {
        return Err(DoubleExtensionError::NotNilpotentDerivation);
    }
    let m = data.base.dim();
    let n = m + 2;
    let mut entries = Vec::new();
    for i in 0..=m {
        for j in i + 1..=m {
            for k in 0..=m {
                let c = m1.constant(i, j, k);
                if !c.is_zero() {
                    entries.push((i + 1, j + 1, k + 1, c.clone()));
                }
            }
        }
        for k in 0..=m {
            if !d[(k, i)].is_zero() {
                entries.push((0, i + 1, k + 1, d[(k, i)].clone()));
            }
        }
    }
    let mut labels = vec!["f".to_string(), "e".to_string()];
    labels.extend(data.base.algebra().labels().iter().cloned());
    let algebra = LieAlgebra::from_brackets(n, &entries).map_err(DoubleExtensionError::Jacobi)?.with_labels(labels);
    let mut gram = RMatrix::zeros(n, n);
    gram[(0, 1)] = Rational::one();
    gram[(1, 0)] = Rational::one();
    gram.set_block(2, 2, data.base.gram());
    MetricLieAlgebra::from_gram(algebra, gram).map_err(DoubleExtensionError::Jacobi)
}

/// Canonical decomposition of a Lorentz nilpotent algebra with degenerate
/// `⟨,⟩|[n,n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub e: Vec<Rational>,
    pub f: Vec<Rational>,
    pub m1: Subspace,
    pub m0: Subspace,
    /// Columns `(f, e, m_0-basis)`.
    pub adapted_basis: RMatrix,
    /// The input re-expressed in the adapted basis.
    pub adapted: MetricLieAlgebra,
    pub data: DoubleExtensionData,
    pub base_step: Option<usize>,
}

impl DecompositionResult {
    pub fn base_signature(&self) -> Signature {
        self.data.base.signature()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Extension(Box<DecompositionResult>),
    /// `e` does not commute with `x ∈ e^⊥`; the input cannot be GO.
    NotCentral { e: Vec<Rational>, x: Vec<Rational> },
}

pub fn decompose(m: &MetricLieAlgebra) -> Result<Decomposition, DoubleExtensionError> {
    let sig = m.signature();
    if !sig.is_lorentz() {
        return Err(DoubleExtensionError::NotLorentz(sig));
    }
    let alg = m.algebra();
    if alg.nilpotency_step().is_none() {
        return Err(DoubleExtensionError::NotNilpotent);
    }
    let n = m.dim();
    let derived = alg.derived_algebra();
    let radical = m.form().radical_in(&derived);
    if radical.is_zero() {
        return Err(DoubleExtensionError::NondegenerateDerived);
    }
    // totally isotropic in Lorentz signature, hence a line; its RREF basis
    // vector already has leading coordinate 1
    debug_assert_eq!(radical.dim(), 1);
    let e = radical.basis().row(0).to_vec();
    let line_e = Subspace::line(&e);
    let m1 = m.orthogonal_complement(&line_e);
    for x in m1.basis_vectors() {
        if !alg.bracket(&e, &x).iter().all(Rational::is_zero) {
            return Ok(Decomposition::NotCentral { e, x });
        }
    }

    let ge = m.gram().mul_vec(&e);
    let w_idx = (0..n).find(|&i| !ge[i].is_zero()).expect("nondegenerate metric pairs e with some basis vector");
    let w: Vec<Rational> = unit(n, w_idx).iter().map(|x| x / &ge[w_idx]).collect();
    let half_ww = m.inner(&w, &w) / Rational::from_integer(2);
    let f: Vec<Rational> = w.iter().zip(&e).map(|(wi, ei)| wi - &(&half_ww * ei)).collect();

    let m0 = m.orthogonal_complement(&Subspace::span(n, &[e.clone(), f.clone()]));
    let mut columns = vec![f.clone(), e.clone()];
    columns.extend(m0.basis_vectors());
    let adapted_basis = RMatrix::from_columns(n, &columns);
    let adapted = m.change_basis(&adapted_basis).map_err(DoubleExtensionError::Jacobi)?;

    let k = n - 2;
    let a = adapted.algebra();
    // m_1 = span(e, m_0) must be closed: no f-components in its brackets
    for i in 1..n {
        for j in i + 1..n {
            if !a.constant(i, j, 0).is_zero() {
                return Err(DoubleExtensionError::NotSubalgebra);
            }
        }
    }
    let mut base_entries = Vec::new();
    let mut cocycle = RMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            for l in 0..k {
                let c = a.constant(i + 2, j + 2, l + 2);
                if !c.is_zero() {
                    base_entries.push((i, j, l, c.clone()));
                }
            }
            let w = a.constant(i + 2, j + 2, 1).clone();
            cocycle[(j, i)] = -&w;
            cocycle[(i, j)] = w;
        }
    }
    let mut derivation = RMatrix::zeros(k + 1, k + 1);
    for i in 0..=k {
        for r in 0..=k {
            derivation[(r, i)] = a.constant(0, i + 1, r + 1).clone();
        }
    }
    // keep the input's label when an m_0 basis vector is a standard one
    let labels: Vec<String> = columns[2..]
        .iter()
        .enumerate()
        .map(|(c, v)| {
            let nonzero: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
            match nonzero[..] {
                [i] if v[i].is_one() => alg.labels()[i].clone(),
                _ => format!("m{}", c + 1),
            }
        })
        .collect();
    let base_alg = LieAlgebra::from_brackets(k, &base_entries)
        .map_err(DoubleExtensionError::Quotient)?
        .with_labels(labels);
    let base = MetricLieAlgebra::from_gram(base_alg, adapted.gram().block(2, 2, k, k))
        .map_err(DoubleExtensionError::Quotient)?;
    let base_step = base.algebra().nilpotency_step();
    Ok(Decomposition::Extension(Box::new(DecompositionResult {
        e,
        f,
        m1,
        m0,
        adapted_basis,
        adapted,
        data: DoubleExtensionData { base, cocycle, derivation },
        base_step,
    })))
}

/// Whether `build` of the recovered data reproduces the adapted algebra
/// exactly (structure constants and Gram matrix).
pub fn roundtrip_matches(result: &DecompositionResult) -> bool {
    match build(&result.data) {
        Ok(rebuilt) => {
            rebuilt.algebra().structure_constants() == result.adapted.algebra().structure_constants()
                && rebuilt.gram() == result.adapted.gram()
        }
        Err(_) => false,
    }
}

/// `decompose` followed by [`roundtrip_matches`]; false when `decompose`
/// fails or reports a non-central `e`.
pub fn roundtrip_check(m: &MetricLieAlgebra) -> bool {
    match decompose(m) {
        Ok(Decomposition::Extension(r)) => roundtrip_matches(&r),
        _ => false,
    }
}

/// GO sampling on the base `(m_0, ⟨,⟩_0)` with its own skew derivations.
pub fn base_go_report(
    result: &DecompositionResult,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<GoSampleSummary, crate::derivations::DerivationError> {
    let base = &result.data.base;
    let h = crate::derivations::skew_derivation_algebra(base, exec)?;
    Ok(go_sample_report(base, &h, samples, seed, exec))
}
