//! Concrete algebras: the Lorentz family built from a nilpotent matrix `S`,
//! its explicit geodesic graph and isotropy algebra, the 6-dimensional
//! quaternionic H-type algebra, and their orthogonal sum.
//!
//! Family basis order is `(f, e, X_1, …, X_2s)`.

use crate::derivations::DerivationAlgebra;
use crate::double_extension::DoubleExtensionData;
use crate::geodesic::LinearGraph;
use crate::lie::{LieAlgebra, MetricLieAlgebra};
use crate::linalg::{nullspace, RMatrix, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresetError {
    #[error("parameter d must be at least 2, got {0}")]
    ParameterTooSmall(usize),
    #[error("matrix must be square and nilpotent of index at least 2")]
    NotNilpotent,
    #[error("unknown preset `{0}` (expected family, kaplan6 or nonnatred)")]
    UnknownPreset(String),
}

/// A nilpotent `s×s` matrix together with its exact nilpotency index
/// (`S^index = 0 ≠ S^(index−1)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    s: RMatrix,
    index: usize,
}

impl FamilySpec {
    pub fn new(s: RMatrix) -> Result<Self, PresetError> {
        if !s.is_square() {
            return Err(PresetError::NotNilpotent);
        }
        match s.nilpotency_index() {
            Some(index) if index >= 2 => Ok(FamilySpec { s, index }),
            _ => Err(PresetError::NotNilpotent),
        }
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.s
    }

    pub fn size(&self) -> usize {
        self.s.rows()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Dimension of the family algebra, `2s + 2`.
    pub fn dim(&self) -> usize {
        2 * self.size() + 2
    }
}

/// The `(d+1)×(d+1)` upper shift `S[i][i+1] = 1`. Its index is `d + 1`.
pub fn shift_matrix(d: usize) -> Result<FamilySpec, PresetError> {
    if d < 2 {
        return Err(PresetError::ParameterTooSmall(d));
    }
    let s = d + 1;
    let mut m = RMatrix::zeros(s, s);
    for i in 0..d {
        m[(i, i + 1)] = Rational::one();
    }
    FamilySpec::new(m)
}

/// `P = [[0, −Sᵗ], [S, Sᵗ−S]]`, `Q = [[0, Sᵗ], [S, Sᵗ−S]]`.
pub fn pq_pair(spec: &FamilySpec) -> (RMatrix, RMatrix) {
    let s = spec.matrix();
    let st = s.transpose();
    let n = spec.size();
    let corner = &st - s;
    let mut p = RMatrix::zeros(2 * n, 2 * n);
    p.set_block(0, n, &(-&st));
    p.set_block(n, 0, s);
    p.set_block(n, n, &corner);
    let mut q = RMatrix::zeros(2 * n, 2 * n);
    q.set_block(0, n, &st);
    q.set_block(n, 0, s);
    q.set_block(n, n, &corner);
    (p, q)
}

fn family_labels(s: usize) -> Vec<String> {
    let mut labels = vec!["f".to_string(), "e".to_string()];
    labels.extend((1..=2 * s).map(|i| format!("X{i}")));
    labels
}

/// `[X, Y] = ⟨PX, Y⟩ e`, `[f, X] = QX`, `e` central; `⟨f, e⟩ = 1`, `f`, `e`
/// null and orthogonal to the Euclidean `m_0 = span(X_i)`.
pub fn family(spec: &FamilySpec) -> MetricLieAlgebra {
    let (p, q) = pq_pair(spec);
    let m = 2 * spec.size();
    let x = |i: usize| i + 2;
    let mut entries = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if !p[(j, i)].is_zero() {
                entries.push((x(i), x(j), 1, p[(j, i)].clone()));
            }
        }
        for k in 0..m {
            if !q[(k, i)].is_zero() {
                entries.push((0, x(i), x(k), q[(k, i)].clone()));
            }
        }
    }
    let algebra = LieAlgebra::from_brackets(m + 2, &entries)
        .expect("family brackets satisfy Jacobi")
        .with_labels(family_labels(spec.size()));
    MetricLieAlgebra::from_gram(algebra, hyperbolic_plus_identity(m)).expect("family metric is nondegenerate")
}

fn hyperbolic_plus_identity(m: usize) -> RMatrix {
    let mut g = RMatrix::zeros(m + 2, m + 2);
    g[(0, 1)] = Rational::one();
    g[(1, 0)] = Rational::one();
    for i in 0..m {
        g[(i + 2, i + 2)] = Rational::one();
    }
    g
}

/// `A(e_i)` for every basis vector: `A(T)` kills `e`, sends `f` to
/// `v = (Qᵗ+P)X` and `Y ∈ m_0` to `−⟨v, Y⟩ e`, where `X` is the
/// `m_0`-component of `T`.
pub fn family_graph_operators(spec: &FamilySpec) -> Vec<RMatrix> {
    let (p, q) = pq_pair(spec);
    let m = 2 * spec.size();
    let n = m + 2;
    let v = &q.transpose() + &p;
    (0..n)
        .map(|i| {
            let mut a = RMatrix::zeros(n, n);
            if i >= 2 {
                let col = v.column(i - 2);
                for (k, vk) in col.iter().enumerate() {
                    a[(k + 2, 0)] = vk.clone();
                    a[(1, k + 2)] = -vk;
                }
            }
            a
        })
        .collect()
}

/// The family graph in the coordinates of `h`; the error is the index of an
/// operator outside `h`.
pub fn family_geodesic_graph(spec: &FamilySpec, h: &DerivationAlgebra) -> Result<LinearGraph, usize> {
    LinearGraph::from_operators(h, &family_graph_operators(spec))
}

/// Span of the operators `B` with `Bf = u`, `Be = 0`, `BX = ΦX − ⟨u, X⟩e`,
/// where `Φ ∈ so(2s)` commutes with `P` and `Q` and `(Qᵗ+P)u = 0`.
pub fn derivation_span(spec: &FamilySpec) -> Subspace {
    let (p, q) = pq_pair(spec);
    let m = 2 * spec.size();
    let n = m + 2;
    // Φ: unknown Φ[r][c] at r*m + c; rows Φ + Φᵗ = 0, ΦP − PΦ = 0, ΦQ − QΦ = 0
    let var = |r: usize, c: usize| r * m + c;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for r in 0..m {
        for c in r..m {
            let mut row = vec![Rational::zero(); m * m];
            row[var(r, c)] += Rational::one();
            row[var(c, r)] += Rational::one();
            rows.push(row);
        }
    }
    for x in [&p, &q] {
        for r in 0..m {
            for c in 0..m {
                let mut row = vec![Rational::zero(); m * m];
                for k in 0..m {
                    row[var(r, k)] += &x[(k, c)];
                    row[var(k, c)] -= &x[(r, k)];
                }
                rows.push(row);
            }
        }
    }
    let phis = nullspace(&RMatrix::from_row_slices(m * m, &rows));
    let us = nullspace(&(&q.transpose() + &p));

    let mut gens = Vec::new();
    for phi in phis.basis_vectors() {
        let mut b = RMatrix::zeros(n, n);
        b.set_block(2, 2, &RMatrix::from_flat(m, m, phi));
        gens.push(b.as_flat().to_vec());
    }
    for u in us.basis_vectors() {
        let mut b = RMatrix::zeros(n, n);
        for (k, uk) in u.iter().enumerate() {
            b[(k + 2, 0)] = uk.clone();
            b[(1, k + 2)] = -uk;
        }
        gens.push(b.as_flat().to_vec());
    }
    Subspace::span(n * n, &gens)
}

/// Double-extension data reproducing [`family`]: abelian Euclidean base,
/// `ω(X, Y) = ⟨PX, Y⟩`, and `D = 0 ⊕ Q` on `ℝe ⊕ m_0`.
pub fn family_double_extension_data(spec: &FamilySpec) -> DoubleExtensionData {
    let (p, q) = pq_pair(spec);
    let m = 2 * spec.size();
    let base = MetricLieAlgebra::euclidean(
        LieAlgebra::abelian(m).with_labels((1..=m).map(|i| format!("X{i}")).collect()),
    );
    let mut derivation = RMatrix::zeros(m + 1, m + 1);
    derivation.set_block(1, 1, &q);
    DoubleExtensionData { base, cocycle: p.transpose(), derivation }
}

/// Left multiplication by `i` and `j` on `ℍ = span(1, i, j, k)`.
pub fn quaternion_units() -> (RMatrix, RMatrix) {
    let j1 = RMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let j2 = RMatrix::from_i64(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
    (j1, j2)
}

/// `n = span(z_1, z_2) ⊕ ℝ⁴` with `[X, Y] = ⟨J_1X, Y⟩z_1 + ⟨J_2X, Y⟩z_2`,
/// orthonormal basis `(z_1, z_2, a_1, …, a_4)`.
pub fn kaplan6() -> MetricLieAlgebra {
    let (j1, j2) = quaternion_units();
    let mut entries = Vec::new();
    for (z, j) in [(0, &j1), (1, &j2)] {
        for a in 0..4 {
            for b in a + 1..4 {
                if !j[(b, a)].is_zero() {
                    entries.push((a + 2, b + 2, z, j[(b, a)].clone()));
                }
            }
        }
    }
    let labels = ["z1", "z2", "a1", "a2", "a3", "a4"].map(String::from).to_vec();
    let algebra = LieAlgebra::from_brackets(6, &entries).expect("H-type brackets satisfy Jacobi").with_labels(labels);
    MetricLieAlgebra::euclidean(algebra)
}

/// `family(spec) ⊕ kaplan6()`, Lorentz of dimension `2s + 8`.
pub fn nonnatred_example(spec: &FamilySpec) -> MetricLieAlgebra {
    family(spec).direct_sum(&kaplan6())
}

/// A named preset, as exposed on the command line.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub description: String,
    pub metric: MetricLieAlgebra,
    /// Operators `A(e_i)` of a known geodesic graph, if one is known.
    pub graph: Option<Vec<RMatrix>>,
}

pub fn preset(name: &str, d: usize) -> Result<Preset, PresetError> {
    match name {
        "family" => {
            let spec = shift_matrix(d)?;
            Ok(Preset {
                name: format!("family-d{d}"),
                description: format!("Lorentz family from the {}x{} shift matrix", d + 1, d + 1),
                metric: family(&spec),
                graph: Some(family_graph_operators(&spec)),
            })
        }
        "kaplan6" => Ok(Preset {
            name: "kaplan6".to_string(),
            description: "quaternionic H-type algebra with 2-dimensional center".to_string(),
            metric: kaplan6(),
            graph: None,
        }),
        "nonnatred" => {
            let spec = shift_matrix(d)?;
            Ok(Preset {
                name: format!("nonnatred-d{d}"),
                description: format!("family-d{d} orthogonally summed with kaplan6"),
                metric: nonnatred_example(&spec),
                graph: None,
            })
        }
        other => Err(PresetError::UnknownPreset(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::{is_derivation, is_skew, skew_derivation_algebra};
    use crate::exec::Execution;
    use crate::geodesic::{check_equivariance, verify_geodesic_graph};

    #[test]
    fn shift_matrix_shape_and_index() {
        let spec = shift_matrix(2).unwrap();
        assert_eq!(spec.matrix(), &RMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]));
        assert_eq!(spec.index(), 3);
        assert!(spec.matrix().pow(3).is_zero());
        assert!(!spec.matrix().pow(2).is_zero());
        assert_eq!(shift_matrix(1), Err(PresetError::ParameterTooSmall(1)));
    }

    #[test]
    fn pq_identities() {
        for d in 2..=4 {
            let spec = shift_matrix(d).unwrap();
            let (p, q) = pq_pair(&spec);
            assert!(p.is_antisymmetric());
            let idx = q.nilpotency_index().unwrap();
            assert!(idx >= spec.index());
            assert!(!q.pow(spec.index() as u32 - 1).is_zero());
            let v = &q.transpose() + &p;
            assert!(v.matmul(&v).is_zero());
        }
    }

    #[test]
    fn family_basics() {
        let spec = shift_matrix(2).unwrap();
        let m = family(&spec);
        assert_eq!(m.dim(), 8);
        assert!(m.is_lorentz());
        assert!(m.algebra().nilpotency_step().unwrap() >= 2);
    }

    #[test]
    fn family_graph_is_certified() {
        let spec = shift_matrix(2).unwrap();
        let m = family(&spec);
        let h = skew_derivation_algebra(&m, Execution::Sequential).unwrap();
        let g = family_geodesic_graph(&spec, &h).expect("graph operators lie in h");
        assert!(verify_geodesic_graph(&m, &h, &g));
        assert!(check_equivariance(&h, &g));
        assert!(g.operator(&h, 0).is_zero() && g.operator(&h, 1).is_zero());
    }

    #[test]
    fn derivation_span_is_skew_derivations() {
        let spec = shift_matrix(2).unwrap();
        let m = family(&spec);
        let span = derivation_span(&spec);
        for v in span.basis_vectors() {
            let b = RMatrix::from_flat(8, 8, v);
            assert!(is_derivation(m.algebra(), &b));
            assert!(is_skew(m.gram(), &b));
        }
        let h = skew_derivation_algebra(&m, Execution::Sequential).unwrap();
        assert_eq!(&span, h.span());
    }

    #[test]
    fn kaplan6_clifford() {
        let (j1, j2) = quaternion_units();
        let minus_id = RMatrix::identity(4).scale(&Rational::from_integer(-1));
        assert_eq!(j1.matmul(&j1), minus_id);
        assert_eq!(j2.matmul(&j2), minus_id);
        assert!((&j1.matmul(&j2) + &j2.matmul(&j1)).is_zero());
        let k = kaplan6();
        assert_eq!(k.algebra().nilpotency_step(), Some(2));
        assert!(k.signature().is_positive_definite());
    }

    #[test]
    fn nonnatred_dimension() {
        let spec = shift_matrix(2).unwrap();
        let m = nonnatred_example(&spec);
        assert_eq!(m.dim(), 14);
        assert_eq!(m.signature().minus, 1);
        assert_eq!(m.signature().plus, 13);
    }
}
