//! Geodesic-orbit and natural-reductivity conditions as exact linear
//! feasibility problems.
//!
//! The reductive decomposition is always `g = h ⊕ n` with `n` an ideal, so
//! `[T + A, T']_n = [T, T'] + A·T'`. For fixed `T` the geodesic equation
//! `⟨[T, T'] + A·T', T⟩ = k⟨T, T'⟩` is linear in `(A, k)`; for a linear graph
//! `A(T) = Σ t_i A(e_i)` it is a cubic polynomial identity whose coefficients
//! are linear in the graph's coefficient matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::derivations::DerivationAlgebra;
use crate::exec::Execution;
use crate::lie::MetricLieAlgebra;
use crate::linalg::{Feasibility, LinearSystem, RMatrix};
use crate::rational::Rational;

/// Result of solving the geodesic equation at one vector `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoSample {
    pub t: Vec<Rational>,
    pub feasible: bool,
    /// Coefficients of `A(T)` in the basis of `h`.
    pub a_coeffs: Option<Vec<Rational>>,
    pub k: Option<Rational>,
    /// Combination of the per-`T'` equations proving infeasibility.
    pub witness: Option<Vec<Rational>>,
}

/// Linear geodesic graph: `A(e_i) = Σ_a alpha[a][i] B_a` over the basis of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearGraph {
    pub alpha: RMatrix,
}

impl LinearGraph {
    pub fn zero(h: &DerivationAlgebra) -> Self {
        LinearGraph { alpha: RMatrix::zeros(h.dim(), h.ambient_dim()) }
    }

    /// Builds the graph from the operators `A(e_i)`, failing with the index of
    /// the first operator that is not in `h`.
    pub fn from_operators(h: &DerivationAlgebra, ops: &[RMatrix]) -> Result<Self, usize> {
        let mut alpha = RMatrix::zeros(h.dim(), ops.len());
        for (i, op) in ops.iter().enumerate() {
            let c = h.coordinates(op).ok_or(i)?;
            for (a, v) in c.into_iter().enumerate() {
                alpha[(a, i)] = v;
            }
        }
        Ok(LinearGraph { alpha })
    }

    /// `A(e_i)`.
    pub fn operator(&self, h: &DerivationAlgebra, i: usize) -> RMatrix {
        h.combine(&self.alpha.column(i))
    }

    /// `A(T)`.
    pub fn at(&self, h: &DerivationAlgebra, t: &[Rational]) -> RMatrix {
        h.combine(&self.alpha.mul_vec(t))
    }
}

/// Summary of a seeded GO sampling run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoSampleSummary {
    pub tested: usize,
    pub feasible: usize,
    pub seed: u64,
    /// Lowest-index infeasible sample, if any.
    pub first_failure: Option<GoSample>,
}

impl GoSampleSummary {
    pub fn all_feasible(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// How the GO property was established or refuted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum GoVerdict {
    /// An exact linear geodesic graph was verified as a polynomial identity.
    CertifiedByGraph,
    /// Every sampled vector admitted a solution; evidence, not proof.
    Sampled { count: usize, seed: u64 },
    /// Some vector admits no `(A, k)`.
    Disproved { t: Vec<Rational> },
}

impl GoVerdict {
    pub fn from_samples(summary: &GoSampleSummary) -> Self {
        match &summary.first_failure {
            Some(s) => GoVerdict::Disproved { t: s.t.clone() },
            None => GoVerdict::Sampled { count: summary.tested, seed: summary.seed },
        }
    }

    pub fn is_disproved(&self) -> bool {
        matches!(self, GoVerdict::Disproved { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NatRedVerdict {
    NaturallyReductive(LinearGraph),
    /// Witness over the rows of the combined graph + equivariance system.
    NotNaturallyReductive { witness: Vec<Rational>, equations: usize },
    NotApplicable(String),
}

impl NatRedVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            NatRedVerdict::NaturallyReductive(_) => "naturally-reductive",
            NatRedVerdict::NotNaturallyReductive { .. } => "not-naturally-reductive",
            NatRedVerdict::NotApplicable(_) => "not-applicable",
        }
    }
}

/// `gb[a] = G·B_a`, so `⟨B_a e_l, e_j⟩ = gb[a][(j, l)]`.
fn gram_times_basis(m: &MetricLieAlgebra, h: &DerivationAlgebra) -> Vec<RMatrix> {
    h.basis().iter().map(|b| m.gram().matmul(b)).collect()
}

/// Solves for `(A, k)` at a single `T`. Unknowns: the `h`-coordinates of `A`
/// followed by `k`; one equation per basis vector `T' = e_l`:
/// `⟨A e_l, T⟩ − k⟨T, e_l⟩ = −⟨[T, e_l], T⟩`.
pub fn go_pointwise(m: &MetricLieAlgebra, h: &DerivationAlgebra, t: &[Rational]) -> GoSample {
    let gb = gram_times_basis(m, h);
    go_pointwise_with(m, h, &gb, t)
}

fn pointwise_system(
    m: &MetricLieAlgebra,
    h: &DerivationAlgebra,
    gb: &[RMatrix],
    t: &[Rational],
) -> LinearSystem {
    let n = m.dim();
    assert_eq!(t.len(), n, "dimension mismatch in go_pointwise");
    let dh = h.dim();
    let gt = m.gram().mul_vec(t);
    let ad_t = m.algebra().ad_matrix(t);
    let mut sys = LinearSystem::new(dh + 1);
    for l in 0..n {
        let mut row = Vec::with_capacity(dh + 1);
        for (a, g) in gb.iter().enumerate() {
            // ⟨B_a e_l, T⟩ = Σ_j t_j (G B_a)[j][l]
            let v: Rational = t
                .iter()
                .enumerate()
                .filter(|(_, tj)| !tj.is_zero())
                .map(|(j, tj)| tj * &g[(j, l)])
                .sum();
            row.push((a, v));
        }
        row.push((dh, -&gt[l]));
        let rhs = -m.inner(&ad_t.column(l), t);
        sys.push(row, rhs);
    }
    sys
}

/// The system solved by [`go_pointwise`], for checking its certificates.
pub fn go_pointwise_system(m: &MetricLieAlgebra, h: &DerivationAlgebra, t: &[Rational]) -> LinearSystem {
    pointwise_system(m, h, &gram_times_basis(m, h), t)
}

fn go_pointwise_with(
    m: &MetricLieAlgebra,
    h: &DerivationAlgebra,
    gb: &[RMatrix],
    t: &[Rational],
) -> GoSample {
    let dh = h.dim();
    let sys = pointwise_system(m, h, gb, t);
    match sys.solve() {
        Feasibility::Feasible { solution, .. } => GoSample {
            t: t.to_vec(),
            feasible: true,
            a_coeffs: Some(solution[..dh].to_vec()),
            k: Some(solution[dh].clone()),
            witness: None,
        },
        Feasibility::Infeasible { witness } => GoSample {
            t: t.to_vec(),
            feasible: false,
            a_coeffs: None,
            k: None,
            witness: Some(witness),
        },
    }
}

/// Checks a feasible sample's `(A, k)` against the geodesic equation for every
/// basis `T'`.
pub fn check_sample(m: &MetricLieAlgebra, h: &DerivationAlgebra, s: &GoSample) -> bool {
    let (Some(a), Some(k)) = (&s.a_coeffs, &s.k) else {
        return false;
    };
    let op = h.combine(a);
    let n = m.dim();
    (0..n).all(|l| {
        let el = crate::linalg::unit(n, l);
        let mut v = m.bracket(&s.t, &el);
        for (x, y) in v.iter_mut().zip(op.column(l)) {
            *x += y;
        }
        m.inner(&v, &s.t) == k * &m.inner(&s.t, &el)
    })
}

const SAMPLE_VALUES: [(i64, i64); 23] = [
    (-9, 1), (-8, 1), (-7, 1), (-6, 1), (-5, 1), (-4, 1), (-3, 1), (-2, 1), (-1, 1), (0, 1),
    (1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (9, 1),
    (1, 2), (-1, 2), (1, 3), (-1, 3),
];

/// The `index`-th sample vector for `seed`: entries drawn uniformly from
/// `{−9, …, 9} ∪ {±1/2, ±1/3}`, redrawn while the vector is zero. Each index
/// uses its own ChaCha stream, so samples do not depend on evaluation order.
pub fn sample_vector(dim: usize, seed: u64, index: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let v: Vec<Rational> = (0..dim)
            .map(|_| {
                let (n, d) = SAMPLE_VALUES[rng.gen_range(0..SAMPLE_VALUES.len())];
                Rational::new(n, d)
            })
            .collect();
        if dim == 0 || v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Runs [`go_pointwise`] on `count` seeded random vectors.
pub fn go_sample_report(
    m: &MetricLieAlgebra,
    h: &DerivationAlgebra,
    count: usize,
    seed: u64,
    exec: Execution,
) -> GoSampleSummary {
    let gb = gram_times_basis(m, h);
    let samples = exec.map(count, |i| {
        let t = sample_vector(m.dim(), seed, i as u64);
        go_pointwise_with(m, h, &gb, &t)
    });
    let feasible = samples.iter().filter(|s| s.feasible).count();
    let first_failure = samples.into_iter().find(|s| !s.feasible);
    GoSampleSummary { tested: count, feasible, seed, first_failure }
}

/// Coefficients `c[i][j][l]` of `F(T, T') = ⟨[T,T'],T⟩ + ⟨A(T)T',T⟩ =
/// Σ c[i][j][l] t_i t_j t'_l`, where `i` indexes the first `T` (inside the
/// bracket or the graph) and `j` the second.
fn graph_polynomial(m: &MetricLieAlgebra, ops: &[RMatrix]) -> Vec<Rational> {
    let n = m.dim();
    let mut c = vec![Rational::zero(); n * n * n];
    for i in 0..n {
        // G·(ad e_i + A(e_i)): entry (j, l) = ⟨[e_i, e_l] + A(e_i) e_l, e_j⟩
        let op = m.algebra().ad_basis(i) + &ops[i];
        let g = m.gram().matmul(&op);
        for j in 0..n {
            for l in 0..n {
                c[(i * n + j) * n + l] = g[(j, l)].clone();
            }
        }
    }
    c
}

/// Whether a linear graph (with `k ≡ 0`) satisfies the geodesic equation
/// identically in `T` and `T'`: `c[i][j][l] + c[j][i][l] = 0` for all `i ≤ j`, `l`.
pub fn verify_geodesic_graph(m: &MetricLieAlgebra, h: &DerivationAlgebra, graph: &LinearGraph) -> bool {
    let n = m.dim();
    if graph.alpha.rows() != h.dim() || graph.alpha.cols() != n {
        return false;
    }
    let ops: Vec<RMatrix> = (0..n).map(|i| graph.operator(h, i)).collect();
    let c = graph_polynomial(m, &ops);
    (0..n).all(|i| {
        (i..n).all(|j| (0..n).all(|l| (&c[(i * n + j) * n + l] + &c[(j * n + i) * n + l]).is_zero()))
    })
}

/// `A(B·e_i) = [B, A(e_i)]` for every basis `B` of `h` and every `e_i`,
/// compared in `h`-coordinates.
pub fn check_equivariance(h: &DerivationAlgebra, graph: &LinearGraph) -> bool {
    let n = h.ambient_dim();
    let dh = h.dim();
    if graph.alpha.rows() != dh || graph.alpha.cols() != n {
        return false;
    }
    let sc = h.structure();
    (0..dh).all(|b| {
        let op = h.operator(b);
        (0..n).all(|i| {
            let lhs = graph.alpha.mul_vec(&op.column(i));
            let rhs: Vec<Rational> = (0..dh)
                .map(|c| (0..dh).map(|a| &graph.alpha[(a, i)] * sc.get(b, a, c)).sum())
                .collect();
            lhs == rhs
        })
    })
}

/// Rows forcing `F(T, T')` to vanish identically, in unknowns `alpha[a][i]`
/// (index `a * n + i`).
fn graph_identity_rows(m: &MetricLieAlgebra, h: &DerivationAlgebra, sys: &mut LinearSystem) {
    let n = m.dim();
    let gb = gram_times_basis(m, h);
    let var = |a: usize, i: usize| a * n + i;
    let bracket_term =
        |i: usize, l: usize, j: usize| m.inner(&m.algebra().bracket_basis(i, l), &m.unit(j));
    for i in 0..n {
        for j in i..n {
            for l in 0..n {
                let mut row = Vec::new();
                for (a, g) in gb.iter().enumerate() {
                    // ⟨B_a e_l, e_j⟩ α[a][i] + ⟨B_a e_l, e_i⟩ α[a][j]
                    row.push((var(a, i), g[(j, l)].clone()));
                    row.push((var(a, j), g[(i, l)].clone()));
                }
                let rhs = -(bracket_term(i, l, j) + bracket_term(j, l, i));
                sys.push(row, rhs);
            }
        }
    }
}

/// Rows for `A(B_b e_i) − [B_b, A(e_i)] = 0` in `h`-coordinates.
fn equivariance_rows(h: &DerivationAlgebra, sys: &mut LinearSystem) {
    let n = h.ambient_dim();
    let dh = h.dim();
    let sc = h.structure();
    let var = |a: usize, i: usize| a * n + i;
    for b in 0..dh {
        let op = h.operator(b);
        for i in 0..n {
            for c in 0..dh {
                let mut row = Vec::new();
                for j in 0..n {
                    if !op[(j, i)].is_zero() {
                        row.push((var(c, j), op[(j, i)].clone()));
                    }
                }
                for a in 0..dh {
                    let s = sc.get(b, a, c);
                    if !s.is_zero() {
                        row.push((var(a, i), -s));
                    }
                }
                sys.push(row, Rational::zero());
            }
        }
    }
}

fn graph_from_solution(h: &DerivationAlgebra, n: usize, x: &[Rational]) -> LinearGraph {
    LinearGraph { alpha: RMatrix::from_flat(h.dim(), n, x.to_vec()) }
}

/// Searches for any linear geodesic graph with `k ≡ 0` (no equivariance).
pub fn find_linear_graph(m: &MetricLieAlgebra, h: &DerivationAlgebra) -> Option<LinearGraph> {
    let n = m.dim();
    let mut sys = LinearSystem::new(h.dim() * n);
    graph_identity_rows(m, h, &mut sys);
    match sys.solve() {
        Feasibility::Feasible { solution, .. } => Some(graph_from_solution(h, n, &solution)),
        Feasibility::Infeasible { .. } => None,
    }
}

/// Natural reductivity relative to `G = N ⋊ H`: existence of a linear,
/// `h`-equivariant geodesic graph, decided as one linear system. Only
/// meaningful when the space is GO, so a disproved GO verdict short-circuits.
pub fn natural_reductivity(m: &MetricLieAlgebra, h: &DerivationAlgebra, go: &GoVerdict) -> NatRedVerdict {
    if let GoVerdict::Disproved { .. } = go {
        return NatRedVerdict::NotApplicable("geodesic orbit property is disproved".to_string());
    }
    let n = m.dim();
    let mut sys = LinearSystem::new(h.dim() * n);
    graph_identity_rows(m, h, &mut sys);
    equivariance_rows(h, &mut sys);
    match sys.solve() {
        Feasibility::Feasible { solution, .. } => {
            let graph = graph_from_solution(h, n, &solution);
            debug_assert!(verify_geodesic_graph(m, h, &graph) && check_equivariance(h, &graph));
            NatRedVerdict::NaturallyReductive(graph)
        }
        Feasibility::Infeasible { witness } => {
            let equations = witness.len();
            NatRedVerdict::NotNaturallyReductive { witness, equations }
        }
    }
}

/// The combined system used by [`natural_reductivity`], for independent
/// checking of its certificates.
pub fn natural_reductivity_system(m: &MetricLieAlgebra, h: &DerivationAlgebra) -> LinearSystem {
    let mut sys = LinearSystem::new(h.dim() * m.dim());
    graph_identity_rows(m, h, &mut sys);
    equivariance_rows(h, &mut sys);
    sys
}

/// Whether `ad(x)` is skew for every `x`, i.e. `⟨[T', T], T⟩ ≡ 0` with `G = N`.
pub fn biinvariance_check(m: &MetricLieAlgebra) -> bool {
    let n = m.dim();
    (0..n).all(|i| crate::derivations::is_skew(m.gram(), m.algebra().ad_basis(i)))
        && n == m.algebra().dim()
}
