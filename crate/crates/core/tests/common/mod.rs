//! Shared test helpers: seeded generators and a naive `BigRational`
//! Gauss–Jordan oracle that shares no code with the library's solvers.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gonil::linalg::RMatrix;
use gonil::presets::{family, kaplan6, shift_matrix};
use gonil::{LieAlgebra, MetricLieAlgebra, Rational};

pub type Big = BigRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(x: &Rational) -> Big {
    x.to_big()
}

/// Reduced row echelon form by textbook Gauss–Jordan; returns the reduced
/// rows (padded with zero rows) and the rank.
pub fn gauss_jordan(mut a: Vec<Vec<Big>>, cols: usize) -> (Vec<Vec<Big>>, usize) {
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Big::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..a[i].len() {
                    let delta = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    (a, r)
}

pub fn to_big_rows(m: &RMatrix) -> Vec<Vec<Big>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(big).collect()).collect()
}

pub fn oracle_rref(m: &RMatrix) -> (RMatrix, usize) {
    let (rows, rank) = gauss_jordan(to_big_rows(m), m.cols());
    let data: Vec<Vec<Rational>> = rows.into_iter().map(|r| r.into_iter().map(Rational::from_big).collect()).collect();
    (RMatrix::from_row_slices(m.cols(), &data), rank)
}

/// `rank(M) == rank([M | b])`.
pub fn oracle_consistent(m: &[Vec<Big>], b: &[Big]) -> bool {
    let cols = m.first().map_or(0, Vec::len);
    let (_, r1) = gauss_jordan(m.to_vec(), cols);
    let aug: Vec<Vec<Big>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut row = row.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let (_, r2) = gauss_jordan(aug, cols + 1);
    r1 == r2
}

pub fn oracle_satisfies(m: &[Vec<Big>], b: &[Big], x: &[Rational]) -> bool {
    let x: Vec<Big> = x.iter().map(big).collect();
    m.iter().zip(b).all(|(row, bi)| {
        let s = row.iter().zip(&x).fold(Big::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
        s == *bi
    })
}

/// The pointwise geodesic system written out directly from structure
/// constants: unknowns `(a_1, …, a_dh, k)`, one row per `e_l`:
/// `Σ_a a_a ⟨B_a e_l, T⟩ − k ⟨T, e_l⟩ = −⟨[T, e_l], T⟩`.
pub fn oracle_go_system(m: &MetricLieAlgebra, h_basis: &[RMatrix], t: &[Rational]) -> (Vec<Vec<Big>>, Vec<Big>) {
    let n = m.dim();
    let g: Vec<Vec<Big>> = to_big_rows(m.gram());
    let t: Vec<Big> = t.iter().map(big).collect();
    // gt[p] = ⟨e_p, T⟩
    let gt: Vec<Big> = (0..n)
        .map(|p| (0..n).fold(Big::zero(), |acc, j| acc + g[p][j].clone() * t[j].clone()))
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for l in 0..n {
        let mut row = Vec::new();
        for b in h_basis {
            let v = (0..n).fold(Big::zero(), |acc, p| acc + big(&b[(p, l)]) * gt[p].clone());
            row.push(v);
        }
        row.push(-gt[l].clone());
        let mut r = Big::zero();
        for (i, ti) in t.iter().enumerate() {
            for (k, gk) in gt.iter().enumerate() {
                let c = m.algebra().constant(i, l, k);
                if !c.is_zero() {
                    r += ti.clone() * big(c) * gk.clone();
                }
            }
        }
        rows.push(row);
        rhs.push(-r);
    }
    (rows, rhs)
}

pub fn rref_shape_ok(m: &RMatrix, pivots: &[usize]) -> bool {
    let rank = pivots.len();
    if pivots.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    for (i, &p) in pivots.iter().enumerate() {
        if !m[(i, p)].is_one() || (0..p).any(|j| !m[(i, j)].is_zero()) {
            return false;
        }
        if (0..m.rows()).any(|r| r != i && !m[(r, p)].is_zero()) {
            return false;
        }
    }
    (rank..m.rows()).all(|i| m.row(i).iter().all(Rational::is_zero))
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    match rng.gen_range(0..10) {
        0..=3 => Rational::zero(),
        4 => Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
        _ => Rational::from_integer(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> RMatrix {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=7);
    let data = (0..rows * cols).map(|_| small(rng)).collect();
    RMatrix::from_flat(rows, cols, data)
}

/// A random 2-step nilpotent algebra (brackets of the first `n − c` basis
/// vectors land in the last `c`), always a Lie algebra.
pub fn random_two_step(rng: &mut ChaCha8Rng) -> LieAlgebra {
    let n = rng.gen_range(3..=6);
    let c = rng.gen_range(1..=2.min(n - 2));
    let mut entries = Vec::new();
    for i in 0..n - c {
        for j in i + 1..n - c {
            for k in n - c..n {
                if rng.gen_bool(0.5) {
                    entries.push((i, j, k, Rational::from_integer(rng.gen_range(-2..=2))));
                }
            }
        }
    }
    LieAlgebra::from_brackets(n, &entries).expect("2-step brackets satisfy Jacobi")
}

/// `CᵀDC` with `C` unit upper triangular and `D = diag(±1, 1, …)`.
pub fn random_gram(rng: &mut ChaCha8Rng, n: usize, lorentz: bool) -> RMatrix {
    let mut c = RMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            c[(i, j)] = Rational::from_integer(rng.gen_range(-1..=1));
        }
    }
    let mut d = RMatrix::identity(n);
    if lorentz {
        d[(0, 0)] = Rational::from_integer(-1);
    }
    c.transpose().matmul(&d).matmul(&c)
}

/// Mostly random 2-step metric algebras, interleaved with the presets so
/// that both feasible and infeasible instances occur.
pub fn random_metric_nilpotent(rng: &mut ChaCha8Rng) -> MetricLieAlgebra {
    match rng.gen_range(0..10) {
        0 => family(&shift_matrix(2).unwrap()),
        1 => kaplan6(),
        _ => {
            let alg = random_two_step(rng);
            let lorentz = rng.gen_bool(0.5);
            let n = alg.dim();
            MetricLieAlgebra::from_gram(alg, random_gram(rng, n, lorentz)).expect("congruent to a nondegenerate form")
        }
    }
}
