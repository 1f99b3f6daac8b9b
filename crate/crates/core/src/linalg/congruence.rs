use serde::{Deserialize, Serialize};

use super::matrix::RMatrix;
use super::LinalgError;
use crate::rational::Rational;

/// Inertia of a symmetric bilinear form: counts of negative, positive and
/// zero squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub minus: usize,
    pub plus: usize,
    pub zero: usize,
}

impl Signature {
    pub const fn new(minus: usize, plus: usize, zero: usize) -> Self {
        Signature { minus, plus, zero }
    }

    pub fn dim(&self) -> usize {
        self.minus + self.plus + self.zero
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    /// Exactly one negative square, no zero squares (mostly-plus convention).
    pub fn is_lorentz(&self) -> bool {
        self.minus == 1 && self.zero == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.minus == 0 && self.zero == 0
    }

    pub fn is_riemannian(&self) -> bool {
        self.is_positive_definite()
    }

    /// Signature of an orthogonal direct sum.
    pub fn add(&self, other: &Signature) -> Signature {
        Signature {
            minus: self.minus + other.minus,
            plus: self.plus + other.plus,
            zero: self.zero + other.zero,
        }
    }
}

/// `transformᵀ · G · transform = diag(diagonal)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub transform: RMatrix,
    pub diagonal: Vec<Rational>,
    pub signature: Signature,
}

/// Diagonalizes a symmetric matrix by simultaneous row and column operations.
///
/// Pivot choice at step `k`: the first nonzero diagonal entry at or after `k`
/// (swapped into place); failing that, the first nonzero off-diagonal entry
/// `G[k][j]`, made into a diagonal pivot by adding row/column `j` to row/column `k`.
pub fn congruence_diagonalize(g: &RMatrix) -> Result<Congruence, LinalgError> {
    if !g.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = g.rows();
    let mut a = g.clone();
    let mut c = RMatrix::identity(n);

    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_symmetric(&mut a, &mut c, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                add_symmetric(&mut a, &mut c, k, j, &Rational::one());
            } else {
                continue;
            }
        }
        let pivot = a[(k, k)].clone();
        for j in k + 1..n {
            if a[(j, k)].is_zero() {
                continue;
            }
            let f = -(&a[(j, k)] / &pivot);
            add_symmetric(&mut a, &mut c, j, k, &f);
        }
    }

    let diagonal: Vec<Rational> = (0..n).map(|i| a[(i, i)].clone()).collect();
    debug_assert!((0..n).all(|i| (0..n).all(|j| i == j || a[(i, j)].is_zero())));
    let mut sig = Signature::new(0, 0, 0);
    for d in &diagonal {
        match d.signum() {
            -1 => sig.minus += 1,
            1 => sig.plus += 1,
            _ => sig.zero += 1,
        }
    }
    Ok(Congruence { transform: c, diagonal, signature: sig })
}

pub fn signature(g: &RMatrix) -> Result<Signature, LinalgError> {
    congruence_diagonalize(g).map(|c| c.signature)
}

fn swap_symmetric(a: &mut RMatrix, c: &mut RMatrix, i: usize, j: usize) {
    let n = a.rows();
    for t in 0..n {
        let tmp = a[(i, t)].clone();
        a[(i, t)] = a[(j, t)].clone();
        a[(j, t)] = tmp;
    }
    for t in 0..n {
        let tmp = a[(t, i)].clone();
        a[(t, i)] = a[(t, j)].clone();
        a[(t, j)] = tmp;
        let tmp = c[(t, i)].clone();
        c[(t, i)] = c[(t, j)].clone();
        c[(t, j)] = tmp;
    }
}

/// Row `target` += f · row `source`, then the same on columns; the transform
/// column `target` picks up f · column `source`.
fn add_symmetric(a: &mut RMatrix, c: &mut RMatrix, target: usize, source: usize, f: &Rational) {
    let n = a.rows();
    for t in 0..n {
        let v = f * &a[(source, t)];
        a[(target, t)] += v;
    }
    for t in 0..n {
        let v = f * &a[(t, source)];
        a[(t, target)] += v;
        let w = f * &c[(t, source)];
        c[(t, target)] += w;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn check(g: &RMatrix) -> Congruence {
        let cg = congruence_diagonalize(g).unwrap();
        let d = cg.transform.transpose().matmul(g).matmul(&cg.transform);
        assert_eq!(d, RMatrix::diagonal(&cg.diagonal));
        assert!(cg.transform.inverse().is_some());
        cg
    }

    #[test]
    fn euclidean() {
        assert_eq!(check(&RMatrix::identity(3)).signature, Signature::new(0, 3, 0));
    }

    #[test]
    fn lorentz_normal_form() {
        let g = RMatrix::diagonal(&[qi(-1), qi(1), qi(1), qi(1)]);
        let s = check(&g).signature;
        assert_eq!(s, Signature::new(1, 3, 0));
        assert!(s.is_lorentz());
    }

    #[test]
    fn hyperbolic_plane() {
        let g = RMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(check(&g).signature, Signature::new(1, 1, 0));
    }

    #[test]
    fn degenerate_and_mixed() {
        let g = RMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 2], &[0, 2, 1]]);
        assert_eq!(check(&g).signature, Signature::new(1, 1, 1));
        let g = RMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 5], &[3, 5, 6]]);
        let s = check(&g).signature;
        assert_eq!(s.dim(), 3);
        assert_eq!(s.zero, 0);
    }

    #[test]
    fn rejects_nonsymmetric() {
        let g = RMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(matches!(congruence_diagonalize(&g), Err(LinalgError::NotSymmetric)));
    }
}
