use super::echelon::{nullspace, rref_compact};
use super::matrix::RMatrix;
use super::LinalgError;
use crate::rational::Rational;

/// A linear subspace of `Q^n`, stored by its reduced row echelon basis.
///
/// The RREF basis is unique, so two `Subspace` values are equal exactly when
/// they describe the same subspace.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: RMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Self::from_rows(&RMatrix::from_row_slices(ambient, vectors))
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &RMatrix) -> Self {
        let r = rref_compact(m);
        Subspace { ambient: m.cols(), basis: r.matrix, pivots: r.pivots }
    }

    pub fn line(v: &[Rational]) -> Self {
        Self::span(v.len(), &[v.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `x` in the canonical basis, or `None` if `x ∉ self`.
    ///
    /// With an RREF basis the candidate coordinates are just the pivot entries.
    pub fn coordinates(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(x.len(), self.ambient, "ambient dimension mismatch");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| x[p].clone()).collect();
        let mut rebuilt = vec![Rational::zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    rebuilt[j] += c * b;
                }
            }
        }
        (rebuilt.as_slice() == x).then_some(coords)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Rational::zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] += c * b;
                }
            }
        }
        out
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)))
    }

    /// `{x : b·x = 0 for every b in self}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        nullspace(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        // x = Σ a_i u_i lies in `other` iff every annihilator row kills it.
        let ann = other.annihilator();
        let coeff = ann.basis.matmul(&self.basis.transpose());
        let kernel = nullspace(&coeff);
        let vectors: Vec<Vec<Rational>> =
            kernel.basis_vectors().iter().map(|a| self.combine(a)).collect();
        Ok(Subspace::span(self.ambient, &vectors))
    }

    /// A direct complement of `self` inside `within`, obtained by greedily
    /// extending the basis of `self` with canonical basis vectors of `within`.
    pub fn complement_in(&self, within: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(within)?;
        if !self.is_subspace_of(within) {
            return Err(LinalgError::NotContained);
        }
        let mut current = self.clone();
        let mut added = Vec::new();
        for v in within.basis_vectors() {
            if current.dim() == within.dim() {
                break;
            }
            if !current.contains(&v) {
                current = current.sum(&Subspace::line(&v))?;
                added.push(v);
            }
        }
        Ok(Subspace::span(self.ambient, &added))
    }

    /// A linear map (rows = coordinate functionals on the ambient space)
    /// whose restriction to `within` is onto `Q^(dim within − dim self)` with
    /// kernel exactly `self`.
    pub fn quotient_coordinates(&self, within: &Subspace) -> Result<RMatrix, LinalgError> {
        let complement = self.complement_in(within)?;
        let outside = within.complement_in(&Subspace::full(self.ambient))?;
        let mut cols = self.basis_vectors();
        cols.extend(complement.basis_vectors());
        cols.extend(outside.basis_vectors());
        let change = RMatrix::from_columns(self.ambient, &cols);
        let inv = change.inverse().expect("adapted basis is invertible");
        Ok(inv.block(self.dim(), 0, complement.dim(), self.ambient))
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &RMatrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        let vecs: Vec<Vec<Rational>> =
            self.basis_vectors().iter().map(|v| map.mul_vec(v)).collect();
        Subspace::span(map.rows(), &vecs)
    }

    /// Whether `map` sends the subspace into itself.
    pub fn is_invariant_under(&self, map: &RMatrix) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&map.mul_vec(v)))
    }

    /// Whether `self ⊕ other` is the whole ambient space.
    pub fn is_complementary(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() + other.dim() == self.ambient
            && self.sum(other).map(|s| s.is_full()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn sum_and_intersect() {
        let x = Subspace::line(&v(&[1, 0, 0]));
        let y = Subspace::line(&v(&[0, 1, 0]));
        let xy = x.sum(&y).unwrap();
        assert_eq!(xy, Subspace::span(3, &[v(&[1, 1, 0]), v(&[1, -1, 0])]));
        assert_eq!(xy.intersect(&xy).unwrap(), xy);
        assert!(x.intersect(&y).unwrap().is_zero());
        let diag = Subspace::span(3, &[v(&[1, 1, 1]), v(&[0, 0, 1])]);
        assert_eq!(xy.intersect(&diag).unwrap(), Subspace::line(&v(&[1, 1, 0])));
    }

    #[test]
    fn complement_is_direct() {
        let u = Subspace::line(&v(&[1, 1]));
        let w = Subspace::full(2);
        let c = u.complement_in(&w).unwrap();
        assert_eq!(c.dim(), 1);
        assert_ne!(c, u);
        assert!(u.is_complementary(&c));
        assert!(matches!(w.complement_in(&u), Err(LinalgError::NotContained)));
    }

    #[test]
    fn quotient_kernel_is_u() {
        let w = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]);
        let u = Subspace::line(&v(&[1, 1, 1, 0]));
        let q = u.quotient_coordinates(&w).unwrap();
        assert_eq!(q.rows(), 2);
        let restricted: Vec<Vec<Rational>> =
            w.basis_vectors().iter().map(|b| q.mul_vec(b)).collect();
        // kernel of q restricted to w is exactly u
        let coeff = RMatrix::from_columns(2, &restricted);
        let ker = nullspace(&coeff);
        assert_eq!(ker.dim(), 1);
        let kv = w.combine(&ker.basis_vectors()[0]);
        assert!(u.contains(&kv));
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = Subspace::span(3, &[v(&[2, 4, 6]), v(&[0, 1, 1])]);
        let x = v(&[1, 5, 6]);
        let c = s.coordinates(&x).unwrap();
        assert_eq!(s.combine(&c), x);
        assert!(s.coordinates(&v(&[0, 0, 1])).is_none());
    }
}
