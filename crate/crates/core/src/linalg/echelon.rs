//! Gaussian elimination over the rationals.
//!
//! Rows are inserted one at a time into an echelon basis kept in sparse form
//! (entries only at or right of each pivot, pivot normalized to 1). When an
//! affine right-hand side is present, each basis row also remembers which
//! original equations it is a combination of, so an inconsistent row yields
//! a certificate `y` with `yᵀM = 0` and `yᵀb ≠ 0`.

use std::collections::BTreeMap;

use super::matrix::RMatrix;
use super::subspace::Subspace;
use super::LinalgError;
use crate::rational::Rational;

/// Sparse row: `(column, value)` pairs in increasing column order, no zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Row-reduced echelon form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Outcome of solving `Mx = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// `solution` satisfies `Mx = b`; the full solution set is `solution + kernel`.
    Feasible { solution: Vec<Rational>, kernel: Subspace },
    /// `witness` has one entry per equation, `witnessᵀM = 0` and `witnessᵀb ≠ 0`.
    Infeasible { witness: Vec<Rational> },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// A linear system `Mx = b` assembled row by row in sparse form.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    cols: usize,
    rows: Vec<SparseRow>,
    rhs: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(cols: usize) -> Self {
        LinearSystem { cols, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn from_dense(m: &RMatrix, b: &[Rational]) -> Self {
        let mut sys = LinearSystem::new(m.cols());
        for (i, bi) in b.iter().enumerate().take(m.rows()) {
            sys.push_dense(m.row(i), bi.clone());
        }
        sys
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds an equation. Duplicate columns are summed; zeros are dropped.
    pub fn push(&mut self, row: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in row {
            assert!(c < self.cols, "column {c} out of range ({} unknowns)", self.cols);
            if !v.is_zero() {
                *acc.entry(c).or_default() += v;
            }
        }
        self.rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.rhs.push(rhs);
    }

    pub fn push_dense(&mut self, row: &[Rational], rhs: Rational) {
        assert_eq!(row.len(), self.cols);
        let sparse: SparseRow =
            row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect();
        self.rows.push(sparse);
        self.rhs.push(rhs);
    }

    pub fn extend(&mut self, other: LinearSystem) {
        assert_eq!(self.cols, other.cols);
        self.rows.extend(other.rows);
        self.rhs.extend(other.rhs);
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// Dense coefficient matrix.
    pub fn matrix(&self) -> RMatrix {
        let mut m = RMatrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m[(i, *c)] = v.clone();
            }
        }
        m
    }

    /// Evaluates `Mx` row by row.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|row| row.iter().map(|(c, v)| v * &x[*c]).sum()).collect()
    }

    /// Checks a feasibility certificate against this system exactly.
    pub fn check(&self, verdict: &Feasibility) -> bool {
        match verdict {
            Feasibility::Feasible { solution, kernel } => {
                solution.len() == self.cols
                    && self.apply(solution) == self.rhs
                    && kernel
                        .basis_vectors()
                        .iter()
                        .all(|k| self.apply(k).iter().all(Rational::is_zero))
            }
            Feasibility::Infeasible { witness } => {
                if witness.len() != self.rows.len() {
                    return false;
                }
                let mut combo = vec![Rational::zero(); self.cols];
                let mut rhs = Rational::zero();
                for ((row, b), y) in self.rows.iter().zip(&self.rhs).zip(witness) {
                    if y.is_zero() {
                        continue;
                    }
                    for (c, v) in row {
                        combo[*c] += y * v;
                    }
                    rhs += y * b;
                }
                combo.iter().all(Rational::is_zero) && !rhs.is_zero()
            }
        }
    }

    /// Kernel of the coefficient matrix (the right-hand side is ignored).
    pub fn nullspace(&self) -> Subspace {
        let mut ech = Echelon::new(self.cols, false);
        for row in &self.rows {
            ech.insert(row, &Rational::zero(), None);
        }
        ech.kernel()
    }

    pub fn solve(&self) -> Feasibility {
        let mut ech = Echelon::new(self.cols, true);
        for (i, (row, b)) in self.rows.iter().zip(&self.rhs).enumerate() {
            if let Some(combo) = ech.insert(row, b, Some(i)) {
                let mut witness = vec![Rational::zero(); self.rows.len()];
                for (k, v) in combo {
                    witness[k] = v;
                }
                return Feasibility::Infeasible { witness };
            }
        }
        let (solution, _) = ech.particular_solution();
        Feasibility::Feasible { solution, kernel: ech.kernel() }
    }

    /// Rank of the coefficient matrix.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, false);
        for row in &self.rows {
            ech.insert(row, &Rational::zero(), None);
        }
        ech.rows.len()
    }
}

struct PivotRow {
    col: usize,
    entries: SparseRow,
    rhs: Rational,
    combo: BTreeMap<usize, Rational>,
}

struct Echelon {
    cols: usize,
    track: bool,
    by_col: Vec<Option<usize>>,
    rows: Vec<PivotRow>,
    reduced: bool,
}

impl Echelon {
    fn new(cols: usize, track: bool) -> Self {
        Echelon { cols, track, by_col: vec![None; cols], rows: Vec::new(), reduced: false }
    }

    /// Reduces `row` against the basis and stores it if independent.
    /// Returns the provenance combination when the row reduces to `0 = c ≠ 0`.
    fn insert(
        &mut self,
        row: &SparseRow,
        rhs: &Rational,
        origin: Option<usize>,
    ) -> Option<BTreeMap<usize, Rational>> {
        if row.is_empty() && rhs.is_zero() {
            return None;
        }
        let mut work = vec![Rational::zero(); self.cols];
        for (c, v) in row {
            work[*c] = v.clone();
        }
        let mut b = rhs.clone();
        let mut combo = BTreeMap::new();
        if self.track {
            if let Some(i) = origin {
                combo.insert(i, Rational::one());
            }
        }
        let mut lead = None;
        for c in 0..self.cols {
            if work[c].is_zero() {
                continue;
            }
            match self.by_col[c] {
                Some(p) => {
                    let f = std::mem::take(&mut work[c]);
                    let prow = &self.rows[p];
                    for (j, v) in prow.entries.iter().skip(1) {
                        work[*j] -= &f * v;
                    }
                    if !prow.rhs.is_zero() {
                        b -= &f * &prow.rhs;
                    }
                    if self.track {
                        for (k, v) in &prow.combo {
                            let e = combo.entry(*k).or_insert_with(Rational::zero);
                            *e -= &f * v;
                        }
                        combo.retain(|_, v: &mut Rational| !v.is_zero());
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        let Some(lead) = lead else {
            return if b.is_zero() { None } else { Some(combo) };
        };
        let inv = work[lead].recip();
        let entries: SparseRow = (lead..self.cols)
            .filter(|&j| !work[j].is_zero())
            .map(|j| (j, &work[j] * &inv))
            .collect();
        let combo = if self.track {
            combo.into_iter().map(|(k, v)| (k, v * &inv)).collect()
        } else {
            BTreeMap::new()
        };
        self.by_col[lead] = Some(self.rows.len());
        self.rows.push(PivotRow { col: lead, entries, rhs: b * &inv, combo });
        self.reduced = false;
        None
    }

    /// Back-substitution to reduced row echelon form.
    fn reduce_fully(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].col));
        for &i in &order {
            let has_upper = self.rows[i]
                .entries
                .iter()
                .skip(1)
                .any(|(j, _)| self.by_col[*j].is_some());
            if !has_upper {
                continue;
            }
            let mut work = vec![Rational::zero(); self.cols];
            for (j, v) in &self.rows[i].entries {
                work[*j] = v.clone();
            }
            let mut b = self.rows[i].rhs.clone();
            let pivot_col = self.rows[i].col;
            for c in pivot_col + 1..self.cols {
                if work[c].is_zero() {
                    continue;
                }
                if let Some(p) = self.by_col[c] {
                    let f = std::mem::take(&mut work[c]);
                    let prow = &self.rows[p];
                    for (j, v) in prow.entries.iter().skip(1) {
                        work[*j] -= &f * v;
                    }
                    b -= &f * &prow.rhs;
                }
            }
            let mut entries: SparseRow = Vec::new();
            for (j, w) in work.iter_mut().enumerate().skip(pivot_col) {
                if !w.is_zero() {
                    entries.push((j, std::mem::take(w)));
                }
            }
            self.rows[i].entries = entries;
            self.rows[i].rhs = b;
        }
        self.reduced = true;
    }

    fn sorted_rows(&self) -> Vec<&PivotRow> {
        let mut rows: Vec<&PivotRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| r.col);
        rows
    }

    fn particular_solution(&mut self) -> (Vec<Rational>, Vec<usize>) {
        self.reduce_fully();
        let mut x = vec![Rational::zero(); self.cols];
        let mut pivots = Vec::with_capacity(self.rows.len());
        for r in self.sorted_rows() {
            x[r.col] = r.rhs.clone();
            pivots.push(r.col);
        }
        (x, pivots)
    }

    fn kernel(&mut self) -> Subspace {
        self.reduce_fully();
        let n = self.cols;
        let rows = self.sorted_rows();
        let mut basis = Vec::new();
        for fc in (0..n).filter(|&c| self.by_col[c].is_none()) {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for r in &rows {
                if let Ok(pos) = r.entries.binary_search_by_key(&fc, |(j, _)| *j) {
                    v[r.col] = -&r.entries[pos].1;
                }
            }
            basis.push(v);
        }
        Subspace::span(n, &basis)
    }

    fn rref_matrix(&mut self) -> Rref {
        self.reduce_fully();
        let rows = self.sorted_rows();
        let mut m = RMatrix::zeros(rows.len(), self.cols);
        let mut pivots = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            pivots.push(r.col);
            for (j, v) in &r.entries {
                m[(i, *j)] = v.clone();
            }
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }
}

/// Reduced row echelon form, padded with zero rows to the input's shape.
pub fn rref(m: &RMatrix) -> Rref {
    let reduced = rref_compact(m);
    let mut full = RMatrix::zeros(m.rows(), m.cols());
    full.set_block(0, 0, &reduced.matrix);
    Rref { matrix: full, rank: reduced.rank, pivots: reduced.pivots }
}

/// Reduced row echelon form with zero rows dropped.
pub(crate) fn rref_compact(m: &RMatrix) -> Rref {
    let mut ech = Echelon::new(m.cols(), false);
    for i in 0..m.rows() {
        let row: SparseRow = m
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        ech.insert(&row, &Rational::zero(), None);
    }
    ech.rref_matrix()
}

/// `{x : Mx = 0}`.
pub fn nullspace(m: &RMatrix) -> Subspace {
    LinearSystem::from_dense(m, &vec![Rational::zero(); m.rows()]).nullspace()
}

pub fn rank(m: &RMatrix) -> usize {
    rref_compact(m).rank
}

/// Solves `Mx = b` exactly, returning a solution or an infeasibility witness.
pub fn solve_affine(m: &RMatrix, b: &[Rational]) -> Result<Feasibility, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    Ok(LinearSystem::from_dense(m, b).solve())
}
