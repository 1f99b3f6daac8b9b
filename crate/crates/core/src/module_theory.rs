//! Invariant subspaces and invariant complements for a set of operators.
//!
//! Complements of an invariant `U` are sought as graphs
//! `W = {v + φ(v) : v ∈ V}` over a fixed complement `V`, with `φ: V → U`
//! linear. In the adapted basis `[U | V]` an operator reads
//! `[[B_UU, B_UV], [0, B_VV]]` and `W` is invariant iff
//! `B_UV + B_UU Φ − Φ B_VV = 0`.

use serde::{Deserialize, Serialize};

use crate::derivations::DerivationAlgebra;
use crate::exec::Execution;
use crate::lie::MetricLieAlgebra;
use crate::linalg::{Feasibility, LinalgError, LinearSystem, RMatrix, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("auxiliary subspace is not a complement")]
    NotComplement,
    #[error("operator {index} is not {dim}x{dim}")]
    Shape { index: usize, dim: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite set of operators on `Q^ambient_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpec {
    ambient_dim: usize,
    operators: Vec<RMatrix>,
}

impl ActionSpec {
    pub fn new(ambient_dim: usize, operators: Vec<RMatrix>) -> Result<Self, ModuleError> {
        for (index, op) in operators.iter().enumerate() {
            if op.rows() != ambient_dim || op.cols() != ambient_dim {
                return Err(ModuleError::Shape { index, dim: ambient_dim });
            }
        }
        Ok(ActionSpec { ambient_dim, operators })
    }

    pub fn from_derivations(h: &DerivationAlgebra) -> Self {
        ActionSpec { ambient_dim: h.ambient_dim(), operators: h.basis().to_vec() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn operators(&self) -> &[RMatrix] {
        &self.operators
    }

    /// Whether the span of the operators is closed under commutator.
    pub fn is_closed(&self) -> bool {
        let n = self.ambient_dim;
        let flat: Vec<Vec<Rational>> = self.operators.iter().map(|b| b.as_flat().to_vec()).collect();
        let span = Subspace::span(n * n, &flat);
        self.operators
            .iter()
            .enumerate()
            .all(|(i, a)| self.operators[i + 1..].iter().all(|b| span.contains(a.commutator(b).as_flat())))
    }
}

pub fn is_invariant(action: &ActionSpec, u: &Subspace) -> bool {
    action.operators.iter().all(|b| u.is_invariant_under(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplementResult {
    Complement(Subspace),
    /// Infeasibility witness for the `Φ`-system built over `aux`.
    NoInvariantComplement { aux: Subspace, witness: Vec<Rational> },
}

impl ComplementResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ComplementResult::Complement(_))
    }
}

/// Finds an invariant complement of `u` using the greedy complement of `u`
/// as the auxiliary `V`.
pub fn invariant_complement(action: &ActionSpec, u: &Subspace) -> Result<ComplementResult, ModuleError> {
    let v = u.complement_in(&Subspace::full(action.ambient_dim))?;
    invariant_complement_with(action, u, &v)
}

/// Basis-adapted operator blocks and the linear system in `Φ` (unknown
/// `Φ[r][c]` at `r * dim V + c`).
pub fn complement_system(action: &ActionSpec, u: &Subspace, v: &Subspace) -> Result<LinearSystem, ModuleError> {
    let n = action.ambient_dim;
    if !u.is_complementary(v) || u.ambient_dim() != n {
        return Err(ModuleError::NotComplement);
    }
    if !is_invariant(action, u) {
        return Err(ModuleError::NotInvariant);
    }
    let (du, dv) = (u.dim(), v.dim());
    let mut columns = u.basis_vectors();
    columns.extend(v.basis_vectors());
    let c = RMatrix::from_columns(n, &columns);
    let cinv = c.inverse().ok_or(ModuleError::NotComplement)?;
    let var = |r: usize, col: usize| r * dv + col;
    let mut sys = LinearSystem::new(du * dv);
    for b in &action.operators {
        let bp = cinv.matmul(b).matmul(&c);
        for r in 0..du {
            for col in 0..dv {
                // (B_UU Φ)[r][col] − (Φ B_VV)[r][col] = −B_UV[r][col]
                let mut row = Vec::new();
                for k in 0..du {
                    if !bp[(r, k)].is_zero() {
                        row.push((var(k, col), bp[(r, k)].clone()));
                    }
                }
                for k in 0..dv {
                    let x = &bp[(du + k, du + col)];
                    if !x.is_zero() {
                        row.push((var(r, k), -x));
                    }
                }
                sys.push(row, -&bp[(r, du + col)]);
            }
        }
    }
    Ok(sys)
}

pub fn invariant_complement_with(
    action: &ActionSpec,
    u: &Subspace,
    v: &Subspace,
) -> Result<ComplementResult, ModuleError> {
    let sys = complement_system(action, u, v)?;
    let dv = v.dim();
    match sys.solve() {
        Feasibility::Feasible { solution, .. } => {
            let ub = u.basis_vectors();
            let w: Vec<Vec<Rational>> = v
                .basis_vectors()
                .into_iter()
                .enumerate()
                .map(|(col, mut vc)| {
                    for (r, ur) in ub.iter().enumerate() {
                        let phi = &solution[r * dv + col];
                        if !phi.is_zero() {
                            for (x, y) in vc.iter_mut().zip(ur) {
                                *x += phi * y;
                            }
                        }
                    }
                    vc
                })
                .collect();
            let w = Subspace::span(action.ambient_dim, &w);
            debug_assert!(w.dim() == dv && is_invariant(action, &w) && u.is_complementary(&w));
            Ok(ComplementResult::Complement(w))
        }
        Feasibility::Infeasible { witness } => {
            Ok(ComplementResult::NoInvariantComplement { aux: v.clone(), witness })
        }
    }
}

/// A second complement of `u`, obtained by shearing `v` with the sum of the
/// basis of `u`: `v_j + Σ_r u_r`.
pub fn sheared_complement(u: &Subspace, v: &Subspace) -> Subspace {
    let shift: Vec<Rational> = (0..u.ambient_dim())
        .map(|i| (0..u.dim()).map(|r| u.basis()[(r, i)].clone()).sum())
        .collect();
    let vs: Vec<Vec<Rational>> = v
        .basis_vectors()
        .into_iter()
        .map(|vj| vj.iter().zip(&shift).map(|(a, b)| a + b).collect())
        .collect();
    Subspace::span(u.ambient_dim(), &vs)
}

/// Outcome of probing the canonical invariant subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeVerdict {
    NotCompletelyReducible {
        label: String,
        subspace: Subspace,
        witness: Vec<Rational>,
        /// Whether the sheared auxiliary complement also reports infeasibility.
        confirmed_with_second_complement: bool,
    },
    /// Inconclusive: every tested subspace had an invariant complement.
    NoObstructionFound { tested: Vec<String> },
}

impl ProbeVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ProbeVerdict::NotCompletelyReducible { .. } => "not-completely-reducible",
            ProbeVerdict::NoObstructionFound { .. } => "no-obstruction-found",
        }
    }
}

/// Candidate subspaces in probe order: the radical of `⟨,⟩|[n,n]`, its
/// orthogonal, `[n,n]`, `[n,n]^⊥`, the center, then the lower central series.
/// Zero, full and duplicate subspaces are dropped.
pub fn probe_menu(m: &MetricLieAlgebra) -> Vec<(String, Subspace)> {
    let alg = m.algebra();
    let derived = alg.derived_algebra();
    let radical = m.form().radical_in(&derived);
    let mut menu = vec![
        ("radical([n,n])".to_string(), radical.clone()),
        ("radical([n,n])^perp".to_string(), m.orthogonal_complement(&radical)),
        ("[n,n]".to_string(), derived.clone()),
        ("[n,n]^perp".to_string(), m.orthogonal_complement(&derived)),
        ("center".to_string(), alg.center()),
    ];
    for (i, s) in alg.lower_central_series().into_iter().enumerate().skip(1) {
        menu.push((format!("C{}(n)", i + 1), s));
    }
    let mut out: Vec<(String, Subspace)> = Vec::new();
    for (label, s) in menu {
        if s.is_zero() || s.is_full() || out.iter().any(|(_, t)| *t == s) {
            continue;
        }
        out.push((label, s));
    }
    out
}

/// Looks for an invariant subspace without invariant complement among
/// [`probe_menu`]. Entries that are not invariant are skipped.
pub fn complete_reducibility_probe(m: &MetricLieAlgebra, h: &DerivationAlgebra, exec: Execution) -> ProbeVerdict {
    let action = ActionSpec::from_derivations(h);
    let menu = probe_menu(m);
    let results = exec.map_slice(&menu, |(_, u)| {
        if !is_invariant(&action, u) {
            return None;
        }
        Some(invariant_complement(&action, u).expect("invariant subspace has a complement system"))
    });
    let mut tested = Vec::new();
    for ((label, u), res) in menu.iter().zip(results) {
        match res {
            None => continue,
            Some(ComplementResult::Complement(_)) => tested.push(label.clone()),
            Some(ComplementResult::NoInvariantComplement { aux, witness }) => {
                let second = sheared_complement(u, &aux);
                let confirmed = matches!(
                    invariant_complement_with(&action, u, &second),
                    Ok(ComplementResult::NoInvariantComplement { .. })
                );
                return ProbeVerdict::NotCompletelyReducible {
                    label: label.clone(),
                    subspace: u.clone(),
                    witness,
                    confirmed_with_second_complement: confirmed,
                };
            }
        }
    }
    ProbeVerdict::NoObstructionFound { tested }
}

/// Serializable summary of a probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub verdict: String,
    pub subspace: Option<String>,
    pub basis: Option<Vec<Vec<Rational>>>,
    pub confirmed_with_second_complement: Option<bool>,
    pub tested: Vec<String>,
}

impl From<&ProbeVerdict> for ProbeSummary {
    fn from(v: &ProbeVerdict) -> Self {
        match v {
            ProbeVerdict::NotCompletelyReducible { label, subspace, confirmed_with_second_complement, .. } => {
                ProbeSummary {
                    verdict: v.label().to_string(),
                    subspace: Some(label.clone()),
                    basis: Some(subspace.basis_vectors()),
                    confirmed_with_second_complement: Some(*confirmed_with_second_complement),
                    tested: Vec::new(),
                }
            }
            ProbeVerdict::NoObstructionFound { tested } => ProbeSummary {
                verdict: v.label().to_string(),
                subspace: None,
                basis: None,
                confirmed_with_second_complement: None,
                tested: tested.clone(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;
    use crate::rational::qi;

    fn rotation_plus_trivial() -> ActionSpec {
        let r = RMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        ActionSpec::new(3, vec![r]).unwrap()
    }

    #[test]
    fn trivial_subspaces_are_invariant() {
        let a = rotation_plus_trivial();
        assert!(is_invariant(&a, &Subspace::zero(3)));
        assert!(is_invariant(&a, &Subspace::full(3)));
        assert!(!is_invariant(&a, &Subspace::line(&unit(3, 0))));
    }

    #[test]
    fn zero_action_complement() {
        let a = ActionSpec::new(3, vec![RMatrix::zeros(3, 3)]).unwrap();
        let u = Subspace::line(&[qi(1), qi(1), qi(0)]);
        assert!(invariant_complement(&a, &u).unwrap().is_feasible());
    }

    #[test]
    fn rotation_plane_is_found() {
        let a = rotation_plus_trivial();
        let u = Subspace::line(&unit(3, 2));
        let ComplementResult::Complement(w) = invariant_complement(&a, &u).unwrap() else {
            panic!("rotation plane is an invariant complement");
        };
        assert_eq!(w, Subspace::span(3, &[unit(3, 0), unit(3, 1)]));
        // starting from a skewed auxiliary complement gives the same answer
        let v = Subspace::span(3, &[vec![qi(1), qi(0), qi(1)], vec![qi(0), qi(1), qi(1)]]);
        let ComplementResult::Complement(w2) = invariant_complement_with(&a, &u, &v).unwrap() else {
            panic!("feasibility does not depend on the auxiliary complement");
        };
        assert_eq!(w, w2);
    }

    #[test]
    fn jordan_block_has_no_complement() {
        let n = RMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let a = ActionSpec::new(2, vec![n]).unwrap();
        let u = Subspace::line(&unit(2, 0));
        let res = invariant_complement(&a, &u).unwrap();
        let ComplementResult::NoInvariantComplement { aux, witness } = res else {
            panic!("Jordan block is indecomposable");
        };
        let sys = complement_system(&a, &u, &aux).unwrap();
        assert!(sys.check(&Feasibility::Infeasible { witness }));
        let second = sheared_complement(&u, &aux);
        assert!(!invariant_complement_with(&a, &u, &second).unwrap().is_feasible());
    }

    #[test]
    fn non_invariant_is_rejected() {
        let a = rotation_plus_trivial();
        let u = Subspace::line(&unit(3, 0));
        assert_eq!(invariant_complement(&a, &u), Err(ModuleError::NotInvariant));
    }
}
