mod common;

use gonil::derivations::skew_derivation_algebra;
use gonil::linalg::{unit, Subspace};
use gonil::module_theory::{
    complete_reducibility_probe, invariant_complement, invariant_complement_with, is_invariant, sheared_complement,
    ActionSpec, ComplementResult, ProbeVerdict,
};
use gonil::presets::{derivation_span, family, kaplan6, shift_matrix};
use gonil::{Execution, LieAlgebra, MetricLieAlgebra, RMatrix};
use proptest::prelude::*;

#[test]
fn family_invariant_lines() {
    let spec = shift_matrix(2).unwrap();
    let m = family(&spec);
    let ops: Vec<RMatrix> =
        derivation_span(&spec).basis_vectors().into_iter().map(|v| RMatrix::from_flat(8, 8, v)).collect();
    let action = ActionSpec::new(8, ops).unwrap();
    assert!(action.is_closed());
    assert!(is_invariant(&action, &Subspace::line(&unit(8, 1))));
    assert!(!is_invariant(&action, &Subspace::line(&unit(8, 0))));
    assert!(is_invariant(&action, &m.algebra().derived_algebra()));
    assert!(!invariant_complement(&action, &Subspace::line(&unit(8, 1))).unwrap().is_feasible());
}

#[test]
fn probe_is_inconclusive_on_riemannian_examples() {
    for m in [kaplan6(), MetricLieAlgebra::euclidean(LieAlgebra::abelian(3))] {
        let h = skew_derivation_algebra(&m, Execution::Sequential).unwrap();
        assert!(matches!(
            complete_reducibility_probe(&m, &h, Execution::Sequential),
            ProbeVerdict::NoObstructionFound { .. }
        ));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Skew operators for a definite form always admit invariant complements,
    /// and feasibility does not depend on the auxiliary complement.
    #[test]
    fn riemannian_invariant_subspaces_split(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = common::random_two_step(&mut rng);
        let n = alg.dim();
        let m = MetricLieAlgebra::from_gram(alg, common::random_gram(&mut rng, n, false)).unwrap();
        let h = skew_derivation_algebra(&m, Execution::Sequential).unwrap();
        let action = ActionSpec::from_derivations(&h);
        for u in [m.algebra().derived_algebra(), m.algebra().center()] {
            prop_assert!(is_invariant(&action, &u));
            let v = u.complement_in(&Subspace::full(n)).unwrap();
            let first = invariant_complement_with(&action, &u, &v).unwrap();
            let second = invariant_complement_with(&action, &u, &sheared_complement(&u, &v)).unwrap();
            prop_assert_eq!(first.is_feasible(), second.is_feasible());
            let ComplementResult::Complement(w) = first else {
                return Err(TestCaseError::fail("definite metric should split"));
            };
            prop_assert!(is_invariant(&action, &w));
            prop_assert!(u.is_complementary(&w));
        }
    }

    #[test]
    fn complement_verdicts_agree_across_auxiliaries(seed in any::<u64>()) {
        let m = common::random_metric_nilpotent(&mut common::rng(seed));
        let h = skew_derivation_algebra(&m, Execution::Sequential).unwrap();
        let action = ActionSpec::from_derivations(&h);
        let u = m.form().radical_in(&m.algebra().derived_algebra());
        if is_invariant(&action, &u) {
            let v = u.complement_in(&Subspace::full(m.dim())).unwrap();
            let a = invariant_complement_with(&action, &u, &v).unwrap().is_feasible();
            let b = invariant_complement_with(&action, &u, &sheared_complement(&u, &v)).unwrap().is_feasible();
            prop_assert_eq!(a, b);
        }
    }
}
