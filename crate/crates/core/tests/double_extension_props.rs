mod common;

use gonil::double_extension::{build, decompose, roundtrip_check, Decomposition, DoubleExtensionData, DoubleExtensionError};
use gonil::io::DoubleExtensionFile;
use gonil::linalg::{RMatrix, Signature};
use gonil::presets::{family, family_double_extension_data, shift_matrix};
use gonil::{LieAlgebra, MetricLieAlgebra, Rational};
use proptest::prelude::*;
use rand::Rng;

/// Abelian Euclidean base of dimension `k` with a random cocycle and a
/// strictly upper triangular derivation on `m_0` killing `e`.
fn random_data(seed: u64) -> DoubleExtensionData {
    let mut rng = common::rng(seed);
    let k = rng.gen_range(2..=5);
    let mut cocycle = RMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let v = Rational::from_integer(rng.gen_range(-2..=2));
            cocycle[(j, i)] = -&v;
            cocycle[(i, j)] = v;
        }
    }
    DoubleExtensionData {
        base: MetricLieAlgebra::euclidean(LieAlgebra::abelian(k)),
        cocycle,
        derivation: RMatrix::zeros(k + 1, k + 1),
    }
}

#[test]
fn signature_shifts_by_a_hyperbolic_plane() {
    let g = RMatrix::diagonal(&[Rational::from_integer(-1), Rational::one()]);
    let base = MetricLieAlgebra::from_gram(LieAlgebra::abelian(2), g).unwrap();
    let data = DoubleExtensionData { base, cocycle: RMatrix::zeros(2, 2), derivation: RMatrix::zeros(3, 3) };
    assert_eq!(build(&data).unwrap().signature(), Signature::new(2, 2, 0));
}

#[test]
fn family_file_roundtrip_builds_family() {
    for d in 2..=4 {
        let spec = shift_matrix(d).unwrap();
        let file = DoubleExtensionFile::from_data(&family_double_extension_data(&spec), "family");
        let data = DoubleExtensionFile::from_json(&file.to_json()).unwrap().to_data().unwrap();
        assert_eq!(build(&data).unwrap(), family(&spec));
        assert!(roundtrip_check(&family(&spec)));
    }
}

#[test]
fn non_lorentz_and_non_central_inputs() {
    let m = MetricLieAlgebra::euclidean(LieAlgebra::heisenberg3());
    assert!(matches!(decompose(&m), Err(DoubleExtensionError::NotLorentz(_))));
    // [e1, e2] = e3, [e1, e3] = e4 with e2, e3 a null pair: the radical of
    // [n,n] = span(e3, e4) is Re3, and e3 does not commute with e1 ∈ e3-perp
    let g = RMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let l = LieAlgebra::from_brackets(4, &[(0, 1, 2, Rational::one()), (0, 2, 3, Rational::one())]).unwrap();
    let m = MetricLieAlgebra::from_gram(l, g).unwrap();
    match decompose(&m) {
        Ok(Decomposition::NotCentral { e, x }) => {
            assert!(!m.bracket(&e, &x).iter().all(Rational::is_zero));
            assert!(m.inner(&e, &x).is_zero());
        }
        other => panic!("expected a non-central outcome, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn build_then_decompose_roundtrips(seed in any::<u64>()) {
        let data = random_data(seed);
        let m = build(&data).unwrap();
        prop_assert_eq!(m.signature(), Signature::new(1, data.base.dim() + 1, 0));
        if data.cocycle.is_zero() {
            prop_assert_eq!(decompose(&m), Err(DoubleExtensionError::NondegenerateDerived));
        } else {
            let Ok(Decomposition::Extension(r)) = decompose(&m) else {
                return Err(TestCaseError::fail("cocycle extension should decompose"));
            };
            prop_assert!(r.base_signature().is_positive_definite());
            prop_assert_eq!(r.base_step, Some(1));
            prop_assert!(gonil::double_extension::roundtrip_matches(&r));
            let adapted = r.adapted_basis.transpose().matmul(m.gram()).matmul(&r.adapted_basis);
            prop_assert_eq!(&adapted, r.adapted.gram());
        }
    }
}
