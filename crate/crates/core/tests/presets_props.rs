use gonil::derivations::{is_derivation, is_skew};
use gonil::io::AlgebraSpecFile;
use gonil::presets::{
    derivation_span, family, kaplan6, nonnatred_example, pq_pair, preset, shift_matrix, FamilySpec, PresetError,
};
use gonil::{RMatrix, Rational, Signature};

#[test]
fn pq_identities_hold() {
    for d in 2..=6 {
        let spec = shift_matrix(d).unwrap();
        let (p, q) = pq_pair(&spec);
        assert!((&p.transpose() + &p).is_zero());
        assert!(q.nilpotency_index().is_some());
        assert!(!q.pow(spec.index() as u32 - 1).is_zero());
        let v = &q.transpose() + &p;
        assert!(v.matmul(&v).is_zero());
    }
}

#[test]
fn shift_powers() {
    for d in 2..=6 {
        let s = shift_matrix(d).unwrap();
        assert_eq!(s.size(), d + 1);
        assert!(s.matrix().pow(d as u32 + 1).is_zero());
        let corner = s.matrix().pow(d as u32);
        assert_eq!(corner[(0, d)], Rational::one());
        assert_eq!(corner.as_flat().iter().filter(|x| !x.is_zero()).count(), 1);
    }
    assert_eq!(shift_matrix(0), Err(PresetError::ParameterTooSmall(0)));
}

#[test]
fn general_nilpotent_matrices_are_accepted() {
    // a 4x4 matrix of index 2 that is not a shift
    let s = RMatrix::from_i64(&[&[0, 0, 1, 2], &[0, 0, 3, 4], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    let spec = FamilySpec::new(s).unwrap();
    assert_eq!(spec.index(), 2);
    let m = family(&spec);
    assert_eq!(m.dim(), 10);
    assert!(m.is_lorentz());
    assert!(FamilySpec::new(RMatrix::identity(2)).is_err());
}

#[test]
fn derivation_span_elements_are_skew_derivations() {
    for d in 2..=4 {
        let spec = shift_matrix(d).unwrap();
        let m = family(&spec);
        let n = m.dim();
        for v in derivation_span(&spec).basis_vectors() {
            let b = RMatrix::from_flat(n, n, v);
            assert!(is_derivation(m.algebra(), &b));
            assert!(is_skew(m.gram(), &b));
            assert!(b.mul_vec(&m.unit(1)).iter().all(Rational::is_zero));
        }
    }
}

#[test]
fn generators_are_deterministic() {
    assert_eq!(family(&shift_matrix(3).unwrap()), family(&shift_matrix(3).unwrap()));
    assert_eq!(kaplan6(), kaplan6());
    let a = AlgebraSpecFile::from_metric(&nonnatred_example(&shift_matrix(2).unwrap()), "x", "");
    let b = AlgebraSpecFile::from_metric(&nonnatred_example(&shift_matrix(2).unwrap()), "x", "");
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn kaplan6_bracket_entry_count() {
    // four nonzero ⟨J_a X, Y⟩ pairs: J1 pairs (a1,a2), (a3,a4); J2 pairs (a1,a3), (a2,a4)
    let file = AlgebraSpecFile::from_metric(&kaplan6(), "kaplan6", "");
    assert_eq!(file.brackets.len(), 4);
}

#[test]
fn nonnatred_signature_and_step() {
    for d in 2..=4 {
        let m = nonnatred_example(&shift_matrix(d).unwrap());
        assert_eq!(m.dim(), 2 * d + 10);
        assert_eq!(m.signature(), Signature::new(1, 2 * d + 9, 0));
        assert!(m.algebra().nilpotency_step().unwrap() >= d);
    }
    assert!(preset("nonnatred", 4).is_ok());
    assert!(matches!(preset("bogus", 2), Err(PresetError::UnknownPreset(_))));
}
