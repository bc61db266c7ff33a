use super::*;
use crate::cdga::{Generator, Poly};
use crate::kernel::GradedMatrix;

fn ground() -> Arc<CdgaPresentation> {
    Arc::new(CdgaPresentation::ground())
}

/// k(0) ⊕ k(1)[-1] with ε the identity component.
fn cone_like() -> GradedMixedComplex {
    let r = ground();
    let mut e = GradedMatrix::zeros(vec![1], vec![0], 1);
    e.set(0, 0, Poly::one());
    GradedMixedComplex::new(
        r.clone(),
        BTreeMap::from([(0, FreeComplex::point_module(r.clone(), 0)), (1, FreeComplex::point_module(r, 1))]),
        BTreeMap::from([(0, e)]),
    )
    .unwrap()
}

/// Four weights with nonzero d and ε and a mix of parities.
fn sample() -> GradedMixedComplex {
    let r = ground();
    let mut d1 = GradedMatrix::zeros(vec![0, 1, 1], vec![0, 1, 1], 1);
    d1.set(1, 0, Poly::one());
    let m1 = FreeComplex::new(r.clone(), vec!["c".into(), "c'".into(), "b".into()], d1).unwrap();
    let m0 = FreeComplex::graded_module(r.clone(), vec!["a".into(), "z".into()], vec![0, -1]);
    let m2 = FreeComplex::graded_module(r.clone(), vec!["w".into()], vec![2]);
    let mm1 = FreeComplex::graded_module(r.clone(), vec!["y".into()], vec![-2]);
    let mut em1 = GradedMatrix::zeros(vec![0, -1], vec![-2], 1);
    em1.set(1, 0, Poly::one());
    let mut e0 = GradedMatrix::zeros(vec![0, 1, 1], vec![0, -1], 1);
    e0.set(1, 0, Poly::from_int(-2));
    let mut e1 = GradedMatrix::zeros(vec![2], vec![0, 1, 1], 1);
    e1.set(0, 2, Poly::from_int(3));
    GradedMixedComplex::new(
        r,
        BTreeMap::from([(-1, mm1), (0, m0), (1, m1), (2, m2)]),
        BTreeMap::from([(-1, em1), (0, e0), (1, e1)]),
    )
    .unwrap()
}

#[test]
fn triv_realizations_are_the_complex() {
    let c = FreeComplex::graded_module(ground(), vec!["a".into()], vec![3]);
    let t = GradedMixedComplex::triv(&c);
    assert_eq!(t.realization().complex, c);
    assert_eq!(t.left_realization().complex, c);
}

#[test]
fn cone_like_realizations() {
    let m = cone_like();
    assert!(m.realization().complex.cohomology(Evaluation::Exact).unwrap().is_acyclic());
    let l = m.left_realization();
    assert_eq!(l.complex.rank(), 1);
    assert_eq!(l.complex.cohomology(Evaluation::Exact).unwrap().dim(0), 1);
}

#[test]
fn negative_weight_left_realization() {
    let m = GradedMixedComplex::pure(ground(), -1, 4);
    assert_eq!(m.left_realization().complex.degrees(), &[4]);
    assert_eq!(m.realization().complex.rank(), 0);
}

#[test]
fn sample_is_valid_and_realizations_square_to_zero() {
    let m = sample();
    m.realization().complex.check_square_zero().unwrap();
    m.left_realization().complex.check_square_zero().unwrap();
}

#[test]
fn unit_laws() {
    let m = sample();
    let unit = GradedMixedComplex::unit(ground());
    let t = gm_tensor(&m, &unit).unwrap();
    for p in m.support() {
        assert_eq!(t.component(p).unwrap().differential(), m.component(p).unwrap().differential());
        assert_eq!(t.epsilon(p), m.epsilon(p));
    }
    let h = gm_hom(&unit, &m).unwrap();
    for p in m.support() {
        assert_eq!(h.component(p).unwrap().differential(), m.component(p).unwrap().differential());
        assert_eq!(h.epsilon(p), m.epsilon(p));
    }
    assert_eq!(gm_hom(&m, &unit).unwrap(), gm_dual(&m));
}

#[test]
fn tensor_and_hom_are_mixed_complexes() {
    let m = sample();
    let n = cone_like();
    for x in [gm_tensor(&m, &n).unwrap(), gm_hom(&m, &n).unwrap(), gm_hom(&n, &m).unwrap(), gm_dual(&m)] {
        x.check().unwrap();
        x.realization().complex.check_square_zero().unwrap();
    }
}

#[test]
fn comparison_isomorphisms() {
    let m = sample();
    let n = cone_like();
    for f in [
        double_dual_comparison(&m).unwrap(),
        tensor_dual_comparison(&m, &n).unwrap(),
        hom_dual_comparison(&m, &n).unwrap(),
        hom_dual_comparison(&n, &m).unwrap(),
        tensor_hom_comparison(&m, &n).unwrap(),
        tensor_hom_comparison(&n, &m).unwrap(),
    ] {
        assert!(f.is_isomorphism());
    }
}

#[test]
fn comparisons_over_a_cdga() {
    let r = Arc::new(CdgaPresentation::new(vec![Generator::new("x", 0), Generator::new("e", -1)], vec![Poly::zero(), Poly::var(0)]).unwrap());
    let l = crate::cdga::cotangent_module(&r);
    let m = GradedMixedComplex::triv(&l);
    let n = GradedMixedComplex::pure(r.clone(), 1, 1);
    assert!(double_dual_comparison(&m).unwrap().is_isomorphism());
    assert!(tensor_dual_comparison(&m, &n).unwrap().is_isomorphism());
    assert!(hom_dual_comparison(&m, &n).unwrap().is_isomorphism());
    assert!(tensor_hom_comparison(&m, &n).unwrap().is_isomorphism());
}

#[test]
fn signed_permutation_finder_recovers_identity() {
    let m = sample();
    assert!(find_signed_permutation(&m, &m).is_some());
}

#[test]
fn mapping_space_of_units() {
    let unit = GradedMixedComplex::unit(ground());
    assert_eq!(mapping_space_pi0(&unit, &unit, Evaluation::Exact).unwrap(), 1);
}
