use super::*;
use crate::derham::closed_forms;
use crate::kernel::q;

fn free(gens: &[(&str, i32)]) -> Arc<CdgaPresentation> {
    Arc::new(CdgaPresentation::free(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect()))
}

fn ground() -> Arc<CdgaPresentation> {
    Arc::new(CdgaPresentation::ground())
}

fn plane() -> Arc<CdgaPresentation> {
    free(&[("p", 0), ("q", 0)])
}

#[test]
fn de_rham_structure_is_a_coalgebroid() {
    let alg = GcAlgebra::new(vec![Generator::new("x", 0), Generator::new("y", 0)]);
    let a = Arc::new(
        CdgaPresentation::new(
            vec![Generator::new("x", 0), Generator::new("y", 0), Generator::new("e", -1)],
            vec![Poly::zero(), Poly::zero(), alg.mul(&Poly::var(0), &Poly::var(1))],
        )
        .unwrap(),
    );
    let c = CoalgebroidCandidate::de_rham(&a, 3, 4).unwrap();
    let r = validate_coalgebroid(&c);
    assert!(r.passed(), "{r:?}");
    assert!(r.monomials_checked > 20);
}

#[test]
fn zero_epsilon_is_a_coalgebroid() {
    let a = free(&[("x", 0)]);
    let f = FreeComplex::graded_module(a.clone(), vec!["a".into(), "b".into()], vec![0, -1]);
    let r = validate_coalgebroid(&CoalgebroidCandidate::trivial(f, 3, 4).unwrap());
    assert!(r.passed());
}

fn square_nonzero() -> CoalgebroidCandidate {
    // symbols a, b of degree 1, base k[x]; ε(x) = a, ε(a) = a·b
    let a = free(&[("x", 0)]);
    let f = FreeComplex::graded_module(a, vec!["a".into(), "b".into()], vec![0, 0]);
    let ab = GcAlgebra::new(vec![Generator::new("a", 1), Generator::new("b", 1)]).mul(&Poly::var(0), &Poly::var(1));
    CoalgebroidCandidate::new(f, vec![ab, Poly::zero(), Poly::var(0)], 3, 3).unwrap()
}

#[test]
fn square_nonzero_epsilon_is_reported() {
    let c = square_nonzero();
    let r = validate_coalgebroid(&c);
    assert!(!r.passed());
    let sq = r.check(Axiom::SquareZero);
    assert!(!sq.passed);
    assert_eq!(sq.offending[0], "x");
    assert!(r.check(Axiom::Weight).passed && r.check(Axiom::Degree).passed);
    assert!(r.check(Axiom::CommutesWithD).passed && r.check(Axiom::Derivation).passed);
    // ε²(x) = a·b
    let x = Poly::var(2);
    assert_eq!(c.total().algebra().format(&c.apply(&c.apply(&x))), "a*b");
}

#[test]
fn wrong_weight_and_degree_are_reported() {
    let a = free(&[("x", 0)]);
    let f = FreeComplex::graded_module(a, vec!["a".into()], vec![0]);
    // ε(x) = x has weight 0 and degree 0
    let c = CoalgebroidCandidate::new(f, vec![Poly::zero(), Poly::var(1)], 2, 2).unwrap();
    let r = validate_coalgebroid(&c);
    assert_eq!(r.check(Axiom::Weight).offending, vec!["x".to_string()]);
    assert_eq!(r.check(Axiom::Degree).offending, vec!["x".to_string()]);
}

#[test]
fn epsilon_length_is_checked() {
    let a = free(&[("x", 0)]);
    let f = FreeComplex::graded_module(a, vec!["a".into()], vec![0]);
    assert!(CoalgebroidCandidate::new(f, vec![Poly::zero()], 2, 2).is_err());
}

#[test]
fn cotangent_st_small_cases() {
    let k = GradedMixedComplex::unit(ground());
    let l = cotangent_st(&k, &k).unwrap().complex;
    assert_eq!(l.degrees(), &[0]);
    let zero = GradedMixedComplex::zero(ground());
    assert_eq!(cotangent_st(&zero, &k).unwrap().complex.rank(), 0);
}

#[test]
fn relative_derivations_small_cases() {
    let g = ground();
    let k = GradedMixedComplex::unit(g.clone());
    let unit = FreeComplex::unit(g.clone());
    assert_eq!(relative_derivations(&k, &k, &unit, Evaluation::Exact).unwrap(), 1);
    assert_eq!(derivations_from_cotangent(&k, &k, &unit, Evaluation::Exact).unwrap(), 1);
    let zero = FreeComplex::zero(g);
    assert_eq!(relative_derivations(&k, &k, &zero, Evaluation::Exact).unwrap(), 0);
}

#[test]
fn relative_derivations_match_cotangent_on_de_rham() {
    let dr = build_dr(&plane(), 3, 4).unwrap();
    let g = ground();
    for n in -1..=1 {
        let e = GradedMixedComplex::pure(g.clone(), 2, n + 2);
        for m in [FreeComplex::unit(g.clone()), FreeComplex::unit(g.clone()).shift(1), FreeComplex::unit(g.clone()).shift(-1)] {
            let lhs = relative_derivations(&e, dr.gmc(), &m, Evaluation::Exact).unwrap();
            let rhs = derivations_from_cotangent(&e, dr.gmc(), &m, Evaluation::Exact).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}

#[test]
fn cotangent_prsymp_of_a_line_is_zero() {
    let c = cotangent_prsymp(&free(&[("x", 0)]), 0, &ground(), 3, 4).unwrap();
    assert_eq!(c.complex.rank(), 0);
    assert!(c.blocks.is_empty());
}

#[test]
fn cotangent_prsymp_of_the_plane() {
    let c = cotangent_prsymp(&plane(), 0, &ground(), 3, 4).unwrap();
    // f·dp·dq with deg f ≤ 2
    assert_eq!(c.blocks, vec![(2, 0, 6)]);
    assert!(c.complex.degrees().iter().all(|&d| d == 0));
    assert!(!c.window_limited);
    let shifted = cotangent_prsymp(&plane(), 1, &ground(), 3, 4).unwrap();
    assert!(shifted.complex.degrees().iter().all(|&d| d == 1));
}

#[test]
fn window_below_two_is_rejected() {
    assert!(matches!(cotangent_prsymp(&plane(), 0, &ground(), 1, 4), Err(Error::TruncationTooSmall(_))));
}

#[test]
fn prsymp_matches_source_target_formula() {
    let koszul =
        Arc::new(CdgaPresentation::new(vec![Generator::new("x", 0), Generator::new("e", -1)], vec![Poly::zero(), Poly::var(0)]).unwrap());
    for a in [plane(), free(&[("x", 0), ("xi", -1)]), koszul] {
        let dr = build_dr(&a, 3, 4).unwrap();
        for n in -1..=1 {
            let c = cotangent_prsymp_of(&dr, n, &ground()).unwrap();
            let (e, f) = prsymp_pair(&dr, n, &ground()).unwrap();
            let st = cotangent_st(&e, f.gmc()).unwrap();
            prsymp_st_comparison(&c, &st).unwrap();
        }
    }
}

#[test]
fn prsymp_over_a_parameter_ring() {
    let dr = build_dr(&plane(), 3, 4).unwrap();
    let base = free(&[("u", 0)]);
    let c = cotangent_prsymp_of(&dr, 0, &base).unwrap();
    let (e, f) = prsymp_pair(&dr, 0, &base).unwrap();
    prsymp_st_comparison(&c, &cotangent_st(&e, f.gmc()).unwrap()).unwrap();
    assert_eq!(c.complex.ring(), &base);
}

#[test]
fn tangent_is_dual_to_cotangent() {
    for n in -1..=1 {
        let t = tangent_prsymp(&plane(), n, &ground(), 3, 4).unwrap();
        let c = cotangent_prsymp(&plane(), n, &ground(), 3, 4).unwrap();
        assert!(complex_isomorphism(&t.dual(), &c.complex).is_some());
    }
}

#[test]
fn tangent_counts_closed_forms() {
    let dr = build_dr(&plane(), 3, 4).unwrap();
    let t = tangent_prsymp_of(&dr, 0, &ground()).unwrap();
    let h = t.cohomology(Evaluation::Exact).unwrap();
    assert_eq!(h.dim(0), closed_forms(&dr, 2, 0).unwrap().forms.len());
    assert_eq!(h.dim(0), 6);
}

#[test]
fn tangent_of_a_line_is_zero() {
    assert_eq!(tangent_prsymp(&free(&[("x", 0)]), 0, &ground(), 3, 4).unwrap().rank(), 0);
}

#[test]
fn unbounded_de_rham_has_no_tangent() {
    let a = free(&[("x", 0), ("xi", -1)]);
    assert!(matches!(tangent_prsymp(&a, -1, &ground(), 3, 4), Err(Error::NotBounded(_))));
}

#[test]
fn base_change_along_evaluation() {
    let dr = build_dr(&plane(), 3, 4).unwrap();
    let a = free(&[("u", 0)]);
    let phi = RingMap::new(&a, &ground(), vec![Poly::zero()]).unwrap();
    for n in -1..=1 {
        let (e, f) = prsymp_pair(&dr, n, &a).unwrap();
        let r = base_change_check(&e, f.gmc(), &phi, &ground()).unwrap();
        assert!(r.isomorphism && r.tensor_hom_source && r.tensor_hom_target);
        assert_eq!(r.source_ranks, r.target_ranks);
        assert_eq!(r.source_dimension, None);
        // weights 0..3 of DR(k[p,q]) in the window: 15 + 20 + 6 + 0
        assert_eq!(r.target_dimension, Some(41));
    }
}

#[test]
fn base_change_to_square_zero_doubles_dimension() {
    let dr = build_dr(&plane(), 3, 4).unwrap();
    let b = free(&[("eta", -1)]);
    for n in -1..=1 {
        let (e, f) = prsymp_pair(&dr, n, &ground()).unwrap();
        let r = base_change_check(&e, f.gmc(), &RingMap::from_ground(), &b).unwrap();
        assert!(r.isomorphism);
        assert_eq!(r.target_dimension, r.source_dimension.map(|d| 2 * d));
    }
}

#[test]
fn identity_base_change() {
    let dr = build_dr(&plane(), 2, 3).unwrap();
    let a = free(&[("u", 0)]);
    let (e, f) = prsymp_pair(&dr, 0, &a).unwrap();
    let r = base_change_check(&e, f.gmc(), &RingMap::identity(&a), &a).unwrap();
    assert!(r.isomorphism);
}

#[test]
fn moduli_points_and_closure() {
    let dr = build_dr(&plane(), 3, 4).unwrap();
    let base = free(&[("u", 0)]);
    let w = ClosedForm::new(2, 0, vec![dr.monomial(q(1), &["dp", "dq"]).unwrap()]);
    let pt = ModuliPoint::from_form(&dr, &base, &w).unwrap();
    pt.cocycle(&dr).unwrap();
    // u·ω is still a relative closed form
    let scaled = ModuliPoint { tail: vec![pt.tail[0].iter().map(|c| base.mul(c, &Poly::var(0))).collect()], ..pt.clone() };
    scaled.cocycle(&dr).unwrap();

    // x·dy·dz is not ε-closed
    let space = build_dr(&free(&[("x", 0), ("y", 0), ("z", 0)]), 3, 4).unwrap();
    let bad = ClosedForm::new(2, 0, vec![space.monomial(q(1), &["x", "dy", "dz"]).unwrap()]);
    let bad_pt = ModuliPoint::from_form(&space, &ground(), &bad).unwrap();
    assert!(matches!(bad_pt.cocycle(&space), Err(Error::InvalidChainMap(_))));
}

#[test]
fn closure_is_checked_linearly_over_a_dg_base() {
    let dr = build_dr(&plane(), 3, 4).unwrap();
    let base =
        Arc::new(CdgaPresentation::new(vec![Generator::new("u", 0), Generator::new("eta", -1)], vec![Poly::zero(), Poly::var(0)]).unwrap());
    let w = ClosedForm::new(2, -1, vec![dr.monomial(q(1), &["dp", "dq"]).unwrap()]);
    let pt = ModuliPoint::from_form(&dr, &base, &w).unwrap();
    // η·ω has d_A(η·ω) = u·ω ≠ 0
    let eta = ModuliPoint { tail: vec![pt.tail[0].iter().map(|c| base.mul(&Poly::var(1), c)).collect()], n: -1, ..pt };
    assert!(eta.cocycle(&dr).is_err());
}
