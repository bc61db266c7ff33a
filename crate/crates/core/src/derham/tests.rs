use super::*;
use crate::cdga::Generator;
use crate::kernel::q;

fn free(gens: &[(&str, i32)]) -> Arc<CdgaPresentation> {
    Arc::new(CdgaPresentation::free(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect()))
}

fn koszul() -> Arc<CdgaPresentation> {
    Arc::new(CdgaPresentation::new(vec![Generator::new("x", 0), Generator::new("e", -1)], vec![Poly::zero(), Poly::var(0)]).unwrap())
}

#[test]
fn weights_of_polynomial_ring() {
    let dr = build_dr(&free(&[("x", 0)]), 4, 3).unwrap();
    assert_eq!(dr.basis(0).len(), 4);
    assert_eq!(dr.basis(1).len(), 3);
    assert!(dr.basis(2).is_empty());
    assert!(dr.gmc().component(2).is_none());
}

#[test]
fn weight_two_of_plane() {
    let dr = build_dr(&free(&[("p", 0), ("q", 0)]), 4, 2).unwrap();
    let w2: Vec<String> = dr.basis(2).iter().map(|m| dr.symbols().algebra().format_monomial(m)).collect();
    assert_eq!(w2, vec!["dp*dq"]);
    assert!(dr.basis(3).is_empty());
}

#[test]
fn parity_table_with_odd_generator() {
    let dr = build_dr(&free(&[("x", 0), ("xi", -1)]), 2, 2).unwrap();
    let alg = dr.symbols().algebra();
    let w2: BTreeMap<String, i32> = dr.basis(2).iter().map(|m| (alg.format_monomial(m), alg.monomial_degree(m))).collect();
    assert_eq!(w2.get("dx*dxi"), Some(&1));
    assert_eq!(w2.get("dxi^2"), Some(&0));
}

#[test]
fn identities_hold_in_window() {
    for a in [free(&[("x", 0)]), free(&[("p", 0), ("q", 0)]), free(&[("x", 0), ("xi", -1)]), koszul()] {
        let dr = build_dr(&a, 4, 6).unwrap();
        let r = dr.check_identities();
        assert!(r.holds(), "{r:?}");
        dr.gmc().check().unwrap();
    }
}

#[test]
fn constant_differential_is_rejected() {
    let a = Arc::new(CdgaPresentation::new(vec![Generator::new("e", -1)], vec![Poly::one()]).unwrap());
    assert!(matches!(build_dr(&a, 2, 2), Err(Error::TruncationTooSmall(_))));
}

#[test]
fn poincare_lemma_for_the_plane() {
    let dr = build_dr(&free(&[("x", 0), ("y", 0)]), 2, 6).unwrap();
    let h = dr.gmc().realization().complex.cohomology(Evaluation::Exact).unwrap();
    assert_eq!((h.dim(0), h.dim(1), h.dim(2)), (1, 0, 0));
}

#[test]
fn truncated_line_has_constant_functions_only() {
    let dr = build_dr(&free(&[("x", 0)]), 1, 5).unwrap();
    let h = dr.gmc().realization().complex.cohomology(Evaluation::Exact).unwrap();
    assert_eq!((h.dim(0), h.dim(1)), (1, 0));
}

#[test]
fn no_two_forms_on_the_line() {
    let dr = build_dr(&free(&[("x", 0)]), 3, 4).unwrap();
    for n in -3..=3 {
        assert!(closed_forms(&dr, 2, n).unwrap().forms.is_empty());
    }
}

#[test]
fn closed_two_forms_on_the_plane() {
    let dr = build_dr(&free(&[("p", 0), ("q", 0)]), 3, 4).unwrap();
    let cf = closed_forms(&dr, 2, 0).unwrap();
    // f dp dq with f of length <= 2: 1, p, q, p^2, pq, q^2
    assert_eq!(cf.forms.len(), 6);
    assert!(!cf.window_limited);
    for f in &cf.forms {
        assert_eq!(f.tail.len(), 1);
        assert!(f.verify(&dr).unwrap().closed);
    }
}

#[test]
fn odd_direction_form_is_closed() {
    let a = free(&[("x", 0), ("xi", -1)]);
    let dr = build_dr(&a, 3, 4).unwrap();
    let omega = dr.monomial(q(1), &["dx", "dxi"]).unwrap();
    let form = ClosedForm::new(2, -1, vec![omega.clone()]);
    let r = form.verify(&dr).unwrap();
    assert!(r.closed && !r.window_limited);
    assert_eq!(underlying_form(&form), omega);
    assert!(!closed_forms(&dr, 2, -1).unwrap().forms.is_empty());
}

#[test]
fn form_with_nonzero_tail() {
    // k[x, y, e] with d(e) = x, and ω = (d + ε)(y de²)
    let a = Arc::new(
        CdgaPresentation::new(
            vec![Generator::new("x", 0), Generator::new("y", 0), Generator::new("e", -1)],
            vec![Poly::zero(), Poly::zero(), Poly::var(0)],
        )
        .unwrap(),
    );
    let dr = build_dr(&a, 3, 4).unwrap();
    let eta = dr.monomial(q(1), &["y", "de", "de"]).unwrap();
    let w2 = dr.d(&eta);
    let w3 = dr.epsilon(&eta);
    assert!(!w3.is_zero());
    assert!(!dr.epsilon(&w2).is_zero());
    assert_eq!(dr.epsilon(&w2), -dr.d(&w3));
    let form = ClosedForm::new(2, -1, vec![w2.clone(), w3]);
    assert!(form.verify(&dr).unwrap().closed);
    assert_eq!(underlying_form(&form), w2);
    assert_eq!(dr.format(&w2), "-2*dx*de*y");
}

#[test]
fn wrong_degree_is_rejected() {
    let dr = build_dr(&free(&[("p", 0), ("q", 0)]), 2, 2).unwrap();
    let omega = dr.monomial(q(1), &["dp", "dq"]).unwrap();
    assert!(matches!(ClosedForm::new(2, 1, vec![omega]).verify(&dr), Err(Error::WrongWeightOrDegree(_))));
}

#[test]
fn relative_forms_double_over_square_zero_base() {
    let dr = build_dr(&free(&[("p", 0), ("q", 0)]), 3, 3).unwrap();
    let absolute = closed_forms(&dr, 2, 0).unwrap().forms.len();
    let b = free(&[("t", -1)]);
    let rel = relative_dr(&dr, &b).unwrap();
    rel.gmc().check().unwrap();
    // counted over k: the t-multiples sit one degree lower, in n = -1
    let n0 = closed_forms_dimension(&rel, 2, 0, Evaluation::Truncated(1)).unwrap();
    let n1 = closed_forms_dimension(&rel, 2, -1, Evaluation::Truncated(1)).unwrap();
    assert_eq!(n0, absolute);
    assert_eq!(n0 + n1, 2 * absolute);
    let ground = Arc::new(CdgaPresentation::ground());
    assert_eq!(closed_forms_dimension(&relative_dr(&dr, &ground).unwrap(), 2, 0, Evaluation::Exact).unwrap(), absolute);
}
