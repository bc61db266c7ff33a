use super::*;
use crate::cdga::Generator;
use crate::derham::{build_dr, closed_forms};
use crate::kernel::q;

fn free(gens: &[(&str, i32)]) -> Arc<CdgaPresentation> {
    Arc::new(CdgaPresentation::free(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect()))
}

fn form(dr: &DeRhamComplex, n: i32, c: i64, factors: &[&str]) -> ClosedForm {
    ClosedForm::new(2, n, vec![dr.monomial(q(c), factors).unwrap()])
}

fn plane() -> DeRhamComplex {
    build_dr(&free(&[("p", 0), ("q", 0)]), 3, 6).unwrap()
}

#[test]
fn standard_form_on_the_plane() {
    let dr = plane();
    let s = sharp(&dr, &form(&dr, 0, 1, &["dp", "dq"]), 0).unwrap();
    // ι_∂p(dp dq) = dq, ι_∂q(dp dq) = -dp
    assert_eq!(s.matrix.get_or_zero(1, 0), Poly::one());
    assert_eq!(s.matrix.get_or_zero(0, 1), Poly::from_int(-1));
    let pairing = s.pairing();
    assert_eq!(pairing.get_or_zero(0, 1), Poly::one());
    assert_eq!(pairing.get_or_zero(1, 0), Poly::from_int(-1));
    assert_eq!(s.det, Poly::one());
    let inv = s.inverse.clone().unwrap();
    assert_eq!(inv.get_or_zero(0, 1), Poly::one());
    assert_eq!(inv.get_or_zero(1, 0), Poly::from_int(-1));
    let origin = dr.base().origin();
    let r = is_nondegenerate(&s, &[origin]).unwrap();
    assert!(r.nondegenerate && r.strict);
}

#[test]
fn odd_direction_form() {
    let dr = build_dr(&free(&[("x", 0), ("xi", -1)]), 3, 4).unwrap();
    let s = sharp(&dr, &form(&dr, -1, 1, &["dx", "dxi"]), -1).unwrap();
    // ∂x ↦ dxi and ∂xi ↦ dx
    assert_eq!(s.matrix.get_or_zero(1, 0), Poly::one());
    assert_eq!(s.matrix.get_or_zero(0, 1), Poly::one());
    assert_eq!(s.matrix.nnz(), 2);
    assert!(s.is_strict());
    let r = is_nondegenerate(&s, &[dr.base().origin()]).unwrap();
    assert!(r.nondegenerate);
    let p = s.pairing();
    assert_eq!(p.get_or_zero(0, 1), Poly::from_int(-1));
    assert_eq!(p.get_or_zero(1, 0), Poly::one());
}

#[test]
fn zero_form_is_degenerate() {
    let dr = build_dr(&free(&[("x", 0)]), 2, 3).unwrap();
    let zero = ClosedForm::new(2, 0, vec![Poly::zero()]);
    let s = sharp(&dr, &zero, 0).unwrap();
    assert!(s.matrix.is_zero());
    let r = is_nondegenerate(&s, &[dr.base().origin()]).unwrap();
    assert!(!r.nondegenerate && !r.strict);
}

#[test]
fn vanishing_coefficient_fails_at_the_origin() {
    let dr = plane();
    let s = sharp(&dr, &form(&dr, 0, 1, &["p", "dp", "dq"]), 0).unwrap();
    assert_eq!(dr.base().algebra().format(&s.det), "p^2");
    let p0 = dr.base().point(&[("p", q(0)), ("q", q(0))]).unwrap();
    let p1 = dr.base().point(&[("p", q(1)), ("q", q(0))]).unwrap();
    let r = is_nondegenerate(&s, &[p0.clone(), p1.clone()]).unwrap();
    assert!(!r.nondegenerate);
    assert_eq!(r.failing_points, vec![0]);
    assert!(is_nondegenerate(&s, &[p1]).unwrap().nondegenerate);
    assert!(!r.strict);
}

#[test]
fn wrong_degree_is_rejected() {
    let dr = plane();
    assert!(matches!(sharp(&dr, &form(&dr, 0, 1, &["dp", "dq"]), 1), Err(Error::WrongWeightOrDegree(_))));
    let f = ClosedForm::new(2, 1, vec![dr.monomial(q(1), &["dp", "dq"]).unwrap()]);
    assert!(matches!(sharp(&dr, &f, 1), Err(Error::WrongWeightOrDegree(_))));
}

#[test]
fn quadratic_form_values() {
    let dr = plane();
    let s = sharp(&dr, &form(&dr, 0, 1, &["dp", "dq"]), 0).unwrap();
    let a = form(&dr, 0, 3, &["p", "q", "dp", "dq"]);
    let value = quadratic_form(&dr, &s, &a).unwrap();
    assert_eq!(dr.base().algebra().format(&value), "9*p^2*q^2");
    let zero = ClosedForm::new(2, 0, vec![Poly::zero()]);
    assert!(quadratic_form(&dr, &s, &zero).unwrap().is_zero());

    let dr2 = build_dr(&free(&[("x", 0), ("xi", -1)]), 3, 4).unwrap();
    let w = form(&dr2, -1, 1, &["dx", "dxi"]);
    let s2 = sharp(&dr2, &w, -1).unwrap();
    assert!(quadratic_form(&dr2, &s2, &w).unwrap().is_zero());
}

#[test]
fn quadratic_form_needs_strict_inverse() {
    let dr = plane();
    let s = sharp(&dr, &form(&dr, 0, 1, &["p", "dp", "dq"]), 0).unwrap();
    let a = form(&dr, 0, 1, &["dp", "dq"]);
    assert!(matches!(quadratic_form(&dr, &s, &a), Err(Error::NotInvertible { .. })));
}

#[test]
fn closed_forms_are_chain_maps_over_koszul_base() {
    let a = Arc::new(
        CdgaPresentation::new(
            vec![Generator::new("x", 0), Generator::new("y", 0), Generator::new("e", -1)],
            vec![Poly::zero(), Poly::zero(), Poly::var(0)],
        )
        .unwrap(),
    );
    let dr = build_dr(&a, 3, 4).unwrap();
    for n in -2..=1 {
        for f in closed_forms(&dr, 2, n).unwrap().forms {
            sharp(&dr, &f, n).unwrap();
        }
    }
}

#[test]
fn basis_change_leaves_q_invariant() {
    let dr = plane();
    let s = sharp(&dr, &form(&dr, 0, 1, &["dp", "dq"]), 0).unwrap();
    let a = sharp(&dr, &form(&dr, 0, 2, &["p", "dp", "dq"]), 0).unwrap();
    let before = bilinear_from_matrices(&s, &a.matrix, &a.matrix).unwrap();
    let p = GradedMatrix::from_scalars(vec![0, 0], vec![0, 0], 0, &[vec![q(2), q(1)], vec![q(7), q(4)]]);
    let qm = dual_basis_change(&p, dr.base(), 0).unwrap();
    let s2 = s.in_basis(&p, &qm).unwrap();
    let a2 = a.in_basis(&p, &qm).unwrap();
    assert_eq!(bilinear_from_matrices(&s2, &a2.matrix, &a2.matrix).unwrap(), before);
}

#[test]
fn qf_space_examples() {
    let point = Arc::new(CdgaPresentation::ground());
    assert!(qf_space(&point, 0, Evaluation::Exact).unwrap().is_acyclic());
    let line = free(&[("x", 0)]);
    let o = line.origin();
    assert_eq!(qf_space(&line, 0, Evaluation::At(&o)).unwrap().dim(0), 1);
    assert_eq!(qf_space(&line, 1, Evaluation::At(&o)).unwrap().dim(0), 0);
    assert!(matches!(qf_space(&line, 0, Evaluation::Exact), Err(Error::MissingEvaluationPoint(_))));
}
