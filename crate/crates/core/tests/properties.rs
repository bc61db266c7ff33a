//! Property tests over seeded random instances.

use std::sync::Arc;

use dgsymp_core::cdga::{CdgaPresentation, GcAlgebra, Generator, Poly};
use dgsymp_core::complexes::{cone, ChainMap, Evaluation, FreeComplex};
use dgsymp_core::derham::{build_dr, ClosedForm};
use dgsymp_core::graded_mixed::{
    double_dual_comparison, gm_hom, hom_dual_comparison, mapping_space_pi0, tensor_dual_comparison, tensor_hom_comparison,
    GradedMixedComplex,
};
use dgsymp_core::kernel::{rank_kernel, supertrace, GradedMatrix, Scalar};
use dgsymp_core::moduli::{derivations_from_cotangent, relative_derivations};
use dgsymp_core::random::{self, GmcShape};
use dgsymp_core::symplectic::{bilinear_form, dual_basis_change, quadratic_form, sharp};
use num_traits::Zero;
use proptest::prelude::*;

fn koszul_pair() -> Arc<CdgaPresentation> {
    let xy = GcAlgebra::new(vec![Generator::new("x", 0), Generator::new("y", 0)]).mul(&Poly::var(0), &Poly::var(1));
    Arc::new(
        CdgaPresentation::new(
            vec![Generator::new("x", 0), Generator::new("y", 0), Generator::new("e", -1), Generator::new("xi", -1)],
            vec![Poly::zero(), Poly::zero(), xy, Poly::zero()],
        )
        .unwrap(),
    )
}

fn scalar_matrix(rng: &mut random::ChaCha8Rng, degrees: &[i32], degree: i32) -> GradedMatrix {
    let mut m = GradedMatrix::zeros(degrees.to_vec(), degrees.to_vec(), degree);
    for i in 0..degrees.len() {
        for j in 0..degrees.len() {
            if degrees[j] + degree == degrees[i] {
                m.set(i, j, Poly::constant(random::scalar(rng)));
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn supertrace_is_cyclic(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let degrees = [0, -1, 0, 1, -1];
        let ground = GcAlgebra::new(Vec::new());
        let a = scalar_matrix(&mut rng, &degrees, 0);
        let b = scalar_matrix(&mut rng, &degrees, 0);
        prop_assert_eq!(supertrace(&a.compose(&ground, &b)).unwrap(), supertrace(&b.compose(&ground, &a)).unwrap());
        // similarity invariance
        let p = random::invertible(&mut rng, &degrees);
        let pinv = dgsymp_core::kernel::det_and_inverse(&p, &CdgaPresentation::ground()).unwrap().1.unwrap();
        let conj = p.compose(&ground, &a.compose(&ground, &pinv));
        prop_assert_eq!(supertrace(&conj).unwrap(), supertrace(&a).unwrap());
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let rows = 1 + (seed % 4) as usize;
        let cols = 1 + (seed / 7 % 5) as usize;
        let entries: Vec<Vec<Scalar>> =
            (0..rows).map(|_| (0..cols).map(|_| if seed % 3 == 0 { Scalar::zero() } else { random::scalar(&mut rng) }).collect()).collect();
        let m = GradedMatrix::from_scalars(vec![0; rows], vec![0; cols], 0, &entries);
        let rk = rank_kernel(&m).unwrap();
        prop_assert_eq!(rk.rank + rk.kernel.len(), cols);
        let q = m.to_rational().unwrap();
        for v in &rk.kernel {
            prop_assert!(q.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn differentials_square_to_zero_on_random_polynomials(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let dr = build_dr(&koszul_pair(), 3, 4).unwrap();
        let alg = dr.symbols().algebra();
        let f = random::poly(&mut rng, alg, 3, 4);
        prop_assert!(dr.d(&dr.d(&f)).is_zero());
        prop_assert!(dr.epsilon(&dr.epsilon(&f)).is_zero());
        prop_assert!((&dr.d(&dr.epsilon(&f)) + &dr.epsilon(&dr.d(&f))).is_zero());
        // Leibniz for d against a second element
        let g = random::poly(&mut rng, alg, 2, 3);
        let lhs = dr.d(&dr.mul(&f, &g));
        let mut rhs = dr.mul(&dr.d(&f), &g);
        for (m, c) in f.terms() {
            let term = Poly::term(m.clone(), c.clone());
            let sign = dgsymp_core::kernel::sign(alg.monomial_degree(m) as i64);
            rhs = &rhs + &dr.mul(&term, &dr.d(&g)).scale(&sign);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cone_of_identity_is_acyclic(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = random::complex(&mut rng, -2, 2, 4);
        let k = cone(&ChainMap::identity(&c)).unwrap();
        prop_assert!(k.cohomology(Evaluation::Exact).unwrap().is_acyclic());
        prop_assert_eq!(k.euler_characteristic(), 0);
        let z = cone(&ChainMap::zero(&c, &c)).unwrap();
        prop_assert_eq!(z.euler_characteristic(), 0);
        let h = c.cohomology(Evaluation::Exact).unwrap();
        let hz = z.cohomology(Evaluation::Exact).unwrap();
        for d in -4..=4 {
            prop_assert_eq!(hz.dim(d), h.dim(d + 1) + h.dim(d));
        }
    }

    #[test]
    fn euler_characteristic_is_cohomological(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = random::complex(&mut rng, -2, 2, 5);
        let h = c.cohomology(Evaluation::Exact).unwrap();
        let chi: i64 = h.dims.iter().map(|(d, r)| if d % 2 == 0 { *r as i64 } else { -(*r as i64) }).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
    }

    #[test]
    fn duality_identities_hold(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let m = random::gmc(&mut rng, GmcShape::default());
        let n = random::gmc(&mut rng, GmcShape::default());
        prop_assert!(double_dual_comparison(&m).unwrap().is_isomorphism());
        prop_assert!(tensor_dual_comparison(&m, &n).unwrap().is_isomorphism());
        prop_assert!(hom_dual_comparison(&m, &n).unwrap().is_isomorphism());
        prop_assert!(tensor_hom_comparison(&m, &n).unwrap().is_isomorphism());
    }

    #[test]
    fn realization_adjunctions(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let m = random::gmc(&mut rng, GmcShape::default());
        let c = random::complex(&mut rng, -2, 2, 3);
        let t = GradedMixedComplex::triv(&c);
        let right = FreeComplex::hom(&c, &m.realization().complex).unwrap();
        prop_assert_eq!(mapping_space_pi0(&t, &m, Evaluation::Exact).unwrap(), right.cohomology(Evaluation::Exact).unwrap().dim(0));
        let left = FreeComplex::hom(&m.left_realization().complex, &c).unwrap();
        prop_assert_eq!(mapping_space_pi0(&m, &t, Evaluation::Exact).unwrap(), left.cohomology(Evaluation::Exact).unwrap().dim(0));
    }

    #[test]
    fn relative_derivation_adjunction(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let e = random::gmc(&mut rng, GmcShape::default());
        let f = random::gmc(&mut rng, GmcShape::default());
        let m = random::complex(&mut rng, -1, 1, 2);
        let lhs = relative_derivations(&e, &f, &m, Evaluation::Exact).unwrap();
        let rhs = derivations_from_cotangent(&e, &f, &m, Evaluation::Exact).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hom_of_random_gmcs_is_valid(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let m = random::gmc(&mut rng, GmcShape::default());
        let n = random::gmc(&mut rng, GmcShape::default());
        let h = gm_hom(&m, &n).unwrap();
        prop_assert!(h.check().is_ok());
        for c in h.components().values() {
            prop_assert!(c.check_square_zero().is_ok());
        }
    }

    #[test]
    fn quadratic_form_is_symmetric_homogeneous_and_invariant(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = Arc::new(CdgaPresentation::free(vec![Generator::new("p", 0), Generator::new("q", 0)]));
        let dr = build_dr(&a, 3, 4).unwrap();
        let two_form = |f: Poly| {
            let dpdq = dr.monomial(Scalar::from_integer(1.into()), &["dp", "dq"]).unwrap();
            ClosedForm::new(2, 0, vec![dr.mul(&dr.symbols().lift(&f), &dpdq)])
        };
        let omega = two_form(Poly::constant(random::nonzero_scalar(&mut rng)));
        let s = sharp(&dr, &omega, 0).unwrap();
        let f = random::poly(&mut rng, a.algebra(), 2, 3);
        let g = random::poly(&mut rng, a.algebra(), 2, 3);
        let (alpha, beta) = (two_form(f.clone()), two_form(g));
        prop_assert_eq!(bilinear_form(&dr, &s, &alpha, &beta).unwrap(), bilinear_form(&dr, &s, &beta, &alpha).unwrap());
        let c = random::scalar(&mut rng);
        let scaled = two_form(f.scale(&c));
        let q1 = quadratic_form(&dr, &s, &alpha).unwrap();
        prop_assert_eq!(quadratic_form(&dr, &s, &scaled).unwrap(), q1.scale(&(c.clone() * c)));
        let p = random::invertible(&mut rng, &[0, 0]);
        let qm = dual_basis_change(&p, &a, 0).unwrap();
        let (s2, a2) = (s.in_basis(&p, &qm).unwrap(), sharp(&dr, &alpha, 0).unwrap().in_basis(&p, &qm).unwrap());
        prop_assert_eq!(dgsymp_core::symplectic::bilinear_from_matrices(&s2, &a2.matrix, &a2.matrix).unwrap(), q1);
    }
}

#[test]
fn random_instances_are_reproducible() {
    let a = random::gmc(&mut random::rng(7), GmcShape::default());
    let b = random::gmc(&mut random::rng(7), GmcShape::default());
    assert_eq!(a, b);
}
