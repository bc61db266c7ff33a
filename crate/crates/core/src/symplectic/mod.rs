//! Non-degeneracy of closed 2-forms, the trace quadratic form on symplectic
//! structures, and the space of shifted quadratic structures.
//!
//! Contraction `ι_{∂_i}` is the derivation of the de Rham algebra of degree
//! `-(|x_i| + 1)` with `ι_{∂_i}(dx_j) = δ_ij` and `ι_{∂_i}(x_j) = 0`.

use std::sync::Arc;

use crate::cdga::{cotangent_module, sym2_cotangent, tangent_module, CdgaPresentation, Derivation, Point, Poly};
use crate::complexes::{hom_pre, quasi_iso_failures, ChainMap, CohomologyTable, Evaluation, FreeComplex};
use crate::derham::{ClosedForm, DeRhamComplex};
use crate::error::{Error, Result};
use crate::kernel::{det_and_inverse, q_frac, sign, supertrace, GradedMatrix};

/// `ω^♯: 𝕋[-n] -> 𝕃` in the bases `∂_i[-n]` and `dx_j`.
#[derive(Clone, Debug)]
pub struct SharpData {
    pub n: i32,
    pub form: ClosedForm,
    pub source: FreeComplex,
    pub target: FreeComplex,
    /// Entry `(j, i)` is the coefficient of `dx_j` in `ι_{∂_i} ω_2`.
    pub matrix: GradedMatrix,
    pub det: Poly,
    pub inverse: Option<GradedMatrix>,
}

/// Outcome of the non-degeneracy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    /// `ω^♯` is a quasi-isomorphism at every supplied point.
    pub nondegenerate: bool,
    /// The determinant is a unit of the base, so `ω^♯` has a strict inverse.
    pub strict: bool,
    /// Indices of the points where the cone of `ω^♯` has cohomology.
    pub failing_points: Vec<usize>,
}

/// `ι_{∂_i}` on the de Rham algebra.
pub fn contraction(dr: &DeRhamComplex, i: usize) -> Derivation {
    let s = dr.symbols();
    let m = s.rank();
    let mut images = vec![Poly::zero(); 2 * m];
    images[i] = Poly::one();
    Derivation { degree: -(s.base().algebra().degree(i) + 1), images }
}

/// The matrix of `γ^♯` for a weight-2 element of degree `n + 2`.
pub fn sharp_matrix(dr: &DeRhamComplex, omega2: &Poly, n: i32) -> Result<GradedMatrix> {
    let base = dr.base();
    let s = dr.symbols();
    let alg = s.algebra();
    for (mono, _) in omega2.terms() {
        if s.weight(mono) != 2 || alg.monomial_degree(mono) != n + 2 {
            return Err(Error::WrongWeightOrDegree(format!(
                "{} is not of weight 2 and degree {}",
                alg.format_monomial(mono),
                n + 2
            )));
        }
    }
    let target = cotangent_module(base);
    let source_degrees: Vec<i32> = base.generators().iter().map(|g| -g.degree + n).collect();
    let mut matrix = GradedMatrix::zeros(target.degrees().to_vec(), source_degrees, 0);
    for i in 0..s.rank() {
        let contracted = alg.apply(&contraction(dr, i), omega2);
        for (b, c) in s.split(&contracted) {
            debug_assert_eq!(b.len(), 1);
            matrix.set(b[0].0, i, c);
        }
    }
    Ok(matrix)
}

pub fn sharp(dr: &DeRhamComplex, form: &ClosedForm, n: i32) -> Result<SharpData> {
    if form.p != 2 || form.n != n {
        return Err(Error::WrongWeightOrDegree(format!("expected a closed 2-form of degree {n}, got p = {}, n = {}", form.p, form.n)));
    }
    let zero = Poly::zero();
    let omega2 = form.tail.first().unwrap_or(&zero);
    let matrix = sharp_matrix(dr, omega2, n)?;
    let base = dr.base();
    let source = shifted_tangent(base, n);
    let target = cotangent_module(base);
    let f = ChainMap::new(source.clone(), target.clone(), matrix.clone())?;
    let (det, inverse) = det_and_inverse(f.matrix(), base)?;
    Ok(SharpData { n, form: form.clone(), source, target, matrix, det, inverse })
}

/// `𝕋[-n]`.
pub fn shifted_tangent(base: &Arc<CdgaPresentation>, n: i32) -> FreeComplex {
    tangent_module(base).shift(-n)
}

impl SharpData {
    pub fn ring(&self) -> &Arc<CdgaPresentation> {
        self.target.ring()
    }

    pub fn chain_map(&self) -> ChainMap {
        ChainMap::new(self.source.clone(), self.target.clone(), self.matrix.clone()).expect("validated at construction")
    }

    pub fn is_strict(&self) -> bool {
        self.inverse.is_some()
    }

    /// The pairing `ω(∂_i, ∂_j) = (-1)^{|x_j|} ι_{∂_j} ι_{∂_i} ω_2`, graded
    /// antisymmetric in the degrees of 𝕃.
    pub fn pairing(&self) -> GradedMatrix {
        let degrees = self.target.degrees().to_vec();
        let k = degrees.len();
        let mut out = GradedMatrix::zeros(vec![0; k], vec![0; k], 0);
        for (&(j, i), c) in self.matrix.entries() {
            out.set(i, j, c.scale(&sign(degrees[j] as i64)));
        }
        out
    }

    /// Same map in new bases: `P^{-1} ω^♯ Q` with `P` acting on 𝕃 and `Q` on `𝕋[-n]`.
    pub fn in_basis(&self, p: &GradedMatrix, q: &GradedMatrix) -> Result<SharpData> {
        let alg = self.ring().algebra();
        let (_, p_inv) = det_and_inverse(p, self.ring())?;
        let p_inv = p_inv.ok_or_else(|| Error::NotInvertible { det: "basis change".into() })?;
        let conj = |m: &GradedMatrix| p_inv.compose(alg, &m.compose(alg, q));
        let matrix = conj(&self.matrix);
        let (det, inverse) = det_and_inverse(&matrix, self.ring())?;
        Ok(SharpData { matrix, det, inverse, ..self.clone() })
    }
}

/// The change of basis of `𝕋[-n]` dual to a degree-0 change `P` of 𝕃.
pub fn dual_basis_change(p: &GradedMatrix, ring: &Arc<CdgaPresentation>, n: i32) -> Result<GradedMatrix> {
    let (_, inv) = det_and_inverse(p, ring)?;
    let inv = inv.ok_or_else(|| Error::NotInvertible { det: "basis change".into() })?;
    let q = hom_pre(&inv, &[0]);
    let degrees: Vec<i32> = p.col_degrees().iter().map(|d| n - d).collect();
    let mut out = GradedMatrix::zeros(degrees.clone(), degrees, 0);
    out.place(0, 0, &q.with_degree(0));
    Ok(out)
}

/// `ω^♯` is an equivalence at every point; `strict` records a unit determinant.
pub fn is_nondegenerate(s: &SharpData, points: &[Point]) -> Result<NondegeneracyReport> {
    let failing = quasi_iso_failures(&s.chain_map(), points)?;
    Ok(NondegeneracyReport { nondegenerate: failing.is_empty(), strict: s.is_strict(), failing_points: failing })
}

/// `M_γ = γ^♯ ∘ (ω^♯)^{-1} ∈ End(𝕃)`.
pub fn endomorphism(s: &SharpData, gamma: &GradedMatrix) -> Result<GradedMatrix> {
    let inv = s.inverse.as_ref().ok_or_else(|| Error::NotInvertible { det: s.ring().algebra().format(&s.det) })?;
    Ok(gamma.compose(s.ring().algebra(), inv))
}

/// `B(α, β) = ½ sTr(M_α M_β)` from the matrices of `α^♯` and `β^♯`.
pub fn bilinear_from_matrices(s: &SharpData, alpha: &GradedMatrix, beta: &GradedMatrix) -> Result<Poly> {
    let ma = endomorphism(s, alpha)?;
    let mb = endomorphism(s, beta)?;
    let prod = ma.compose(s.ring().algebra(), &mb);
    Ok(supertrace(&prod)?.scale(&q_frac(1, 2)))
}

pub fn bilinear_form(dr: &DeRhamComplex, s: &SharpData, alpha: &ClosedForm, beta: &ClosedForm) -> Result<Poly> {
    let a = sharp(dr, alpha, s.n)?;
    let b = sharp(dr, beta, s.n)?;
    let (a, b) = (a.matrix, b.matrix);
    bilinear_from_matrices(s, &a, &b)
}

/// `q(α) = B(α, α)`.
pub fn quadratic_form(dr: &DeRhamComplex, s: &SharpData, alpha: &ClosedForm) -> Result<Poly> {
    bilinear_form(dr, s, alpha, alpha)
}

/// Cohomology of `Hom(A[-n], Sym²𝕃)`; its `H⁰` is `H^n(Sym²𝕃)`.
pub fn qf_space(a: &Arc<CdgaPresentation>, n: i32, eval: Evaluation<'_>) -> Result<CohomologyTable> {
    let s2 = sym2_cotangent(a);
    let source = FreeComplex::unit(a.clone()).shift(-n);
    FreeComplex::hom(&source, &s2)?.cohomology(eval)
}

#[cfg(test)]
mod tests;
