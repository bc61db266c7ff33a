//! The de Rham algebra `DR(A) = Sym_A(𝕃_A[-1])` as a graded mixed complex,
//! truncated to weights `≤ W` and total polynomial length `≤ D`, where every
//! `dx_i` counts as one factor.
//!
//! `ε` preserves the length and the internal differential never lowers it
//! (constant terms in `d` are rejected), so the window is a quotient graded
//! mixed complex and everything computed inside it is exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cdga::{monomial_length, CdgaPresentation, Monomial, Poly, SymbolAlgebra};
use crate::complexes::{Evaluation, FreeComplex, RationalBlocks};
use crate::error::{Error, Result};
use crate::graded_mixed::{gm_hom, GradedMixedComplex};
use crate::kernel::{GradedMatrix, Scalar};

#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    symbols: SymbolAlgebra,
    max_weight: u32,
    max_polydeg: u32,
    bases: BTreeMap<u32, Vec<Monomial>>,
    coefficients: Arc<CdgaPresentation>,
    gmc: GradedMixedComplex,
    dropped_terms: bool,
}

/// Result of checking `ε² = 0` and `εd + dε = 0` monomial by monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub monomials_checked: usize,
    pub epsilon_square_failures: Vec<String>,
    pub anticommutator_failures: Vec<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.epsilon_square_failures.is_empty() && self.anticommutator_failures.is_empty()
    }
}

/// Build `DR(A)` in the window `(W, D)`.
pub fn build_dr(a: &Arc<CdgaPresentation>, max_weight: u32, max_polydeg: u32) -> Result<DeRhamComplex> {
    for (g, image) in a.generators().iter().zip(&a.differential().images) {
        if !image.constant_term().is_zero() {
            return Err(Error::TruncationTooSmall(format!(
                "d({}) has a constant term, so polynomial truncation is not a quotient complex",
                g.name
            )));
        }
    }
    let symbols = SymbolAlgebra::new(a.clone(), 1);
    let alg = symbols.algebra();
    let mut bases: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in alg.monomials_up_to(max_polydeg) {
        let w = symbols.weight(&m);
        if w <= max_weight {
            bases.entry(w).or_default().push(m);
        }
    }
    let ground = Arc::new(CdgaPresentation::ground());
    let index: BTreeMap<u32, BTreeMap<&Monomial, usize>> =
        bases.iter().map(|(w, b)| (*w, b.iter().enumerate().map(|(k, m)| (m, k)).collect())).collect();
    let mut dropped = false;
    let mut weights = BTreeMap::new();
    let mut epsilon = BTreeMap::new();
    for (&w, basis) in &bases {
        let degrees: Vec<i32> = basis.iter().map(|m| alg.monomial_degree(m)).collect();
        let labels: Vec<String> = basis.iter().map(|m| alg.format_monomial(m)).collect();
        let mut d = GradedMatrix::zeros(degrees.clone(), degrees.clone(), 1);
        for (j, m) in basis.iter().enumerate() {
            let image = symbols.total().d(&Poly::term(m.clone(), Scalar::one()));
            for (mm, c) in image.terms() {
                match index[&w].get(mm) {
                    Some(&i) => d.add_scalar_to(i, j, c.clone()),
                    None => dropped = true,
                }
            }
        }
        weights.insert(w as i32, FreeComplex::assemble(ground.clone(), labels, d));
        if let Some(next) = index.get(&(w + 1)) {
            let next_degrees: Vec<i32> = bases[&(w + 1)].iter().map(|m| alg.monomial_degree(m)).collect();
            let mut e = GradedMatrix::zeros(next_degrees, degrees, 1);
            for (j, m) in basis.iter().enumerate() {
                let image = alg.apply(symbols.sigma(), &Poly::term(m.clone(), Scalar::one()));
                for (mm, c) in image.terms() {
                    e.add_scalar_to(next[mm], j, c.clone());
                }
            }
            epsilon.insert(w as i32, e);
        }
    }
    let gmc = GradedMixedComplex::assemble(ground.clone(), weights, epsilon);
    Ok(DeRhamComplex { symbols, max_weight, max_polydeg, bases, coefficients: ground, gmc, dropped_terms: dropped })
}

impl DeRhamComplex {
    pub fn base(&self) -> &Arc<CdgaPresentation> {
        self.symbols.base()
    }

    pub fn symbols(&self) -> &SymbolAlgebra {
        &self.symbols
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn max_polydeg(&self) -> u32 {
        self.max_polydeg
    }

    /// The ring the forms are linear over: the ground field, or `B` after [`relative_dr`].
    pub fn coefficients(&self) -> &Arc<CdgaPresentation> {
        &self.coefficients
    }

    pub fn gmc(&self) -> &GradedMixedComplex {
        &self.gmc
    }

    /// Some internal differential left the length window and was dropped.
    pub fn dropped_terms(&self) -> bool {
        self.dropped_terms
    }

    pub fn basis(&self, weight: u32) -> &[Monomial] {
        self.bases.get(&weight).map_or(&[], Vec::as_slice)
    }

    /// The untruncated algebra has a nonzero part of weight `W + 1`.
    pub fn exceeds_window(&self) -> bool {
        let alg = self.symbols.algebra();
        let odd_count = (0..self.symbols.rank()).filter(|&i| alg.is_odd(i)).count() as u32;
        let has_even_symbol = odd_count < self.symbols.rank() as u32;
        has_even_symbol || self.max_weight < odd_count
    }

    pub fn format(&self, p: &Poly) -> String {
        self.symbols.algebra().format(p)
    }

    pub fn in_window(&self, m: &Monomial) -> bool {
        monomial_length(m) <= self.max_polydeg && self.symbols.weight(m) <= self.max_weight
    }

    /// `d` of the full (untruncated) algebra.
    pub fn d(&self, p: &Poly) -> Poly {
        self.symbols.total().d(p)
    }

    /// The de Rham differential of the full algebra.
    pub fn epsilon(&self, p: &Poly) -> Poly {
        self.symbols.algebra().apply(self.symbols.sigma(), p)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.symbols.algebra().mul(a, b)
    }

    /// Parse-free element construction: `coeff · Π factors` with factors given
    /// as generator names (`x`) or symbol names (`dx`).
    pub fn monomial(&self, coeff: Scalar, factors: &[&str]) -> Result<Poly> {
        let alg = self.symbols.algebra();
        let mut p = Poly::constant(coeff);
        for f in factors {
            let i = alg.index_of(f).ok_or_else(|| Error::UndeclaredSymbol(f.to_string()))?;
            p = alg.mul(&p, &Poly::var(i));
        }
        Ok(p)
    }

    /// `ε² = 0` and `εd + dε = 0` on every basis monomial in the window.
    pub fn check_identities(&self) -> IdentityReport {
        let mut report = IdentityReport { monomials_checked: 0, epsilon_square_failures: Vec::new(), anticommutator_failures: Vec::new() };
        let alg = self.symbols.algebra();
        for basis in self.bases.values() {
            for m in basis {
                report.monomials_checked += 1;
                let x = Poly::term(m.clone(), Scalar::one());
                let ex = self.epsilon(&x);
                if !self.epsilon(&ex).is_zero() {
                    report.epsilon_square_failures.push(alg.format_monomial(m));
                }
                if !(&self.epsilon(&self.d(&x)) + &self.d(&ex)).is_zero() {
                    report.anticommutator_failures.push(alg.format_monomial(m));
                }
            }
        }
        report
    }

    /// Coordinates of a homogeneous-weight element in the basis of its weight.
    /// Terms outside the window are reported as an error.
    pub fn coordinates(&self, weight: u32, p: &Poly) -> Result<Vec<Scalar>> {
        let basis = self.basis(weight);
        let mut out = vec![Scalar::zero(); basis.len()];
        for (m, c) in p.terms() {
            let k = basis.iter().position(|b| b == m).ok_or_else(|| {
                Error::TruncationTooSmall(format!("{} is outside weight {weight} of the window", self.symbols.algebra().format_monomial(m)))
            })?;
            out[k] = c.clone();
        }
        Ok(out)
    }

    pub fn element(&self, weight: u32, coords: &[Scalar]) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in self.basis(weight).iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// `DR(X) ⊗_k B`: the same weights with coefficients extended to `B`.
pub fn relative_dr(dr: &DeRhamComplex, b: &Arc<CdgaPresentation>) -> Result<DeRhamComplex> {
    let gmc = dr.gmc.extend_scalars(b)?;
    Ok(DeRhamComplex { coefficients: b.clone(), gmc, ..dr.clone() })
}

/// A closed `p`-form of degree `n`: `ω_p, ω_{p+1}, …, ω_W` with `ω_i` of
/// weight `i` and degree `n + p`, `dω_p = 0` and `dω_{i+1} + εω_i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub p: u32,
    pub n: i32,
    pub tail: Vec<Poly>,
}

/// Outcome of checking the closure equations against the full algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// Every equation holds inside the window.
    pub closed: bool,
    /// Some residual lies outside the window (including `εω_W ≠ 0`).
    pub window_limited: bool,
}

impl ClosedForm {
    pub fn new(p: u32, n: i32, tail: Vec<Poly>) -> Self {
        Self { p, n, tail }
    }

    /// Checks degrees and the closure equations with the derivations of the
    /// full algebra, independently of any matrix.
    pub fn verify(&self, dr: &DeRhamComplex) -> Result<ClosureReport> {
        let alg = dr.symbols().algebra();
        let want = self.n + self.p as i32;
        for (k, w) in self.tail.iter().enumerate() {
            let weight = self.p + k as u32;
            for (m, _) in w.terms() {
                if dr.symbols().weight(m) != weight || alg.monomial_degree(m) != want {
                    return Err(Error::WrongWeightOrDegree(format!(
                        "term {} of ω_{weight} should have weight {weight} and degree {want}",
                        alg.format_monomial(m)
                    )));
                }
            }
        }
        let mut closed = true;
        let mut limited = false;
        let mut check = |residual: Poly| {
            for (m, _) in residual.terms() {
                if dr.in_window(m) {
                    closed = false;
                } else {
                    limited = true;
                }
            }
        };
        let zero = Poly::zero();
        check(dr.d(self.tail.first().unwrap_or(&zero)));
        for k in 0..self.tail.len() {
            let next = self.tail.get(k + 1).unwrap_or(&zero);
            check(&dr.d(next) + &dr.epsilon(&self.tail[k]));
        }
        Ok(ClosureReport { closed, window_limited: limited })
    }
}

/// `ω_p`.
pub fn underlying_form(c: &ClosedForm) -> Poly {
    c.tail.first().cloned().unwrap_or_default()
}

/// Closed forms as `H⁰ |Hom(k(p)[-n-p], DR)|`.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    pub complex: FreeComplex,
    pub forms: Vec<ClosedForm>,
    pub window_limited: bool,
}

pub fn closed_forms(dr: &DeRhamComplex, p: u32, n: i32) -> Result<ClosedForms> {
    if p > dr.max_weight {
        return Err(Error::TruncationTooSmall(format!("weight {p} exceeds the window W = {}", dr.max_weight)));
    }
    if !dr.coefficients.is_empty() {
        return Err(Error::Invalid("closed_forms needs ground-field coefficients; use closed_forms_dimension".into()));
    }
    let source = GradedMixedComplex::pure(dr.coefficients.clone(), p as i32, n + p as i32);
    let realized = gm_hom(&source, &dr.gmc)?.realization();
    let blocks = RationalBlocks::new(&realized.complex);
    let positions = blocks.indices(0).to_vec();
    let mut forms = Vec::new();
    let mut limited = dr.dropped_terms;
    for v in blocks.cohomology_basis(0) {
        let mut full = vec![Scalar::zero(); realized.complex.rank()];
        for (k, &pos) in positions.iter().enumerate() {
            full[pos] = v[k].clone();
        }
        let top = realized.blocks.iter().map(|b| b.0).max().unwrap_or(0);
        let mut tail = vec![Poly::zero(); top as usize + 1];
        for &(q, off, len) in &realized.blocks {
            let weight = p + q as u32;
            debug_assert_eq!(len, dr.basis(weight).len());
            tail[q as usize] = dr.element(weight, &full[off..off + len]);
        }
        while tail.len() > 1 && tail.last().is_some_and(Poly::is_zero) {
            tail.pop();
        }
        let form = ClosedForm::new(p, n, tail);
        let report = form.verify(dr)?;
        if !report.closed {
            return Err(Error::Invalid("solver returned a form that fails the closure equations".into()));
        }
        limited |= report.window_limited;
        forms.push(form);
    }
    Ok(ClosedForms { complex: realized.complex, forms, window_limited: limited })
}

/// `dim_k H⁰ |Hom(k(p)[-n-p], DR)|`, also for relative de Rham complexes.
pub fn closed_forms_dimension(dr: &DeRhamComplex, p: u32, n: i32, eval: Evaluation<'_>) -> Result<usize> {
    let source = GradedMixedComplex::pure(dr.coefficients.clone(), p as i32, n + p as i32);
    let realized = gm_hom(&source, &dr.gmc)?.realization();
    Ok(realized.complex.cohomology(eval)?.dim(0))
}

#[cfg(test)]
mod tests;
