//! Symmetric algebras on the cotangent module: 𝕃, Sym²𝕃, and the de Rham
//! algebra `Sym(𝕃[-1])`, all realized inside one free graded-commutative
//! algebra on symbols `dx_i` followed by the base generators `x_i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::algebra::{Derivation, GcAlgebra, Generator, Monomial, Poly};
use super::presentation::CdgaPresentation;
use crate::complexes::FreeComplex;
use crate::kernel::{sign, GradedMatrix, Scalar};

/// The base generators together with one symbol per generator, of degree
/// `|x_i| + shift`, and the differential extended so that the symbol map
/// `σ: x_i ↦ dx_i` satisfies `dσ = (-1)^shift σd`.
#[derive(Clone, Debug)]
pub struct SymbolAlgebra {
    base: Arc<CdgaPresentation>,
    shift: i32,
    total: CdgaPresentation,
    sigma: Derivation,
}

impl SymbolAlgebra {
    pub fn new(base: Arc<CdgaPresentation>, shift: i32) -> Self {
        let m = base.len();
        let mut gens: Vec<Generator> = base.generators().iter().map(|g| Generator::new(format!("d{}", g.name), g.degree + shift)).collect();
        gens.extend(base.generators().iter().cloned());
        let lift = |p: &Poly| p.reindex(|i| i + m);
        let mut sigma_images: Vec<Poly> = vec![Poly::zero(); m];
        sigma_images.extend((0..m).map(Poly::var));
        let sigma = Derivation { degree: shift, images: sigma_images };
        let alg = GcAlgebra::new(gens.clone());
        let sg = sign(shift as i64);
        let mut d_images: Vec<Poly> = (0..m).map(|i| alg.apply(&sigma, &lift(&base.differential().images[i])).scale(&sg)).collect();
        d_images.extend((0..m).map(|i| lift(&base.differential().images[i])));
        let total = CdgaPresentation::new_unchecked(gens, d_images).expect("lengths agree");
        Self { base, shift, total, sigma }
    }

    pub fn base(&self) -> &Arc<CdgaPresentation> {
        &self.base
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn total(&self) -> &CdgaPresentation {
        &self.total
    }

    pub fn algebra(&self) -> &GcAlgebra {
        self.total.algebra()
    }

    /// The symbol derivation; for `shift = 1` this is the de Rham differential.
    pub fn sigma(&self) -> &Derivation {
        &self.sigma
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn is_symbol(&self, index: usize) -> bool {
        index < self.rank()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.iter().filter(|(g, _)| self.is_symbol(*g)).map(|&(_, e)| e).sum()
    }

    pub fn lift(&self, p: &Poly) -> Poly {
        let m = self.rank();
        p.reindex(|i| i + m)
    }

    /// Symbol monomials of weight `w`, in total-algebra indices.
    pub fn weight_basis(&self, w: u32) -> Vec<Monomial> {
        let m = self.rank();
        let symbols = GcAlgebra::new(self.algebra().generators()[..m].to_vec());
        symbols.monomials_up_to(w).into_iter().filter(|mono| self.weight(mono) == w).collect()
    }

    /// Write a total-algebra element as `Σ_b b · c_b` with `b` a symbol
    /// monomial and `c_b` in the base.
    pub fn split(&self, p: &Poly) -> BTreeMap<Monomial, Poly> {
        let m = self.rank();
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (mono, c) in p.terms() {
            let cut = mono.iter().position(|&(g, _)| g >= m).unwrap_or(mono.len());
            let rest: Monomial = mono[cut..].iter().map(|&(g, e)| (g - m, e)).collect();
            out.entry(mono[..cut].to_vec()).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The weight-`w` part as a free complex over the base.
    pub fn weight_complex(&self, w: u32) -> FreeComplex {
        let basis = self.weight_basis(w);
        let alg = self.algebra();
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let degrees: Vec<i32> = basis.iter().map(|b| alg.monomial_degree(b)).collect();
        let labels: Vec<String> = basis.iter().map(|b| if b.is_empty() { "1".to_string() } else { alg.format_monomial(b) }).collect();
        let mut d = GradedMatrix::zeros(degrees.clone(), degrees, 1);
        for (j, b) in basis.iter().enumerate() {
            let image = self.total.d(&Poly::term(b.clone(), Scalar::one()));
            for (bb, c) in self.split(&image) {
                d.set(index[&bb], j, c);
            }
        }
        FreeComplex::assemble(self.base.clone(), labels, d)
    }
}

/// 𝕃: free on `dx_i` of degree `|x_i|`, with `d(dx_i)` the formal differential of `d(x_i)`.
pub fn cotangent_module(base: &Arc<CdgaPresentation>) -> FreeComplex {
    SymbolAlgebra::new(base.clone(), 0).weight_complex(1)
}

/// 𝕋 = 𝕃^∨ with basis `∂x_i` of degree `-|x_i|`.
pub fn tangent_module(base: &Arc<CdgaPresentation>) -> FreeComplex {
    let dual = cotangent_module(base).dual();
    let labels = base.generators().iter().map(|g| format!("∂{}", g.name)).collect();
    FreeComplex::assemble(base.clone(), labels, dual.differential().clone())
}

/// Sym²𝕃 with basis the quadratic monomials in the `dx_i`.
pub fn sym2_cotangent(base: &Arc<CdgaPresentation>) -> FreeComplex {
    SymbolAlgebra::new(base.clone(), 0).weight_complex(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn koszul() -> Arc<CdgaPresentation> {
        Arc::new(CdgaPresentation::new(vec![Generator::new("x", 0), Generator::new("e", -1)], vec![Poly::zero(), Poly::var(0)]).unwrap())
    }

    #[test]
    fn polynomial_ring_cotangent_is_rank_one() {
        let base = Arc::new(CdgaPresentation::free(vec![Generator::new("x", 0)]));
        let l = cotangent_module(&base);
        assert_eq!(l.degrees(), &[0]);
        assert!(l.differential().is_zero());
        assert_eq!(l.labels(), &["dx".to_string()]);
    }

    #[test]
    fn koszul_cotangent_differential() {
        let l = cotangent_module(&koszul());
        assert_eq!(l.degrees(), &[0, -1]);
        // d(de) = dx
        assert_eq!(l.differential().get_or_zero(0, 1), Poly::one());
        assert_eq!(l.differential().nnz(), 1);
    }

    #[test]
    fn tangent_is_literally_the_dual() {
        let base = koszul();
        let t = tangent_module(&base);
        let dual = cotangent_module(&base).dual();
        assert_eq!(t.differential(), dual.differential());
        assert_eq!(t.degrees(), &[0, 1]);
    }

    #[test]
    fn sym2_of_odd_generator() {
        let base = Arc::new(CdgaPresentation::free(vec![Generator::new("x", 0), Generator::new("xi", -1)]));
        let s2 = sym2_cotangent(&base);
        // dx^2 and dx*dxi; dxi has degree -1 in 𝕃, so dxi^2 = 0
        assert_eq!(s2.rank(), 2);
        assert_eq!(s2.degrees(), &[0, -1]);
    }

    #[test]
    fn symbol_map_commutes_with_d() {
        let base = Arc::new(
            CdgaPresentation::new(
                vec![Generator::new("x", 0), Generator::new("y", 0), Generator::new("e", -1)],
                vec![Poly::zero(), Poly::zero(), GcAlgebra::new(vec![Generator::new("x", 0), Generator::new("y", 0)]).mul(&Poly::var(0), &Poly::var(1))],
            )
            .unwrap(),
        );
        for shift in [0, 1] {
            let s = SymbolAlgebra::new(base.clone(), shift);
            let alg = s.algebra();
            let e = Poly::var(s.rank() + 2);
            let x = Poly::var(s.rank());
            let p = alg.mul(&alg.mul(&e, &x), &x);
            let lhs = s.total().d(&alg.apply(s.sigma(), &p));
            let rhs = alg.apply(s.sigma(), &s.total().d(&p)).scale(&sign(shift as i64));
            assert_eq!(lhs, rhs);
            let dd = s.total().d(&s.total().d(&alg.apply(s.sigma(), &p)));
            assert!(dd.is_zero());
        }
    }
}
