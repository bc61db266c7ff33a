//! Point-level computations on the moduli of pre-symplectic structures:
//! Lie coalgebroid validation, the cotangent complex of the source-target
//! map, the (co)tangent complex of `PrSymp(X, n)` at an `A`-point, and the
//! base-change comparison behind the global cotangent complex.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::cdga::{cotangent_module, CdgaPresentation, Derivation, GcAlgebra, Generator, Monomial, Poly, RingMap};
use crate::complexes::{hom_post, hom_pre, ChainMap, Evaluation, FreeComplex};
use crate::derham::{build_dr, relative_dr, ClosedForm, DeRhamComplex};
use crate::error::{Error, Result};
use crate::graded_mixed::{
    find_signed_permutation, gm_dual, gm_hom, gm_tensor, mapping_space_pi0, tensor_hom_comparison, GmMap, GradedMixedComplex,
    RealizationResult,
};
use crate::kernel::{sign, GradedMatrix, Scalar};

/// A perfect complex `F` over `A` with a candidate mixed structure on
/// `Sym_A(F[-1])`, given on generators.
///
/// The total algebra has one symbol per basis element of `F`, of degree
/// `|f_k| + 1` and weight 1, followed by the generators of `A` in weight 0.
/// `epsilon` lists the images of all of these, in that order.
#[derive(Clone, Debug)]
pub struct CoalgebroidCandidate {
    module: FreeComplex,
    epsilon: Vec<Poly>,
    max_weight: u32,
    max_length: u32,
    total: CdgaPresentation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Derivation,
    Weight,
    Degree,
    SquareZero,
    CommutesWithD,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::Derivation, Axiom::Weight, Axiom::Degree, Axiom::SquareZero, Axiom::CommutesWithD];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Derivation => "derivation",
            Axiom::Weight => "weight +1",
            Axiom::Degree => "degree +1",
            Axiom::SquareZero => "ε² = 0",
            Axiom::CommutesWithD => "εd + dε = 0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// Monomials (or generators) on which the axiom fails, in basis order.
    pub offending: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebroidReport {
    pub checks: Vec<AxiomCheck>,
    pub monomials_checked: usize,
}

impl CoalgebroidReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }
}

impl CoalgebroidCandidate {
    pub fn new(module: FreeComplex, epsilon: Vec<Poly>, max_weight: u32, max_length: u32) -> Result<Self> {
        let base = module.ring().clone();
        let k = module.rank();
        let mut gens: Vec<Generator> =
            module.labels().iter().zip(module.degrees()).map(|(l, &d)| Generator::new(l.clone(), d + 1)).collect();
        gens.extend(base.generators().iter().cloned());
        if epsilon.len() != gens.len() {
            return Err(Error::Invalid(format!("ε needs {} images, got {}", gens.len(), epsilon.len())));
        }
        let alg = GcAlgebra::new(gens.clone());
        let lift = |p: &Poly| p.reindex(|i| i + k);
        // F[-1] carries -d_F
        let mut d_images = Vec::with_capacity(gens.len());
        for col in 0..k {
            let mut image = Poly::zero();
            for row in 0..k {
                let c = module.differential().get_or_zero(row, col);
                if !c.is_zero() {
                    image = &image - &alg.mul(&Poly::var(row), &lift(&c));
                }
            }
            d_images.push(image);
        }
        d_images.extend(base.differential().images.iter().map(lift));
        let total = CdgaPresentation::new_unchecked(gens, d_images)?;
        for (g, image) in total.generators().iter().zip(&epsilon) {
            if let Some(m) = image.terms().map(|(m, _)| m).find(|m| m.iter().any(|&(i, _)| i >= total.len())) {
                return Err(Error::UndeclaredSymbol(format!("generator index in ε({}): {:?}", g.name, m)));
            }
        }
        Ok(Self { module, epsilon, max_weight, max_length, total })
    }

    /// `F = 𝕃_A` with the de Rham differential.
    pub fn de_rham(base: &Arc<CdgaPresentation>, max_weight: u32, max_length: u32) -> Result<Self> {
        let m = base.len();
        let mut eps = vec![Poly::zero(); m];
        eps.extend((0..m).map(Poly::var));
        Self::new(cotangent_module(base), eps, max_weight, max_length)
    }

    /// `ε = 0`.
    pub fn trivial(module: FreeComplex, max_weight: u32, max_length: u32) -> Result<Self> {
        let n = module.rank() + module.ring().len();
        Self::new(module, vec![Poly::zero(); n], max_weight, max_length)
    }

    pub fn module(&self) -> &FreeComplex {
        &self.module
    }

    pub fn total(&self) -> &CdgaPresentation {
        &self.total
    }

    fn weight(&self, m: &Monomial) -> u32 {
        let k = self.module.rank();
        m.iter().filter(|(g, _)| *g < k).map(|&(_, e)| e).sum()
    }

    fn derivation(&self) -> Derivation {
        Derivation { degree: 1, images: self.epsilon.clone() }
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        self.total.algebra().apply(&self.derivation(), p)
    }

    /// Basis monomials of `Sym_A(F[-1])` inside the window.
    pub fn basis(&self) -> Vec<Monomial> {
        self.total.algebra().monomials_up_to(self.max_length).into_iter().filter(|m| self.weight(m) <= self.max_weight).collect()
    }
}

/// Check the Lie coalgebroid axioms inside the truncation window.
pub fn validate_coalgebroid(c: &CoalgebroidCandidate) -> CoalgebroidReport {
    let alg = c.total.algebra();
    let mut offending: BTreeMap<Axiom, Vec<String>> = Axiom::ALL.iter().map(|&a| (a, Vec::new())).collect();
    for (g, (gen, image)) in alg.generators().iter().zip(&c.epsilon).enumerate() {
        let w = c.weight(&vec![(g, 1)]);
        if image.terms().any(|(m, _)| c.weight(m) != w + 1) {
            offending.get_mut(&Axiom::Weight).unwrap().push(gen.name.clone());
        }
        if !alg.is_homogeneous_of(image, gen.degree + 1) {
            offending.get_mut(&Axiom::Degree).unwrap().push(gen.name.clone());
        }
    }
    let basis = c.basis();
    for m in &basis {
        let x = Poly::term(m.clone(), Scalar::one());
        let ex = c.apply(&x);
        if !c.apply(&ex).is_zero() {
            offending.get_mut(&Axiom::SquareZero).unwrap().push(alg.format_monomial(m));
        }
        if !(&c.apply(&c.total.d(&x)) + &c.total.d(&ex)).is_zero() {
            offending.get_mut(&Axiom::CommutesWithD).unwrap().push(alg.format_monomial(m));
        }
        // Leibniz against every generator: ε(g·m) = ε(g)m + (-1)^{|g|} g ε(m)
        for g in 0..alg.len() {
            let gp = Poly::var(g);
            let lhs = c.apply(&alg.mul(&gp, &x));
            let rhs = &alg.mul(&c.epsilon[g], &x) + &alg.mul(&gp, &ex).scale(&sign(alg.degree(g) as i64));
            if lhs != rhs {
                offending.get_mut(&Axiom::Derivation).unwrap().push(alg.format_monomial(m));
                break;
            }
        }
    }
    let checks = offending.into_iter().map(|(axiom, off)| AxiomCheck { axiom, passed: off.is_empty(), offending: off }).collect();
    CoalgebroidReport { checks, monomials_checked: basis.len() }
}

/// `𝕃_{(s,t),f} = |Hom(E, F)^∨|^l`.
pub fn cotangent_st(e: &GradedMixedComplex, f: &GradedMixedComplex) -> Result<RealizationResult> {
    Ok(gm_dual(&gm_hom(e, f)?).left_realization())
}

/// `dim π₀ Map(E, F ⊗ triv(M))`, the relative derivations with values in `M`.
pub fn relative_derivations(e: &GradedMixedComplex, f: &GradedMixedComplex, m: &FreeComplex, eval: Evaluation<'_>) -> Result<usize> {
    let target = gm_tensor(f, &GradedMixedComplex::triv(m))?;
    mapping_space_pi0(e, &target, eval)
}

/// `dim H⁰ Hom(𝕃_{(s,t)}, M)`, the other side of the defining adjunction.
pub fn derivations_from_cotangent(e: &GradedMixedComplex, f: &GradedMixedComplex, m: &FreeComplex, eval: Evaluation<'_>) -> Result<usize> {
    let l = cotangent_st(e, f)?.complex;
    Ok(FreeComplex::hom(&l, m)?.cohomology(eval)?.dim(0))
}

/// `E = B(2)[-n-2]` and `F = DR(X) ⊗ B`, the pair attached to a `B`-point of `PrSymp(X, n)`.
pub fn prsymp_pair(dr: &DeRhamComplex, n: i32, base: &Arc<CdgaPresentation>) -> Result<(GradedMixedComplex, DeRhamComplex)> {
    let rel = relative_dr(dr, base)?;
    Ok((GradedMixedComplex::pure(base.clone(), 2, n + 2), rel))
}

/// `⊕_{2≤p≤W} Hom_B(B[-n-2], DR(X)(p) ⊗ B)^∨` with the twisted differential.
#[derive(Clone, Debug)]
pub struct PrSympCotangent {
    pub n: i32,
    pub complex: FreeComplex,
    /// `(p, offset, rank)` for every nonzero summand, in increasing `p`.
    pub blocks: Vec<(u32, usize, usize)>,
    /// The sum was cut at `W` while `DR(X)` continues, or `d` left the length window.
    pub window_limited: bool,
}

fn check_window(max_weight: u32) -> Result<()> {
    if max_weight < 2 {
        return Err(Error::TruncationTooSmall(format!("weight window W = {max_weight} has no 2-forms")));
    }
    Ok(())
}

pub fn cotangent_prsymp(
    a: &Arc<CdgaPresentation>,
    n: i32,
    base: &Arc<CdgaPresentation>,
    max_weight: u32,
    max_polydeg: u32,
) -> Result<PrSympCotangent> {
    check_window(max_weight)?;
    let dr = build_dr(a, max_weight, max_polydeg)?;
    cotangent_prsymp_of(&dr, n, base)
}

/// [`cotangent_prsymp`] for an already built `DR(X)`.
pub fn cotangent_prsymp_of(dr: &DeRhamComplex, n: i32, base: &Arc<CdgaPresentation>) -> Result<PrSympCotangent> {
    check_window(dr.max_weight())?;
    let rel = relative_dr(dr, base)?;
    let gm = rel.gmc();
    let source = FreeComplex::unit(base.clone()).shift(-n - 2);
    let mut pieces: Vec<(u32, FreeComplex)> = Vec::new();
    for p in 2..=dr.max_weight() {
        if let Some(c) = gm.component(p as i32) {
            pieces.push((p, FreeComplex::hom(&source, c)?.dual()));
        }
    }
    let mut blocks = Vec::new();
    let mut offset = 0;
    for (p, c) in &pieces {
        blocks.push((*p, offset, c.rank()));
        offset += c.rank();
    }
    let degrees: Vec<i32> = pieces.iter().flat_map(|(_, c)| c.degrees().iter().copied()).collect();
    let labels: Vec<String> = pieces.iter().flat_map(|(_, c)| c.labels().iter().cloned()).collect();
    let mut d = GradedMatrix::zeros(degrees.clone(), degrees, 1);
    for (k, (p, c)) in pieces.iter().enumerate() {
        let off = blocks[k].1;
        d.place(off, off, c.differential());
        // ε: DR(p) -> DR(p+1) induces Hom(.., DR(p+1))^∨ -> Hom(.., DR(p))^∨
        if let Some(&(q, off2, _)) = blocks.get(k + 1) {
            if q == p + 1 {
                let post = hom_post(&gm.epsilon(*p as i32), source.degrees());
                d.place(off, off2, &hom_pre(&post, &[0]).neg());
            }
        }
    }
    let complex = FreeComplex::new(base.clone(), labels, d)?;
    Ok(PrSympCotangent { n, complex, blocks, window_limited: dr.exceeds_window() || dr.dropped_terms() })
}

/// The block permutation identifying [`PrSympCotangent`] with
/// `|Hom(B(2)[-n-2], DR ⊗ B)^∨|^l`, verified as a chain map.
pub fn prsymp_st_comparison(c: &PrSympCotangent, st: &RealizationResult) -> Result<ChainMap> {
    let mut m = GradedMatrix::zeros(st.complex.degrees().to_vec(), c.complex.degrees().to_vec(), 0);
    let mut covered = 0;
    for &(p, off, rank) in &c.blocks {
        // Hom(E, F)(r) = Hom(E(2), F(r + 2)), so the summand p sits in dual weight 2 - p
        let weight = 2 - p as i32;
        let (off2, rank2) = st
            .block_of(weight)
            .ok_or_else(|| Error::InvalidChainMap(format!("weight {weight} is missing on the source-target side")))?;
        if rank != rank2 {
            return Err(Error::InvalidChainMap(format!("summand p = {p} has rank {rank} against {rank2}")));
        }
        for i in 0..rank {
            m.set(off2 + i, off + i, Poly::one());
        }
        covered += rank;
    }
    if covered != st.complex.rank() {
        return Err(Error::InvalidChainMap("the source-target side has extra summands".into()));
    }
    ChainMap::new(c.complex.clone(), st.complex.clone(), m)
}

/// `𝕋 = Hom_B(B[-n-2], |DR(X)^{≥2} ⊗ B|)`, for `DR(X)` bounded inside the window.
pub fn tangent_prsymp(
    a: &Arc<CdgaPresentation>,
    n: i32,
    base: &Arc<CdgaPresentation>,
    max_weight: u32,
    max_polydeg: u32,
) -> Result<FreeComplex> {
    check_window(max_weight)?;
    let dr = build_dr(a, max_weight, max_polydeg)?;
    tangent_prsymp_of(&dr, n, base)
}

pub fn tangent_prsymp_of(dr: &DeRhamComplex, n: i32, base: &Arc<CdgaPresentation>) -> Result<FreeComplex> {
    check_window(dr.max_weight())?;
    if dr.exceeds_window() {
        return Err(Error::NotBounded(format!("DR has weights beyond W = {}", dr.max_weight())));
    }
    let rel = relative_dr(dr, base)?;
    let real = rel.gmc().weights_at_least(2).realization().complex;
    FreeComplex::hom(&FreeComplex::unit(base.clone()).shift(-n - 2), &real)
}

/// A label-matched signed permutation `a -> b` that is a chain isomorphism.
pub fn complex_isomorphism(a: &FreeComplex, b: &FreeComplex) -> Option<ChainMap> {
    let f = find_signed_permutation(&GradedMixedComplex::triv(a), &GradedMixedComplex::triv(b))?;
    ChainMap::new(a.clone(), b.clone(), f.block(0)).ok()
}

/// An `A`-point of `PrSymp(X, n)`: a closed 2-form of degree `n` on `X × Spec A`
/// relative to `A`, stored as `A`-coordinates of `ω_p` in the basis of `DR(X)(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuliPoint {
    pub base: Arc<CdgaPresentation>,
    pub n: i32,
    pub tail: Vec<Vec<Poly>>,
}

impl ModuliPoint {
    /// The constant family `ω ⊗ 1`.
    pub fn from_form(dr: &DeRhamComplex, base: &Arc<CdgaPresentation>, form: &ClosedForm) -> Result<Self> {
        if form.p != 2 {
            return Err(Error::WrongWeightOrDegree(format!("expected a 2-form, got weight {}", form.p)));
        }
        let mut tail = Vec::new();
        for (k, w) in form.tail.iter().enumerate() {
            let coords = dr.coordinates(2 + k as u32, w)?;
            tail.push(coords.into_iter().map(Poly::constant).collect());
        }
        Ok(Self { base: base.clone(), n: form.n, tail })
    }

    /// The map `A(2)[-n-2] -> DR(X) ⊗ A` as a degree-0 chain map into the
    /// realization; fails unless the closure equations hold `A`-linearly.
    pub fn cocycle(&self, dr: &DeRhamComplex) -> Result<ChainMap> {
        let rel = relative_dr(dr, &self.base)?;
        let real = rel.gmc().weights_at_least(2).realization();
        let source = FreeComplex::unit(self.base.clone()).shift(-self.n - 2);
        let mut m = GradedMatrix::zeros(real.complex.degrees().to_vec(), source.degrees().to_vec(), 0);
        for (k, coords) in self.tail.iter().enumerate() {
            let weight = 2 + k as i32;
            let nonzero = coords.iter().any(|c| !c.is_zero());
            match real.block_of(weight) {
                Some((off, rank)) if rank == coords.len() => {
                    for (i, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            m.set(off + i, 0, c.clone());
                        }
                    }
                }
                None if !nonzero => {}
                _ => return Err(Error::TruncationTooSmall(format!("weight {weight} of the tail does not fit the window"))),
            }
        }
        ChainMap::new(source, real.complex, m)
    }
}

/// Outcome of comparing `Hom_A(E, F)^∨ ⊗_A B` with `Hom_B(E ⊗ B, F ⊗ B)^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub source_ranks: BTreeMap<i32, usize>,
    pub target_ranks: BTreeMap<i32, usize>,
    /// The canonical comparison is an isomorphism of graded mixed complexes.
    pub isomorphism: bool,
    /// `Hom(E, F) ≅ E^∨ ⊗ F` holds before and after base change.
    pub tensor_hom_source: bool,
    pub tensor_hom_target: bool,
    /// Dimensions over the ground field when the rings are finite dimensional.
    pub source_dimension: Option<usize>,
    pub target_dimension: Option<usize>,
}

fn weight_ranks(m: &GradedMixedComplex) -> BTreeMap<i32, usize> {
    m.components().iter().map(|(p, c)| (*p, c.rank())).collect()
}

fn tensor_hom_iso(e: &GradedMixedComplex, f: &GradedMixedComplex) -> bool {
    tensor_hom_comparison(e, f).map(|g| g.is_isomorphism()).unwrap_or(false)
}

pub fn base_change_check(
    e: &GradedMixedComplex,
    f: &GradedMixedComplex,
    phi: &RingMap,
    target: &Arc<CdgaPresentation>,
) -> Result<BaseChangeReport> {
    if e.ring() != f.ring() {
        return Err(Error::BaseRingMismatch);
    }
    RingMap::new(e.ring(), target, phi.images().to_vec())?;
    let source = gm_dual(&gm_hom(e, f)?);
    let pulled = source.base_change(phi, target.clone());
    let (eb, fb) = (e.base_change(phi, target.clone()), f.base_change(phi, target.clone()));
    let rhs = gm_dual(&gm_hom(&eb, &fb)?);
    let blocks = pulled.components().iter().map(|(p, c)| (*p, GradedMatrix::identity(c.degrees().to_vec()))).collect();
    let isomorphism = GmMap::new(pulled, rhs.clone(), blocks).map(|g| g.is_isomorphism()).unwrap_or(false);
    let rank = |m: &GradedMixedComplex, ring: &CdgaPresentation| ring.finite_dimension().map(|d| d * m.total_rank());
    Ok(BaseChangeReport {
        source_ranks: weight_ranks(&source),
        target_ranks: weight_ranks(&rhs),
        isomorphism,
        tensor_hom_source: tensor_hom_iso(e, f),
        tensor_hom_target: tensor_hom_iso(&eb, &fb),
        source_dimension: rank(&source, e.ring()),
        target_dimension: rank(&rhs, target),
    })
}

#[cfg(test)]
mod tests;
