//! Graded mixed complexes: weight-indexed families `M(p)` of free complexes
//! with a mixed structure `ε: M(p) -> M(p+1)` of degree 1, `ε² = 0` and
//! `εd + dε = 0`.

mod compare;

pub use compare::{
    double_dual_comparison, find_signed_permutation, hom_dual_comparison, tensor_dual_comparison, tensor_hom_comparison,
    GmMap,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::cdga::{CdgaPresentation, RingMap};
use crate::complexes::{defect_of, hom_post, hom_pre, tensor_left, tensor_right, Evaluation, FreeComplex};
use crate::error::{Error, Result};
use crate::kernel::GradedMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedMixedComplex {
    ring: Arc<CdgaPresentation>,
    weights: BTreeMap<i32, FreeComplex>,
    epsilon: BTreeMap<i32, GradedMatrix>,
}

/// A realization together with the position of each weight inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationResult {
    pub complex: FreeComplex,
    /// `(weight, offset, rank)` for each contributing weight, ascending.
    pub blocks: Vec<(i32, usize, usize)>,
}

impl RealizationResult {
    pub fn twisted_differential(&self) -> &GradedMatrix {
        self.complex.differential()
    }

    pub fn block_of(&self, weight: i32) -> Option<(usize, usize)> {
        self.blocks.iter().find(|b| b.0 == weight).map(|b| (b.1, b.2))
    }
}

impl GradedMixedComplex {
    /// Validates shapes, `ε² = 0` and `εd + dε = 0`. Rank-zero weights are dropped.
    pub fn new(
        ring: Arc<CdgaPresentation>,
        weights: BTreeMap<i32, FreeComplex>,
        epsilon: BTreeMap<i32, GradedMatrix>,
    ) -> Result<Self> {
        for c in weights.values() {
            if !c.ring().as_ref().eq(&ring) {
                return Err(Error::BaseRingMismatch);
            }
        }
        let m = Self::assemble(ring, weights, epsilon);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn assemble(
        ring: Arc<CdgaPresentation>,
        mut weights: BTreeMap<i32, FreeComplex>,
        mut epsilon: BTreeMap<i32, GradedMatrix>,
    ) -> Self {
        weights.retain(|_, c| c.rank() > 0);
        epsilon.retain(|p, e| weights.contains_key(p) && weights.contains_key(&(p + 1)) && !e.is_zero());
        let m = Self { ring, weights, epsilon };
        debug_assert!(m.check().is_ok(), "constructed graded mixed complex is invalid: {:?}", m.check());
        m
    }

    pub fn check(&self) -> Result<()> {
        let alg = self.ring.algebra();
        for (&p, e) in &self.epsilon {
            let (Some(src), Some(tgt)) = (self.weights.get(&p), self.weights.get(&(p + 1))) else {
                return Err(Error::Invalid(format!("ε from weight {p} has no source or target")));
            };
            if e.degree() != 1 || e.col_degrees() != src.degrees() || e.row_degrees() != tgt.degrees() {
                return Err(Error::DegreeMismatch(format!("ε from weight {p} has the wrong shape or degree")));
            }
            e.check_homogeneous(alg)?;
            if !defect_of(src, tgt, e).is_zero() {
                return Err(Error::Invalid(format!("εd + dε ≠ 0 on weight {p}")));
            }
            if let Some(e2) = self.epsilon.get(&(p + 1)) {
                if !e2.compose(alg, e).is_zero() {
                    return Err(Error::Invalid(format!("ε² ≠ 0 starting in weight {p}")));
                }
            }
        }
        Ok(())
    }

    pub fn zero(ring: Arc<CdgaPresentation>) -> Self {
        Self { ring, weights: BTreeMap::new(), epsilon: BTreeMap::new() }
    }

    /// `c` in weight 0 with `ε = 0`.
    pub fn triv(c: &FreeComplex) -> Self {
        Self::assemble(c.ring().clone(), BTreeMap::from([(0, c.clone())]), BTreeMap::new())
    }

    pub fn unit(ring: Arc<CdgaPresentation>) -> Self {
        Self::triv(&FreeComplex::unit(ring))
    }

    /// The base in weight `weight` and cohomological degree `degree`; `k(p)[-n-p]`
    /// is `pure(ring, p, n + p)`.
    pub fn pure(ring: Arc<CdgaPresentation>, weight: i32, degree: i32) -> Self {
        Self::assemble(ring.clone(), BTreeMap::from([(weight, FreeComplex::point_module(ring, degree))]), BTreeMap::new())
    }

    pub fn ring(&self) -> &Arc<CdgaPresentation> {
        &self.ring
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.weights.keys().copied()
    }

    pub fn components(&self) -> &BTreeMap<i32, FreeComplex> {
        &self.weights
    }

    pub fn component(&self, p: i32) -> Option<&FreeComplex> {
        self.weights.get(&p)
    }

    pub fn degrees(&self, p: i32) -> &[i32] {
        self.weights.get(&p).map_or(&[], |c| c.degrees())
    }

    /// `ε: M(p) -> M(p+1)`, zero when absent.
    pub fn epsilon(&self, p: i32) -> GradedMatrix {
        self.epsilon
            .get(&p)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zeros(self.degrees(p + 1).to_vec(), self.degrees(p).to_vec(), 1))
    }

    pub fn epsilons(&self) -> &BTreeMap<i32, GradedMatrix> {
        &self.epsilon
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.weights.values().map(FreeComplex::rank).sum()
    }

    fn twisted(&self, keep: impl Fn(i32) -> bool) -> RealizationResult {
        let kept: Vec<(i32, &FreeComplex)> = self.weights.iter().filter(|(p, _)| keep(**p)).map(|(p, c)| (*p, c)).collect();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (p, c) in &kept {
            blocks.push((*p, offset, c.rank()));
            offset += c.rank();
        }
        let degrees: Vec<i32> = kept.iter().flat_map(|(_, c)| c.degrees().iter().copied()).collect();
        let labels: Vec<String> = kept.iter().flat_map(|(_, c)| c.labels().iter().cloned()).collect();
        let mut d = GradedMatrix::zeros(degrees.clone(), degrees, 1);
        for (k, &(p, off, _)) in blocks.iter().enumerate() {
            d.place(off, off, self.weights[&p].differential());
            if let (Some(e), Some(&(q, off2, _))) = (self.epsilon.get(&p), blocks.get(k + 1)) {
                if q == p + 1 {
                    d.place(off2, off, e);
                }
            }
        }
        RealizationResult { complex: FreeComplex::assemble(self.ring.clone(), labels, d), blocks }
    }

    /// `|M| = ⊕_{p≥0} M(p)` with differential `d + ε`.
    pub fn realization(&self) -> RealizationResult {
        self.twisted(|p| p >= 0)
    }

    /// `|M|^l = ⊕_{p≤0} M(p)` with differential `d + ε`.
    pub fn left_realization(&self) -> RealizationResult {
        self.twisted(|p| p <= 0)
    }

    /// The sub-object on weights `≥ p0` (stable under `ε`).
    pub fn weights_at_least(&self, p0: i32) -> Self {
        let weights = self.weights.range(p0..).map(|(p, c)| (*p, c.clone())).collect();
        let epsilon = self.epsilon.range(p0..).map(|(p, e)| (*p, e.clone())).collect();
        Self::assemble(self.ring.clone(), weights, epsilon)
    }

    pub fn base_change(&self, map: &RingMap, target: Arc<CdgaPresentation>) -> Self {
        let weights = self.weights.iter().map(|(p, c)| (*p, c.base_change(map, target.clone()))).collect();
        let epsilon =
            self.epsilon.iter().map(|(p, e)| (*p, e.map_entries(|_, _, x| map.apply(&self.ring, &target, x)))).collect();
        Self::assemble(target, weights, epsilon)
    }

    /// `M ⊗_k B` for `M` over the ground field.
    pub fn extend_scalars(&self, target: &Arc<CdgaPresentation>) -> Result<Self> {
        if !self.ring.is_empty() {
            return Err(Error::BaseRingMismatch);
        }
        Ok(self.base_change(&RingMap::from_ground(), target.clone()))
    }
}

fn same_ring(m: &GradedMixedComplex, n: &GradedMixedComplex) -> Result<()> {
    if Arc::ptr_eq(&m.ring, &n.ring) || m.ring == n.ring {
        Ok(())
    } else {
        Err(Error::BaseRingMismatch)
    }
}

/// Block layout of a weight component built as a direct sum of pieces.
struct Layout<K> {
    offsets: BTreeMap<K, usize>,
    degrees: Vec<i32>,
    labels: Vec<String>,
}

impl<K: Ord + Copy> Layout<K> {
    fn new() -> Self {
        Self { offsets: BTreeMap::new(), degrees: Vec::new(), labels: Vec::new() }
    }

    fn push(&mut self, key: K, piece: &FreeComplex) {
        self.offsets.insert(key, self.degrees.len());
        self.degrees.extend_from_slice(piece.degrees());
        self.labels.extend(piece.labels().iter().cloned());
    }
}

/// `(M ⊗ N)(p) = ⊕_{i+j=p} M(i) ⊗ N(j)`, blocks ordered by `i`, with
/// `ε = ε⊗1 + 1⊗ε` (Koszul sign on the second term).
pub fn gm_tensor(m: &GradedMixedComplex, n: &GradedMixedComplex) -> Result<GradedMixedComplex> {
    same_ring(m, n)?;
    let ring = m.ring.clone();
    let mut layouts: BTreeMap<i32, Layout<i32>> = BTreeMap::new();
    let mut pieces: BTreeMap<(i32, i32), FreeComplex> = BTreeMap::new();
    for (&i, a) in &m.weights {
        for (&j, b) in &n.weights {
            pieces.insert((i, j), FreeComplex::tensor(a, b)?);
        }
    }
    for (&(i, j), piece) in &pieces {
        layouts.entry(i + j).or_insert_with(Layout::new).push(i, piece);
    }
    let mut weights = BTreeMap::new();
    let mut epsilon = BTreeMap::new();
    for (&p, lay) in &layouts {
        let mut d = GradedMatrix::zeros(lay.degrees.clone(), lay.degrees.clone(), 1);
        for (&i, &off) in &lay.offsets {
            d.place(off, off, pieces[&(i, p - i)].differential());
        }
        weights.insert(p, FreeComplex::assemble(ring.clone(), lay.labels.clone(), d));
        let Some(next) = layouts.get(&(p + 1)) else { continue };
        let mut e = GradedMatrix::zeros(next.degrees.clone(), lay.degrees.clone(), 1);
        for (&i, &off) in &lay.offsets {
            let j = p - i;
            if let (Some(em), Some(&to)) = (m.epsilon.get(&i), next.offsets.get(&(i + 1))) {
                e.place(to, off, &tensor_left(em, n.degrees(j)));
            }
            if let (Some(en), Some(&to)) = (n.epsilon.get(&j), next.offsets.get(&i)) {
                e.place(to, off, &tensor_right(en, m.degrees(i)));
            }
        }
        epsilon.insert(p, e);
    }
    Ok(GradedMixedComplex::assemble(ring, weights, epsilon))
}

/// `Hom(M, N)(p) = ⊕_q Hom(M(q), N(p+q))`, blocks ordered by `q`, with
/// `ε(f) = ε∘f - (-1)^{|f|} f∘ε`.
pub fn gm_hom(m: &GradedMixedComplex, n: &GradedMixedComplex) -> Result<GradedMixedComplex> {
    same_ring(m, n)?;
    let ring = m.ring.clone();
    let mut layouts: BTreeMap<i32, Layout<i32>> = BTreeMap::new();
    let mut pieces: BTreeMap<(i32, i32), FreeComplex> = BTreeMap::new();
    for (&q, a) in &m.weights {
        for (&r, b) in &n.weights {
            pieces.insert((q, r), FreeComplex::hom(a, b)?);
        }
    }
    let mut order: Vec<(i32, i32)> = pieces.keys().copied().collect();
    order.sort_by_key(|&(q, r)| (r - q, q));
    for (q, r) in order {
        layouts.entry(r - q).or_insert_with(Layout::new).push(q, &pieces[&(q, r)]);
    }
    let mut weights = BTreeMap::new();
    let mut epsilon = BTreeMap::new();
    for (&p, lay) in &layouts {
        let mut d = GradedMatrix::zeros(lay.degrees.clone(), lay.degrees.clone(), 1);
        for (&q, &off) in &lay.offsets {
            d.place(off, off, pieces[&(q, p + q)].differential());
        }
        weights.insert(p, FreeComplex::assemble(ring.clone(), lay.labels.clone(), d));
        let Some(next) = layouts.get(&(p + 1)) else { continue };
        let mut e = GradedMatrix::zeros(next.degrees.clone(), lay.degrees.clone(), 1);
        for (&q, &off) in &lay.offsets {
            let r = p + q;
            if let (Some(en), Some(&to)) = (n.epsilon.get(&r), next.offsets.get(&q)) {
                e.place(to, off, &hom_post(en, m.degrees(q)));
            }
            if let (Some(em), Some(&to)) = (m.epsilon.get(&(q - 1)), next.offsets.get(&(q - 1))) {
                e.place(to, off, &hom_pre(em, n.degrees(r)).neg());
            }
        }
        epsilon.insert(p, e);
    }
    Ok(GradedMixedComplex::assemble(ring, weights, epsilon))
}

/// `M^∨ = Hom(M, A)`, so `M^∨(p) = M(-p)^∨`.
pub fn gm_dual(m: &GradedMixedComplex) -> GradedMixedComplex {
    gm_hom(m, &GradedMixedComplex::unit(m.ring.clone())).expect("same ring")
}

/// `dim H⁰ |Hom(M, N)|`: graded mixed maps `M -> N` up to homotopy.
pub fn mapping_space_pi0(m: &GradedMixedComplex, n: &GradedMixedComplex, eval: Evaluation<'_>) -> Result<usize> {
    let h = gm_hom(m, n)?;
    Ok(h.realization().complex.cohomology(eval)?.dim(0))
}

/// Weights in which either object is supported.
pub(crate) fn joint_support(m: &GradedMixedComplex, n: &GradedMixedComplex) -> BTreeSet<i32> {
    m.support().chain(n.support()).collect()
}

#[cfg(test)]
mod tests;
