//! Bounded complexes of finite-rank free modules over a semi-free cdga.
//!
//! Modules are right modules: an element is `Σ_j e_j a_j`, maps act on the
//! left of basis elements, and the differential obeys
//! `d(e a) = d(e) a + (-1)^{|e|} e d_A(a)`. Over the ground field this is the
//! usual theory of complexes of vector spaces.

mod ops;

pub use ops::{hom_post, hom_pre, tensor_left, tensor_right};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::cdga::{CdgaPresentation, Point, Poly, RingMap};
use crate::error::{Error, Result};
use crate::kernel::{sign, GradedMatrix, QMatrix, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    ring: Arc<CdgaPresentation>,
    labels: Vec<String>,
    differential: GradedMatrix,
}

/// How to turn a complex over a cdga into a complex of finite-dimensional
/// vector spaces.
#[derive(Clone, Copy, Debug)]
pub enum Evaluation<'a> {
    /// Only valid over the ground field.
    Exact,
    /// Derived fibre at a k-point.
    At(&'a Point),
    /// Expand over the monomials of the base with at most this many factors.
    Truncated(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CohomologyTable {
    pub dims: BTreeMap<i32, usize>,
    pub window_limited: bool,
}

impl CohomologyTable {
    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }
}

/// `D·D + S·d_A(D)`: the square of a semi-free differential, as a matrix.
pub(crate) fn semi_free_square(ring: &CdgaPresentation, d: &GradedMatrix) -> GradedMatrix {
    let mut sq = d.compose(ring.algebra(), d);
    if !ring.has_zero_differential() {
        sq = sq.add(&d_entries(ring, d));
    }
    sq
}

/// `S·d_A(F)`: apply `d_A` entrywise, then sign row `i` by `(-1)^{deg i}`.
pub(crate) fn d_entries(ring: &CdgaPresentation, f: &GradedMatrix) -> GradedMatrix {
    let mut out = f.map_entries(|i, _, p| ring.d(p).scale(&sign(f.row_degrees()[i] as i64)));
    out = out.with_degree(f.degree() + 1);
    out
}

impl FreeComplex {
    pub fn new(ring: Arc<CdgaPresentation>, labels: Vec<String>, differential: GradedMatrix) -> Result<Self> {
        if differential.row_degrees() != differential.col_degrees() || differential.degree() != 1 {
            return Err(Error::Invalid("differential must be a degree-1 endomorphism".into()));
        }
        if labels.len() != differential.rows() {
            return Err(Error::Invalid("one label per basis element is required".into()));
        }
        differential.check_homogeneous(ring.algebra())?;
        let c = Self { ring, labels, differential };
        c.check_square_zero()?;
        Ok(c)
    }

    /// Construction that is correct by design; `d^2 = 0` is still asserted in debug builds.
    pub(crate) fn assemble(ring: Arc<CdgaPresentation>, labels: Vec<String>, differential: GradedMatrix) -> Self {
        debug_assert_eq!(labels.len(), differential.rows());
        let c = Self { ring, labels, differential };
        debug_assert!(c.check_square_zero().is_ok(), "constructed complex has d^2 != 0");
        c
    }

    pub fn zero(ring: Arc<CdgaPresentation>) -> Self {
        Self::assemble(ring, Vec::new(), GradedMatrix::zeros(Vec::new(), Vec::new(), 1))
    }

    /// Rank one, zero differential, basis element in `degree`.
    pub fn point_module(ring: Arc<CdgaPresentation>, degree: i32) -> Self {
        Self::assemble(ring, vec!["1".to_string()], GradedMatrix::zeros(vec![degree], vec![degree], 1))
    }

    pub fn unit(ring: Arc<CdgaPresentation>) -> Self {
        Self::point_module(ring, 0)
    }

    /// Zero differential on the given basis.
    pub fn graded_module(ring: Arc<CdgaPresentation>, labels: Vec<String>, degrees: Vec<i32>) -> Self {
        Self::assemble(ring, labels, GradedMatrix::zeros(degrees.clone(), degrees, 1))
    }

    pub fn ring(&self) -> &Arc<CdgaPresentation> {
        &self.ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i32] {
        self.differential.col_degrees()
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn differential(&self) -> &GradedMatrix {
        &self.differential
    }

    pub fn same_ring(&self, other: &FreeComplex) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub fn check_square_zero(&self) -> Result<()> {
        let sq = semi_free_square(&self.ring, &self.differential);
        if let Some((&(i, j), p)) = sq.entries().next() {
            return Err(Error::DifferentialNotSquareZero {
                generator: format!("{} -> {}", self.labels[j], self.labels[i]),
                residue: self.ring.algebra().format(p),
            });
        }
        Ok(())
    }

    /// Ranks per degree.
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &d in self.degrees() {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().iter().map(|&d| if d.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }

    /// `c[s]`: `(c[s])^m = c^{m+s}`, differential multiplied by `(-1)^s`.
    pub fn shift(&self, s: i32) -> FreeComplex {
        let degrees: Vec<i32> = self.degrees().iter().map(|d| d - s).collect();
        let mut d = GradedMatrix::zeros(degrees.clone(), degrees, 1);
        let sg = sign(s as i64);
        for (&(i, j), p) in self.differential.entries() {
            d.set(i, j, p.scale(&sg));
        }
        Self::assemble(self.ring.clone(), self.labels.clone(), d)
    }

    pub fn direct_sum(parts: &[&FreeComplex]) -> Result<FreeComplex> {
        let Some(first) = parts.first() else {
            return Err(Error::Invalid("empty direct sum".into()));
        };
        if parts.iter().any(|p| !p.same_ring(first)) {
            return Err(Error::BaseRingMismatch);
        }
        let degrees: Vec<i32> = parts.iter().flat_map(|p| p.degrees().iter().copied()).collect();
        let labels: Vec<String> = parts.iter().flat_map(|p| p.labels.iter().cloned()).collect();
        let mut d = GradedMatrix::zeros(degrees.clone(), degrees, 1);
        let mut offset = 0;
        for p in parts {
            d.place(offset, offset, &p.differential);
            offset += p.rank();
        }
        Ok(Self::assemble(first.ring.clone(), labels, d))
    }

    /// Internal Hom: `Hom(a, b)` with basis the elementary maps `E_ij`,
    /// `E_ij(a_j) = b_i`, ordered with `i` major, and differential
    /// `f ↦ d∘f - (-1)^{|f|} f∘d`.
    pub fn hom(a: &FreeComplex, b: &FreeComplex) -> Result<FreeComplex> {
        if !a.same_ring(b) {
            return Err(Error::BaseRingMismatch);
        }
        let post = hom_post(&b.differential, a.degrees());
        let pre = hom_pre(&a.differential, b.degrees());
        let d = post.sub(&pre);
        Ok(Self::assemble(a.ring.clone(), hom_labels(a, b), d))
    }

    /// `Hom(c, A)`.
    pub fn dual(&self) -> FreeComplex {
        let unit = FreeComplex::unit(self.ring.clone());
        Self::hom(self, &unit).expect("same ring")
    }

    /// Tensor product over the base, basis `a_i ⊗ b_k` with `i` major and
    /// differential `d⊗1 + 1⊗d` with the Koszul sign.
    pub fn tensor(a: &FreeComplex, b: &FreeComplex) -> Result<FreeComplex> {
        if !a.same_ring(b) {
            return Err(Error::BaseRingMismatch);
        }
        let d = tensor_left(&a.differential, b.degrees()).add(&tensor_right(&b.differential, a.degrees()));
        let labels = a.labels.iter().flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}"))).collect();
        Ok(Self::assemble(a.ring.clone(), labels, d))
    }

    /// Base change along a ring map, entrywise.
    pub fn base_change(&self, map: &RingMap, target: Arc<CdgaPresentation>) -> FreeComplex {
        let d = self.differential.map_entries(|_, _, p| map.apply(&self.ring, &target, p));
        Self::assemble(target, self.labels.clone(), d)
    }

    /// The fibre `c ⊗_A k` at a k-point.
    pub fn evaluate(&self, point: &Point) -> Result<FreeComplex> {
        point.check(&self.ring)?;
        let alg = self.ring.algebra();
        let d = self.differential.map_entries(|_, _, p| Poly::constant(point.eval(alg, p)));
        Ok(Self::assemble(Arc::new(CdgaPresentation::ground()), self.labels.clone(), d))
    }

    /// The vector-space complex spanned by `e_j · m` with `m` a base monomial of
    /// at most `max_length` factors. Terms leaving the window are dropped and
    /// reported through the flag.
    pub fn expand(&self, max_length: u32) -> Result<(FreeComplex, bool)> {
        let alg = self.ring.algebra();
        let monomials = alg.monomials_up_to(max_length);
        let index: BTreeMap<&Vec<(usize, u32)>, usize> = monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let nm = monomials.len();
        let mut labels = Vec::with_capacity(self.rank() * nm);
        let mut degrees = Vec::with_capacity(self.rank() * nm);
        for (j, lbl) in self.labels.iter().enumerate() {
            for m in &monomials {
                labels.push(if m.is_empty() { lbl.clone() } else { format!("{lbl}·{}", alg.format_monomial(m)) });
                degrees.push(self.degrees()[j] + alg.monomial_degree(m));
            }
        }
        let mut d = GradedMatrix::zeros(degrees.clone(), degrees, 1);
        let mut limited = false;
        let mut columns: Vec<Vec<(usize, &Poly)>> = vec![Vec::new(); self.rank()];
        for (&(i, j), p) in self.differential.entries() {
            columns[j].push((i, p));
        }
        for j in 0..self.rank() {
            for (a, m) in monomials.iter().enumerate() {
                let col = j * nm + a;
                let mono = Poly::term(m.clone(), Scalar::from_integer(1.into()));
                for &(i, p) in &columns[j] {
                    let prod = alg.mul(p, &mono);
                    for (mm, c) in prod.terms() {
                        match index.get(mm) {
                            Some(&b) => d.add_scalar_to(i * nm + b, col, c.clone()),
                            None => limited = true,
                        }
                    }
                }
                if !self.ring.has_zero_differential() {
                    let dm = self.ring.d(&mono).scale(&sign(self.degrees()[j] as i64));
                    for (mm, c) in dm.terms() {
                        match index.get(mm) {
                            Some(&b) => d.add_scalar_to(j * nm + b, col, c.clone()),
                            None => limited = true,
                        }
                    }
                }
            }
        }
        let ground = Arc::new(CdgaPresentation::ground());
        let out = Self { ring: ground, labels, differential: d };
        if out.check_square_zero().is_err() {
            return Err(Error::TruncationTooSmall(
                "the truncated expansion is not a complex; the base differential lowers polynomial length".into(),
            ));
        }
        Ok((out, limited))
    }

    /// A vector-space model for `eval`.
    pub fn rational_model(&self, eval: Evaluation<'_>) -> Result<(FreeComplex, bool)> {
        if self.ring.is_empty() {
            return Ok((self.clone(), false));
        }
        match eval {
            Evaluation::Exact => Err(Error::MissingEvaluationPoint(
                self.ring.generators().iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(", "),
            )),
            Evaluation::At(p) => Ok((self.evaluate(p)?, false)),
            Evaluation::Truncated(n) => self.expand(n),
        }
    }

    pub fn cohomology(&self, eval: Evaluation<'_>) -> Result<CohomologyTable> {
        let (model, window_limited) = self.rational_model(eval)?;
        let blocks = RationalBlocks::new(&model);
        let dims = blocks.degrees().map(|m| (m, blocks.cohomology_dim(m))).collect();
        Ok(CohomologyTable { dims, window_limited })
    }
}

fn hom_labels(a: &FreeComplex, b: &FreeComplex) -> Vec<String> {
    let unit_source = a.rank() == 1 && a.labels[0] == "1";
    let unit_target = b.rank() == 1 && b.labels[0] == "1";
    let mut out = Vec::with_capacity(a.rank() * b.rank());
    for y in &b.labels {
        for x in &a.labels {
            out.push(match (unit_source, unit_target) {
                (true, _) => y.clone(),
                (false, true) => format!("{x}*"),
                _ => format!("{x}→{y}"),
            });
        }
    }
    out
}

/// Per-degree blocks of a complex over the ground field.
pub(crate) struct RationalBlocks {
    by_degree: BTreeMap<i32, Vec<usize>>,
    differential: GradedMatrix,
}

impl RationalBlocks {
    pub(crate) fn new(c: &FreeComplex) -> Self {
        assert!(c.ring.is_empty(), "rational blocks need a complex over the ground field");
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &d) in c.degrees().iter().enumerate() {
            by_degree.entry(d).or_default().push(i);
        }
        Self { by_degree, differential: c.differential.clone() }
    }

    pub(crate) fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.by_degree.keys().copied()
    }

    pub(crate) fn indices(&self, m: i32) -> &[usize] {
        self.by_degree.get(&m).map_or(&[], Vec::as_slice)
    }

    /// `d^m : C^m -> C^{m+1}` as a dense matrix.
    pub(crate) fn block(&self, m: i32) -> QMatrix {
        let sub = self.differential.submatrix(self.indices(m + 1), self.indices(m));
        sub.to_rational().expect("rational complex")
    }

    pub(crate) fn cohomology_dim(&self, m: i32) -> usize {
        let n = self.indices(m).len();
        if n == 0 {
            return 0;
        }
        n - self.block(m).rank() - self.block(m - 1).rank()
    }

    /// Cocycles in degree `m` whose classes form a basis of `H^m`, as
    /// coordinate vectors on `indices(m)`.
    pub(crate) fn cohomology_basis(&self, m: i32) -> Vec<Vec<Scalar>> {
        let n = self.indices(m).len();
        if n == 0 {
            return Vec::new();
        }
        let cycles = self.block(m).rank_kernel().kernel;
        let incoming = self.block(m - 1);
        let mut columns: Vec<Vec<Scalar>> = (0..incoming.cols()).map(|j| (0..n).map(|i| incoming.get(i, j).clone()).collect()).collect();
        let boundaries = columns.len();
        columns.extend(cycles.iter().cloned());
        if columns.is_empty() {
            return Vec::new();
        }
        let mut m_cols = QMatrix::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m_cols.set(i, j, v.clone());
                }
            }
        }
        let pivots = m_cols.rref();
        pivots.into_iter().filter(|&p| p >= boundaries).map(|p| cycles[p - boundaries].clone()).collect()
    }
}

/// A map of complexes of degree `degree` (usually 0).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    matrix: GradedMatrix,
}

impl ChainMap {
    /// Validates homogeneity and `d∘f = (-1)^{|f|} f∘d`.
    pub fn new(source: FreeComplex, target: FreeComplex, matrix: GradedMatrix) -> Result<Self> {
        if !source.same_ring(&target) {
            return Err(Error::BaseRingMismatch);
        }
        if matrix.col_degrees() != source.degrees() || matrix.row_degrees() != target.degrees() {
            return Err(Error::InvalidChainMap("matrix labels do not match source and target".into()));
        }
        matrix.check_homogeneous(source.ring.algebra()).map_err(|e| Error::InvalidChainMap(e.to_string()))?;
        let f = Self { source, target, matrix };
        let defect = f.defect();
        if let Some((&(i, j), p)) = defect.entries().next() {
            return Err(Error::InvalidChainMap(format!(
                "d∘f ≠ ±f∘d at ({}, {}): {}",
                f.target.labels[i],
                f.source.labels[j],
                f.source.ring.algebra().format(p)
            )));
        }
        Ok(f)
    }

    pub fn identity(c: &FreeComplex) -> ChainMap {
        ChainMap { source: c.clone(), target: c.clone(), matrix: GradedMatrix::identity(c.degrees().to_vec()) }
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            matrix: GradedMatrix::zeros(target.degrees().to_vec(), source.degrees().to_vec(), 0),
        }
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn matrix(&self) -> &GradedMatrix {
        &self.matrix
    }

    pub fn degree(&self) -> i32 {
        self.matrix.degree()
    }

    /// `d_N F + S d_A(F) - (-1)^s F d_M`; zero exactly for chain maps.
    pub fn defect(&self) -> GradedMatrix {
        defect_of(&self.source, &self.target, &self.matrix)
    }

    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source.degrees() != other.target.degrees() {
            return Err(Error::InvalidChainMap("composition of incompatible maps".into()));
        }
        let m = self.matrix.compose(self.source.ring.algebra(), &other.matrix);
        Ok(ChainMap { source: other.source.clone(), target: self.target.clone(), matrix: m })
    }

    pub fn evaluate(&self, point: &Point) -> Result<ChainMap> {
        let alg = self.source.ring.algebra();
        let m = self.matrix.map_entries(|_, _, p| Poly::constant(point.eval(alg, p)));
        Ok(ChainMap { source: self.source.evaluate(point)?, target: self.target.evaluate(point)?, matrix: m })
    }
}

pub fn defect_of(source: &FreeComplex, target: &FreeComplex, f: &GradedMatrix) -> GradedMatrix {
    let ring = &source.ring;
    let alg = ring.algebra();
    let mut lhs = target.differential.compose(alg, f);
    if !ring.has_zero_differential() {
        lhs = lhs.add(&d_entries(ring, f));
    }
    let rhs = f.compose(alg, &source.differential).scale(&sign(f.degree() as i64));
    lhs.sub(&rhs)
}

/// Mapping cone of a degree-0 chain map on `a[1] ⊕ b` with differential
/// `[[-d_a, 0], [f, d_b]]`.
pub fn cone(f: &ChainMap) -> Result<FreeComplex> {
    if f.degree() != 0 {
        return Err(Error::InvalidChainMap("cone needs a degree-0 map".into()));
    }
    if !f.defect().is_zero() {
        return Err(Error::InvalidChainMap("not a chain map".into()));
    }
    let a = f.source.shift(1);
    let b = &f.target;
    let degrees: Vec<i32> = a.degrees().iter().chain(b.degrees()).copied().collect();
    let mut d = GradedMatrix::zeros(degrees.clone(), degrees, 1);
    d.place(0, 0, a.differential());
    d.place(a.rank(), a.rank(), b.differential());
    d.place(a.rank(), 0, &f.matrix);
    let labels = a.labels.iter().map(|l| format!("{l}[1]")).chain(b.labels.iter().cloned()).collect();
    Ok(FreeComplex::assemble(b.ring.clone(), labels, d))
}

/// Indices of the points at which `cone(f)` has cohomology.
pub fn quasi_iso_failures(f: &ChainMap, points: &[Point]) -> Result<Vec<usize>> {
    let c = cone(f)?;
    if c.ring.is_empty() {
        let ok = c.cohomology(Evaluation::Exact)?.is_acyclic();
        return Ok(if ok { Vec::new() } else { vec![0] });
    }
    if points.is_empty() {
        return Err(Error::MissingEvaluationPoint("no k-points supplied".into()));
    }
    let mut failures = Vec::new();
    for (k, p) in points.iter().enumerate() {
        if !c.cohomology(Evaluation::At(p))?.is_acyclic() {
            failures.push(k);
        }
    }
    Ok(failures)
}

/// Whether `cone(f)` is acyclic at every supplied point (over the ground
/// field the point list is ignored).
pub fn is_quasi_iso(f: &ChainMap, points: &[Point]) -> Result<bool> {
    Ok(quasi_iso_failures(f, points)?.is_empty())
}
