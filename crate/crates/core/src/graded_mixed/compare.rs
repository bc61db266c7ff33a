//! Maps of graded mixed complexes and the canonical comparison isomorphisms
//! `M ≅ M^∨∨`, `M^∨ ⊗ N^∨ ≅ (M ⊗ N)^∨`, `Hom(M, N) ≅ Hom(N^∨, M^∨)` and
//! `M^∨ ⊗ N ≅ Hom(M, N)`.

use std::collections::{BTreeMap, VecDeque};

use super::{gm_dual, gm_hom, gm_tensor, joint_support, GradedMixedComplex};
use crate::cdga::Poly;
use crate::complexes::defect_of;
use crate::error::{Error, Result};
use crate::kernel::{det_and_inverse, sign, GradedMatrix};

/// A weight-preserving, degree-0 map commuting with `d` and `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct GmMap {
    source: GradedMixedComplex,
    target: GradedMixedComplex,
    blocks: BTreeMap<i32, GradedMatrix>,
}

impl GmMap {
    pub fn new(source: GradedMixedComplex, target: GradedMixedComplex, blocks: BTreeMap<i32, GradedMatrix>) -> Result<Self> {
        super::same_ring(&source, &target)?;
        let f = Self { source, target, blocks };
        f.check()?;
        Ok(f)
    }

    pub fn identity(m: &GradedMixedComplex) -> Self {
        let blocks = m.components().iter().map(|(p, c)| (*p, GradedMatrix::identity(c.degrees().to_vec()))).collect();
        Self { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn source(&self) -> &GradedMixedComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedMixedComplex {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<i32, GradedMatrix> {
        &self.blocks
    }

    /// The block in weight `p`, zero when absent.
    pub fn block(&self, p: i32) -> GradedMatrix {
        self.blocks
            .get(&p)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zeros(self.target.degrees(p).to_vec(), self.source.degrees(p).to_vec(), 0))
    }

    fn check(&self) -> Result<()> {
        let alg = self.source.ring().algebra();
        for (&p, f) in &self.blocks {
            if f.degree() != 0 || f.col_degrees() != self.source.degrees(p) || f.row_degrees() != self.target.degrees(p) {
                return Err(Error::InvalidChainMap(format!("block in weight {p} has the wrong shape")));
            }
            f.check_homogeneous(alg).map_err(|e| Error::InvalidChainMap(e.to_string()))?;
        }
        for p in joint_support(&self.source, &self.target) {
            let f = self.block(p);
            if let (Some(s), Some(t)) = (self.source.component(p), self.target.component(p)) {
                if !defect_of(s, t, &f).is_zero() {
                    return Err(Error::InvalidChainMap(format!("block in weight {p} does not commute with d")));
                }
            }
            let lhs = self.target.epsilon(p).compose(alg, &f);
            let rhs = self.block(p + 1).compose(alg, &self.source.epsilon(p));
            if lhs != rhs {
                return Err(Error::InvalidChainMap(format!("block in weight {p} does not commute with ε")));
            }
        }
        Ok(())
    }

    /// Every weight block is invertible over the base.
    pub fn is_isomorphism(&self) -> bool {
        joint_support(&self.source, &self.target).into_iter().all(|p| {
            let f = self.block(p);
            if f.rows() != f.cols() {
                return false;
            }
            if f.monomial_inverse().is_some() {
                return true;
            }
            matches!(det_and_inverse(&f, self.source.ring()), Ok((_, Some(_))))
        })
    }
}

fn parity(d: i32) -> i64 {
    d.rem_euclid(2) as i64
}

/// Block offsets of `gm_tensor(m, n)` in weight `p`, keyed by the weight of `m`.
fn tensor_offsets(m: &GradedMixedComplex, n: &GradedMixedComplex, p: i32) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    let mut off = 0;
    for i in m.support() {
        if n.component(p - i).is_some() {
            out.insert(i, off);
            off += m.degrees(i).len() * n.degrees(p - i).len();
        }
    }
    out
}

/// Block offsets of `gm_hom(m, n)` in weight `p`, keyed by the weight of `m`.
fn hom_offsets(m: &GradedMixedComplex, n: &GradedMixedComplex, p: i32) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    let mut off = 0;
    for q in m.support() {
        if n.component(p + q).is_some() {
            out.insert(q, off);
            off += m.degrees(q).len() * n.degrees(p + q).len();
        }
    }
    out
}

fn empty_blocks(source: &GradedMixedComplex, target: &GradedMixedComplex) -> BTreeMap<i32, GradedMatrix> {
    joint_support(source, target)
        .into_iter()
        .map(|p| (p, GradedMatrix::zeros(target.degrees(p).to_vec(), source.degrees(p).to_vec(), 0)))
        .collect()
}

/// `M -> M^∨∨`, `e ↦ (φ ↦ (-1)^{|e||φ|} φ(e))`: the diagonal `(-1)^{|e|}`.
pub fn double_dual_comparison(m: &GradedMixedComplex) -> Result<GmMap> {
    let target = gm_dual(&gm_dual(m));
    let mut blocks = empty_blocks(m, &target);
    for (p, c) in m.components() {
        let f = blocks.get_mut(p).expect("weight present");
        for (j, &d) in c.degrees().iter().enumerate() {
            f.set(j, j, Poly::constant(sign(d as i64)));
        }
    }
    GmMap::new(m.clone(), target, blocks)
}

/// `M^∨ ⊗ N^∨ -> (M ⊗ N)^∨`, `e* ⊗ f* ↦ (-1)^{|e||f|} (e ⊗ f)*`.
pub fn tensor_dual_comparison(m: &GradedMixedComplex, n: &GradedMixedComplex) -> Result<GmMap> {
    let (md, nd) = (gm_dual(m), gm_dual(n));
    let source = gm_tensor(&md, &nd)?;
    let mn = gm_tensor(m, n)?;
    let target = gm_dual(&mn);
    let mut blocks = empty_blocks(&source, &target);
    for (&p, f) in blocks.iter_mut() {
        let src_off = tensor_offsets(&md, &nd, p);
        let tgt_off = tensor_offsets(m, n, -p);
        for (&a, &so) in &src_off {
            let (i, j) = (-a, -(p - a));
            let to = tgt_off[&i];
            let (ei, fj) = (m.degrees(i), n.degrees(j));
            for (x, &dx) in ei.iter().enumerate() {
                for (y, &dy) in fj.iter().enumerate() {
                    let k = x * fj.len() + y;
                    f.set(to + k, so + k, Poly::constant(sign(parity(dx) * parity(dy))));
                }
            }
        }
    }
    GmMap::new(source, target, blocks)
}

/// `Hom(M, N) -> Hom(N^∨, M^∨)`, `f ↦ f^∨`, `f^∨(φ) = (-1)^{|f||φ|} φ∘f`.
pub fn hom_dual_comparison(m: &GradedMixedComplex, n: &GradedMixedComplex) -> Result<GmMap> {
    let source = gm_hom(m, n)?;
    let (md, nd) = (gm_dual(m), gm_dual(n));
    let target = gm_hom(&nd, &md)?;
    let mut blocks = empty_blocks(&source, &target);
    for (&p, f) in blocks.iter_mut() {
        let src_off = hom_offsets(m, n, p);
        let tgt_off = hom_offsets(&nd, &md, p);
        for (&q, &so) in &src_off {
            let r = p + q;
            let to = tgt_off[&(-r)];
            let (e, fr) = (m.degrees(q), n.degrees(r));
            for (i, &di) in fr.iter().enumerate() {
                for (j, &dj) in e.iter().enumerate() {
                    let s = di - dj;
                    f.set(to + j * fr.len() + i, so + i * e.len() + j, Poly::constant(sign(parity(s) * parity(di))));
                }
            }
        }
    }
    GmMap::new(source, target, blocks)
}

/// `M^∨ ⊗ N -> Hom(M, N)`, `e* ⊗ f ↦ (m ↦ (-1)^{|f||m|} e*(m) f)`.
pub fn tensor_hom_comparison(m: &GradedMixedComplex, n: &GradedMixedComplex) -> Result<GmMap> {
    let md = gm_dual(m);
    let source = gm_tensor(&md, n)?;
    let target = gm_hom(m, n)?;
    let mut blocks = empty_blocks(&source, &target);
    for (&p, f) in blocks.iter_mut() {
        let src_off = tensor_offsets(&md, n, p);
        let tgt_off = hom_offsets(m, n, p);
        for (&a, &so) in &src_off {
            let (q, r) = (-a, p - a);
            let to = tgt_off[&q];
            let (e, fr) = (m.degrees(q), n.degrees(r));
            for (j, &dj) in e.iter().enumerate() {
                for (i, &di) in fr.iter().enumerate() {
                    f.set(to + i * e.len() + j, so + j * fr.len() + i, Poly::constant(sign(parity(di) * parity(dj))));
                }
            }
        }
    }
    GmMap::new(source, target, blocks)
}

/// Look for an isomorphism that sends each basis element to `±` the target
/// basis element with the same label in the same weight. The result is
/// verified as a map of graded mixed complexes.
pub fn find_signed_permutation(source: &GradedMixedComplex, target: &GradedMixedComplex) -> Option<GmMap> {
    let support: Vec<i32> = joint_support(source, target).into_iter().collect();
    // global numbering of source basis elements
    let mut start = BTreeMap::new();
    let mut total = 0;
    let mut perm: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for &p in &support {
        let (s, t) = (source.component(p)?, target.component(p)?);
        if s.rank() != t.rank() {
            return None;
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (k, l) in t.labels().iter().enumerate() {
            if index.insert(l.as_str(), k).is_some() {
                return None;
            }
        }
        let mut pi = Vec::with_capacity(s.rank());
        for l in s.labels() {
            pi.push(*index.get(l.as_str())?);
        }
        start.insert(p, total);
        total += s.rank();
        perm.insert(p, pi);
    }
    // edges (u, v, same_sign)
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); total];
    let mut edge = |u: usize, v: usize, a: &Poly, b: &Poly| -> Option<()> {
        let same = if a == b {
            true
        } else if *a == -b {
            false
        } else {
            return None;
        };
        adj[u].push((v, same));
        adj[v].push((u, same));
        Some(())
    };
    for &p in &support {
        let (s, t, pi) = (source.component(p)?, target.component(p)?, &perm[&p]);
        for (&(i, j), a) in s.differential().entries() {
            let b = t.differential().get_or_zero(pi[i], pi[j]);
            edge(start[&p] + i, start[&p] + j, a, &b)?;
        }
        if let Some(e) = source.epsilons().get(&p) {
            let (pi2, te) = (&perm[&(p + 1)], target.epsilon(p));
            for (&(i, j), a) in e.entries() {
                let b = te.get_or_zero(pi2[i], pi[j]);
                edge(start[&(p + 1)] + i, start[&p] + j, a, &b)?;
            }
        }
    }
    let mut signs: Vec<Option<bool>> = vec![None; total];
    for root in 0..total {
        if signs[root].is_some() {
            continue;
        }
        signs[root] = Some(true);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = signs[u].expect("visited");
            for &(v, same) in &adj[u] {
                let want = if same { su } else { !su };
                match signs[v] {
                    None => {
                        signs[v] = Some(want);
                        queue.push_back(v);
                    }
                    Some(sv) if sv != want => return None,
                    _ => {}
                }
            }
        }
    }
    let mut blocks = BTreeMap::new();
    for &p in &support {
        let (s, t) = (source.component(p)?, target.component(p)?);
        let mut f = GradedMatrix::zeros(t.degrees().to_vec(), s.degrees().to_vec(), 0);
        for (j, &i) in perm[&p].iter().enumerate() {
            let positive = signs[start[&p] + j].expect("all visited");
            f.set(i, j, if positive { Poly::one() } else { Poly::from_int(-1) });
        }
        blocks.insert(p, f);
    }
    GmMap::new(source.clone(), target.clone(), blocks).ok()
}
