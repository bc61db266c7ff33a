//! Seeded random instances: small rationals, polynomials, invertible
//! degree-0 matrices and graded mixed complexes over the ground field.
//!
//! Graded mixed complexes are built as direct sums of four elementary
//! shapes (a point, a `d`-pair, an `ε`-pair and a square where `dε` and
//! `εd` cancel) and then conjugated by a random invertible matrix in every
//! weight, so the identities hold by construction but nothing is diagonal.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::cdga::{CdgaPresentation, GcAlgebra, Monomial, Poly};
use crate::complexes::FreeComplex;
use crate::graded_mixed::GradedMixedComplex;
use crate::kernel::{det_and_inverse, GradedMatrix, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a/b` with `|a| ≤ 4` and `1 ≤ b ≤ 3`.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let c = scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random polynomial with up to `terms` monomials of length `≤ max_length`.
pub fn poly(rng: &mut impl Rng, alg: &GcAlgebra, max_length: u32, terms: usize) -> Poly {
    let monos: Vec<Monomial> = alg.monomials_up_to(max_length);
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(m, scalar(rng));
    }
    p
}

/// A random homogeneous polynomial of the given degree, or zero if none exists.
pub fn homogeneous_poly(rng: &mut impl Rng, alg: &GcAlgebra, degree: i32, max_length: u32, terms: usize) -> Poly {
    let monos: Vec<Monomial> = alg.monomials_up_to(max_length).into_iter().filter(|m| alg.monomial_degree(m) == degree).collect();
    let mut p = Poly::zero();
    if monos.is_empty() {
        return p;
    }
    for _ in 0..rng.gen_range(1..=terms) {
        p.add_term(monos[rng.gen_range(0..monos.len())].clone(), scalar(rng));
    }
    p
}

/// An invertible degree-0 matrix with rational entries on the given basis:
/// a product of unit lower and upper triangular factors inside each degree,
/// times a nonzero diagonal.
pub fn invertible(rng: &mut impl Rng, degrees: &[i32]) -> GradedMatrix {
    let k = degrees.len();
    let mut lower = GradedMatrix::identity(degrees.to_vec());
    let mut upper = GradedMatrix::identity(degrees.to_vec());
    for i in 0..k {
        upper.set(i, i, Poly::constant(nonzero_scalar(rng)));
        for j in 0..k {
            if degrees[i] != degrees[j] {
                continue;
            }
            if i > j {
                lower.set(i, j, Poly::constant(scalar(rng)));
            } else if i < j {
                upper.set(i, j, Poly::constant(scalar(rng)));
            }
        }
    }
    lower.compose(&GcAlgebra::new(Vec::new()), &upper)
}

fn inverse(m: &GradedMatrix) -> GradedMatrix {
    let ground = CdgaPresentation::ground();
    det_and_inverse(m, &ground).expect("square").1.expect("invertible by construction")
}

/// Shape parameters for [`gmc`].
#[derive(Clone, Copy, Debug)]
pub struct GmcShape {
    pub min_weight: i32,
    pub max_weight: i32,
    pub max_rank: usize,
    pub min_degree: i32,
    pub max_degree: i32,
}

impl Default for GmcShape {
    fn default() -> Self {
        Self { min_weight: -2, max_weight: 2, max_rank: 3, min_degree: -2, max_degree: 2 }
    }
}

struct Builder {
    shape: GmcShape,
    degrees: BTreeMap<i32, Vec<i32>>,
    d: Vec<(i32, usize, usize, Scalar)>,
    eps: Vec<(i32, usize, usize, Scalar)>,
}

impl Builder {
    fn room(&self, p: i32, n: usize) -> bool {
        p >= self.shape.min_weight && p <= self.shape.max_weight && self.degrees.get(&p).map_or(0, Vec::len) + n <= self.shape.max_rank
    }

    fn degree_ok(&self, k: i32) -> bool {
        k >= self.shape.min_degree && k <= self.shape.max_degree
    }

    fn push(&mut self, p: i32, k: i32) -> usize {
        let v = self.degrees.entry(p).or_default();
        v.push(k);
        v.len() - 1
    }
}

/// A random graded mixed complex over the ground field.
pub fn gmc(rng: &mut impl Rng, shape: GmcShape) -> GradedMixedComplex {
    let mut b = Builder { shape, degrees: BTreeMap::new(), d: Vec::new(), eps: Vec::new() };
    for _ in 0..rng.gen_range(1..=8) {
        let p = rng.gen_range(shape.min_weight..=shape.max_weight);
        let k = rng.gen_range(shape.min_degree..=shape.max_degree);
        match rng.gen_range(0..4) {
            0 if b.room(p, 1) => {
                b.push(p, k);
            }
            1 if b.room(p, 2) && b.degree_ok(k + 1) => {
                let x = b.push(p, k);
                let y = b.push(p, k + 1);
                b.d.push((p, y, x, nonzero_scalar(rng)));
            }
            2 if b.room(p, 1) && b.room(p + 1, 1) && b.degree_ok(k + 1) => {
                let x = b.push(p, k);
                let y = b.push(p + 1, k + 1);
                b.eps.push((p, y, x, nonzero_scalar(rng)));
            }
            3 if b.room(p, 2) && b.room(p + 1, 2) && b.degree_ok(k + 2) => {
                // d x = y, ε x = z, d z = w, ε y = -w
                let (a, c) = (nonzero_scalar(rng), nonzero_scalar(rng));
                let x = b.push(p, k);
                let y = b.push(p, k + 1);
                let z = b.push(p + 1, k + 1);
                let w = b.push(p + 1, k + 2);
                b.d.push((p, y, x, a.clone()));
                b.eps.push((p, z, x, c.clone()));
                b.d.push((p + 1, w, z, Scalar::one()));
                b.eps.push((p, w, y, -(c / a)));
            }
            _ => {}
        }
    }
    let ring = Arc::new(CdgaPresentation::ground());
    let ground = GcAlgebra::new(Vec::new());
    let basis: BTreeMap<i32, (GradedMatrix, GradedMatrix)> = b
        .degrees
        .iter()
        .map(|(&p, degs)| {
            let m = invertible(rng, degs);
            let inv = inverse(&m);
            (p, (m, inv))
        })
        .collect();
    let mut weights = BTreeMap::new();
    for (&p, degs) in &b.degrees {
        let mut d = GradedMatrix::zeros(degs.clone(), degs.clone(), 1);
        for (q, i, j, c) in &b.d {
            if *q == p {
                d.add_scalar_to(*i, *j, c.clone());
            }
        }
        let (m, inv) = &basis[&p];
        let d = m.compose(&ground, &d.compose(&ground, inv));
        let labels = (0..degs.len()).map(|i| format!("w{p}_{i}")).collect();
        weights.insert(p, FreeComplex::new(ring.clone(), labels, d).expect("square zero by construction"));
    }
    let mut epsilon = BTreeMap::new();
    for (&p, degs) in &b.degrees {
        let Some(next) = b.degrees.get(&(p + 1)) else { continue };
        let mut e = GradedMatrix::zeros(next.clone(), degs.clone(), 1);
        for (q, i, j, c) in &b.eps {
            if *q == p {
                e.add_scalar_to(*i, *j, c.clone());
            }
        }
        let e = basis[&(p + 1)].0.compose(&ground, &e.compose(&ground, &basis[&p].1));
        epsilon.insert(p, e);
    }
    GradedMixedComplex::new(ring, weights, epsilon).expect("identities hold by construction")
}

/// A random bounded complex over the ground field of total rank `≤ max_rank`.
pub fn complex(rng: &mut impl Rng, min_degree: i32, max_degree: i32, max_rank: usize) -> FreeComplex {
    let shape = GmcShape { min_weight: 0, max_weight: 0, max_rank, min_degree, max_degree };
    gmc(rng, shape).component(0).cloned().unwrap_or_else(|| FreeComplex::zero(Arc::new(CdgaPresentation::ground())))
}
