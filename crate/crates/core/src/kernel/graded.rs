//! Sparse matrices with graded-commutative polynomial entries.
//!
//! A matrix describes a right-linear map of free graded modules: column `j`
//! holds the image of the `j`-th source basis element, `f(e_j) = Σ_i e_i F_ij`,
//! so composition is the ordinary matrix product with entries multiplied in
//! order. Entry `(i, j)` of a map of degree `s` is homogeneous of degree
//! `col_degree(j) + s - row_degree(i)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{QMatrix, Scalar};
use crate::cdga::{GcAlgebra, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    row_degrees: Vec<i32>,
    col_degrees: Vec<i32>,
    degree: i32,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl GradedMatrix {
    pub fn zeros(row_degrees: Vec<i32>, col_degrees: Vec<i32>, degree: i32) -> Self {
        Self { row_degrees, col_degrees, degree, entries: BTreeMap::new() }
    }

    pub fn identity(degrees: Vec<i32>) -> Self {
        let mut m = Self::zeros(degrees.clone(), degrees, 0);
        for i in 0..m.rows() {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// A degree-0 endomorphism or map with rational entries given row by row.
    pub fn from_scalars(row_degrees: Vec<i32>, col_degrees: Vec<i32>, degree: i32, rows: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(row_degrees, col_degrees, degree);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, Poly::constant(v.clone()));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn row_degrees(&self) -> &[i32] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i32] {
        &self.col_degrees
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Degree forced on entry `(i, j)` by the labels.
    pub fn entry_degree(&self, i: usize, j: usize) -> i32 {
        self.col_degrees[j] + self.degree - self.row_degrees[i]
    }

    pub fn entry_is_odd(&self, i: usize, j: usize) -> bool {
        self.entry_degree(i, j).rem_euclid(2) == 1
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Poly> {
        self.entries.get(&(i, j))
    }

    pub fn get_or_zero(&self, i: usize, j: usize) -> Poly {
        self.get(i, j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(i < self.rows() && j < self.cols(), "entry ({i},{j}) out of range");
        if p.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), p);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &Poly) {
        if p.is_zero() {
            return;
        }
        assert!(i < self.rows() && j < self.cols(), "entry ({i},{j}) out of range");
        let e = self.entries.entry((i, j)).or_default();
        *e += p;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn add_scalar_to(&mut self, i: usize, j: usize, c: Scalar) {
        if !c.is_zero() {
            self.add_to(i, j, &Poly::constant(c));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.entries.values().all(|p| p.as_constant().is_some())
    }

    pub fn with_degree(mut self, degree: i32) -> Self {
        self.degree = degree;
        self
    }

    pub fn map_entries(&self, mut f: impl FnMut(usize, usize, &Poly) -> Poly) -> GradedMatrix {
        let mut out = Self::zeros(self.row_degrees.clone(), self.col_degrees.clone(), self.degree);
        for (&(i, j), p) in &self.entries {
            out.set(i, j, f(i, j, p));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> GradedMatrix {
        self.map_entries(|_, _, p| p.scale(c))
    }

    pub fn neg(&self) -> GradedMatrix {
        self.scale(&-Scalar::one())
    }

    pub fn add(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!((self.rows(), self.cols()), (other.rows(), other.cols()), "shape mismatch");
        let mut out = self.clone();
        for (&(i, j), p) in &other.entries {
            out.add_to(i, j, p);
        }
        out
    }

    pub fn sub(&self, other: &GradedMatrix) -> GradedMatrix {
        self.add(&other.neg())
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &GcAlgebra, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.cols(), other.rows(), "dimension mismatch in composition");
        let mut by_row: Vec<Vec<(usize, &Poly)>> = vec![Vec::new(); other.rows()];
        for (&(k, j), p) in &other.entries {
            by_row[k].push((j, p));
        }
        let mut out = Self::zeros(self.row_degrees.clone(), other.col_degrees.clone(), self.degree + other.degree);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, &alg.mul(a, b));
            }
        }
        out
    }

    /// Rows and columns selected (and reordered) by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let mut out = Self::zeros(
            rows.iter().map(|&r| self.row_degrees[r]).collect(),
            cols.iter().map(|&c| self.col_degrees[c]).collect(),
            self.degree,
        );
        for (&(i, j), p) in &self.entries {
            if let (Some(&a), Some(&b)) = (row_pos.get(&i), col_pos.get(&j)) {
                out.set(a, b, p.clone());
            }
        }
        out
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &GradedMatrix) {
        for (&(i, j), p) in &block.entries {
            self.add_to(r0 + i, c0 + j, p);
        }
    }

    pub fn to_rational(&self) -> Option<QMatrix> {
        let mut q = QMatrix::zeros(self.rows(), self.cols());
        for (&(i, j), p) in &self.entries {
            q.set(i, j, p.as_constant()?);
        }
        Some(q)
    }

    pub fn from_rational(row_degrees: Vec<i32>, col_degrees: Vec<i32>, degree: i32, q: &QMatrix) -> GradedMatrix {
        let mut m = Self::zeros(row_degrees, col_degrees, degree);
        for i in 0..q.rows() {
            for j in 0..q.cols() {
                if !q.get(i, j).is_zero() {
                    m.set(i, j, Poly::constant(q.get(i, j).clone()));
                }
            }
        }
        m
    }

    /// Every entry is homogeneous of the degree its labels force.
    pub fn check_homogeneous(&self, alg: &GcAlgebra) -> Result<()> {
        for (&(i, j), p) in &self.entries {
            let want = self.entry_degree(i, j);
            if !alg.is_homogeneous_of(p, want) {
                return Err(Error::DegreeMismatch(format!(
                    "entry ({i},{j}) = {} is not homogeneous of degree {want}",
                    alg.format(p)
                )));
            }
        }
        Ok(())
    }

    /// Exact inverse when every nonzero row and column holds a single unit
    /// constant; `None` otherwise.
    pub fn monomial_inverse(&self) -> Option<GradedMatrix> {
        if !self.is_square() || self.nnz() != self.rows() {
            return None;
        }
        let mut seen_rows = vec![false; self.rows()];
        let mut seen_cols = vec![false; self.cols()];
        let mut inv = Self::zeros(self.col_degrees.clone(), self.row_degrees.clone(), -self.degree);
        for (&(i, j), p) in &self.entries {
            let c = p.as_constant()?;
            if seen_rows[i] || seen_cols[j] {
                return None;
            }
            seen_rows[i] = true;
            seen_cols[j] = true;
            inv.set(j, i, Poly::constant(c.recip()));
        }
        Some(inv)
    }
}
