//! Exact linear algebra: rationals, dense rational matrices, sparse graded
//! matrices with polynomial entries, determinants, inverses and supertraces.

mod graded;
mod rational;

pub use graded::GradedMatrix;
pub use rational::{QMatrix, RankKernel};

use std::collections::BTreeMap;

use num_traits::One;

use crate::cdga::{CdgaPresentation, GcAlgebra, Poly};
use crate::error::{Error, Result};

/// Exact rational number in canonical reduced form.
pub type Scalar = num_rational::BigRational;

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

/// `(-1)^k` as a scalar.
pub fn sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Rank and kernel basis of a matrix with rational entries.
pub fn rank_kernel(m: &GradedMatrix) -> Result<RankKernel> {
    let q = m
        .to_rational()
        .ok_or_else(|| Error::Invalid("rank_kernel needs rational entries".into()))?;
    Ok(q.rank_kernel())
}

/// Determinant and, when the determinant is a unit of the ring, the exact inverse.
///
/// The determinant is the Laplace expansion with entries multiplied in row
/// order, which is the usual determinant whenever the entries commute. The
/// matrix is invertible iff its reduction modulo the odd generators has a
/// nonzero constant determinant; the inverse is then the adjugate inverse of
/// that reduction corrected by a terminating Neumann series.
pub fn det_and_inverse(m: &GradedMatrix, ring: &CdgaPresentation) -> Result<(Poly, Option<GradedMatrix>)> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let alg = ring.algebra();
    let n = m.rows();
    if n == 0 {
        return Ok((Poly::one(), Some(m.clone())));
    }
    if let Some(qm) = m.to_rational() {
        let det = qm.determinant().expect("square");
        let inv = qm
            .inverse()
            .map(|qi| GradedMatrix::from_rational(m.col_degrees().to_vec(), m.row_degrees().to_vec(), -m.degree(), &qi));
        return Ok((Poly::constant(det), inv));
    }

    let dense = dense_entries(m);
    let det = laplace_det(alg, &dense, &(0..n).collect::<Vec<_>>());
    if !alg.is_unit(&det) {
        return Ok((det, None));
    }

    let body: Vec<Vec<Poly>> = dense.iter().map(|row| row.iter().map(|p| alg.body(p)).collect()).collect();
    let body_det = laplace_det(alg, &body, &(0..n).collect::<Vec<_>>());
    let body_det_inv = alg.inverse(&body_det).expect("unit body determinant");
    // adjugate of the commutative body
    let mut body_inv = GradedMatrix::zeros(m.col_degrees().to_vec(), m.row_degrees().to_vec(), -m.degree());
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let minor: Vec<Vec<Poly>> = rows
                .iter()
                .map(|&r| (0..n).filter(|&c| c != i).map(|c| body[r][c].clone()).collect())
                .collect();
            let cof = laplace_det(alg, &minor, &(0..n - 1).collect::<Vec<_>>());
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            body_inv.set(i, j, alg.mul(&signed, &body_det_inv));
        }
    }
    // m = body (1 + x) with x = body^{-1} (m - body) nilpotent
    let body_m = m.map_entries(|_, _, p| alg.body(p));
    let x = body_inv.compose(alg, &m.sub(&body_m));
    let minus_x = x.neg();
    let mut series = GradedMatrix::identity(m.col_degrees().to_vec());
    let mut power = GradedMatrix::identity(m.col_degrees().to_vec());
    let order = alg.generators().iter().filter(|g| g.is_odd()).count();
    for _ in 0..order {
        power = power.compose(alg, &minus_x);
        if power.is_zero() {
            break;
        }
        series = series.add(&power);
    }
    let inverse = series.compose(alg, &body_inv).with_degree(-m.degree());
    let left = inverse.compose(alg, m);
    let right = m.compose(alg, &inverse);
    if !is_identity(&left) || !is_identity(&right) {
        return Err(Error::Invalid("inverse failed verification".into()));
    }
    Ok((det, Some(inverse)))
}

fn is_identity(m: &GradedMatrix) -> bool {
    m.nnz() == m.rows() && (0..m.rows()).all(|i| m.get(i, i).is_some_and(|p| *p == Poly::one()))
}

fn dense_entries(m: &GradedMatrix) -> Vec<Vec<Poly>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get_or_zero(i, j)).collect()).collect()
}

/// Determinant of `rows[k..]` restricted to the columns in a bitmask, by
/// expansion along the first remaining row, memoised over column subsets.
fn laplace_det(alg: &GcAlgebra, rows: &[Vec<Poly>], cols: &[usize]) -> Poly {
    let n = rows.len();
    assert_eq!(n, cols.len());
    assert!(n < 63, "matrix too large for subset expansion");
    let mut memo: BTreeMap<u64, Poly> = BTreeMap::new();
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    expand(alg, rows, cols, 0, full, &mut memo)
}

fn expand(alg: &GcAlgebra, rows: &[Vec<Poly>], cols: &[usize], r: usize, mask: u64, memo: &mut BTreeMap<u64, Poly>) -> Poly {
    if mask == 0 {
        return Poly::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let mut out = Poly::zero();
    let mut position = 0usize;
    for k in 0..cols.len() {
        if mask & (1 << k) == 0 {
            continue;
        }
        let entry = &rows[r][cols[k]];
        if !entry.is_zero() {
            let rest = expand(alg, rows, cols, r + 1, mask & !(1 << k), memo);
            let term = alg.mul(entry, &rest);
            if position % 2 == 0 {
                out += &term;
            } else {
                out += &(-term);
            }
        }
        position += 1;
    }
    memo.insert(mask, out.clone());
    out
}

/// `Σ_i (-1)^{deg(i)} m_ii` for an endomorphism of a free graded module.
pub fn supertrace(m: &GradedMatrix) -> Result<Poly> {
    if !m.is_square() || m.row_degrees() != m.col_degrees() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let mut out = Poly::zero();
    for (i, d) in m.row_degrees().iter().enumerate() {
        if let Some(p) = m.get(i, i) {
            out.add_scaled(p, &sign(*d as i64));
        }
    }
    Ok(out)
}
