//! Matrices of the natural operators on Hom and tensor bases.
//!
//! `Hom(M, N)` has basis `E_ij` (`e_j ↦ f_i`) at index `i·|M| + j`, of degree
//! `|f_i| - |e_j|`. A map with matrix `F` has coordinate
//! `(-1)^{|F_ij||e_j|} F_ij` on `E_ij`. `M ⊗ N` has basis `e_i ⊗ f_k` at index
//! `i·|N| + k`.

use crate::kernel::{sign, GradedMatrix};

fn parity(d: i32) -> i64 {
    d.rem_euclid(2) as i64
}

fn hom_degrees(source: &[i32], target: &[i32]) -> Vec<i32> {
    target.iter().flat_map(|t| source.iter().map(move |s| t - s)).collect()
}

fn tensor_degrees(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

/// `f ↦ L∘f` as a map `Hom(M, N) -> Hom(M, N')` where `L: N -> N'` and
/// `m` lists the degrees of `M`.
pub fn hom_post(l: &GradedMatrix, m: &[i32]) -> GradedMatrix {
    let rows = hom_degrees(m, l.row_degrees());
    let cols = hom_degrees(m, l.col_degrees());
    let mut out = GradedMatrix::zeros(rows, cols, l.degree());
    let nm = m.len();
    for (&(k, i), p) in l.entries() {
        let e = parity(l.entry_degree(k, i));
        for (j, &dj) in m.iter().enumerate() {
            out.set(k * nm + j, i * nm + j, p.scale(&sign(e * parity(dj))));
        }
    }
    out
}

/// `f ↦ (-1)^{|f||R|} f∘R` as a map `Hom(M, N) -> Hom(M', N)` where
/// `R: M' -> M` and `n` lists the degrees of `N`.
pub fn hom_pre(r: &GradedMatrix, n: &[i32]) -> GradedMatrix {
    let src_m = r.row_degrees();
    let tgt_m = r.col_degrees();
    let rows = hom_degrees(tgt_m, n);
    let cols = hom_degrees(src_m, n);
    let mut out = GradedMatrix::zeros(rows, cols, r.degree());
    let (ns, nt) = (src_m.len(), tgt_m.len());
    let rd = parity(r.degree());
    for (&(j, l), p) in r.entries() {
        let e = parity(r.entry_degree(j, l)) * parity(tgt_m[l]);
        for (i, &di) in n.iter().enumerate() {
            let f_deg = parity(di - src_m[j]);
            out.set(i * nt + l, i * ns + j, p.scale(&sign(e + f_deg * rd)));
        }
    }
    out
}

/// `L ⊗ 1` as a map `M ⊗ N -> M' ⊗ N` where `L: M -> M'` and `n` lists the
/// degrees of `N`.
pub fn tensor_left(l: &GradedMatrix, n: &[i32]) -> GradedMatrix {
    let rows = tensor_degrees(l.row_degrees(), n);
    let cols = tensor_degrees(l.col_degrees(), n);
    let mut out = GradedMatrix::zeros(rows, cols, l.degree());
    let nn = n.len();
    for (&(i, j), p) in l.entries() {
        let e = parity(l.entry_degree(i, j));
        for (k, &dk) in n.iter().enumerate() {
            out.set(i * nn + k, j * nn + k, p.scale(&sign(e * parity(dk))));
        }
    }
    out
}

/// `1 ⊗ R` as a map `M ⊗ N -> M ⊗ N'` where `R: N -> N'` and `m` lists the
/// degrees of `M`.
pub fn tensor_right(r: &GradedMatrix, m: &[i32]) -> GradedMatrix {
    let rows = tensor_degrees(m, r.row_degrees());
    let cols = tensor_degrees(m, r.col_degrees());
    let mut out = GradedMatrix::zeros(rows, cols, r.degree());
    let (nt, ns) = (r.rows(), r.cols());
    let rd = parity(r.degree());
    for (&(l, k), p) in r.entries() {
        for (j, &dj) in m.iter().enumerate() {
            out.set(j * nt + l, j * ns + k, p.scale(&sign(rd * parity(dj))));
        }
    }
    out
}
