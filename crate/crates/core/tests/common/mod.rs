#![allow(dead_code)]

use defcert::field::Field;
use defcert::{Monomial, Polynomial, Rational};
use proptest::prelude::*;

pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Homogeneous form of degree `d` in `nvars` variables with at most `max_terms` terms; may be zero.
pub fn form(nvars: usize, d: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = Polynomial> {
    let monos = Monomial::all_of_degree(nvars, d);
    let n = monos.len();
    prop::collection::vec((0..n, -coeff..=coeff), 1..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(terms.into_iter().map(|(i, c)| (monos[i].clone(), q(c))).collect())
    })
}

pub fn nonzero_form(nvars: usize, d: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = Polynomial> {
    form(nvars, d, max_terms, coeff).prop_filter("nonzero", |p| !p.is_zero())
}

/// Form of a random degree in `lo..=hi`.
pub fn ranged_form(nvars: usize, lo: u32, hi: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = Polynomial> {
    (lo..=hi).prop_flat_map(move |d| nonzero_form(nvars, d, max_terms, coeff))
}

/// Up to `max_gens` nonzero generators of degree `1..=max_deg`.
pub fn generators(nvars: usize, max_gens: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(ranged_form(nvars, 1, max_deg, max_terms, 4), 1..=max_gens)
}

/// `Σ c_m m g` over all monomials `m` of degree `k - deg g`, with dense Macaulay rows.
pub fn macaulay_rows(gens: &[Polynomial], nvars: usize, k: u32) -> Vec<Vec<Rational>> {
    let cols = Monomial::all_of_degree(nvars, k);
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap();
        if dg > k {
            continue;
        }
        for m in Monomial::all_of_degree(nvars, k - dg) {
            rows.push(dense(&g.mul_term(&q(1), &m), &cols));
        }
    }
    rows
}

pub fn dense(p: &Polynomial, cols: &[Monomial]) -> Vec<Rational> {
    cols.iter().map(|m| p.coefficient(m)).collect()
}

/// `f` with `x_i` replaced by `Σ_j a[i][j] x_j`, expanded term by term.
pub fn linear_change(f: &Polynomial, a: &[Vec<i64>]) -> Polynomial {
    let n = a.len();
    let images: Vec<Polynomial> = a
        .iter()
        .map(|row| Polynomial::from_terms((0..n).map(|j| (Monomial::var(j), q(row[j]))).collect()))
        .collect();
    let mut out = Polynomial::zero();
    for (m, c) in f.terms() {
        let mut t = Polynomial::constant(c.clone());
        for (i, img) in images.iter().enumerate() {
            for _ in 0..m.exp(i) {
                t = t.mul(img);
            }
        }
        out = out.add(&t);
    }
    out
}

/// Integer determinant by fraction-free expansion along the first row.
pub fn det(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    if n == 1 {
        return a[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * a[0][j] as i128 * det(&minor)
        })
        .sum()
}

pub fn invertible_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_filter("invertible", |a| det(a) != 0)
}
