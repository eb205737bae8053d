//! Splitting types of kernel bundles `ker(⊕ O(a_j) -> O(b))` on `P^1`.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::groebner::Ideal;
use crate::linalg::DenseMatrix;
use crate::polyring::{Monomial, Polynomial, RingDescriptor};

/// `⊕ O(degrees[i])` on `P^1`, degrees descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingType {
    pub degrees: Vec<i32>,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i32>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType { degrees }
    }

    pub fn h0(&self, k: i32) -> i64 {
        self.degrees.iter().map(|&a| (a + k + 1).max(0) as i64).sum()
    }

    /// By Serre duality, `h^1(E(k)) = h^0(E^*(-2-k))`.
    pub fn h1(&self, k: i32) -> i64 {
        self.degrees.iter().map(|&a| (-a - k - 1).max(0) as i64).sum()
    }

    pub fn degree(&self) -> i32 {
        self.degrees.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        match (self.degrees.first(), self.degrees.last()) {
            (Some(a), Some(b)) => a - b <= 1,
            _ => true,
        }
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(i32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `h^1(K(k))` two ways: from the long exact sequence of the defining map and
/// from the reconstructed type through Serre duality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreCheck {
    pub k: i32,
    pub from_sequence: i64,
    pub from_dual: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub splitting: SplittingType,
    /// Measured `(k, h^0(K(k)))` from the start of the scan.
    pub h0_profile: Vec<(i32, i64)>,
    pub serre_checks: Vec<SerreCheck>,
}

/// Binary forms of degree `d` as coefficient vectors over `x0^(d-i) x1^i`.
fn coeffs_in(p: &Polynomial, d: i32) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); (d + 1).max(0) as usize];
    for (m, c) in p.terms() {
        v[m.exp(1) as usize] = c.clone();
    }
    v
}

/// Matrix of `⊕_j H^0(O(a_j+k)) -> H^0(O(b+k))`, `(s_j) ↦ Σ f_j s_j`.
fn section_map(forms: &[Polynomial], a: &[i32], b: i32, k: i32) -> DenseMatrix<Rational> {
    let rows = (b + k + 1).max(0) as usize;
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for (f, &aj) in forms.iter().zip(a) {
        let d = aj + k;
        for i in 0..=d.max(-1) {
            let m = Polynomial::term(Rational::one(), Monomial::from_exponents(&[(d - i) as u32, i as u32]));
            cols.push(coeffs_in(&f.mul(&m), b + k));
        }
    }
    let mut mat = DenseMatrix::zeros(rows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            if !v.is_zero() {
                mat.set(r, c, v.clone());
            }
        }
    }
    mat
}

fn h0_sum(a: &[i32], k: i32) -> i64 {
    a.iter().map(|&x| (x + k + 1).max(0) as i64).sum()
}

fn h1_line(d: i32) -> i64 {
    (-d - 1).max(0) as i64
}

/// Splitting type of `K = ker(⊕ O(a_j) -> O(b))` given by binary forms `f_j` of degree `b - a_j`.
pub fn p1_kernel_splitting(forms: &[Polynomial], a: &[i32], b: i32, budget: &Budget) -> Result<SplittingReport> {
    if forms.len() != a.len() {
        return Err(Error::InvalidInput(format!("{} forms but {} source twists", forms.len(), a.len())));
    }
    for (f, &aj) in forms.iter().zip(a) {
        if f.support_vars() > 2 {
            return Err(Error::InvalidInput("forms must be binary in x0, x1".into()));
        }
        if let Some(d) = f.degree() {
            if d as i32 != b - aj || !f.is_homogeneous() {
                return Err(Error::InvalidInput(format!("form of degree {d} cannot map O({aj}) to O({b})")));
            }
        }
    }
    let nonzero: Vec<Polynomial> = forms.iter().filter(|f| !f.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::RankZero);
    }
    let p1 = RingDescriptor::projective(1);
    let ideal = Ideal::new(p1, nonzero)?;
    if ideal.projective_dimension(budget)? >= 0 {
        let g = ideal.gb_polys(budget)?;
        return Err(Error::CommonZero(fmt_polys(&g)));
    }

    let rank = forms.len() - 1;
    let total: i32 = a.iter().sum::<i32>() - b;
    let amax = *a.iter().max().unwrap();
    let k0 = -amax - 1;
    let h0 = |k: i32| -> i64 { h0_sum(a, k) - section_map(forms, a, b, k).rank() as i64 };

    let mut profile = vec![(k0, 0i64)];
    let mut degrees: Vec<i32> = Vec::new();
    let (mut prev_h, mut prev_delta) = (0i64, 0i64);
    let mut k = k0;
    while degrees.len() < rank {
        budget.check_time()?;
        k += 1;
        if k > b - total + 2 * rank as i32 + 2 {
            return Err(Error::Precondition("splitting scan did not terminate".into()));
        }
        let h = h0(k);
        profile.push((k, h));
        let delta = h - prev_h;
        for _ in 0..(delta - prev_delta) {
            degrees.push(-k);
        }
        prev_h = h;
        prev_delta = delta;
    }
    let splitting = SplittingType::new(degrees);
    if splitting.degree() != total {
        return Err(Error::Precondition(format!("reconstructed type {splitting} has degree {} not {total}", splitting.degree())));
    }

    let mut serre_checks = Vec::new();
    for k in [-2, -1, 0] {
        let rk = section_map(forms, a, b, k).rank() as i64;
        let h1e: i64 = a.iter().map(|&x| h1_line(x + k)).sum();
        let from_sequence = (b + k + 1).max(0) as i64 - rk + h1e - h1_line(b + k);
        serre_checks.push(SerreCheck { k, from_sequence, from_dual: splitting.h1(k) });
    }
    if let Some(bad) = serre_checks.iter().find(|c| c.from_sequence != c.from_dual) {
        return Err(Error::Precondition(format!("Serre duality check failed at k={}", bad.k)));
    }
    Ok(SplittingReport { splitting, h0_profile: profile, serre_checks })
}

fn fmt_polys(ps: &[Polynomial]) -> String {
    let ring = RingDescriptor::projective(1);
    let parts: Vec<String> = ps.iter().map(|p| ring.display(p).to_string()).collect();
    format!("[{}]", parts.join(", "))
}
