//! Lines in `P^n`: normalization to `(x_2, ..., x_n)` and the splitting type of `N_{L/X}`.

use serde::{Deserialize, Serialize};

use super::{run_check, CheckName, CheckReport, Outcome, Verdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::groebner::Ideal;
use crate::linalg::DenseMatrix;
use crate::polyring::{Monomial, Polynomial, Ring, RingDescriptor};
use crate::sheafcoh::{p1_kernel_splitting, SerreCheck, SplittingType};

/// Linear coordinates `y = M x` with `y_0, y_1` on the line and `L = V(y_2, ..., y_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFrame {
    pub matrix: Vec<Vec<Rational>>,
    pub inverse: Vec<Vec<Rational>>,
    /// The linear forms `y_2, ..., y_n` in the original coordinates.
    pub forms: Vec<Polynomial>,
}

impl LineFrame {
    /// `f(M^{-1} y)`: `f` written in the new coordinates.
    pub fn to_frame(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&linear_images(&self.inverse))
    }

    /// `g(M x)`: back to the original coordinates.
    pub fn from_frame(&self, g: &Polynomial) -> Polynomial {
        g.substitute(&linear_images(&self.matrix))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() }))
    }

    pub fn matrix_strings(&self) -> Vec<Vec<String>> {
        self.matrix.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    }
}

/// `x_i ↦ Σ_j rows[i][j] y_j`.
fn linear_images(rows: &[Vec<Rational>]) -> Vec<Polynomial> {
    rows.iter()
        .map(|row| Polynomial::from_terms(row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (Monomial::var(j), v.clone())).collect()))
        .collect()
}

/// Moves a line ideal to `(x_2, ..., x_n)` by a linear change of coordinates.
pub fn normalize_line(i_l: &Ideal, budget: &Budget) -> Result<LineFrame> {
    let ring = i_l.ring();
    let n = ring.num_vars();
    let gb = i_l.gb_polys(budget)?;
    if gb.len() != n - 2 || gb.iter().any(|g| g.degree() != Some(1)) {
        return Err(Error::Precondition("ideal is not generated by linear forms cutting out a line".into()));
    }
    let pivots: Vec<usize> = gb.iter().map(|g| (0..n).find(|&v| g.terms()[0].0.exp(v) == 1).unwrap()).collect();
    let free: Vec<usize> = (0..n).filter(|v| !pivots.contains(v)).collect();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    matrix[0][free[0]] = Rational::one();
    matrix[1][free[1]] = Rational::one();
    for (t, g) in gb.iter().enumerate() {
        for (m, c) in g.terms() {
            let v = (0..n).find(|&v| m.exp(v) == 1).unwrap();
            matrix[2 + t][v] = c.clone();
        }
    }
    LineFrame::from_matrix(matrix, gb)
}

impl LineFrame {
    /// Frame for an invertible `matrix`; `forms` are the rows `2..` as linear forms.
    pub fn from_matrix(matrix: Vec<Vec<Rational>>, forms: Vec<Polynomial>) -> Result<LineFrame> {
        let n = matrix.len();
        let dense = DenseMatrix::from_rows(matrix.clone());
        let mut inverse = vec![vec![Rational::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let col = dense.solve(&e).ok_or_else(|| Error::Precondition("coordinate change is singular".into()))?;
            if dense.mul_vec(&col) != e {
                return Err(Error::Precondition("coordinate change is singular".into()));
            }
            for i in 0..n {
                inverse[i][j] = col[i].clone();
            }
        }
        Ok(LineFrame { matrix, inverse, forms })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingCertificate {
    pub polynomial: String,
    pub line: Vec<String>,
    /// Rows of `M` with new coordinates `y = M x`.
    pub transform: Vec<Vec<String>>,
    /// `∂F/∂y_j` restricted to the line, as binary forms in `(y_0, y_1)` written `x0, x1`.
    pub restricted_partials: Vec<String>,
    pub splitting: SplittingType,
    pub h0: i64,
    pub h1: i64,
    pub h0_profile: Vec<(i32, i64)>,
    pub serre_checks: Vec<SerreCheck>,
}

/// Restrictions of the transverse partials of `F` to the normalized line.
pub fn restricted_partials(f: &Polynomial, frame: &LineFrame, n: usize) -> Vec<Polynomial> {
    let g = frame.to_frame(f);
    let transverse: Vec<usize> = (2..n).collect();
    transverse.iter().map(|&j| g.partial_derivative(j).restrict_to_zero(&transverse)).collect()
}

/// Splitting type of `N_{L/X} = ker(O_L(1)^{n-1} -> O_L(deg F))`.
pub fn line_splitting_type(f: &Polynomial, i_l: &Ideal, budget: &Budget) -> Result<CheckReport> {
    let ring = i_l.ring().clone();
    let e = f.degree().ok_or_else(|| Error::Precondition("F is the zero polynomial".into()))? as i32;
    if !i_l.contains(f, budget)? {
        return Err(Error::Precondition("F does not vanish on the line".into()));
    }
    run_check(CheckName::SplittingType, budget, || {
        let cert = splitting_certificate(f, i_l, e, &ring, budget)?;
        let pass = cert.splitting.is_balanced();
        let summary = format!("N_L/X splits as {} (h0={}, h1={})", cert.splitting, cert.h0, cert.h1);
        Ok(Outcome::new(Verdict::from_bool(pass), summary, &cert))
    })
}

pub(crate) fn splitting_certificate(f: &Polynomial, i_l: &Ideal, e: i32, ring: &Ring, budget: &Budget) -> Result<SplittingCertificate> {
    let n = ring.num_vars();
    let frame = normalize_line(i_l, budget)?;
    let forms = restricted_partials(f, &frame, n);
    let a = vec![1; n - 2];
    let report = p1_kernel_splitting(&forms, &a, e, budget)?;
    let p1 = RingDescriptor::projective(1);
    Ok(SplittingCertificate {
        polynomial: ring.format(f),
        line: frame.forms.iter().map(|g| ring.format(g)).collect(),
        transform: frame.matrix_strings(),
        restricted_partials: forms.iter().map(|p| p1.format(p)).collect(),
        h0: report.splitting.h0(0),
        h1: report.splitting.h1(0),
        splitting: report.splitting,
        h0_profile: report.h0_profile,
        serre_checks: report.serre_checks,
    })
}
