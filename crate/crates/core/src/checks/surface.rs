//! Surface conditions: `h^1(N_{S/P^4}) = 0` and surjectivity of `ρ_*: H^0(N_S) -> H^0(O_S(deg F))`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::basic::{certify_codimension, check_transversality};
use super::jacobian::{jacobian_matrix, locus_emptiness, minors, Locus};
use super::{fmt_polys, run_check, CheckName, CheckReport, Outcome, Verdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::groebner::Ideal;
use crate::linalg::DenseMatrix;
use crate::polyring::{Monomial, Polynomial, Ring};
use crate::resolve::normal_module;
use crate::sheafcoh::SheafCohomology;

/// A surface given by one form or as a complete intersection of two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceSpec {
    Hypersurface(Polynomial),
    CompleteIntersection(Polynomial, Polynomial),
}

impl SurfaceSpec {
    pub fn forms(&self) -> Vec<Polynomial> {
        match self {
            SurfaceSpec::Hypersurface(g) => vec![g.clone()],
            SurfaceSpec::CompleteIntersection(a, b) => vec![a.clone(), b.clone()],
        }
    }

    pub fn ideal(&self, ring: &Ring) -> Result<Ideal> {
        Ideal::new(ring.clone(), self.forms())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceLiftCertificate {
    pub surface: Vec<String>,
    pub polynomial: String,
    pub codimension_method: String,
    pub normal_h0: i64,
    pub normal_h1: i64,
    pub h1_verdict: Verdict,
    /// `dim H^0(N_S) = Σ dim (R/I_S)_{d_i}`.
    pub source_dim: usize,
    /// `dim H^0(O_S(deg F)) = dim (R/I_S)_{deg F}`.
    pub target_dim: usize,
    /// Dimension of the sections admitting a linear vector-field lift; `None`
    /// when the dimension count already fails and no lift is attempted.
    pub liftable: Option<usize>,
    /// Rank of `ρ_*` on the liftable sections.
    pub rank: Option<usize>,
    pub surjectivity_verdict: Verdict,
}

fn coords(p: &Polynomial, index: &HashMap<Monomial, usize>, len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

fn basis_index(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

/// Sections `g` of `N_S` of the form `g_i ≡ dG_i(w) mod I_S` for a linear
/// vector field `w` form the liftable subspace; `ρ_*` sends such a `g` to
/// `dF(w) mod I_S`. Returns its dimension and the rank of `ρ_*` on it, using
/// the pivot vector fields as lifts.
fn rho_rank(i_s: &Ideal, forms: &[Polynomial], f: &Polynomial, ring: &Ring, budget: &Budget) -> Result<(usize, usize)> {
    let n = ring.num_vars();
    let e = f.degree().unwrap();
    let degs: Vec<u32> = forms.iter().map(|g| g.degree().unwrap()).collect();
    let bases: Vec<Vec<Monomial>> = degs.iter().map(|&d| i_s.standard_monomials(d, budget)).collect::<Result<_>>()?;
    let offsets: Vec<usize> = bases.iter().scan(0, |acc, b| Some(std::mem::replace(acc, *acc + b.len()))).collect();
    let rows: usize = bases.iter().map(Vec::len).sum();
    let target = i_s.standard_monomials(e, budget)?;
    let tindex = basis_index(&target);
    let jac = jacobian_matrix(forms, ring)?;
    let grad_f = jacobian_matrix(std::slice::from_ref(f), ring)?.remove(0);

    let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).collect();
    let mut lmat = DenseMatrix::zeros(rows, unknowns.len());
    let mut tmat = DenseMatrix::zeros(target.len(), unknowns.len());
    for (col, &(k, l)) in unknowns.iter().enumerate() {
        let xl = Polynomial::var(l);
        for (i, basis) in bases.iter().enumerate() {
            let nf = i_s.normal_form(&jac[i][k].mul(&xl), budget)?;
            for (r, v) in coords(&nf, &basis_index(basis), basis.len()).into_iter().enumerate() {
                if !v.is_zero() {
                    lmat.set(offsets[i] + r, col, v);
                }
            }
        }
        let nf = i_s.normal_form(&grad_f[k].mul(&xl), budget)?;
        for (r, v) in coords(&nf, &tindex, target.len()).into_iter().enumerate() {
            if !v.is_zero() {
                tmat.set(r, col, v);
            }
        }
    }

    // Pivot columns give vector fields whose sections span the liftable subspace.
    let pivots = lmat.rref();
    let images: Vec<Vec<Rational>> = pivots.iter().map(|&c| (0..target.len()).map(|r| tmat.get(r, c).clone()).collect()).collect();
    let liftable = pivots.len();
    let rank = if images.is_empty() { 0 } else { DenseMatrix::from_rows(images).rank() };
    Ok((liftable, rank))
}

/// `h^1(N_{S/P^n}) = 0` and surjectivity of `ρ_*` onto `H^0(O_S(deg F))`.
pub fn check_surface_lift(s: &SurfaceSpec, f: &Polynomial, ring: &Ring, budget: &Budget) -> Result<CheckReport> {
    let forms = s.forms();
    if forms.iter().chain([f]).any(Polynomial::is_zero) {
        return Err(Error::Precondition("zero form in surface lift input".into()));
    }
    run_check(CheckName::SurfaceLift, budget, || {
        let codimension_method = certify_codimension(&forms, ring, budget)?;
        let mut sing = forms.clone();
        sing.extend(minors(&jacobian_matrix(&forms, ring)?, forms.len()));
        if let Locus::Nonempty { dimension, saturated, .. } = locus_emptiness(&sing, ring, budget)? {
            return Err(Error::Precondition(format!(
                "surface is singular along a locus of dimension {dimension}: {}",
                fmt_polys(ring, &saturated).join(", ")
            )));
        }
        let mut triple = forms.clone();
        triple.push(f.clone());
        let tr = check_transversality(&triple, ring, budget)?;
        match tr.verdict {
            Verdict::Fail => return Err(Error::Precondition(format!("surface and V(F) are not transverse: {}", tr.summary))),
            Verdict::Inconclusive => return Err(Error::BudgetExhausted(format!("transversality: {}", tr.summary))),
            Verdict::Pass => {}
        }

        let i_s = s.ideal(ring)?;
        let sc = SheafCohomology::new(normal_module(&i_s, budget)?, budget)?;
        let (normal_h0, normal_h1) = (sc.h(0, 0, budget)?, sc.h(1, 0, budget)?);
        let h1_verdict = Verdict::from_bool(normal_h1 == 0);

        let source_dim: usize = forms.iter().map(|g| i_s.standard_monomials(g.degree().unwrap(), budget).map(|b| b.len())).sum::<Result<_>>()?;
        let target_dim = i_s.standard_monomials(f.degree().unwrap(), budget)?.len();
        let (liftable, rank, surjectivity_verdict) = if source_dim < target_dim {
            (None, None, Verdict::Fail)
        } else {
            let (liftable, rank) = rho_rank(&i_s, &forms, f, ring, budget)?;
            let v = if rank == target_dim {
                Verdict::Pass
            } else if liftable == source_dim {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            };
            (Some(liftable), Some(rank), v)
        };
        let cert = SurfaceLiftCertificate {
            surface: fmt_polys(ring, &forms),
            polynomial: ring.format(f),
            codimension_method,
            normal_h0,
            normal_h1,
            h1_verdict,
            source_dim,
            target_dim,
            liftable,
            rank,
            surjectivity_verdict,
        };
        let summary = match (liftable, rank) {
            (Some(l), Some(r)) => {
                format!("h1(N_S)={normal_h1}; rho_*: source {source_dim}, target {target_dim}, liftable {l}, rank {r}")
            }
            _ => format!("h1(N_S)={normal_h1}; rho_*: source {source_dim} < target {target_dim}, not surjective"),
        };
        Ok(Outcome::new(Verdict::combine([h1_verdict, surjectivity_verdict]), summary, &cert))
    })
}
