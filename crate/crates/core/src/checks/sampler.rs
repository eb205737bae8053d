//! Random sampling of hypersurfaces through a line.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::jacobian::{jacobian_matrix, locus_emptiness, Locus};
use super::lines::{normalize_line, restricted_partials};
use super::replay::replay_witness;
use super::{run_check, CheckName, CheckReport, Outcome, Verdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::groebner::Ideal;
use crate::linalg::DenseMatrix;
use crate::polyring::{Monomial, Polynomial, Ring};
use crate::sheafcoh::{line_bundle_cohomology, p1_kernel_splitting, SplittingType};

/// Outcome class of one sampled hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SampleClass {
    Classified { smooth: bool, splitting: SplittingType },
    /// Restricted partials share a zero: `X` is singular at a point of the line.
    SingularAlongLine,
    /// The restricted partials vanish identically.
    Degenerate,
    Inconclusive,
}

impl SampleClass {
    pub fn label(&self) -> String {
        match self {
            SampleClass::Classified { smooth, splitting } => {
                format!("{} {}", if *smooth { "smooth" } else { "singular" }, splitting)
            }
            SampleClass::SingularAlongLine => "singular-along-line".into(),
            SampleClass::Degenerate => "degenerate".into(),
            SampleClass::Inconclusive => "inconclusive".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub polynomial: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleStats {
    pub trials: usize,
    pub seed: u64,
    pub coefficient_bound: i64,
    pub degree: u32,
    /// Size of the monomial basis of the space of forms through the line.
    pub basis_size: usize,
    /// `dim H^0(O_L(d-1))^{n-1}`, the space of maps `φ_F`.
    pub map_space_dim: i64,
    /// Rank of `F ↦ φ_F` on the sampled space.
    pub phi_rank: usize,
    pub counts: BTreeMap<String, usize>,
    pub witnesses: BTreeMap<String, Vec<Witness>>,
}

impl SampleStats {
    pub fn count(&self, label: &str) -> usize {
        self.counts.get(label).copied().unwrap_or(0)
    }
}

/// Variables cutting out a coordinate line.
fn line_variables(line: &Ideal, budget: &Budget) -> Result<Vec<usize>> {
    let n = line.ring().num_vars();
    let gb = line.gb_polys(budget)?;
    let vars: Vec<usize> = gb
        .iter()
        .filter(|g| g.len() == 1 && g.degree() == Some(1))
        .map(|g| (0..n).find(|&v| g.terms()[0].0.exp(v) == 1).unwrap())
        .collect();
    if vars.len() != gb.len() || vars.len() + 2 != n {
        return Err(Error::Precondition("sampler needs a coordinate line such as (x2,x3,x4)".into()));
    }
    Ok(vars)
}

/// Degree-`d` monomials in the ideal of a coordinate line, descending grevlex.
pub fn space_v_basis(line: &Ideal, degree: u32, budget: &Budget) -> Result<Vec<Monomial>> {
    let vars = line_variables(line, budget)?;
    Ok(Monomial::all_of_degree(line.ring().num_vars(), degree).into_iter().filter(|m| vars.iter().any(|&v| m.exp(v) > 0)).collect())
}

/// `(n-1) · h^0(O_{P^1}(d-1))`.
pub fn map_space_dimension(ring: &Ring, degree: u32) -> i64 {
    (ring.num_vars() as i64 - 2) * line_bundle_cohomology(1, degree as i64 - 1, 0)
}

fn phi_rank(line: &Ideal, basis: &[Monomial], budget: &Budget) -> Result<usize> {
    let n = line.ring().num_vars();
    let frame = normalize_line(line, budget)?;
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|m| {
            let f = Polynomial::term(Rational::one(), *m);
            restricted_partials(&f, &frame, n)
                .iter()
                .flat_map(|p| {
                    let d = basis[0].degree() as usize - 1;
                    (0..=d).map(move |i| p.coefficient(&Monomial::from_exponents(&[(d - i) as u32, i as u32])))
                })
                .collect()
        })
        .collect();
    Ok(DenseMatrix::from_rows(rows).rank())
}

/// Classifies `F` through the line by its splitting type and smoothness.
pub fn classify(f: &Polynomial, line: &Ideal, budget: &Budget) -> Result<SampleClass> {
    let ring = line.ring();
    let n = ring.num_vars();
    let e = f.degree().unwrap_or(0) as i32;
    let frame = normalize_line(line, budget)?;
    let forms = restricted_partials(f, &frame, n);
    if forms.iter().all(Polynomial::is_zero) {
        return Ok(SampleClass::Degenerate);
    }
    let splitting = match p1_kernel_splitting(&forms, &vec![1; n - 2], e, budget) {
        Ok(r) => r.splitting,
        Err(Error::CommonZero(_)) => return Ok(SampleClass::SingularAlongLine),
        Err(Error::RankZero) => return Ok(SampleClass::Degenerate),
        Err(Error::BudgetExhausted(_)) => return Ok(SampleClass::Inconclusive),
        Err(err) => return Err(err),
    };
    let mut gens = vec![f.clone()];
    gens.extend(jacobian_matrix(std::slice::from_ref(f), ring)?.remove(0));
    let smooth = match locus_emptiness(&gens, ring, budget) {
        Ok(Locus::Empty(_)) => true,
        Ok(Locus::Nonempty { .. }) => false,
        Err(Error::BudgetExhausted(_)) => return Ok(SampleClass::Inconclusive),
        Err(err) => return Err(err),
    };
    Ok(SampleClass::Classified { smooth, splitting })
}

/// Draws `trials` forms of degree `degree` through the line with coefficients
/// uniform in `[-bound, bound]` on the monomial basis. Draws are sequential
/// from a ChaCha8 stream, classification runs in parallel, and results are
/// merged in trial order. Each trial gets a fresh copy of `budget`.
pub fn sample_quintics(
    line: &Ideal,
    trials: usize,
    bound: i64,
    seed: u64,
    degree: u32,
    witnesses_per_class: usize,
    budget: &Budget,
) -> Result<SampleStats> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    if bound < 1 {
        return Err(Error::InvalidInput("coefficient bound must be at least 1".into()));
    }
    let ring = line.ring().clone();
    let basis = space_v_basis(line, degree, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Polynomial> = (0..trials)
        .map(|_| Polynomial::from_terms(basis.iter().map(|m| (*m, Rational::from_i64(rng.gen_range(-bound..=bound)))).collect()))
        .collect();
    let classes: Vec<SampleClass> =
        draws.par_iter().map(|f| classify(f, line, &budget.restart())).collect::<Result<Vec<_>>>()?;

    let mut counts = BTreeMap::new();
    let mut witnesses: BTreeMap<String, Vec<Witness>> = BTreeMap::new();
    for (trial, (f, class)) in draws.iter().zip(&classes).enumerate() {
        let label = class.label();
        *counts.entry(label.clone()).or_insert(0) += 1;
        let list = witnesses.entry(label.clone()).or_default();
        if list.len() < witnesses_per_class {
            list.push(Witness { trial, polynomial: ring.format(f), class: label });
        }
    }
    Ok(SampleStats {
        trials,
        seed,
        coefficient_bound: bound,
        degree,
        basis_size: basis.len(),
        map_space_dim: map_space_dimension(&ring, degree),
        phi_rank: phi_rank(line, &basis, budget)?,
        counts,
        witnesses,
    })
}

/// Sampler run packaged as a report. Fails only if a stored witness does not
/// replay to its class; inconclusive if any trial ran out of budget.
pub fn sample_quintics_report(
    line: &Ideal,
    trials: usize,
    bound: i64,
    seed: u64,
    degree: u32,
    witnesses_per_class: usize,
    budget: &Budget,
) -> Result<CheckReport> {
    let stats = sample_quintics(line, trials, bound, seed, degree, witnesses_per_class, budget)?;
    run_check(CheckName::SampleQuintics, budget, || {
        for w in stats.witnesses.values().flatten() {
            if !replay_witness(line, w, &budget.restart())? {
                let summary = format!("witness of trial {} does not replay to {}", w.trial, w.class);
                return Ok(Outcome::new(Verdict::Fail, summary, &stats));
            }
        }
        let generic = stats.count("smooth (-1,-1)");
        let verdict = if stats.count("inconclusive") > 0 { Verdict::Inconclusive } else { Verdict::Pass };
        let summary = format!("{generic}/{trials} trials smooth with splitting (-1,-1); {} classes", stats.counts.len());
        Ok(Outcome::new(verdict, summary, &stats))
    })
}
