//! The composite criterion over a user-supplied linkage chain.

use serde::{Deserialize, Serialize};

use super::basic::{check_containment, check_smoothness, check_transversality};
use super::normal::{normal_bundle_h1, relative_normal_h1};
use super::surface::{check_surface_lift, SurfaceSpec};
use super::{run_check, CheckName, CheckReport, Outcome, Verdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{saturate, Ideal};
use crate::polyring::{Polynomial, Ring};

/// Threefold `X = V(F)`, curves `C^(j)` and surfaces `S_i`, supplied explicitly.
#[derive(Clone, Debug)]
pub struct LinkageChainSpec {
    pub threefold: Polynomial,
    pub degree: u32,
    pub curves: Vec<Ideal>,
    pub surfaces: Vec<SurfaceSpec>,
}

impl LinkageChainSpec {
    /// Triples `(surface forms..., F)` whose transversality is required: each
    /// complete-intersection surface with `F`, each pair of consecutive
    /// hypersurfaces with `F`, and a lone hypersurface with `F`.
    pub fn transversality_sets(&self) -> Vec<Vec<Polynomial>> {
        let f = &self.threefold;
        let mut out = Vec::new();
        let hyper: Vec<&Polynomial> = self
            .surfaces
            .iter()
            .filter_map(|s| match s {
                SurfaceSpec::Hypersurface(g) => Some(g),
                _ => None,
            })
            .collect();
        for s in &self.surfaces {
            if let SurfaceSpec::CompleteIntersection(a, b) = s {
                out.push(vec![a.clone(), b.clone(), f.clone()]);
            }
        }
        match hyper.len() {
            0 => {}
            1 => out.push(vec![hyper[0].clone(), f.clone()]),
            _ => out.extend(hyper.windows(2).map(|w| vec![w[0].clone(), w[1].clone(), f.clone()])),
        }
        out
    }

    /// Curve each surface must contain: `C^(i)`, or the last curve past the end.
    fn adjacent_curves(&self, i: usize) -> Vec<usize> {
        let last = self.curves.len() - 1;
        let mut v = vec![i.min(last)];
        if i + 1 <= last {
            v.push(i + 1);
        }
        v
    }

    fn validate(&self, budget: &Budget) -> Result<()> {
        if self.curves.is_empty() {
            return Err(Error::InvalidInput("chain has no curve supplied".into()));
        }
        if self.threefold.degree() != Some(self.degree) {
            return Err(Error::InvalidInput(format!("threefold is not of declared degree {}", self.degree)));
        }
        for (j, c) in self.curves.iter().enumerate() {
            let dim = c.projective_dimension(budget)?;
            if dim != 1 {
                return Err(Error::InvalidInput(format!("curve {j}: expected dimension 1, found {dim}")));
            }
            if !saturate(c, None, budget)?.ideal.same_ideal(c, budget)? {
                return Err(Error::InvalidInput(format!("curve {j}: ideal is not saturated")));
            }
        }
        for (i, s) in self.surfaces.iter().enumerate() {
            for j in self.adjacent_curves(i) {
                for g in s.forms() {
                    if !self.curves[j].contains(&g, budget)? {
                        return Err(Error::InvalidInput(format!("surface {i} does not contain curve {j}")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubCheck {
    pub label: String,
    pub report: CheckReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BbCertificate {
    pub statement: String,
    pub sub_checks: Vec<SubCheck>,
    pub first_failure: Option<String>,
    /// Sub-checks not evaluated because an earlier one already failed.
    pub skipped: Vec<String>,
}

type Step<'a> = (String, Box<dyn FnOnce() -> Result<CheckReport> + 'a>);

/// Evaluates the hypotheses in order: smoothness of `X`, containment of each
/// curve, both normal-bundle conditions per curve, the surface lifts, then
/// transversality. Stops at the first failure.
pub fn bb_criterion(chain: &LinkageChainSpec, ring: &Ring, budget: &Budget) -> Result<CheckReport> {
    chain.validate(budget)?;
    let f = &chain.threefold;
    let mut steps: Vec<Step> = Vec::new();
    steps.push(("smooth-check X".into(), Box::new(|| check_smoothness(f, ring, budget))));
    for (j, c) in chain.curves.iter().enumerate() {
        steps.push((format!("contains C{j}"), Box::new(move || check_containment(f, c, budget))));
    }
    for (j, c) in chain.curves.iter().enumerate() {
        steps.push((format!("normal-h1 C{j}"), Box::new(move || normal_bundle_h1(c, budget))));
        steps.push((format!("relative-normal-h1 C{j}"), Box::new(move || relative_normal_h1(c, f, budget))));
    }
    for (i, s) in chain.surfaces.iter().enumerate() {
        steps.push((format!("surface-lift S{i}"), Box::new(move || check_surface_lift(s, f, ring, budget))));
    }
    for (t, forms) in chain.transversality_sets().into_iter().enumerate() {
        steps.push((format!("transversality T{t}"), Box::new(move || check_transversality(&forms, ring, budget))));
    }

    run_check(CheckName::BbCriterion, budget, || {
        let mut sub_checks = Vec::new();
        let mut first_failure = None;
        let mut skipped = Vec::new();
        for (label, step) in steps {
            if first_failure.is_some() {
                skipped.push(label);
                continue;
            }
            let report = step().map_err(|e| match e {
                Error::BudgetExhausted(m) => Error::BudgetExhausted(m),
                Error::Precondition(m) => Error::Precondition(format!("{label}: {m}")),
                other => Error::Precondition(format!("{label}: {other}")),
            })?;
            if report.verdict == Verdict::Fail {
                first_failure = Some(label.clone());
            }
            sub_checks.push(SubCheck { label, report });
        }
        let verdict = Verdict::combine(sub_checks.iter().map(|s| s.report.verdict));
        let statement = match verdict {
            Verdict::Pass => "linkage-chain hypotheses hold for this chain".to_string(),
            Verdict::Fail => format!("linkage-chain hypotheses fail (first failure: {})", first_failure.as_deref().unwrap_or("?")),
            Verdict::Inconclusive => "linkage-chain hypotheses inconclusive".to_string(),
        };
        let cert = BbCertificate { statement: statement.clone(), sub_checks, first_failure, skipped };
        Ok(Outcome::new(verdict, statement, &cert))
    })
}
