//! The verification pipeline. Every check returns a [`CheckReport`] whose
//! certificate carries enough data to re-verify the verdict.

mod basic;
mod chain;
mod jacobian;
mod lines;
mod normal;
mod replay;
mod sampler;
mod surface;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use basic::{check_acm, cohomology_table_report, CohomologyTableCertificate, check_containment, check_smoothness, check_transversality, ContainmentCertificate, SmoothnessCertificate, TransversalityCertificate};
pub use chain::{bb_criterion, BbCertificate, LinkageChainSpec, SubCheck};
pub use jacobian::{jacobian_matrix, locus_emptiness, minors, Locus};
pub use lines::{line_splitting_type, normalize_line, LineFrame, SplittingCertificate};
pub use normal::{curve_is_smooth, normal_bundle_h1, relative_normal_h1, NormalCertificate, RelativeNormalCertificate};
pub use replay::{replay_containment, replay_smoothness, replay_splitting, replay_witness};
pub use sampler::{classify, sample_quintics_report, map_space_dimension, sample_quintics, space_v_basis, SampleClass, SampleStats, Witness};
pub use surface::{check_surface_lift, SurfaceLiftCertificate, SurfaceSpec};

use crate::budget::{Budget, BudgetLimits};
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    SmoothCheck,
    Contains,
    AcmCheck,
    NormalH1,
    RelativeNormalH1,
    SplittingType,
    SurfaceLift,
    Transversality,
    BbCriterion,
    SampleQuintics,
    CohomologyTable,
}

impl CheckName {
    pub const ALL: [CheckName; 11] = [
        CheckName::SmoothCheck,
        CheckName::Contains,
        CheckName::AcmCheck,
        CheckName::NormalH1,
        CheckName::RelativeNormalH1,
        CheckName::SplittingType,
        CheckName::SurfaceLift,
        CheckName::Transversality,
        CheckName::BbCriterion,
        CheckName::SampleQuintics,
        CheckName::CohomologyTable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::SmoothCheck => "smooth-check",
            CheckName::Contains => "contains",
            CheckName::AcmCheck => "acm-check",
            CheckName::NormalH1 => "normal-h1",
            CheckName::RelativeNormalH1 => "relative-normal-h1",
            CheckName::SplittingType => "splitting-type",
            CheckName::SurfaceLift => "surface-lift",
            CheckName::Transversality => "transversality",
            CheckName::BbCriterion => "bb-criterion",
            CheckName::SampleQuintics => "sample-quintics",
            CheckName::CohomologyTable => "cohomology-table",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl std::fmt::Display for CheckName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        items.into_iter().fold(Verdict::Pass, |acc, v| match (acc, v) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        })
    }

    pub fn from_bool(pass: bool) -> Verdict {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetState {
    pub limits: BudgetLimits,
    /// Why the budget ran out, if it did.
    pub exhausted: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: CheckName,
    pub verdict: Verdict,
    pub summary: String,
    pub certificate: serde_json::Value,
    pub timings: Timings,
    pub budget_state: BudgetState,
}

impl CheckReport {
    /// Deserializes the certificate into its typed form.
    pub fn certificate_as<T: serde::de::DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.certificate.clone()).map_err(|e| Error::InvalidInput(format!("certificate: {e}")))
    }

    /// Report with timings zeroed, for reproducibility comparisons.
    pub fn without_timings(&self) -> CheckReport {
        CheckReport { timings: Timings { wall_ms: 0 }, ..self.clone() }
    }
}

/// Outcome of a check body before packaging.
pub(crate) struct Outcome {
    pub verdict: Verdict,
    pub summary: String,
    pub certificate: serde_json::Value,
}

impl Outcome {
    pub fn new<T: Serialize>(verdict: Verdict, summary: impl Into<String>, cert: &T) -> Self {
        Outcome { verdict, summary: summary.into(), certificate: serde_json::to_value(cert).expect("certificate serializes") }
    }
}

/// Runs a check body; budget exhaustion becomes an inconclusive report, other errors propagate.
pub(crate) fn run_check(name: CheckName, budget: &Budget, body: impl FnOnce() -> Result<Outcome>) -> Result<CheckReport> {
    let start = Instant::now();
    let (outcome, exhausted) = match body() {
        Ok(o) => (o, None),
        Err(Error::BudgetExhausted(msg)) => (
            Outcome {
                verdict: Verdict::Inconclusive,
                summary: format!("budget exhausted: {msg}"),
                certificate: serde_json::json!({ "reason": msg }),
            },
            Some(msg),
        ),
        Err(e) => return Err(e),
    };
    Ok(CheckReport {
        check_name: name,
        verdict: outcome.verdict,
        summary: outcome.summary,
        certificate: outcome.certificate,
        timings: Timings { wall_ms: start.elapsed().as_millis() as u64 },
        budget_state: BudgetState { limits: budget.limits, exhausted },
    })
}

pub(crate) fn fmt_polys(ring: &Ring, ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| ring.format(p)).collect()
}

pub(crate) fn parse_polys(ring: &Ring, srcs: &[String]) -> Result<Vec<Polynomial>> {
    srcs.iter().map(|s| ring.parse(s)).collect()
}

pub(crate) fn require_nonzero_form(f: &Polynomial, what: &str) -> Result<()> {
    if f.is_zero() {
        return Err(Error::Precondition(format!("{what} is the zero polynomial")));
    }
    Ok(())
}
