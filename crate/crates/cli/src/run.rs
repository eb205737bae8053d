//! Executes invocations and assembles the report envelope.

use std::time::Instant;

use defcert::budget::BudgetLimits;
use defcert::checks::{
    bb_criterion, check_acm, check_containment, check_smoothness, check_surface_lift, check_transversality,
    cohomology_table_report, line_splitting_type, normal_bundle_h1, relative_normal_h1, sample_quintics_report,
    CheckReport, Verdict,
};
use defcert::resolve::GradedModule;
use defcert::{Budget, Ring};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::job::{Invocation, ModuleSpec, Task};

pub const SCHEMA_ID: &str = "defcert.report/v1";

/// Window used by `cohomology-table` when none is given.
pub const DEFAULT_TABLE_WINDOW: (i64, i64) = (-10, 10);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

impl Status {
    /// 0 all pass, 1 some fail, 2 inconclusive without failures, 3 input error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
            Status::Error => 3,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub index: usize,
    pub line: usize,
    pub invocation: String,
    pub wall_ms: u64,
    pub report: Option<CheckReport>,
    /// Input or precondition error; exclusive with `report`.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema: String,
    pub tool: ToolInfo,
    /// `sha256:` hex digest of the job text and any command-line invocation.
    pub input_digest: String,
    pub budget: BudgetLimits,
    pub overall: Status,
    pub exit_code: i32,
    pub entries: Vec<Entry>,
    pub wall_ms: u64,
}

impl ReportEnvelope {
    /// Envelope with every wall-clock field zeroed.
    pub fn without_timings(&self) -> ReportEnvelope {
        let entries = self
            .entries
            .iter()
            .map(|e| Entry { wall_ms: 0, report: e.report.as_ref().map(CheckReport::without_timings), ..e.clone() })
            .collect();
        ReportEnvelope { entries, wall_ms: 0, ..self.clone() }
    }
}

pub fn digest(input: &str) -> String {
    let hash = Sha256::digest(input.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn execute(task: &Task, ring: &Ring, budget: &Budget) -> defcert::Result<CheckReport> {
    match task {
        Task::Smooth { f } => check_smoothness(f, ring, budget),
        Task::Contains { f, ideal } => check_containment(f, ideal, budget),
        Task::Acm { ideal, window } => check_acm(ideal, *window, budget),
        Task::NormalH1 { ideal } => normal_bundle_h1(ideal, budget),
        Task::RelativeNormalH1 { ideal, f } => relative_normal_h1(ideal, f, budget),
        Task::Splitting { f, ideal } => line_splitting_type(f, ideal, budget),
        Task::SurfaceLift { surface, f } => check_surface_lift(surface, f, ring, budget),
        Task::Transversality { forms } => check_transversality(forms, ring, budget),
        Task::Bb { chain } => bb_criterion(chain, ring, budget),
        Task::Sample { line, trials, bound, seed, degree, witnesses } => {
            sample_quintics_report(line, *trials, *bound, *seed, *degree, *witnesses, budget)
        }
        Task::Cohomology { module, description, rows, window } => {
            let build = || match module {
                ModuleSpec::Ring => Ok(GradedModule::free(ring.clone(), vec![0])),
                ModuleSpec::Ideal(i) => GradedModule::from_ideal(i, budget),
                ModuleSpec::Quotient(i) => Ok(GradedModule::quotient_ring(i)),
            };
            let (w, provenance) = match window {
                Some(w) => (*w, format!("user window [{}, {}]", w.0, w.1)),
                None => (DEFAULT_TABLE_WINDOW, format!("default window [{}, {}]", DEFAULT_TABLE_WINDOW.0, DEFAULT_TABLE_WINDOW.1)),
            };
            cohomology_table_report(build, description, rows, w, &provenance, budget)
        }
    }
}

/// Runs every invocation with a fresh budget; results keep invocation order
/// regardless of `jobs`.
pub fn run(ring: &Ring, invocations: &[Invocation], input: &str, limits: BudgetLimits, jobs: usize) -> ReportEnvelope {
    let start = Instant::now();
    let one = |(index, inv): (usize, &Invocation)| {
        let t = Instant::now();
        let result = execute(&inv.task, ring, &Budget::new(limits));
        let (report, error) = match result {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Entry { index, line: inv.line, invocation: inv.text.clone(), wall_ms: t.elapsed().as_millis() as u64, report, error }
    };
    let entries: Vec<Entry> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| invocations.par_iter().enumerate().map(one).collect())
    } else {
        invocations.iter().enumerate().map(one).collect()
    };
    let overall = overall_status(&entries);
    ReportEnvelope {
        schema: SCHEMA_ID.to_string(),
        tool: ToolInfo { name: "defcert".into(), version: env!("CARGO_PKG_VERSION").into() },
        input_digest: digest(input),
        budget: limits,
        overall,
        exit_code: overall.exit_code(),
        entries,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

/// Errors dominate; otherwise verdicts combine with fail over inconclusive over pass.
pub fn overall_status(entries: &[Entry]) -> Status {
    if entries.iter().any(|e| e.error.is_some()) {
        return Status::Error;
    }
    match Verdict::combine(entries.iter().filter_map(|e| e.report.as_ref()).map(|r| r.verdict)) {
        Verdict::Pass => Status::Pass,
        Verdict::Fail => Status::Fail,
        Verdict::Inconclusive => Status::Inconclusive,
    }
}
