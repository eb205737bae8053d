//! Human-readable rendering of a report envelope.

use std::fmt::Write;

use defcert::checks::{BbCertificate, CheckName, CheckReport, CohomologyTableCertificate, SampleStats};
use defcert::sheafcoh::RaoTable;

use crate::run::ReportEnvelope;

fn indent(block: &str, by: &str) -> String {
    block.lines().map(|l| format!("{by}{l}\n")).collect()
}

fn details(r: &CheckReport) -> String {
    let mut out = String::new();
    match r.check_name {
        CheckName::AcmCheck => {
            if let Ok(t) = r.certificate_as::<RaoTable>() {
                out += &indent(&t.table.to_string(), "    ");
            }
        }
        CheckName::CohomologyTable => {
            if let Ok(c) = r.certificate_as::<CohomologyTableCertificate>() {
                out += &indent(&c.table.to_string(), "    ");
            }
        }
        CheckName::SampleQuintics => {
            if let Ok(s) = r.certificate_as::<SampleStats>() {
                let _ = writeln!(out, "    basis {}, map space {}, phi rank {}", s.basis_size, s.map_space_dim, s.phi_rank);
                for (class, n) in &s.counts {
                    let _ = writeln!(out, "    {n:>5}  {class}");
                }
            }
        }
        CheckName::BbCriterion => {
            if let Ok(c) = r.certificate_as::<BbCertificate>() {
                for s in &c.sub_checks {
                    let _ = writeln!(out, "    [{}] {}: {}", s.report.verdict, s.label, s.report.summary);
                }
                for s in &c.skipped {
                    let _ = writeln!(out, "    [skipped] {s}");
                }
            }
        }
        _ => {}
    }
    out
}

pub fn render_text(env: &ReportEnvelope) -> String {
    let mut out = format!("{} {}  input {}\n", env.tool.name, env.tool.version, env.input_digest);
    for e in &env.entries {
        let where_ = if e.line > 0 { format!("line {}, ", e.line) } else { String::new() };
        match (&e.report, &e.error) {
            (Some(r), _) => {
                let _ = writeln!(out, "[{}] {}  ({where_}{} ms)", r.verdict, e.invocation, e.wall_ms);
                let _ = writeln!(out, "    {}", r.summary);
                out += &details(r);
            }
            (None, Some(err)) => {
                let _ = writeln!(out, "[error] {}  ({where_}{} ms)", e.invocation, e.wall_ms);
                let _ = writeln!(out, "    {err}");
            }
            (None, None) => {}
        }
    }
    let _ = writeln!(out, "overall: {} (exit {})", env.overall, env.exit_code);
    out
}
