use std::path::PathBuf;
use std::process::{Command, Output};

use defcert::checks::{BbCertificate, CheckName, CohomologyTableCertificate, SmoothnessCertificate, Verdict};
use defcert_cli::run::ReportEnvelope;
use defcert_cli::schema::validate;

const FERMAT: &str = "x0^5+x1^5+x2^5+x3^5+x4^5";
const PLANE_SINGULAR: &str = "x2*x0^4+x3*x1^4+x4*x0^3*x1";

fn job(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs").join(name)
}

fn defcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defcert")).args(args).env_remove("DEFCERT_BUDGET").output().unwrap()
}

fn envelope(args: &[&str]) -> (i32, ReportEnvelope) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = defcert(&full);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    validate(&value).unwrap_or_else(|errs| panic!("{errs:?}"));
    (out.status.code().unwrap(), serde_json::from_value(value).unwrap())
}

#[test]
fn exit_code_pass_for_fermat() {
    let (code, env) = envelope(&["smooth-check", "--poly", FERMAT]);
    assert_eq!(code, 0);
    assert_eq!(env.exit_code, 0);
    assert_eq!(env.entries[0].report.as_ref().unwrap().verdict, Verdict::Pass);
}

#[test]
fn exit_code_fail_lists_singular_plane() {
    let (code, env) = envelope(&["smooth-check", "--poly", PLANE_SINGULAR]);
    assert_eq!(code, 1);
    let cert: SmoothnessCertificate = env.entries[0].report.as_ref().unwrap().certificate_as().unwrap();
    assert_eq!(cert.singular_dimension, 2);
    assert!(!cert.singular_ideal.is_empty());
}

#[test]
fn exit_code_inconclusive_on_budget() {
    let (code, env) = envelope(&["--max-basis", "2", "smooth-check", "--poly", FERMAT]);
    assert_eq!(code, 2);
    let r = env.entries[0].report.as_ref().unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.budget_state.exhausted.is_some());
}

#[test]
fn exit_code_input_errors() {
    let dir = std::env::temp_dir().join(format!("defcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("undefined.job");
    std::fs::write(&bad, "poly F = x0^5\ncheck contains poly=F ideal=C\n").unwrap();
    let out = defcert(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("undefined.job:2:29: undefined ideal `C`"), "{err}");

    assert_eq!(defcert(&["--budget", "speed=9", "smooth-check", "--poly", "x0"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_defcert"))
        .args(["smooth-check", "--poly", "x0"])
        .env("DEFCERT_BUDGET", "timeout")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // A precondition failure at run time is reported in the envelope and exits 3.
    let (code, env) = envelope(&["splitting-type", "--poly", FERMAT, "--ideal", "(x2,x3,x4)"]);
    assert_eq!(code, 3);
    assert!(env.entries[0].error.as_deref().unwrap().contains("F does not vanish"));
}

#[test]
fn budget_env_is_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_defcert"))
        .args(["--json", "smooth-check", "--poly", FERMAT])
        .env("DEFCERT_BUDGET", "max-basis=2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_defcert"))
        .args(["--max-basis", "100000", "smooth-check", "--poly", FERMAT])
        .env("DEFCERT_BUDGET", "max-basis=2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn job_files_produce_valid_envelopes() {
    let (code, env) = envelope(&["run", job("plane_singular.job").to_str().unwrap()]);
    assert_eq!(code, 1);
    let verdicts: Vec<(CheckName, Verdict)> =
        env.entries.iter().map(|e| e.report.as_ref().unwrap()).map(|r| (r.check_name, r.verdict)).collect();
    assert_eq!(
        verdicts,
        [
            (CheckName::Contains, Verdict::Pass),
            (CheckName::SmoothCheck, Verdict::Fail),
            (CheckName::SplittingType, Verdict::Fail),
            (CheckName::RelativeNormalH1, Verdict::Fail),
            (CheckName::NormalH1, Verdict::Pass),
        ]
    );
    assert_eq!(env.entries[1].line, 6);

    let (_, env) = envelope(&["run", job("fermat.job").to_str().unwrap()]);
    assert_eq!(env.entries.len(), 3);
}

#[test]
fn two_lines_cohomology_table_window() {
    let (code, env) = envelope(&["run", job("two_lines.job").to_str().unwrap()]);
    assert_eq!(code, 1);
    let t: CohomologyTableCertificate = env.entries[2].report.as_ref().unwrap().certificate_as().unwrap();
    assert_eq!(t.table.rows, [0, 1]);
    assert_eq!(t.table.entries.iter().map(Vec::len).collect::<Vec<_>>(), [21, 21]);
    assert_eq!(t.table.nonzero(1), [(0, 1)]);

    let (_, env) = envelope(&[
        "cohomology-table",
        "--job",
        job("two_lines.job").to_str().unwrap(),
        "--module",
        "ideal:C",
        "--window",
        "-10",
        "10",
    ]);
    let t2: CohomologyTableCertificate = env.entries[0].report.as_ref().unwrap().certificate_as().unwrap();
    assert_eq!(t2.table, t.table);
}

#[test]
fn chain_report_embeds_sub_certificates() {
    let (code, env) = envelope(&["run", job("chain.job").to_str().unwrap()]);
    assert_eq!(code, 1);
    let cert: BbCertificate = env.entries[0].report.as_ref().unwrap().certificate_as().unwrap();
    assert_eq!(cert.first_failure.as_deref(), Some("surface-lift S0"));
    assert_eq!(cert.sub_checks.len(), 5);
    assert_eq!(env.entries[1].report.as_ref().unwrap().verdict, Verdict::Pass);
}

#[test]
fn envelopes_identical_across_runs_and_thread_counts() {
    let path = job("two_lines.job");
    let (_, a) = envelope(&["run", path.to_str().unwrap()]);
    let (_, b) = envelope(&["--jobs", "3", "run", path.to_str().unwrap()]);
    assert_eq!(a.without_timings(), b.without_timings());
    let sample = ["sample-quintics", "--trials", "3", "--bound", "5", "--seed", "42"];
    let (_, s1) = envelope(&sample);
    let mut threaded = vec!["--jobs", "2"];
    threaded.extend_from_slice(&sample);
    let (_, s2) = envelope(&threaded);
    assert_eq!(s1.without_timings(), s2.without_timings());
    assert_eq!(s1.input_digest, s2.input_digest);
}

#[test]
fn schema_rejects_malformed_envelopes() {
    let (_, env) = envelope(&["smooth-check", "--poly", FERMAT]);
    let mut v = serde_json::to_value(&env).unwrap();
    assert!(validate(&v).is_ok());
    v["entries"][0]["report"]["verdict"] = "maybe".into();
    assert!(validate(&v).is_err());
    let mut v = serde_json::to_value(&env).unwrap();
    v["input_digest"] = "md5:0".into();
    assert!(validate(&v).is_err());
    let mut v = serde_json::to_value(&env).unwrap();
    v["entries"][0]["error"] = "both set".into();
    assert!(validate(&v).is_err());
}

#[test]
fn validate_report_subcommand() {
    let out = defcert(&["--json", "smooth-check", "--poly", FERMAT]);
    let dir = std::env::temp_dir().join(format!("defcert-validate-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("report.json");
    std::fs::write(&file, &out.stdout).unwrap();
    assert_eq!(defcert(&["validate-report", file.to_str().unwrap()]).status.code(), Some(0));
    std::fs::write(&file, b"{\"schema\": \"other\"}").unwrap();
    assert_eq!(defcert(&["validate-report", file.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn text_output_is_default() {
    let out = defcert(&["contains", "--poly", FERMAT, "--ideal", "(x2,x3,x4)"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[fail] check contains"), "{text}");
    assert!(text.contains("residue x0^5+x1^5"));
    assert!(text.trim_end().ends_with("overall: fail (exit 1)"));
}
