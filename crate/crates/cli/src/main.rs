use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use defcert::budget::{BudgetLimits, BUDGET_ENV};
use defcert::checks::CheckName;
use defcert_cli::render::render_text;
use defcert_cli::{run, schema, Job, JobError, Pos};

/// Exact verification of deformation-theoretic hypotheses for curves on threefolds in P^4.
#[derive(Parser)]
#[command(name = "defcert", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Emit the JSON report envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run up to N check invocations concurrently.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,
    /// Budget as `max-degree=D,max-basis=B,timeout=SECS`; overrides DEFCERT_BUDGET.
    #[arg(long, global = true, value_name = "SPEC")]
    budget: Option<String>,
    #[arg(long, global = true, value_name = "D")]
    max_degree: Option<i32>,
    #[arg(long, global = true, value_name = "B")]
    max_basis: Option<usize>,
    /// Wall-clock limit per check, in seconds.
    #[arg(long, global = true, value_name = "SECS")]
    timeout: Option<u64>,
}

#[derive(Args)]
struct JobArg {
    /// Job file supplying the ring and named objects.
    #[arg(long, value_name = "FILE")]
    job: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every `check` stanza of a job file.
    Run { file: PathBuf },
    SmoothCheck {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        poly: String,
    },
    Contains {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ideal: String,
    },
    AcmCheck {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        ideal: String,
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["A", "B"])]
        window: Option<Vec<i64>>,
    },
    NormalH1 {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        ideal: String,
    },
    RelativeNormalH1 {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    SplittingType {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ideal: String,
    },
    SurfaceLift {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        surface: String,
        #[arg(long)]
        poly: String,
    },
    Transversality {
        #[command(flatten)]
        job: JobArg,
        /// Two or three forms; repeat the flag.
        #[arg(long, required = true)]
        poly: Vec<String>,
    },
    BbCriterion {
        #[command(flatten)]
        job: JobArg,
        #[arg(long)]
        chain: String,
    },
    SampleQuintics {
        #[command(flatten)]
        job: JobArg,
        /// Line ideal; defaults to (x2,x3,x4) in P^4.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        degree: Option<u32>,
        /// Stored witnesses per class.
        #[arg(long)]
        witnesses: Option<usize>,
    },
    CohomologyTable {
        #[command(flatten)]
        job: JobArg,
        /// `ring`, `ideal:NAME` or `quotient:NAME`.
        #[arg(long)]
        module: String,
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["A", "B"])]
        window: Option<Vec<i64>>,
        /// Comma-separated cohomological degrees; defaults to 0,1.
        #[arg(long)]
        rows: Option<String>,
    },
    /// Validate a JSON report envelope against the bundled schema.
    ValidateReport { file: PathBuf },
}

fn window(w: Option<Vec<i64>>) -> Option<String> {
    w.map(|v| format!("{}..{}", v[0], v[1]))
}

/// Check name, job file and `key=value` arguments of a single-check subcommand.
fn single(cmd: Cmd) -> (CheckName, Option<PathBuf>, Vec<(&'static str, Option<String>)>) {
    use CheckName as C;
    match cmd {
        Cmd::SmoothCheck { job, poly } => (C::SmoothCheck, job.job, vec![("poly", Some(poly))]),
        Cmd::Contains { job, poly, ideal } => (C::Contains, job.job, vec![("poly", Some(poly)), ("ideal", Some(ideal))]),
        Cmd::AcmCheck { job, ideal, window: w } => (C::AcmCheck, job.job, vec![("ideal", Some(ideal)), ("window", window(w))]),
        Cmd::NormalH1 { job, ideal } => (C::NormalH1, job.job, vec![("ideal", Some(ideal))]),
        Cmd::RelativeNormalH1 { job, ideal, poly } => {
            (C::RelativeNormalH1, job.job, vec![("ideal", Some(ideal)), ("poly", Some(poly))])
        }
        Cmd::SplittingType { job, poly, ideal } => (C::SplittingType, job.job, vec![("poly", Some(poly)), ("ideal", Some(ideal))]),
        Cmd::SurfaceLift { job, surface, poly } => (C::SurfaceLift, job.job, vec![("surface", Some(surface)), ("poly", Some(poly))]),
        Cmd::Transversality { job, poly } => (C::Transversality, job.job, poly.into_iter().map(|p| ("poly", Some(p))).collect()),
        Cmd::BbCriterion { job, chain } => (C::BbCriterion, job.job, vec![("chain", Some(chain))]),
        Cmd::SampleQuintics { job, ideal, trials, bound, seed, degree, witnesses } => (
            C::SampleQuintics,
            job.job,
            vec![
                ("ideal", ideal),
                ("trials", trials.map(|v| v.to_string())),
                ("bound", bound.map(|v| v.to_string())),
                ("seed", seed.map(|v| v.to_string())),
                ("degree", degree.map(|v| v.to_string())),
                ("witnesses", witnesses.map(|v| v.to_string())),
            ],
        ),
        Cmd::CohomologyTable { job, module, window: w, rows } => {
            (C::CohomologyTable, job.job, vec![("module", Some(module)), ("window", window(w)), ("rows", rows)])
        }
        Cmd::Run { .. } | Cmd::ValidateReport { .. } => unreachable!("not a single-check subcommand"),
    }
}

fn limits(c: &Common) -> Result<BudgetLimits, String> {
    let mut l = match (&c.budget, std::env::var(BUDGET_ENV)) {
        (Some(s), _) => BudgetLimits::parse(s).map_err(|e| format!("--budget: {e}"))?,
        (None, Ok(s)) => BudgetLimits::parse(&s).map_err(|e| format!("{BUDGET_ENV}: {e}"))?,
        (None, Err(_)) => BudgetLimits::default(),
    };
    l.max_degree = c.max_degree.or(l.max_degree);
    l.max_basis = c.max_basis.or(l.max_basis);
    l.timeout_secs = c.timeout.or(l.timeout_secs);
    Ok(l)
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn located(path: &str, e: JobError) -> String {
    format!("{path}:{e}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn real_main(cli: Cli) -> Result<i32, String> {
    let limits = limits(&cli.common)?;
    if cli.common.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    let (job, invocations, input) = match cli.cmd {
        Cmd::ValidateReport { file } => {
            let value: serde_json::Value = serde_json::from_str(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            return match schema::validate(&value) {
                Ok(()) => {
                    println!("valid");
                    Ok(0)
                }
                Err(errors) => {
                    for e in errors {
                        eprintln!("{e}");
                    }
                    Ok(3)
                }
            };
        }
        Cmd::Run { file } => {
            let src = read(&file)?;
            let job = Job::parse(&src).map_err(|e| located(&file.display().to_string(), e))?;
            let invocations = job.checks.clone();
            (job, invocations, src)
        }
        cmd => {
            let (check, file, args) = single(cmd);
            let (job, mut input) = match &file {
                Some(f) => {
                    let src = read(f)?;
                    (Job::parse(&src).map_err(|e| located(&f.display().to_string(), e))?, src)
                }
                None => (Job::default(), String::new()),
            };
            let args: Vec<(String, String, Pos)> =
                args.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v, Pos::default()))).collect();
            let inv = job.invocation(check, &args, Pos::default()).map_err(|e| format!("command line: {}", e.msg))?;
            input.push('\n');
            input.push_str(&inv.text);
            (job, vec![inv], input)
        }
    };
    let env = run(&job.ring, &invocations, &input, limits, cli.common.jobs);
    if cli.common.json {
        println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
    } else {
        print!("{}", render_text(&env));
    }
    Ok(env.exit_code)
}
