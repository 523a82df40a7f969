use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qid_core::expr::parse_expr;
use qid_core::polyring::PolyError;
use qid_core::qkernel::{
    cauchy_poly, gaussian_binomial, generalized_cauchy_poly, hahn_poly_in, q_pochhammer, QParam,
};
use qid_core::qoperators::{
    apply_e_frak, apply_e_tilde, apply_l_tilde, apply_r, d_q_at, theta_single_at, theta_xy_at, OperatorError,
};
use qid_core::tseries::SeriesContext;
use qid_core::verifier::{self, IdentitySpec, RunReport, Status, VerifyConfig};
use qid_core::{ExactRational, MultiPoly, Symbol};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "qid", version, about = "Exact q-series algebra and identity verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered identities.
    List,
    /// Verify identities exactly.
    Verify(VerifyArgs),
    /// Print a polynomial family member.
    Expand(ExpandArgs),
    /// Apply a q-operator to an expression.
    Apply(ApplyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id or slug (repeatable).
    #[arg(long = "id")]
    ids: Vec<String>,
    /// Verify every registered identity.
    #[arg(long, conflicts_with = "ids")]
    all: bool,
    /// Truncation order of series checks.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    order: u32,
    /// Numeric q for series checks (repeatable).
    #[arg(long = "q", allow_hyphen_values = true, value_parser = parse_rational)]
    q_values: Vec<ExactRational>,
    /// Parameter samples per q value.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    samples: u32,
    #[arg(long, default_value_t = 20240601)]
    seed: u64,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Stop at the first identity that does not pass.
    #[arg(long)]
    fail_fast: bool,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Pochhammer,
    Qbinom,
    Cauchy,
    Gencauchy,
    Hahn,
}

#[derive(Args)]
struct ExpandArgs {
    family: Family,
    #[arg(long)]
    n: usize,
    /// Lower index of the Gaussian binomial.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Base of the q-Pochhammer symbol, or the Hahn parameter.
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorName {
    Dq,
    Theta,
    Thetaxy,
    #[value(name = "R")]
    R,
    #[value(name = "Efrak")]
    EFrak,
    #[value(name = "Etilde")]
    ETilde,
    #[value(name = "Ltilde")]
    LTilde,
}

#[derive(Args)]
struct ApplyArgs {
    op: OperatorName,
    /// Operand.
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Acted-on variable (first variable for thetaxy and Ltilde).
    #[arg(long, default_value = "x")]
    var: String,
    /// Second variable for thetaxy and Ltilde.
    #[arg(long, default_value = "y")]
    var2: String,
    /// Operator parameter b.
    #[arg(long, default_value = "b", allow_hyphen_values = true)]
    b: String,
    /// Operator parameter a.
    #[arg(long, default_value = "a", allow_hyphen_values = true)]
    a: String,
    /// Numeric q; symbolic when omitted.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    q: Option<ExactRational>,
}

fn parse_rational(s: &str) -> Result<ExactRational, String> {
    s.trim().parse::<ExactRational>().map_err(|e| e.to_string())
}

/// A failure that maps to a process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }

    fn internal(message: impl ToString) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let result = match cli.command {
        Command::List => {
            emit(&list());
            Ok(0)
        }
        Command::Verify(args) => verify(args),
        Command::Expand(args) => expand(args).map(|()| 0),
        Command::Apply(args) => apply(args).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `QID_THREADS` caps the worker pool; 0 or unset means one per core.
fn configure_threads() -> Result<(), String> {
    let n = match std::env::var("QID_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| format!("QID_THREADS must be a number, got {v:?}"))?,
        Err(_) => 0,
    };
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn list() -> String {
    let mut out = String::new();
    for s in verifier::registry() {
        let _ = writeln!(out, "{:<3} {:<28} {:<19} {}", s.id, s.slug, s.kind.to_string(), s.formula);
    }
    out
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let specs: Vec<&IdentitySpec> = if args.all || args.ids.is_empty() {
        if !args.all {
            return Err(Failure::usage("pass --all or at least one --id"));
        }
        verifier::registry().iter().collect()
    } else {
        args.ids
            .iter()
            .map(|k| verifier::find(k).ok_or_else(|| Failure::usage(format!("unknown identity {k:?}"))))
            .collect::<Result<_, _>>()?
    };

    let mut cfg = VerifyConfig {
        order: args.order as usize,
        samples: args.samples as usize,
        seed: args.seed,
        fail_fast: args.fail_fast,
        ..VerifyConfig::default()
    };
    if !args.q_values.is_empty() {
        cfg.q_values = args.q_values;
    }
    for q in &cfg.q_values {
        SeriesContext::new(Symbol::T, cfg.order, q.clone()).map_err(Failure::usage)?;
    }

    let report = verifier::run(&specs, &cfg, args.timing);
    let summary = summarize(&report);
    let json_to_stdout = args.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if json_to_stdout {
        eprint!("{summary}");
    } else {
        emit(&summary);
    }
    if let Some(path) = &args.json {
        let text = report.to_json() + "\n";
        if json_to_stdout {
            emit(&text);
        } else {
            fs::write(path, text).map_err(|e| Failure::internal(format!("writing {}: {e}", path.display())))?;
        }
    }
    Ok(if report.summary.errored > 0 {
        EXIT_INTERNAL
    } else if report.summary.failed > 0 {
        EXIT_FAILED
    } else {
        0
    })
}

fn summarize(report: &RunReport) -> String {
    let mut out = String::new();
    for r in &report.identities {
        let status = r.status.to_string().to_uppercase();
        let n = r.samples.len();
        let plural = if n == 1 { "" } else { "s" };
        let _ = writeln!(out, "{status:<5} {:<3} ({n} sample{plural})", r.id);
        if let Some(s) = r.first_failure() {
            let assignment: Vec<String> = s.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "      q={} {}", s.q, assignment.join(" "));
            if s.status == Status::Fail {
                let case = s.case.map(|c| format!(" (case {c})")).unwrap_or_default();
                let order = s.first_mismatch_order.unwrap_or(0);
                let _ = writeln!(out, "      first mismatch at order {order}{case}");
                let _ = writeln!(out, "      lhs: {}", s.lhs_coeff.as_deref().unwrap_or(""));
                let _ = writeln!(out, "      rhs: {}", s.rhs_coeff.as_deref().unwrap_or(""));
            } else if let Some(e) = &s.error {
                let _ = writeln!(out, "      error: {e}");
            }
        }
    }
    let sm = &report.summary;
    let _ = writeln!(out, "{} passed, {} failed, {} errored", sm.passed, sm.failed, sm.errored);
    out
}

fn expr_arg(text: &str, what: &str) -> Result<MultiPoly, Failure> {
    parse_expr(text).map_err(|e| Failure::usage(format!("{what}: {e}")))
}

fn symbol_arg(name: &str) -> Result<Symbol, Failure> {
    Symbol::from_name(name).ok_or_else(|| Failure::usage(format!("unknown symbol {name:?}")))
}

fn expand(args: ExpandArgs) -> Result<(), Failure> {
    let n = args.n;
    let p = match args.family {
        Family::Pochhammer => {
            let base = expr_arg(args.base.as_deref().unwrap_or("a"), "--base")?;
            q_pochhammer(&base, n)
        }
        Family::Qbinom => {
            let k = args.k.ok_or_else(|| Failure::usage("qbinom needs --k"))?;
            gaussian_binomial(n, k)
        }
        Family::Cauchy => cauchy_poly(n),
        Family::Gencauchy => generalized_cauchy_poly(n),
        Family::Hahn => {
            let param = expr_arg(args.base.as_deref().unwrap_or("alpha"), "--base")?;
            hahn_poly_in(n, &MultiPoly::var(Symbol::X), &param, &QParam::Symbolic)
        }
    };
    emit(&format!("{p}\n"));
    Ok(())
}

fn operator_failure(e: OperatorError) -> Failure {
    match e {
        OperatorError::Poly(PolyError::NonZeroRemainder) | OperatorError::NonTerminating => Failure::internal(e),
        _ => Failure::usage(e),
    }
}

fn apply(args: ApplyArgs) -> Result<(), Failure> {
    let p = expr_arg(&args.expr, "--expr")?;
    let var = symbol_arg(&args.var)?;
    let var2 = symbol_arg(&args.var2)?;
    let a = expr_arg(&args.a, "--a")?;
    let b = expr_arg(&args.b, "--b")?;
    let q = match args.q {
        Some(v) => QParam::numeric(v).map_err(Failure::usage)?,
        None => QParam::Symbolic,
    };
    let out = match args.op {
        OperatorName::Dq => d_q_at(&p, var, &q),
        OperatorName::Theta => theta_single_at(&p, var, &q),
        OperatorName::Thetaxy => theta_xy_at(&p, var, var2, &q),
        OperatorName::R => apply_r(&b, &p, var, &q),
        OperatorName::EFrak => apply_e_frak(&b, &p, var, &q),
        OperatorName::ETilde => apply_e_tilde(&a, &b, &p, var, &q),
        OperatorName::LTilde => apply_l_tilde(&a, &b, &p, var, var2, &q),
    }
    .map_err(operator_failure)?;
    emit(&format!("{out}\n"));
    Ok(())
}
