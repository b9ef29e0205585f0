use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use frac_ostrowski::config::parse_config;
use frac_ostrowski::parallel::run_sweep_parallel;
use frac_ostrowski::report::{self, Format, ReportDocument, ReportKind};
use frac_ostrowski_core::bounds::{lemma1_lhs, lemma1_rhs, verify, ConstantMode};
use frac_ostrowski_core::convexity::Grid;
use frac_ostrowski_core::funclib::make_spec;
use frac_ostrowski_core::harness::{discrepancy_log, sharpness_search, Strategy};
use frac_ostrowski_core::{BuiltinFamily, FunctionSpec, Scenario, SignConvention, Source, TheoremId, VerifyConfig};

const EXIT_FAILS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ACCURACY: u8 = 3;

/// Numerical verifier for fractional Ostrowski-type inequalities.
#[derive(Parser)]
#[command(name = "frac-ostrowski", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one inequality for one function and scenario.
    Verify(VerifyArgs),
    /// Run a parameter sweep described by a config file.
    Sweep(SweepArgs),
    /// Maximize lhs/rhs over x.
    Sharpness(SharpnessArgs),
    /// Print numeric demonstrations of formulas that do not hold.
    Findings(FindingsArgs),
}

#[derive(Args)]
struct FunctionArgs {
    /// Expression in x, e.g. "exp(-x)+x^2/4".
    #[arg(long = "f", conflicts_with = "family", required_unless_present = "family")]
    expr: Option<String>,
    /// Builtin family: expdecay:M=..,lambda=.. | linear:M=.. | quadratic.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Defaults to the midpoint of [a, b].
    #[arg(long)]
    x: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Derivative bound. Defaults to the family's M, else 1.
    #[arg(long = "M")]
    big_m: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 2.0)]
    q: f64,
}

#[derive(Args)]
struct NumericArgs {
    /// Verdict tolerance: holds when rhs - lhs >= -tol.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
    /// Points per axis of the convexity-audit grid.
    #[arg(long, default_value_t = 33)]
    membership_grid: usize,
    /// Extension: replace K1-K4 by the exact integrals they bound (any M > 0).
    #[arg(long)]
    exact_constants: bool,
}

impl NumericArgs {
    fn config(&self) -> VerifyConfig {
        let mut cfg = VerifyConfig { verdict_tol: self.tol, ..VerifyConfig::default() };
        cfg.quadrature.rel_tol = self.rel_tol;
        cfg.quadrature.abs_tol = self.abs_tol;
        cfg.membership_grid = Grid::cube(self.membership_grid);
        if self.exact_constants {
            cfg.constants = ConstantMode::ExactIntegral;
        }
        cfg
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SignArg {
    Paper,
    Corrected,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_theorem)]
    theorem: TheoremId,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[command(flatten)]
    numeric: NumericArgs,
    /// Sign of the second term in the identity check.
    #[arg(long, value_enum, default_value = "corrected")]
    sign: SignArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct SweepArgs {
    config: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the --out extension (.csv, .txt), else json.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    deterministic: bool,
    /// Exit non-zero when any cell fails or errors.
    #[arg(long)]
    strict: bool,
    /// Worker threads; overrides FRAC_OSTROWSKI_THREADS.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct SharpnessArgs {
    #[arg(long, value_parser = parse_theorem)]
    theorem: TheoremId,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[command(flatten)]
    numeric: NumericArgs,
    /// grid:N or golden:TOL.
    #[arg(long, default_value = "golden:1e-8", value_parser = parse_strategy)]
    strategy: Strategy,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct FindingsArgs {
    #[arg(long)]
    no_findings: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    deterministic: bool,
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|_| format!("unknown theorem '{s}' (classical|t1|c1|c2|c3|t2|c4|c5|c6)"))
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    let bad = || format!("strategy '{s}' is not grid:N or golden:TOL");
    match s.split_once(':') {
        Some(("grid", n)) => n.parse().map(Strategy::Grid).map_err(|_| bad()),
        Some(("golden", t)) => t.parse().map(Strategy::Golden).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Builds the function and the scenario shared by verify and sharpness.
fn resolve(theorem: TheoremId, fa: &FunctionArgs, sa: &ScenarioArgs) -> anyhow::Result<(FunctionSpec, Scenario)> {
    let source = match (&fa.expr, &fa.family) {
        (Some(e), _) => Source::parse_expr(e)?,
        (None, Some(d)) => Source::Builtin(BuiltinFamily::parse_descriptor(d, sa.big_m)?),
        (None, None) => bail!("give --f or --family"),
    };
    let family_m = match &source {
        Source::Builtin(b) => b.derivative_bound(),
        Source::Expr(_) => None,
    };
    let big_m = sa.big_m.or(family_m).unwrap_or(1.0);
    let s = Scenario {
        a: sa.a,
        b: sa.b,
        x: sa.x.unwrap_or((sa.a + sa.b) / 2.0),
        mu: sa.mu,
        alpha: sa.alpha,
        m: sa.m,
        big_m,
        p: sa.p,
        q: sa.q,
    };
    let pinned = theorem.pin(&s);
    pinned.validate_for(theorem)?;
    let hi = if theorem == TheoremId::Classical { pinned.b } else { pinned.b / pinned.m };
    let f = make_spec(source, (0.0, hi)).context("function cannot be evaluated on the audit domain")?;
    Ok((f, s))
}

fn check_m_gate(theorem: TheoremId, s: &Scenario, numeric: &NumericArgs) -> anyhow::Result<()> {
    if theorem != TheoremId::Classical && !numeric.exact_constants && !(s.big_m > 0.0 && s.big_m <= 1.0) {
        bail!("M must lie in (0,1], got {} (use --exact-constants for the exact-integral extension)", s.big_m);
    }
    Ok(())
}

fn emit(text: String, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<u8> {
    let (f, s) = resolve(args.theorem, &args.function, &args.scenario)?;
    check_m_gate(args.theorem, &s, &args.numeric)?;
    let cfg = args.numeric.config();
    let r = verify(args.theorem, &f, &s, &cfg)?;
    let sign = match args.sign {
        SignArg::Paper => SignConvention::PaperPlus,
        SignArg::Corrected => SignConvention::CorrectedMinus,
    };
    let pinned = args.theorem.pin(&s);
    let identity = match (lemma1_lhs(&f, &pinned, &cfg.quadrature), lemma1_rhs(&f, &pinned, sign, &cfg.quadrature)) {
        (Ok(l), Ok(rr)) => Some(report::IdentityCheck {
            sign,
            lemma_lhs: l.value,
            lemma_rhs: rr.value,
            residual: l.value - rr.value,
        }),
        _ => None,
    };
    let code = if r.accuracy_flagged() {
        EXIT_ACCURACY
    } else if r.holds {
        0
    } else {
        EXIT_FAILS
    };
    let summary = report::VerifySummary {
        holds: r.holds,
        audit_passed: r.audit_passed(),
        accuracy_flagged: r.accuracy_flagged(),
        identity,
    };
    let input = report::VerifyInput { theorem: args.theorem, function: f.label(), scenario: s, sign, config: cfg };
    let doc = ReportDocument::new(ReportKind::Verify, input, vec![r], summary, args.deterministic);
    let text = match args.format {
        Format::Json => report::to_json(&doc),
        Format::Csv => report::verify_csv(&doc),
        Format::Text => report::verify_text(&doc),
    };
    emit(text, args.out.as_deref())?;
    Ok(code)
}

fn infer_format(out: Option<&Path>) -> Format {
    match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        Some("txt") => Format::Text,
        _ => Format::Json,
    }
}

fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("cannot read config {}", args.config.display()))?;
    let spec = parse_config(&text)?;
    let outcome = run_sweep_parallel(&spec, args.threads)?;
    let s = outcome.summary;
    let doc = ReportDocument::new(ReportKind::Sweep, spec, outcome.rows, s, args.deterministic);
    let format = args.format.unwrap_or_else(|| infer_format(args.out.as_deref()));
    let rendered = match format {
        Format::Json => report::to_json(&doc),
        Format::Csv => report::sweep_csv(&doc),
        Format::Text => report::sweep_text(&doc),
    };
    emit(rendered, args.out.as_deref())?;
    if args.strict {
        if s.fails + s.errors + s.undefined > 0 {
            return Ok(EXIT_FAILS);
        }
        if s.accuracy_flagged > 0 {
            return Ok(EXIT_ACCURACY);
        }
    }
    Ok(0)
}

fn cmd_sharpness(args: &SharpnessArgs) -> anyhow::Result<u8> {
    let (f, s) = resolve(args.theorem, &args.function, &args.scenario)?;
    check_m_gate(args.theorem, &s, &args.numeric)?;
    let cfg = args.numeric.config();
    let r = sharpness_search(args.theorem, &f, &args.theorem.pin(&s), args.strategy, &cfg)?;
    let exceeds = r.ratio > 1.0 + cfg.verdict_tol;
    let summary = report::SharpnessSummary {
        ratio: r.ratio,
        x_star: r.x_star,
        audit_passed: r.audit_passed,
        exceeds_bound: exceeds,
    };
    let code = if exceeds { EXIT_FAILS } else { 0 };
    let input = report::SharpnessInput {
        theorem: args.theorem,
        function: f.label(),
        scenario: s,
        strategy: args.strategy,
        config: cfg,
    };
    let doc = ReportDocument::new(ReportKind::Sharpness, input, vec![r], summary, args.deterministic);
    let text = match args.format {
        Format::Json => report::to_json(&doc),
        Format::Csv => report::sharpness_csv(&doc),
        Format::Text => report::sharpness_text(&doc),
    };
    emit(text, args.out.as_deref())?;
    Ok(code)
}

fn cmd_findings(args: &FindingsArgs) -> anyhow::Result<u8> {
    let rows = discrepancy_log(!args.no_findings, &VerifyConfig::default().quadrature)?;
    let summary = report::FindingsSummary { count: rows.len() };
    let input = report::FindingsInput { enabled: !args.no_findings };
    let doc = ReportDocument::new(ReportKind::Findings, input, rows, summary, args.deterministic);
    let text = match args.format {
        Format::Json => report::to_json(&doc),
        Format::Csv => report::findings_csv(&doc),
        Format::Text => report::findings_text(&doc),
    };
    emit(text, args.out.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Sharpness(a) => cmd_sharpness(a),
        Command::Findings(a) => cmd_findings(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
