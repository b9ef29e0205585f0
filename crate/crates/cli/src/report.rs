//! Report documents and their JSON, CSV and text renderings.
//!
//! Every command produces one [`ReportDocument`]. JSON is the lossless
//! form; CSV flattens the rows (summary as trailing `#` lines); text is for
//! people and prints numbers with 12 significant digits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use frac_ostrowski_core::bounds::{BoundReport, Scenario, SignConvention, TheoremId, VerifyConfig};
use frac_ostrowski_core::harness::{Finding, SharpnessResult, Strategy, SweepRow, SweepSpec, SweepSummary};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "frac-ostrowski";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Verify,
    Sweep,
    Sharpness,
    Findings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument<I, R, S> {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    /// Unix seconds; absent in deterministic mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub kind: ReportKind,
    pub input: I,
    pub rows: Vec<R>,
    pub summary: S,
}

impl<I, R, S> ReportDocument<I, R, S> {
    pub fn new(kind: ReportKind, input: I, rows: Vec<R>, summary: S, deterministic: bool) -> Self {
        let timestamp = if deterministic {
            None
        } else {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs())
        };
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            kind,
            input,
            rows,
            summary,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyInput {
    pub theorem: TheoremId,
    pub function: String,
    pub scenario: Scenario,
    pub sign: SignConvention,
    pub config: VerifyConfig,
}

/// Residual of the fractional identity under the chosen sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub sign: SignConvention,
    pub lemma_lhs: f64,
    pub lemma_rhs: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub holds: bool,
    pub audit_passed: bool,
    pub accuracy_flagged: bool,
    pub identity: Option<IdentityCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessInput {
    pub theorem: TheoremId,
    pub function: String,
    pub scenario: Scenario,
    pub strategy: Strategy,
    pub config: VerifyConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessSummary {
    pub ratio: f64,
    pub x_star: f64,
    pub audit_passed: bool,
    /// ratio > 1 + verdict_tol: the inequality failed at x_star.
    pub exceeds_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindingsInput {
    pub enabled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindingsSummary {
    pub count: usize,
}

pub type VerifyDocument = ReportDocument<VerifyInput, BoundReport, VerifySummary>;
pub type SweepDocument = ReportDocument<SweepSpec, SweepRow, SweepSummary>;
pub type SharpnessDocument = ReportDocument<SharpnessInput, SharpnessResult, SharpnessSummary>;
pub type FindingsDocument = ReportDocument<FindingsInput, Finding, FindingsSummary>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report documents contain only finite numbers");
    s.push('\n');
    s
}

/// Formats with 12 significant digits.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, v)
    } else {
        format!("{v:.11e}")
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:?}")).unwrap_or_default()
}

fn failed_checks(r: &BoundReport) -> String {
    r.hypothesis_audit
        .iter()
        .filter(|a| !a.passed)
        .map(|a| a.name.as_str())
        .collect::<Vec<_>>()
        .join("; ")
}

const BOUND_HEADER: [&str; 21] = [
    "index",
    "function",
    "theorem",
    "a",
    "b",
    "x",
    "mu",
    "alpha",
    "m",
    "M",
    "p",
    "q",
    "lhs",
    "rhs",
    "margin",
    "holds",
    "audit_passed",
    "accuracy_flagged",
    "extension",
    "failed_checks",
    "error",
];

fn bound_record(index: usize, function: &str, theorem: TheoremId, s: &Scenario, r: Option<&BoundReport>, error: Option<&str>) -> Vec<String> {
    // reports carry the pinned scenario; fall back to the cell's own
    let s = r.map(|r| &r.scenario).unwrap_or(s);
    let mut rec = vec![
        index.to_string(),
        function.to_string(),
        theorem.to_string(),
    ];
    rec.extend([s.a, s.b, s.x, s.mu, s.alpha, s.m, s.big_m, s.p, s.q].iter().map(|v| format!("{v:?}")));
    match r {
        Some(r) => rec.extend([
            format!("{:?}", r.lhs),
            opt_num(r.rhs),
            opt_num(r.margin),
            r.holds.to_string(),
            r.audit_passed().to_string(),
            r.accuracy_flagged().to_string(),
            r.extension.to_string(),
            failed_checks(r),
            String::new(),
        ]),
        None => {
            rec.extend(std::iter::repeat_n(String::new(), 8));
            rec.push(error.unwrap_or_default().to_string());
        }
    }
    rec
}

fn csv_with_summary(header: &[&str], records: Vec<Vec<String>>, summary: &[(&str, String)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    let mut out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input");
    for (k, v) in summary {
        let _ = writeln!(out, "# {k}={v}");
    }
    out
}

fn sweep_summary_pairs(s: &SweepSummary) -> Vec<(&'static str, String)> {
    vec![
        ("cells", s.cells.to_string()),
        ("holds", s.holds.to_string()),
        ("fails", s.fails.to_string()),
        ("undefined", s.undefined.to_string()),
        ("hypothesis_violated", s.hypothesis_violated.to_string()),
        ("accuracy_flagged", s.accuracy_flagged.to_string()),
        ("errors", s.errors.to_string()),
        ("audited_fails", s.audited_fails.to_string()),
        ("skipped", s.skipped.to_string()),
    ]
}

pub fn sweep_csv(doc: &SweepDocument) -> String {
    let theorem = doc.input.theorem;
    let records = doc
        .rows
        .iter()
        .map(|row| bound_record(row.index, &row.function, theorem, &row.scenario, row.report.as_ref(), row.error.as_deref()))
        .collect();
    csv_with_summary(&BOUND_HEADER, records, &sweep_summary_pairs(&doc.summary))
}

pub fn verify_csv(doc: &VerifyDocument) -> String {
    let records = doc
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| bound_record(i, &r.function, r.theorem, &r.scenario, Some(r), None))
        .collect();
    let mut summary = vec![
        ("holds", doc.summary.holds.to_string()),
        ("audit_passed", doc.summary.audit_passed.to_string()),
        ("accuracy_flagged", doc.summary.accuracy_flagged.to_string()),
    ];
    if let Some(id) = &doc.summary.identity {
        summary.push(("identity_residual", format!("{:?}", id.residual)));
    }
    csv_with_summary(&BOUND_HEADER, records, &summary)
}

pub fn sharpness_csv(doc: &SharpnessDocument) -> String {
    let header = [
        "theorem",
        "function",
        "a",
        "b",
        "x_star",
        "ratio",
        "coarse_x",
        "coarse_ratio",
        "evaluations",
        "degenerate",
        "audit_passed",
    ];
    let records = doc
        .rows
        .iter()
        .map(|r| {
            vec![
                r.theorem.to_string(),
                r.function.clone(),
                format!("{:?}", r.scenario_template.a),
                format!("{:?}", r.scenario_template.b),
                format!("{:?}", r.x_star),
                format!("{:?}", r.ratio),
                format!("{:?}", r.coarse_x),
                format!("{:?}", r.coarse_ratio),
                r.evaluations.to_string(),
                r.degenerate.to_string(),
                r.audit_passed.to_string(),
            ]
        })
        .collect();
    csv_with_summary(&header, records, &[("exceeds_bound", doc.summary.exceeds_bound.to_string())])
}

pub fn findings_csv(doc: &FindingsDocument) -> String {
    let mut records = Vec::new();
    for f in &doc.rows {
        for (role, pairs) in [("input", &f.inputs), ("value", &f.values)] {
            for (k, v) in pairs {
                records.push(vec![f.id.clone(), role.to_string(), k.clone(), format!("{v:?}")]);
            }
        }
    }
    csv_with_summary(&["id", "role", "name", "value"], records, &[("count", doc.summary.count.to_string())])
}

fn scenario_line(s: &Scenario) -> String {
    format!(
        "a={} b={} x={} mu={} alpha={} m={} M={} p={} q={}",
        s.a, s.b, s.x, s.mu, s.alpha, s.m, s.big_m, s.p, s.q
    )
}

fn bound_text(out: &mut String, r: &BoundReport) {
    let _ = writeln!(out, "theorem   {}{}", r.theorem, if r.extension { " (exact-integral extension)" } else { "" });
    let _ = writeln!(out, "function  {}", r.function);
    let _ = writeln!(out, "scenario  {}", scenario_line(&r.scenario));
    let _ = writeln!(out, "lhs       {}", sig12(r.lhs));
    let _ = writeln!(out, "rhs       {}", r.rhs.map(sig12).unwrap_or_else(|| "undefined".into()));
    let _ = writeln!(out, "margin    {}", r.margin.map(sig12).unwrap_or_else(|| "undefined".into()));
    let _ = writeln!(out, "holds     {}", r.holds);
    for (i, a) in r.hypothesis_audit.iter().enumerate() {
        let lead = if i == 0 { "audit    " } else { "         " };
        let _ = writeln!(out, "{lead} {} {}: {}", if a.passed { "PASS" } else { "FAIL" }, a.name, a.detail);
    }
    for f in &r.quadrature_flags {
        let _ = writeln!(out, "accuracy  {f}");
    }
}

pub fn verify_text(doc: &VerifyDocument) -> String {
    let mut out = String::new();
    for r in &doc.rows {
        bound_text(&mut out, r);
    }
    if let Some(id) = &doc.summary.identity {
        let sign = match id.sign {
            SignConvention::PaperPlus => "paper",
            SignConvention::CorrectedMinus => "corrected",
        };
        let _ = writeln!(
            out,
            "identity  sign={sign} lhs={} rhs={} residual={}",
            sig12(id.lemma_lhs),
            sig12(id.lemma_rhs),
            sig12(id.residual)
        );
    }
    out
}

pub fn sweep_text(doc: &SweepDocument) -> String {
    let mut out = String::new();
    for row in &doc.rows {
        let _ = write!(out, "{:>6}  {}  {}  ", row.index, row.function, scenario_line(&row.scenario));
        match (&row.report, &row.error) {
            (Some(r), _) => {
                let _ = writeln!(
                    out,
                    "lhs={} rhs={} {}{}",
                    sig12(r.lhs),
                    r.rhs.map(sig12).unwrap_or_else(|| "undefined".into()),
                    if r.holds { "holds" } else { "FAILS" },
                    if r.audit_passed() { "" } else { " [hypothesis violated]" }
                );
            }
            (None, e) => {
                let _ = writeln!(out, "error: {}", e.as_deref().unwrap_or(""));
            }
        }
    }
    for (k, v) in sweep_summary_pairs(&doc.summary) {
        let _ = writeln!(out, "# {k}={v}");
    }
    out
}

pub fn sharpness_text(doc: &SharpnessDocument) -> String {
    let mut out = String::new();
    for r in &doc.rows {
        let _ = writeln!(out, "theorem   {}", r.theorem);
        let _ = writeln!(out, "function  {}", r.function);
        let _ = writeln!(out, "scenario  {}", scenario_line(&r.scenario_template));
        let _ = writeln!(out, "x_star    {}", sig12(r.x_star));
        let _ = writeln!(out, "ratio     {}", sig12(r.ratio));
        let _ = writeln!(out, "coarse    x={} ratio={}", sig12(r.coarse_x), sig12(r.coarse_ratio));
        let _ = writeln!(out, "evals     {}", r.evaluations);
        let _ = writeln!(out, "audit     {}", if r.audit_passed { "passed" } else { "violated" });
        if r.degenerate {
            let _ = writeln!(out, "note      rhs = 0 at some probed x");
        }
    }
    out
}

pub fn findings_text(doc: &FindingsDocument) -> String {
    let mut out = String::new();
    for f in &doc.rows {
        let _ = writeln!(out, "[{}] {}", f.id, f.summary);
        let inputs: Vec<String> = f.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "  inputs: {}", inputs.join(" "));
        for (k, v) in &f.values {
            let _ = writeln!(out, "  {k} = {}", sig12(*v));
        }
    }
    let _ = writeln!(out, "# count={}", doc.summary.count);
    out
}
