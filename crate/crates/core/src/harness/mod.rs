//! Batch verification: sweeps, sharpness searches and the findings log.

mod findings;
mod sharpness;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{verify, BoundReport, Scenario, TheoremId, VerifyConfig};
use crate::error::{Error, Result};
use crate::funclib::{make_spec, BuiltinFamily, FunctionSpec, Source};

pub use findings::{discrepancy_log, Finding};
pub use sharpness::{sharpness_search, SharpnessResult, Strategy};

/// Values taken by one scenario parameter.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ParamGrid {
    Values(Vec<f64>),
    /// n evenly spaced points including both ends.
    Linspace { lo: f64, hi: f64, n: usize },
    /// n draws from U[lo, hi) using the sweep seed.
    Uniform { lo: f64, hi: f64, n: usize },
}

impl ParamGrid {
    pub fn single(v: f64) -> Self {
        ParamGrid::Values(alloc::vec![v])
    }

    fn materialize(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        let out = match self {
            ParamGrid::Values(v) => v.clone(),
            ParamGrid::Linspace { lo, hi, n } => {
                check_range(*lo, *hi)?;
                match *n {
                    0 => Vec::new(),
                    1 => alloc::vec![*lo],
                    n => (0..n).map(|i| crate::funclib::grid_point(*lo, *hi, i, n)).collect(),
                }
            }
            ParamGrid::Uniform { lo, hi, n } => {
                check_range(*lo, *hi)?;
                (0..*n).map(|_| if lo == hi { *lo } else { rng.gen_range(*lo..*hi) }).collect()
            }
        };
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("grid values must be finite"));
        }
        Ok(out)
    }
}

fn check_range(lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo <= hi {
        Ok(())
    } else {
        Err(Error::domain(format!("grid range [{lo}, {hi}] is invalid")))
    }
}

/// How x is specified: absolute, or as a fraction of the way from a to b.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum XGrid {
    Absolute(ParamGrid),
    Fraction(ParamGrid),
}

/// A p entry, either a number or a multiple of the cell's q.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PValue {
    Absolute(f64),
    TimesQ(f64),
}

impl PValue {
    pub fn resolve(self, q: f64) -> f64 {
        match self {
            PValue::Absolute(p) => p,
            PValue::TimesQ(c) => c * q,
        }
    }
}

const FAMILY_NAMES: [&str; 3] = ["expdecay", "linear", "quadratic"];

/// Builds the function for one cell from a descriptor: a family
/// (`expdecay:lambda=2`, `linear`, ...) or an expression, optionally
/// prefixed with `expr:`. Families without `M` take `default_m`.
pub fn resolve_function(descriptor: &str, default_m: f64, domain: (f64, f64)) -> Result<FunctionSpec> {
    let text = descriptor.trim();
    let name = text.split(':').next().unwrap_or("").trim();
    let source = if let Some(expr) = text.strip_prefix("expr:") {
        Source::parse_expr(expr)?
    } else if FAMILY_NAMES.contains(&name) {
        Source::Builtin(BuiltinFamily::parse_descriptor(text, Some(default_m))?)
    } else {
        Source::parse_expr(text)?
    };
    make_spec(source, domain)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepSpec {
    pub theorem: TheoremId,
    pub functions: Vec<String>,
    pub a: ParamGrid,
    pub b: ParamGrid,
    pub x: XGrid,
    pub mu: ParamGrid,
    pub alpha: ParamGrid,
    pub m: ParamGrid,
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub big_m: ParamGrid,
    pub p: Vec<PValue>,
    pub q: ParamGrid,
    pub verify: VerifyConfig,
    pub seed: u64,
}

impl SweepSpec {
    pub fn new(theorem: TheoremId, functions: Vec<String>) -> Self {
        SweepSpec {
            theorem,
            functions,
            a: ParamGrid::single(0.0),
            b: ParamGrid::single(1.0),
            x: XGrid::Fraction(ParamGrid::single(0.5)),
            mu: ParamGrid::single(1.0),
            alpha: ParamGrid::single(1.0),
            m: ParamGrid::single(1.0),
            big_m: ParamGrid::single(1.0),
            p: alloc::vec![PValue::Absolute(1.0)],
            q: ParamGrid::single(2.0),
            verify: VerifyConfig::default(),
            seed: 0,
        }
    }
}

/// One point of the Cartesian product.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepCell {
    pub index: usize,
    pub function: String,
    pub scenario: Scenario,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRow {
    pub index: usize,
    pub function: String,
    pub scenario: Scenario,
    pub report: Option<BoundReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepSummary {
    pub cells: usize,
    pub holds: usize,
    /// Cells whose right side is defined and smaller than the left side.
    pub fails: usize,
    /// Cells with no right side (M outside the constants' domain).
    pub undefined: usize,
    pub hypothesis_violated: usize,
    pub accuracy_flagged: usize,
    pub errors: usize,
    /// Failures among cells whose audit passed. Nonzero means a bug.
    pub audited_fails: usize,
    /// Parameter combinations dropped as invalid scenarios.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Enumerates valid cells in lexicographic order over
/// (function, a, b, x, μ, α, m, M, p, q), the last varying fastest.
///
/// Returns the cells and the number of skipped invalid combinations.
pub fn enumerate(spec: &SweepSpec) -> Result<(Vec<SweepCell>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let a = spec.a.materialize(&mut rng)?;
    let b = spec.b.materialize(&mut rng)?;
    let (x, x_frac) = match &spec.x {
        XGrid::Absolute(g) => (g.materialize(&mut rng)?, false),
        XGrid::Fraction(g) => (g.materialize(&mut rng)?, true),
    };
    let mu = spec.mu.materialize(&mut rng)?;
    let alpha = spec.alpha.materialize(&mut rng)?;
    let m = spec.m.materialize(&mut rng)?;
    let big_m = spec.big_m.materialize(&mut rng)?;
    let q = spec.q.materialize(&mut rng)?;

    let mut cells = Vec::new();
    let mut skipped = 0;
    for f in &spec.functions {
        for &a in &a {
            for &b in &b {
                for &xv in &x {
                    let x = if x_frac { a + xv * (b - a) } else { xv };
                    for &mu in &mu {
                        for &alpha in &alpha {
                            for &m in &m {
                                for &big_m in &big_m {
                                    for p in &spec.p {
                                        for &q in &q {
                                            let s = Scenario { a, b, x, mu, alpha, m, big_m, p: p.resolve(q), q };
                                            if spec.theorem.pin(&s).validate_for(spec.theorem).is_ok() {
                                                cells.push(SweepCell { index: cells.len(), function: f.clone(), scenario: s });
                                            } else {
                                                skipped += 1;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((cells, skipped))
}

/// Verifies one cell; failures become the row's error.
pub fn evaluate_cell(theorem: TheoremId, cfg: &VerifyConfig, cell: &SweepCell) -> SweepRow {
    let s = &cell.scenario;
    let m = if theorem == TheoremId::Classical { 1.0 } else { s.m };
    let result = resolve_function(&cell.function, s.big_m, (0.0, s.b / m))
        .and_then(|f| verify(theorem, &f, s, cfg));
    let (report, error) = match result {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    SweepRow { index: cell.index, function: cell.function.clone(), scenario: *s, report, error }
}

pub fn summarize(rows: &[SweepRow], skipped: usize) -> SweepSummary {
    let mut s = SweepSummary { cells: rows.len(), skipped, ..SweepSummary::default() };
    for row in rows {
        let Some(r) = &row.report else {
            s.errors += 1;
            continue;
        };
        if r.holds {
            s.holds += 1;
        } else if r.rhs.is_none() {
            s.undefined += 1;
        } else {
            s.fails += 1;
            if r.audit_passed() {
                s.audited_fails += 1;
            }
        }
        if !r.audit_passed() {
            s.hypothesis_violated += 1;
        }
        if r.accuracy_flagged() {
            s.accuracy_flagged += 1;
        }
    }
    s
}

/// Sequential sweep. Cell errors are recorded in their rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    spec.verify.quadrature.validate()?;
    let (cells, skipped) = enumerate(spec)?;
    let rows: Vec<SweepRow> = cells.iter().map(|c| evaluate_cell(spec.theorem, &spec.verify, c)).collect();
    let summary = summarize(&rows, skipped);
    Ok(SweepOutcome { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::rhs;

    fn two_by_three_by_three() -> SweepSpec {
        let mut spec = SweepSpec::new(TheoremId::T1, alloc::vec!["expdecay:M=0.8".into(), "linear".into()]);
        spec.mu = ParamGrid::Values(alloc::vec![0.5, 1.0, 2.0]);
        spec.x = XGrid::Fraction(ParamGrid::Linspace { lo: 0.0, hi: 1.0, n: 3 });
        spec.big_m = ParamGrid::single(0.8);
        spec
    }

    #[test]
    fn cardinality_and_order() {
        let out = run_sweep(&two_by_three_by_three()).unwrap();
        assert_eq!(out.rows.len(), 18);
        assert_eq!(out.summary.cells, 18);
        for (i, row) in out.rows.iter().enumerate() {
            assert_eq!(row.index, i);
        }
        // function outermost, then x, then μ
        assert!(out.rows[..9].iter().all(|r| r.function.starts_with("expdecay")));
        let xs: Vec<f64> = out.rows[..9].iter().map(|r| r.scenario.x).collect();
        assert_eq!(xs, [0.0, 0.0, 0.0, 0.5, 0.5, 0.5, 1.0, 1.0, 1.0]);
        let mus: Vec<f64> = out.rows[..3].iter().map(|r| r.scenario.mu).collect();
        assert_eq!(mus, [0.5, 1.0, 2.0]);
        // α = m = 1 makes every audit pass, so nothing may fail
        assert_eq!(out.summary.holds, 18);
        assert_eq!(out.summary.hypothesis_violated, 0);
        assert_eq!(out.summary.audited_fails, 0);
    }

    #[test]
    fn family_takes_cell_m() {
        let out = run_sweep(&two_by_three_by_three()).unwrap();
        assert_eq!(out.rows[17].report.as_ref().unwrap().function, "linear:M=0.8");
    }

    #[test]
    fn empty_dimension_gives_no_rows() {
        let mut spec = two_by_three_by_three();
        spec.q = ParamGrid::Values(Vec::new());
        let out = run_sweep(&spec).unwrap();
        assert!(out.rows.is_empty());
        assert_eq!(out.summary, SweepSummary::default());
    }

    #[test]
    fn invalid_combinations_are_skipped() {
        let mut spec = two_by_three_by_three();
        spec.a = ParamGrid::Values(alloc::vec![0.0, 2.0]);
        let out = run_sweep(&spec).unwrap();
        assert_eq!(out.rows.len(), 18);
        assert_eq!(out.summary.skipped, 18);
    }

    #[test]
    fn cell_errors_do_not_abort() {
        let mut spec = two_by_three_by_three();
        spec.functions.push("ln(x)".into());
        let out = run_sweep(&spec).unwrap();
        assert_eq!(out.rows.len(), 27);
        assert!(out.summary.errors > 0);
        assert!(out.rows[18..].iter().any(|r| r.error.is_some()));
    }

    #[test]
    fn uniform_grids_are_seeded() {
        let mut spec = two_by_three_by_three();
        spec.mu = ParamGrid::Uniform { lo: 0.2, hi: 3.0, n: 4 };
        let (c1, _) = enumerate(&spec).unwrap();
        let (c2, _) = enumerate(&spec).unwrap();
        assert_eq!(c1, c2);
        spec.seed = 7;
        let (c3, _) = enumerate(&spec).unwrap();
        assert_ne!(c1, c3);
    }

    #[test]
    fn relative_p() {
        let mut spec = SweepSpec::new(TheoremId::T2, alloc::vec!["linear:M=1".into()]);
        spec.q = ParamGrid::Values(alloc::vec![1.5, 4.0]);
        spec.p = alloc::vec![PValue::Absolute(0.0), PValue::TimesQ(0.5), PValue::TimesQ(1.0), PValue::Absolute(2.0)];
        let (cells, skipped) = enumerate(&spec).unwrap();
        let ps: Vec<(f64, f64)> = cells.iter().map(|c| (c.scenario.p, c.scenario.q)).collect();
        assert_eq!(ps, [(0.0, 1.5), (0.0, 4.0), (0.75, 1.5), (2.0, 4.0), (1.5, 1.5), (4.0, 4.0), (2.0, 4.0)]);
        assert_eq!(skipped, 1);
    }

    #[test]
    fn lattice_sweeps_agree() {
        let mut t1 = two_by_three_by_three();
        t1.alpha = ParamGrid::single(1.0);
        t1.m = ParamGrid::Values(alloc::vec![0.25, 0.5, 1.0]);
        t1.big_m = ParamGrid::Values(alloc::vec![0.3, 0.8]);
        let mut c1 = t1.clone();
        c1.theorem = TheoremId::C1;
        let a = run_sweep(&t1).unwrap();
        let b = run_sweep(&c1).unwrap();
        assert_eq!(a.rows.len(), b.rows.len());
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            let (x, y) = (ra.report.as_ref().unwrap().rhs.unwrap(), rb.report.as_ref().unwrap().rhs.unwrap());
            assert!((x - y).abs() <= 1e-12 * x);
            assert_eq!(x, rhs::rhs_theorem1(&ra.scenario).unwrap());
        }
    }
}
