//! One inequality, one function, one scenario: both sides and the audit.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lemma::{classical_lhs, lemma1_lhs, Estimate};
use super::rhs::{rhs, rhs_exact};
use super::{BoundFamily, Scenario, TheoremId};
use crate::convexity::{self, Grid, MembershipReport};
use crate::error::Result;
use crate::funclib::{sup_abs_derivative, FunctionSpec};
use crate::math;
use crate::quadrature::QuadratureConfig;
use crate::RealFn;

/// How the constants K1–K4 are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ConstantMode {
    /// The closed forms, defined for M in (0,1].
    #[default]
    Closed,
    /// Extension: the exact integrals the closed forms bound, for any M > 0.
    ExactIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerifyConfig {
    pub quadrature: QuadratureConfig,
    /// holds ⇔ rhs − lhs ≥ −verdict_tol.
    pub verdict_tol: f64,
    pub constants: ConstantMode,
    pub audit: bool,
    pub membership_grid: Grid,
    pub membership_tol: f64,
    /// Points used for the grid supremum of |f′|^q.
    pub sup_grid: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            quadrature: QuadratureConfig::default(),
            verdict_tol: 1e-8,
            constants: ConstantMode::Closed,
            audit: true,
            membership_grid: Grid::default(),
            membership_tol: convexity::DEFAULT_TOL,
            sup_grid: 257,
        }
    }
}

/// Result of one named hypothesis check.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub membership: Option<MembershipReport>,
}

impl AuditItem {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        AuditItem { name: name.to_string(), passed, detail, membership: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub function: String,
    /// The scenario after the theorem's parameter pinning.
    pub scenario: Scenario,
    /// |left side|.
    pub lhs: f64,
    pub lhs_est_error: f64,
    /// None when the right side is undefined (M outside (0,1] in closed mode).
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    pub holds: bool,
    pub hypothesis_audit: Vec<AuditItem>,
    pub quadrature_flags: Vec<String>,
    /// True when the right side came from the exact-integral extension.
    pub extension: bool,
}

impl BoundReport {
    pub fn audit_passed(&self) -> bool {
        self.hypothesis_audit.iter().all(|a| a.passed)
    }

    pub fn accuracy_flagged(&self) -> bool {
        !self.quadrature_flags.is_empty()
    }
}

/// Evaluates both sides of `theorem` for `f` at `s` and audits the hypotheses.
///
/// Scenario invariant violations are errors. Hypothesis failures are not:
/// they are recorded in the audit and the inequality is still evaluated
/// whenever its right side is defined.
pub fn verify(theorem: TheoremId, f: &FunctionSpec, s: &Scenario, cfg: &VerifyConfig) -> Result<BoundReport> {
    let s = theorem.pin(s);
    s.validate_for(theorem)?;
    cfg.quadrature.validate()?;

    let mut flags = Vec::new();
    let est: Estimate = if theorem.classical_lhs() {
        classical_lhs(f, &s, &cfg.quadrature)?
    } else {
        lemma1_lhs(f, &s, &cfg.quadrature)?
    };
    if !est.converged {
        flags.push(format!("left side quadrature did not converge (est. error {:.3e})", est.est_abs_error));
    }
    let lhs = math::abs(est.value);

    let in_domain = s.big_m <= 1.0;
    let extension = cfg.constants == ConstantMode::ExactIntegral && theorem != TheoremId::Classical;
    let rhs_value = if extension {
        Some(rhs_exact(theorem, &s, &cfg.quadrature)?)
    } else if in_domain || theorem == TheoremId::Classical {
        Some(rhs(theorem, &s)?)
    } else {
        None
    };
    let margin = rhs_value.map(|r| r - lhs);
    let holds = margin.is_some_and(|m| m >= -cfg.verdict_tol);

    let hypothesis_audit = if cfg.audit { audit(theorem, f, &s, cfg)? } else { Vec::new() };

    Ok(BoundReport {
        theorem,
        function: f.label(),
        scenario: s,
        lhs,
        lhs_est_error: est.est_abs_error,
        rhs: rhs_value,
        margin,
        holds,
        hypothesis_audit,
        quadrature_flags: flags,
        extension,
    })
}

/// Right end of the interval [0, B] on which class membership and the
/// derivative bound are checked. The proofs evaluate |f′| at a/m and b/m.
fn audit_domain(theorem: TheoremId, s: &Scenario) -> (f64, f64) {
    if theorem == TheoremId::Classical {
        (s.a, s.b)
    } else {
        (0.0, s.b / s.m)
    }
}

fn audit(theorem: TheoremId, f: &FunctionSpec, s: &Scenario, cfg: &VerifyConfig) -> Result<Vec<AuditItem>> {
    let mut items = Vec::new();
    let family = theorem.family();
    let q = if family == BoundFamily::Holder { s.q } else { 1.0 };
    let (lo, hi) = audit_domain(theorem, s);

    if theorem != TheoremId::Classical {
        let ok = s.big_m > 0.0 && s.big_m <= 1.0;
        let detail = if ok {
            format!("M = {}", s.big_m)
        } else if cfg.constants == ConstantMode::ExactIntegral {
            format!("M = {} > 1: closed-form constants undefined, exact-integral extension used", s.big_m)
        } else {
            format!("M = {} > 1 lies outside the domain of the constants", s.big_m)
        };
        items.push(AuditItem::new("M in (0,1]", ok, detail));
    }

    let bound_name = if q == 1.0 { "sup |f'| <= M" } else { "sup |f'|^q <= M" };
    match sup_abs_derivative(f, (lo, hi), q, cfg.sup_grid) {
        Ok(sup) => {
            let ok = sup <= s.big_m * (1.0 + 1e-12);
            items.push(AuditItem::new(bound_name, ok, format!("grid sup on [{lo}, {hi}] = {sup}, M = {}", s.big_m)));
        }
        Err(e) => items.push(AuditItem::new(bound_name, false, format!("evaluation failed: {e}"))),
    }

    if theorem != TheoremId::Classical {
        let positive = (0..cfg.sup_grid)
            .map(|i| crate::funclib::grid_point(0.0, hi, i, cfg.sup_grid))
            .try_fold(true, |acc, t| f.eval(t).map(|v| acc && v > 0.0));
        let (ok, detail) = match positive {
            Ok(ok) => (ok, format!("sampled on [0, {hi}]")),
            Err(e) => (false, format!("evaluation failed: {e}")),
        };
        items.push(AuditItem::new("f > 0", ok, detail));

        let g = f.abs_derivative_pow(q);
        let grid = cfg.membership_grid;
        let tol = cfg.membership_tol;
        let (name, check) = match theorem {
            TheoremId::T1 | TheoremId::T2 | TheoremId::C5 | TheoremId::C6 => (
                if q == 1.0 { "|f'| (alpha,m)-log-convex" } else { "|f'|^q (alpha,m)-log-convex" },
                convexity::check_alpha_m_log_convex(&g, hi, s.alpha, s.m, grid, tol),
            ),
            TheoremId::C1 => ("|f'| m-log-convex", convexity::check_m_log_convex(&g, hi, s.m, grid, tol)),
            TheoremId::C2 | TheoremId::C3 => ("|f'| log-convex", convexity::check_m_log_convex(&g, hi, 1.0, grid, tol)),
            TheoremId::C4 => ("|f'|^q log-convex", convexity::check_m_log_convex(&g, hi, 1.0, grid, tol)),
            TheoremId::Classical => unreachable!(),
        };
        items.push(match check {
            Ok(report) => {
                let detail = match report.witness {
                    Some(w) => format!(
                        "violation {:.3e} at x = {}, y = {}, t = {}",
                        report.worst_violation, w.x, w.y, w.t
                    ),
                    None => format!("{} samples on [0, {hi}]", report.samples_checked),
                };
                AuditItem { name: name.to_string(), passed: report.holds, detail, membership: Some(report) }
            }
            Err(e) => AuditItem::new(name, false, format!("check failed: {e}")),
        });
    }
    Ok(items)
}
