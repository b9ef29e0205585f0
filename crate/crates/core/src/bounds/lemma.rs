//! Both sides of the fractional Montgomery-type identity.

use super::Scenario;
use crate::error::{Error, Result};
use crate::fracint::{rl_left, rl_right, FracOrder};
use crate::funclib::FunctionSpec;
use crate::math;
use crate::quadrature::{try_integrate, IntegralResult, QuadratureConfig};
use crate::specfun;
use crate::RealFn;

/// A computed value with its accumulated quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Estimate {
    pub value: f64,
    pub est_abs_error: f64,
    pub converged: bool,
}

impl Estimate {
    fn from_parts(value: f64, parts: &[(f64, IntegralResult)]) -> Self {
        let est_abs_error = parts.iter().map(|(w, r)| math::abs(*w) * r.est_abs_error).sum();
        let converged = parts.iter().all(|(_, r)| r.converged);
        Estimate { value, est_abs_error, converged }
    }
}

/// Sign in front of the second term of the identity's right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SignConvention {
    /// Both terms added.
    PaperPlus,
    /// Second term subtracted; the form that actually holds.
    #[default]
    CorrectedMinus,
}

impl SignConvention {
    fn factor(self) -> f64 {
        match self {
            SignConvention::PaperPlus => 1.0,
            SignConvention::CorrectedMinus => -1.0,
        }
    }
}

/// ((x−a)^μ + (b−x)^μ)/(b−a)·f(x) − Γ(μ+1)/(b−a)·[J^μ_{x−}f(a) + J^μ_{x+}f(b)].
///
/// At x = a or x = b the fractional term with a zero prefactor is skipped.
pub fn lemma1_lhs<F: RealFn + ?Sized>(f: &F, s: &Scenario, cfg: &QuadratureConfig) -> Result<Estimate> {
    s.validate_interval()?;
    let mu = FracOrder::new(s.mu)?;
    if !(s.mu > 0.0) {
        return Err(Error::domain("mu must be positive"));
    }
    let span = s.b - s.a;
    let fx = f.eval(s.x)?;
    let g = specfun::gamma(s.mu + 1.0)?.value;
    let w = -g / span;
    let mut parts = alloc::vec::Vec::with_capacity(2);
    let mut sum = 0.0;
    if s.x > s.a {
        // J^μ_{x−} f(a): right-sided operator with upper end x, evaluated at a
        let j = rl_right(f, s.x, mu, s.a, cfg)?;
        sum += j.value;
        parts.push((w, j));
    }
    if s.x < s.b {
        let j = rl_left(f, s.x, mu, s.b, cfg)?;
        sum += j.value;
        parts.push((w, j));
    }
    let lead = (math::powf(s.x - s.a, s.mu) + math::powf(s.b - s.x, s.mu)) / span;
    Ok(Estimate::from_parts(lead * fx + w * sum, &parts))
}

/// f(x) − (1/(b−a))∫ₐᵇ f, the left side at μ = 1.
pub fn classical_lhs<F: RealFn + ?Sized>(f: &F, s: &Scenario, cfg: &QuadratureConfig) -> Result<Estimate> {
    s.validate_interval()?;
    let span = s.b - s.a;
    let r = try_integrate(|t| f.eval(t), s.a, s.b, cfg)?;
    let fx = f.eval(s.x)?;
    Ok(Estimate::from_parts(fx - r.value / span, &[(1.0 / span, r)]))
}

fn kernel_integrals(
    f: &FunctionSpec,
    s: &Scenario,
    abs: bool,
    cfg: &QuadratureConfig,
) -> Result<(Option<IntegralResult>, Option<IntegralResult>)> {
    s.validate_interval()?;
    if !(s.mu > 0.0) {
        return Err(Error::domain("mu must be positive"));
    }
    let unit = |end: f64| -> Result<IntegralResult> {
        try_integrate(
            |t| {
                let d = f.derivative(t * s.x + (1.0 - t) * end)?;
                Ok(math::powf(t, s.mu) * if abs { math::abs(d) } else { d })
            },
            0.0,
            1.0,
            cfg,
        )
    };
    let left = if s.x > s.a { Some(unit(s.a)?) } else { None };
    let right = if s.x < s.b { Some(unit(s.b)?) } else { None };
    Ok((left, right))
}

fn combine(s: &Scenario, left: Option<IntegralResult>, right: Option<IntegralResult>, sign: f64) -> Estimate {
    let span = s.b - s.a;
    let wl = math::powf(s.x - s.a, s.mu + 1.0) / span;
    let wr = sign * math::powf(s.b - s.x, s.mu + 1.0) / span;
    let mut parts = alloc::vec::Vec::with_capacity(2);
    let mut value = 0.0;
    if let Some(r) = left {
        value += wl * r.value;
        parts.push((wl, r));
    }
    if let Some(r) = right {
        value += wr * r.value;
        parts.push((wr, r));
    }
    Estimate::from_parts(value, &parts)
}

/// (x−a)^{μ+1}/(b−a)·∫₀¹ t^μ f′(tx+(1−t)a)dt ± (b−x)^{μ+1}/(b−a)·∫₀¹ t^μ f′(tx+(1−t)b)dt.
pub fn lemma1_rhs(f: &FunctionSpec, s: &Scenario, sign: SignConvention, cfg: &QuadratureConfig) -> Result<Estimate> {
    let (l, r) = kernel_integrals(f, s, false, cfg)?;
    Ok(combine(s, l, r, sign.factor()))
}

/// The same with |f′|: the triangle-inequality bound on |lemma1_lhs|.
pub fn lemma1_abs_rhs(f: &FunctionSpec, s: &Scenario, cfg: &QuadratureConfig) -> Result<Estimate> {
    let (l, r) = kernel_integrals(f, s, true, cfg)?;
    Ok(combine(s, l, r, 1.0))
}
