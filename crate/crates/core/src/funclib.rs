//! Built-in function families and the [`FunctionSpec`] abstraction.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::exprlang::{self, eval_dual, DualValue, Expr};
use crate::math;
use crate::RealFn;

/// Parametric families with closed-form derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BuiltinFamily {
    /// f(x) = 1 + M/λ − (M/λ)e^{−λx}, so f′(x) = M e^{−λx} and f > 0 on [0, ∞).
    ExpDecayPrime { m_bound: f64, lambda: f64 },
    /// f(x) = M x + 1.
    LinearScaled { m_bound: f64 },
    /// f(x) = x².
    Quadratic,
}

impl BuiltinFamily {
    pub fn validate(&self) -> Result<()> {
        let check_m = |m: f64| {
            if m > 0.0 && m <= 1.0 {
                Ok(())
            } else {
                Err(Error::domain(format!("family parameter M = {m} must lie in (0,1]")))
            }
        };
        match *self {
            BuiltinFamily::ExpDecayPrime { m_bound, lambda } => {
                check_m(m_bound)?;
                if !(lambda > 0.0) || !lambda.is_finite() {
                    return Err(Error::domain(format!("family parameter lambda = {lambda} must be positive")));
                }
                Ok(())
            }
            BuiltinFamily::LinearScaled { m_bound } => check_m(m_bound),
            BuiltinFamily::Quadratic => Ok(()),
        }
    }

    /// The derivative bound M carried by the family, if any.
    pub fn derivative_bound(&self) -> Option<f64> {
        match *self {
            BuiltinFamily::ExpDecayPrime { m_bound, .. } | BuiltinFamily::LinearScaled { m_bound } => Some(m_bound),
            BuiltinFamily::Quadratic => None,
        }
    }

    fn eval_dual(&self, x: f64) -> DualValue {
        match *self {
            BuiltinFamily::ExpDecayPrime { m_bound, lambda } => {
                let e = math::exp(-lambda * x);
                let c = m_bound / lambda;
                DualValue { primal: 1.0 + c - c * e, tangent: m_bound * e }
            }
            BuiltinFamily::LinearScaled { m_bound } => DualValue { primal: m_bound * x + 1.0, tangent: m_bound },
            BuiltinFamily::Quadratic => DualValue { primal: x * x, tangent: 2.0 * x },
        }
    }

    /// Parses `name[:key=value,...]`; a missing `M` is taken from `default_m`.
    ///
    /// Names: `expdecay` (keys `M`, `lambda`), `linear` (key `M`), `quadratic`.
    pub fn parse_descriptor(text: &str, default_m: Option<f64>) -> Result<Self> {
        let text = text.trim();
        let (name, params) = match text.split_once(':') {
            Some((n, p)) => (n.trim(), p),
            None => (text, ""),
        };
        let mut m = None;
        let mut lambda = None;
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("family parameter '{item}' is not key=value")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("family parameter '{item}' is not a number")))?;
            match key.trim() {
                "M" => m = Some(value),
                "lambda" => lambda = Some(value),
                other => return Err(Error::domain(format!("unknown family parameter '{other}'"))),
            }
        }
        let need_m = || {
            m.or(default_m)
                .ok_or_else(|| Error::domain(format!("family '{name}' needs parameter M")))
        };
        let family = match name {
            "expdecay" => BuiltinFamily::ExpDecayPrime { m_bound: need_m()?, lambda: lambda.unwrap_or(1.0) },
            "linear" => {
                if lambda.is_some() {
                    return Err(Error::domain("family 'linear' takes no lambda"));
                }
                BuiltinFamily::LinearScaled { m_bound: need_m()? }
            }
            "quadratic" => {
                if m.is_some() || lambda.is_some() {
                    return Err(Error::domain("family 'quadratic' takes no parameters"));
                }
                BuiltinFamily::Quadratic
            }
            other => return Err(Error::domain(format!("unknown function family '{other}'"))),
        };
        family.validate()?;
        Ok(family)
    }
}

impl FromStr for BuiltinFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinFamily::parse_descriptor(s, None)
    }
}

impl fmt::Display for BuiltinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinFamily::ExpDecayPrime { m_bound, lambda } => write!(f, "expdecay:M={m_bound},lambda={lambda}"),
            BuiltinFamily::LinearScaled { m_bound } => write!(f, "linear:M={m_bound}"),
            BuiltinFamily::Quadratic => f.write_str("quadratic"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Builtin(BuiltinFamily),
    Expr(Expr),
}

impl Source {
    pub fn parse_expr(text: &str) -> Result<Self> {
        Ok(Source::Expr(exprlang::parse(text)?))
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Builtin(b) => write!(f, "{b}"),
            Source::Expr(e) => write!(f, "{e}"),
        }
    }
}

/// A differentiable function with exact first derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    source: Source,
    domain: (f64, f64),
}

impl FunctionSpec {
    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn label(&self) -> String {
        self.source.to_string()
    }

    pub fn value_and_derivative(&self, x: f64) -> Result<DualValue> {
        match &self.source {
            Source::Builtin(b) => {
                let d = b.eval_dual(x);
                if d.primal.is_finite() && d.tangent.is_finite() {
                    Ok(d)
                } else {
                    Err(Error::NonFinite { at: x })
                }
            }
            Source::Expr(e) => Ok(eval_dual(e, x)?),
        }
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.value_and_derivative(x)?.primal)
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        Ok(self.value_and_derivative(x)?.tangent)
    }

    /// |f′|^q as a function, the object of the hypothesis audits.
    pub fn abs_derivative_pow(&self, q: f64) -> AbsDerivativePow<'_> {
        AbsDerivativePow { spec: self, q }
    }
}

impl RealFn for FunctionSpec {
    fn eval(&self, t: f64) -> Result<f64> {
        self.value(t)
    }
}

/// t ↦ |f′(t)|^q.
#[derive(Debug, Clone, Copy)]
pub struct AbsDerivativePow<'a> {
    spec: &'a FunctionSpec,
    q: f64,
}

impl RealFn for AbsDerivativePow<'_> {
    fn eval(&self, t: f64) -> Result<f64> {
        let d = math::abs(self.spec.derivative(t)?);
        Ok(if self.q == 1.0 { d } else { math::powf(d, self.q) })
    }
}

/// Builds a spec and probes it at interior points of `domain_hint`.
pub fn make_spec(source: Source, domain_hint: (f64, f64)) -> Result<FunctionSpec> {
    let (lo, hi) = domain_hint;
    if !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::domain(format!("domain hint [{lo}, {hi}] must satisfy 0 <= lo < hi < inf")));
    }
    if let Source::Builtin(b) = &source {
        b.validate()?;
    }
    let spec = FunctionSpec { source, domain: domain_hint };
    for frac in [0.5, 0.25, 0.75] {
        spec.value_and_derivative(lo + frac * (hi - lo))?;
    }
    Ok(spec)
}

/// i-th of n uniform points on [lo, hi]; nested grids (n, 2n−1) share points exactly.
pub(crate) fn grid_point(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

/// max over a uniform grid of |f′(t)|^q on [lo, hi].
///
/// This is a lower estimate of the true supremum.
pub fn sup_abs_derivative(spec: &FunctionSpec, interval: (f64, f64), q: f64, grid_n: usize) -> Result<f64> {
    if grid_n < 2 {
        return Err(Error::domain("grid_n must be at least 2"));
    }
    if !(q >= 1.0) {
        return Err(Error::domain("q must be at least 1"));
    }
    let (lo, hi) = interval;
    if !(hi >= lo) {
        return Err(Error::domain("interval must satisfy lo <= hi"));
    }
    let g = spec.abs_derivative_pow(q);
    let values: Vec<f64> = (0..grid_n)
        .map(|i| grid_point(lo, hi, i, grid_n))
        .map(|t| g.eval(t))
        .collect::<Result<_>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}
