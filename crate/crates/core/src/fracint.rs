//! Riemann–Liouville fractional integrals.
//!
//! For 0 < μ < 1 the kernel is integrably singular at the evaluation point
//! and is handled by the power substitution of the quadrature module; for
//! μ >= 1 the kernel is bounded and integrated directly. Order zero is the
//! identity.

use crate::error::{Error, Result};
use crate::math;
use crate::quadrature::{try_integrate, try_integrate_power_singular, IntegralResult, QuadratureConfig, SingularEnd};
use crate::specfun;
use crate::RealFn;

/// Order μ of a fractional integral, μ >= 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu >= 0.0) || !mu.is_finite() {
            return Err(Error::domain("fractional order must be finite and >= 0"));
        }
        Ok(FracOrder(mu))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0.0
    }
}

/// J^μ_{a+} f(x) = (1/Γ(μ)) ∫ₐˣ (x − t)^{μ−1} f(t) dt, for x > a.
pub fn rl_left<F: RealFn + ?Sized>(
    f: &F,
    a: f64,
    mu: FracOrder,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if !(x > a) {
        return Err(Error::domain("left Riemann-Liouville integral requires x > a"));
    }
    if mu.is_identity() {
        return Ok(IntegralResult::exact(f.eval(x)?));
    }
    let mu = mu.get();
    let raw = if mu < 1.0 {
        try_integrate_power_singular(|t| f.eval(t), mu - 1.0, a, x, SingularEnd::Hi, cfg)?
    } else {
        try_integrate(|t| Ok(math::powf(x - t, mu - 1.0) * f.eval(t)?), a, x, cfg)?
    };
    let gamma = specfun::gamma(mu)?.value;
    Ok(raw.scale(1.0 / gamma))
}

/// J^μ_{b−} f(x) = (1/Γ(μ)) ∫ₓᵇ (t − x)^{μ−1} f(t) dt, for x < b.
pub fn rl_right<F: RealFn + ?Sized>(
    f: &F,
    b: f64,
    mu: FracOrder,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if !(x < b) {
        return Err(Error::domain("right Riemann-Liouville integral requires x < b"));
    }
    if mu.is_identity() {
        return Ok(IntegralResult::exact(f.eval(x)?));
    }
    let mu = mu.get();
    let raw = if mu < 1.0 {
        try_integrate_power_singular(|t| f.eval(t), mu - 1.0, x, b, SingularEnd::Lo, cfg)?
    } else {
        try_integrate(|t| Ok(math::powf(t - x, mu - 1.0) * f.eval(t)?), x, b, cfg)?
    };
    let gamma = specfun::gamma(mu)?.value;
    Ok(raw.scale(1.0 / gamma))
}
