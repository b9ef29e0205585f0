//! The constants K1–K4 and the Hölder factor.

use super::check_m_domain;
use crate::error::{Error, Result};
use crate::math;
use crate::quadrature::{integrate, QuadratureConfig};
use crate::specfun;

/// Below this |z| the closed forms are 0/0 and a 3-term series is used.
pub const SERIES_THRESHOLD: f64 = 1e-8;

fn check_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!("{name} = {v} must lie in (0,1]")))
    }
}

/// K1 = M^{2m}(M^{2α−2αm} − 1)/((2α − 2αm) ln M), and 1 at M = 1.
///
/// Evaluated as M^{2m} expm1(z)/z with z = 2α(1−m) ln M.
pub fn k1(alpha: f64, m: f64, big_m: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("m", m)?;
    check_m_domain(big_m)?;
    if big_m == 1.0 {
        return Ok(1.0);
    }
    let z = 2.0 * alpha * (1.0 - m) * math::ln(big_m);
    let lead = math::powf(big_m, 2.0 * m);
    if math::abs(z) < SERIES_THRESHOLD {
        Ok(lead * (1.0 + z / 2.0 + z * z / 6.0))
    } else {
        Ok(lead * math::expm1(z) / z)
    }
}

/// K2 = M^m (Γ(μp+1) − Γ(μp+1, z))/z^{μp+1} with z = α(m−1) ln M ≥ 0,
/// and 1/(μp+1) at M = 1.
pub fn k2(alpha: f64, m: f64, big_m: f64, mu: f64, p: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("m", m)?;
    check_m_domain(big_m)?;
    if !(mu > 0.0) || !(p >= 0.0) || !mu.is_finite() || !p.is_finite() {
        return Err(Error::domain(alloc::format!("K2 needs mu > 0 and p >= 0, got mu = {mu}, p = {p}")));
    }
    let s = mu * p + 1.0;
    if big_m == 1.0 {
        return Ok(1.0 / s);
    }
    let z = alpha * (m - 1.0) * math::ln(big_m);
    let lead = math::powf(big_m, m);
    if z < SERIES_THRESHOLD {
        return Ok(lead * (1.0 / s - z / (s + 1.0) + z * z / (2.0 * (s + 2.0))));
    }
    Ok(lead * specfun::scaled_lower_incomplete_gamma(s, z)?)
}

/// K3 = K2 at μ = 1.
pub fn k3(alpha: f64, m: f64, big_m: f64, p: f64) -> Result<f64> {
    k2(alpha, m, big_m, 1.0, p)
}

/// K4 = K2 at μ = p = 1, via Γ(2, z) = (z+1)e^{−z}.
pub fn k4(alpha: f64, m: f64, big_m: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("m", m)?;
    check_m_domain(big_m)?;
    if big_m == 1.0 {
        return Ok(0.5);
    }
    let z = alpha * (m - 1.0) * math::ln(big_m);
    let lead = math::powf(big_m, m);
    if z < 0.5 {
        // (1 − (1+z)e^{−z})/z² = Σ_{k≥2} (−1)^k (k−1)/k! z^{k−2}
        let mut sum = 0.0;
        let mut inv_fact = 0.5;
        let mut zp = 1.0;
        for k in 2..60u32 {
            let term = f64::from(k - 1) * inv_fact * zp;
            sum += if k % 2 == 0 { term } else { -term };
            if term < 1e-18 * math::abs(sum) {
                break;
            }
            inv_fact /= f64::from(k + 1);
            zp *= z;
        }
        return Ok(lead * sum);
    }
    let upper = (z + 1.0) * math::exp(-z);
    Ok(lead * (1.0 - upper) / (z * z))
}

/// (q−1)/(μ(q−p)+q−1), which equals ∫₀¹ t^{μ(q−p)/(q−1)} dt.
pub fn holder_factor(mu: f64, p: f64, q: f64) -> Result<f64> {
    if !(q > 1.0) || !(p >= 0.0 && p <= q) || !(mu > 0.0) {
        return Err(Error::domain(alloc::format!(
            "Hoelder factor needs q > 1, 0 <= p <= q, mu > 0; got mu = {mu}, p = {p}, q = {q}"
        )));
    }
    Ok((q - 1.0) / (mu * (q - p) + q - 1.0))
}

fn check_positive_m(big_m: f64) -> Result<()> {
    if big_m > 0.0 && big_m.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!("M = {big_m} must be positive")))
    }
}

/// ∫₀¹ M^{2(m + t^α(1−m))} dt, defined for any M > 0.
pub fn k1_exact(alpha: f64, m: f64, big_m: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("m", m)?;
    check_positive_m(big_m)?;
    let ln_m = math::ln(big_m);
    let r = integrate(|t| math::exp(2.0 * (m + math::powf(t, alpha) * (1.0 - m)) * ln_m), 0.0, 1.0, cfg)?;
    Ok(r.value)
}

/// ∫₀¹ t^{μp} M^{m + t^α(1−m)} dt, defined for any M > 0.
pub fn k2_exact(alpha: f64, m: f64, big_m: f64, mu: f64, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("m", m)?;
    check_positive_m(big_m)?;
    if !(mu > 0.0) || !(p >= 0.0) {
        return Err(Error::domain("exact K2 needs mu > 0 and p >= 0"));
    }
    let ln_m = math::ln(big_m);
    let e = mu * p;
    let r = integrate(
        |t| math::powf(t, e) * math::exp((m + math::powf(t, alpha) * (1.0 - m)) * ln_m),
        0.0,
        1.0,
        cfg,
    )?;
    Ok(r.value)
}
