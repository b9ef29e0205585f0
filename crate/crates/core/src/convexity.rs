//! Grid-based membership checks for the generalized convexity classes.
//!
//! Every check evaluates its defining inequality on a finite grid of
//! (x, y, t) and reports the largest violation. A passing report means
//! "holds over the sampled grid", nothing more.

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};
use crate::funclib::grid_point;
use crate::math;
use crate::RealFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ClassId {
    MConvex,
    AlphaMConvex,
    MLogConvex,
    AlphaMLogConvex,
    Starshaped,
}

impl ClassId {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassId::MConvex => "m_convex",
            ClassId::AlphaMConvex => "alpha_m_convex",
            ClassId::MLogConvex => "m_log_convex",
            ClassId::AlphaMLogConvex => "alpha_m_log_convex",
            ClassId::Starshaped => "starshaped",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Number of sample points along x, y and t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub nt: usize,
}

impl Grid {
    pub const fn cube(n: usize) -> Self {
        Grid { nx: n, ny: n, nt: n }
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::cube(33)
    }
}

pub const DEFAULT_TOL: f64 = 1e-9;

/// A sample point (x, y, t) at which a defining inequality fails.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MembershipReport {
    pub class_id: ClassId,
    pub holds: bool,
    /// max(LHS − RHS) over the samples, clamped at 0. Measured on logarithms
    /// for the log-convex classes.
    pub worst_violation: f64,
    pub witness: Option<Witness>,
    pub samples_checked: usize,
}

#[derive(Clone, Copy)]
enum Scale {
    Linear,
    Log,
}

fn validate(b_dom: f64, alpha: f64, m: f64, grid: Grid, tol: f64) -> Result<()> {
    if !(b_dom > 0.0) || !b_dom.is_finite() {
        return Err(Error::domain("b_dom must be positive and finite"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} must lie in (0,1]")));
    }
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::domain(format!("m = {m} must lie in [0,1]")));
    }
    if grid.nx < 2 || grid.ny < 2 || grid.nt < 2 {
        return Err(Error::domain("every grid dimension needs at least 2 points"));
    }
    if !(tol >= 0.0) {
        return Err(Error::domain("tol must be non-negative"));
    }
    Ok(())
}

fn sample<G: RealFn + ?Sized>(g: &G, at: f64, scale: Scale) -> Result<f64> {
    let v = g.eval(at)?;
    if !v.is_finite() {
        return Err(Error::NonFinite { at });
    }
    match scale {
        Scale::Linear => Ok(v),
        Scale::Log => {
            if v <= 0.0 {
                Err(Error::domain(format!("function must be positive for a log-convexity check; g({at}) = {v}")))
            } else {
                Ok(math::ln(v))
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn check<G: RealFn + ?Sized>(
    class_id: ClassId,
    scale: Scale,
    g: &G,
    b_dom: f64,
    alpha: f64,
    m: f64,
    grid: Grid,
    tol: f64,
) -> Result<MembershipReport> {
    validate(b_dom, alpha, m, grid, tol)?;
    let xs: alloc::vec::Vec<f64> = (0..grid.nx).map(|i| grid_point(0.0, b_dom, i, grid.nx)).collect();
    let ys: alloc::vec::Vec<f64> = (0..grid.ny).map(|i| grid_point(0.0, b_dom, i, grid.ny)).collect();
    let gx = xs.iter().map(|&x| sample(g, x, scale)).collect::<Result<alloc::vec::Vec<_>>>()?;
    let gy = ys.iter().map(|&y| sample(g, y, scale)).collect::<Result<alloc::vec::Vec<_>>>()?;

    let mut worst = 0.0f64;
    let mut witness = None;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            for k in 0..grid.nt {
                let t = grid_point(0.0, 1.0, k, grid.nt);
                let w = math::powf(t, alpha);
                let arg = t * x + m * (1.0 - t) * y;
                debug_assert!(arg >= 0.0 && arg <= b_dom * (1.0 + 1e-12));
                let lhs = sample(g, arg, scale)?;
                let rhs = w * gx[i] + m * (1.0 - w) * gy[j];
                let v = lhs - rhs;
                // strict comparison keeps the lexicographically first worst point
                if v > worst {
                    worst = v;
                    witness = Some(Witness { x, y, t });
                }
            }
        }
    }
    let holds = worst <= tol;
    Ok(MembershipReport {
        class_id,
        holds,
        worst_violation: worst,
        witness: if holds { None } else { witness },
        samples_checked: grid.nx * grid.ny * grid.nt,
    })
}

/// g(tx + m(1−t)y) ≤ g(x)^{t^α} g(y)^{m(1−t^α)}, compared in log space.
pub fn check_alpha_m_log_convex<G: RealFn + ?Sized>(
    g: &G,
    b_dom: f64,
    alpha: f64,
    m: f64,
    grid: Grid,
    tol: f64,
) -> Result<MembershipReport> {
    check_m_positive(m)?;
    check(ClassId::AlphaMLogConvex, Scale::Log, g, b_dom, alpha, m, grid, tol)
}

/// g(tx + m(1−t)y) ≤ g(x)^t g(y)^{m(1−t)}.
pub fn check_m_log_convex<G: RealFn + ?Sized>(g: &G, b_dom: f64, m: f64, grid: Grid, tol: f64) -> Result<MembershipReport> {
    check_m_positive(m)?;
    check(ClassId::MLogConvex, Scale::Log, g, b_dom, 1.0, m, grid, tol)
}

/// g(tx + m(1−t)y) ≤ t^α g(x) + m(1−t^α) g(y).
pub fn check_alpha_m_convex<G: RealFn + ?Sized>(
    g: &G,
    b_dom: f64,
    alpha: f64,
    m: f64,
    grid: Grid,
    tol: f64,
) -> Result<MembershipReport> {
    check(ClassId::AlphaMConvex, Scale::Linear, g, b_dom, alpha, m, grid, tol)
}

/// g(tx + m(1−t)y) ≤ t g(x) + m(1−t) g(y).
pub fn check_m_convex<G: RealFn + ?Sized>(g: &G, b_dom: f64, m: f64, grid: Grid, tol: f64) -> Result<MembershipReport> {
    check(ClassId::MConvex, Scale::Linear, g, b_dom, 1.0, m, grid, tol)
}

/// g(tx) ≤ t g(x) on [0, b_dom]. Witnesses report y = 0.
pub fn check_starshaped<G: RealFn + ?Sized>(g: &G, b_dom: f64, grid: Grid, tol: f64) -> Result<MembershipReport> {
    validate(b_dom, 1.0, 0.0, grid, tol)?;
    let mut worst = 0.0f64;
    let mut witness = None;
    for i in 0..grid.nx {
        let x = grid_point(0.0, b_dom, i, grid.nx);
        let gx = sample(g, x, Scale::Linear)?;
        for k in 0..grid.nt {
            let t = grid_point(0.0, 1.0, k, grid.nt);
            let v = sample(g, t * x, Scale::Linear)? - t * gx;
            if v > worst {
                worst = v;
                witness = Some(Witness { x, y: 0.0, t });
            }
        }
    }
    let holds = worst <= tol;
    Ok(MembershipReport {
        class_id: ClassId::Starshaped,
        holds,
        worst_violation: worst,
        witness: if holds { None } else { witness },
        samples_checked: grid.nx * grid.nt,
    })
}

/// The extra condition g(0) ≤ 0 of the class K_m^α(b).
pub fn origin_nonpositive<G: RealFn + ?Sized>(g: &G) -> Result<bool> {
    Ok(g.eval(0.0)? <= 0.0)
}

fn check_m_positive(m: f64) -> Result<()> {
    if m > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("log-convexity classes require m in (0,1]"))
    }
}
