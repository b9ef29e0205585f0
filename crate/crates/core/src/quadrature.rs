//! Adaptive Gauss–Legendre quadrature.
//!
//! Every panel is integrated with a fixed-order Gauss–Legendre rule, both as
//! a whole and as two halves; the difference of the two estimates is the
//! panel's error. Panels are bisected worst-first until the summed error
//! meets the tolerance. Endpoint power singularities are removed by a
//! substitution before integrating (see [`integrate_power_singular`]).

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of bisections of any single panel.
    pub max_depth: u32,
    /// Order of the Gauss–Legendre rule applied to each panel.
    pub points_per_panel: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_depth: 50,
            points_per_panel: 15,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::domain("rel_tol must be positive"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain("abs_tol must be positive"));
        }
        if self.max_depth < 1 {
            return Err(Error::domain("max_depth must be at least 1"));
        }
        if self.points_per_panel < 2 {
            return Err(Error::domain("points_per_panel must be at least 2"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntegralResult {
    pub value: f64,
    pub est_abs_error: f64,
    pub evaluations: usize,
    /// False when the tolerance was not met before the depth or panel limits.
    pub converged: bool,
}

impl IntegralResult {
    /// Result of an integral that was not computed numerically.
    pub fn exact(value: f64) -> Self {
        IntegralResult { value, est_abs_error: 0.0, evaluations: 0, converged: true }
    }

    pub fn scale(self, factor: f64) -> Self {
        IntegralResult {
            value: self.value * factor,
            est_abs_error: self.est_abs_error * math::abs(factor),
            ..self
        }
    }
}

/// Upper bound on the number of live panels in one call.
const MAX_PANELS: usize = 20_000;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = math::cos(core::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if math::abs(dz) <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Returns (∫ f, ∫ |f|) over [lo, hi].
    fn apply<F>(&self, f: &F, lo: f64, hi: f64) -> Result<(f64, f64)>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (&z, &w) in self.nodes.iter().zip(&self.weights) {
            let t = mid + half * z;
            let v = f(t)?;
            if !v.is_finite() {
                return Err(Error::NonFinite { at: t });
            }
            sum += w * v;
            abs_sum += w * math::abs(v);
        }
        Ok((sum * half, abs_sum * math::abs(half)))
    }
}

/// P_n(z) and P_n'(z) by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

struct Panel {
    lo: f64,
    hi: f64,
    depth: u32,
    left: f64,
    right: f64,
    abs: f64,
    err: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left + self.right
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // worst error first; ties resolved by position so the run is deterministic
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

struct Engine<'a, F> {
    rule: GaussLegendre,
    f: &'a F,
    evaluations: usize,
}

impl<F: Fn(f64) -> Result<f64>> Engine<'_, F> {
    fn panel(&mut self, lo: f64, hi: f64, whole: f64, depth: u32) -> Result<Panel> {
        let mid = 0.5 * (lo + hi);
        let (left, labs) = self.rule.apply(self.f, lo, mid)?;
        let (right, rabs) = self.rule.apply(self.f, mid, hi)?;
        self.evaluations += 2 * self.rule.order();
        let err = math::abs(left + right - whole);
        Ok(Panel { lo, hi, depth, left, right, abs: labs + rabs, err })
    }
}

/// Integrates a fallible integrand over [lo, hi].
pub fn try_integrate<F>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> Result<f64>,
{
    cfg.validate()?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("integration limits must be finite"));
    }
    if lo > hi {
        return Err(Error::domain("integration requires lo <= hi"));
    }
    if lo == hi {
        return Ok(IntegralResult::exact(0.0));
    }

    let mut engine = Engine { rule: GaussLegendre::new(cfg.points_per_panel), f: &f, evaluations: 0 };
    let (whole, _) = engine.rule.apply(&f, lo, hi)?;
    engine.evaluations += engine.rule.order();

    let mut heap = BinaryHeap::new();
    let mut finished: Vec<Panel> = Vec::new();
    let root = engine.panel(lo, hi, whole, 0)?;
    heap.push(root);

    let mut value = root_value(&heap);
    let mut err = heap.peek().map_or(0.0, |p| p.err);
    let mut abs = heap.peek().map_or(0.0, |p| p.abs);
    let mut converged = true;
    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * math::abs(value)).max(50.0 * f64::EPSILON * abs);
        if err <= target {
            break;
        }
        let Some(worst) = heap.pop() else {
            converged = false;
            break;
        };
        if worst.err <= 50.0 * f64::EPSILON * worst.abs {
            // this panel is at rounding level; nothing to gain from splitting it
            finished.push(worst);
            continue;
        }
        if worst.depth >= cfg.max_depth || heap.len() + finished.len() + 2 > MAX_PANELS {
            finished.push(worst);
            if heap.is_empty() {
                converged = false;
                break;
            }
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // interval can no longer be bisected in floating point
            finished.push(worst);
            continue;
        }
        let left = engine.panel(worst.lo, mid, worst.left, worst.depth + 1)?;
        let right = engine.panel(mid, worst.hi, worst.right, worst.depth + 1)?;
        value += left.value() + right.value() - worst.value();
        err += left.err + right.err - worst.err;
        abs += left.abs + right.abs - worst.abs;
        heap.push(left);
        heap.push(right);
    }

    let (value, err, abs) = totals(heap.iter().chain(finished.iter()));
    let target = cfg.abs_tol.max(cfg.rel_tol * math::abs(value)).max(50.0 * f64::EPSILON * abs);
    Ok(IntegralResult {
        value,
        est_abs_error: err,
        evaluations: engine.evaluations,
        converged: converged && err <= target,
    })
}

fn root_value(heap: &BinaryHeap<Panel>) -> f64 {
    heap.peek().map_or(0.0, Panel::value)
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (f64, f64, f64) {
    // summation in position order keeps results independent of heap layout
    let mut list: Vec<&Panel> = panels.collect();
    list.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut value = 0.0;
    let mut err = 0.0;
    let mut abs = 0.0;
    for p in list {
        value += p.value();
        err += p.err;
        abs += p.abs;
    }
    (value, err, abs)
}

/// Integrates `f` over [lo, hi]; non-finite samples are reported with their abscissa.
pub fn integrate<F>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|t| Ok(f(t)), lo, hi, cfg)
}

/// Which endpoint carries the power singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SingularEnd {
    Lo,
    Hi,
}

/// ∫ g(t)·|t − s|^exponent dt over [lo, hi], with s the chosen endpoint.
///
/// The substitution u = |t − s|^(exponent+1) turns the integrand into the
/// bounded g(t(u)) / (exponent + 1) on [0, (hi − lo)^(exponent+1)].
pub fn try_integrate_power_singular<G>(
    g: G,
    exponent: f64,
    lo: f64,
    hi: f64,
    end: SingularEnd,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    G: Fn(f64) -> Result<f64>,
{
    if !(exponent > -1.0) || !exponent.is_finite() {
        return Err(Error::domain("power singularity exponent must exceed -1"));
    }
    if lo > hi {
        return Err(Error::domain("integration requires lo <= hi"));
    }
    if exponent == 0.0 {
        return try_integrate(g, lo, hi, cfg);
    }
    let e1 = exponent + 1.0;
    let inv = 1.0 / e1;
    let upper = math::powf(hi - lo, e1);
    let map = move |u: f64| -> f64 {
        let d = math::powf(u, inv);
        match end {
            SingularEnd::Lo => lo + d,
            SingularEnd::Hi => hi - d,
        }
    };
    let res = try_integrate(|u| g(map(u)), 0.0, upper, cfg)?;
    Ok(res.scale(inv))
}

pub fn integrate_power_singular<G>(
    g: G,
    exponent: f64,
    lo: f64,
    hi: f64,
    end: SingularEnd,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    G: Fn(f64) -> f64,
{
    try_integrate_power_singular(|t| Ok(g(t)), exponent, lo, hi, end, cfg)
}
