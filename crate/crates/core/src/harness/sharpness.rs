//! How close does the left side get to the right side as x moves?

use alloc::string::String;

use crate::bounds::{verify, Scenario, TheoremId, VerifyConfig};
use crate::error::{Error, Result};
use crate::funclib::{grid_point, FunctionSpec};

/// Search strategy over x ∈ [a+ε, b−ε].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Strategy {
    /// Best of n evenly spaced points.
    Grid(usize),
    /// Golden-section refinement, seeded from a 21-point grid, until the
    /// bracket is shorter than tol·(b−a).
    Golden(f64),
}

const COARSE_POINTS: usize = 21;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SharpnessResult {
    pub theorem: TheoremId,
    pub function: String,
    pub scenario_template: Scenario,
    pub strategy: Strategy,
    pub x_star: f64,
    /// lhs/rhs at x_star.
    pub ratio: f64,
    pub coarse_x: f64,
    pub coarse_ratio: f64,
    pub evaluations: usize,
    /// True when some probed x had rhs = 0; the ratio there is skipped.
    pub degenerate: bool,
    /// Whether the hypothesis audit passed (it does not depend on x).
    pub audit_passed: bool,
}

struct Probe<'a> {
    theorem: TheoremId,
    f: &'a FunctionSpec,
    template: Scenario,
    cfg: VerifyConfig,
    evaluations: usize,
    degenerate: bool,
}

impl Probe<'_> {
    fn ratio(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        let s = Scenario { x, ..self.template };
        let r = verify(self.theorem, self.f, &s, &self.cfg)?;
        let rhs = r.rhs.ok_or_else(|| Error::domain("right side undefined for this scenario (M outside (0,1])"))?;
        if rhs == 0.0 {
            self.degenerate = true;
            return Ok(0.0);
        }
        Ok(r.lhs / rhs)
    }
}

/// Strict improvement with a relative slack, so near-ties keep the smaller x.
fn better(candidate: f64, best: f64) -> bool {
    candidate > best + 1e-12 * best.abs()
}

/// Maximizes lhs/rhs over x ∈ [a+ε, b−ε] with ε = 1e−6(b−a).
pub fn sharpness_search(
    theorem: TheoremId,
    f: &FunctionSpec,
    template: &Scenario,
    strategy: Strategy,
    cfg: &VerifyConfig,
) -> Result<SharpnessResult> {
    template.validate_for(theorem)?;
    let eps = 1e-6 * (template.b - template.a);
    let (lo, hi) = (template.a + eps, template.b - eps);
    let mut probe = Probe {
        theorem,
        f,
        template: *template,
        cfg: VerifyConfig { audit: false, ..*cfg },
        evaluations: 0,
        degenerate: false,
    };

    let n = match strategy {
        Strategy::Grid(n) => n,
        Strategy::Golden(tol) => {
            if !(tol > 0.0) {
                return Err(Error::domain("golden-section tolerance must be positive"));
            }
            COARSE_POINTS
        }
    };
    if n < 2 {
        return Err(Error::domain("sharpness grid needs at least 2 points"));
    }
    let mut best_i = 0;
    let mut best = 0.0;
    for i in 0..n {
        let r = probe.ratio(grid_point(lo, hi, i, n))?;
        if i == 0 || better(r, best) {
            best = r;
            best_i = i;
        }
    }
    let coarse_x = grid_point(lo, hi, best_i, n);
    let coarse_ratio = best;
    let (mut x_star, mut ratio) = (coarse_x, coarse_ratio);

    if let Strategy::Golden(tol) = strategy {
        let mut left = grid_point(lo, hi, best_i.saturating_sub(1), n);
        let mut right = grid_point(lo, hi, (best_i + 1).min(n - 1), n);
        let mut c = right - GOLDEN * (right - left);
        let mut d = left + GOLDEN * (right - left);
        let mut fc = probe.ratio(c)?;
        let mut fd = probe.ratio(d)?;
        let width = tol * (template.b - template.a);
        while right - left > width && probe.evaluations < 10_000 {
            if fc >= fd {
                right = d;
                d = c;
                fd = fc;
                c = right - GOLDEN * (right - left);
                fc = probe.ratio(c)?;
            } else {
                left = c;
                c = d;
                fc = fd;
                d = left + GOLDEN * (right - left);
                fd = probe.ratio(d)?;
            }
        }
        let (xr, r) = if fc >= fd { (c, fc) } else { (d, fd) };
        if better(r, ratio) {
            x_star = xr;
            ratio = r;
        }
    }

    let audit = verify(theorem, f, &Scenario { x: x_star, ..*template }, cfg)?;
    Ok(SharpnessResult {
        theorem,
        function: f.label(),
        scenario_template: *template,
        strategy,
        x_star,
        ratio,
        coarse_x,
        coarse_ratio,
        evaluations: probe.evaluations,
        degenerate: probe.degenerate,
        audit_passed: audit.audit_passed(),
    })
}
