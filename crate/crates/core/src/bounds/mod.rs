//! Ostrowski-type bounds for fractional integrals.
//!
//! Left-hand sides come from the Montgomery-type identity in
//! [`lemma1_lhs`] / [`lemma1_rhs`]; right-hand sides from the evaluators in
//! [`rhs`]; [`verify`] ties both to a hypothesis audit.

mod constants;
mod lemma;
pub mod rhs;
mod verify;

use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

pub use constants::{holder_factor, k1, k1_exact, k2, k2_exact, k3, k4, SERIES_THRESHOLD};
pub use lemma::{classical_lhs, lemma1_abs_rhs, lemma1_lhs, lemma1_rhs, Estimate, SignConvention};
pub use verify::{verify, AuditItem, BoundReport, ConstantMode, VerifyConfig};

/// The inequalities this crate can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum TheoremId {
    /// Classical Ostrowski inequality.
    Classical,
    /// (α,m)-log-convex |f′|, constant K1.
    T1,
    /// T1 with α = 1.
    C1,
    /// T1 with α = m = 1.
    C2,
    /// C2 with μ = 1.
    C3,
    /// (α,m)-log-convex |f′|^q, Hölder split, constant K2.
    T2,
    /// T2 with α = m = 1.
    C4,
    /// T2 with μ = 1, constant K3.
    C5,
    /// C5 with p = 1, constant K4.
    C6,
}

/// Which proof route a theorem belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFamily {
    Classical,
    /// Bounds on |f′| via cd ≤ (c² + d²)/2.
    Young,
    /// Bounds on |f′|^q via Hölder's inequality.
    Holder,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Classical,
        TheoremId::T1,
        TheoremId::C1,
        TheoremId::C2,
        TheoremId::C3,
        TheoremId::T2,
        TheoremId::C4,
        TheoremId::C5,
        TheoremId::C6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Classical => "classical",
            TheoremId::T1 => "t1",
            TheoremId::C1 => "c1",
            TheoremId::C2 => "c2",
            TheoremId::C3 => "c3",
            TheoremId::T2 => "t2",
            TheoremId::C4 => "c4",
            TheoremId::C5 => "c5",
            TheoremId::C6 => "c6",
        }
    }

    pub fn family(self) -> BoundFamily {
        match self {
            TheoremId::Classical => BoundFamily::Classical,
            TheoremId::T1 | TheoremId::C1 | TheoremId::C2 | TheoremId::C3 => BoundFamily::Young,
            TheoremId::T2 | TheoremId::C4 | TheoremId::C5 | TheoremId::C6 => BoundFamily::Holder,
        }
    }

    /// True when the left side is |f(x) − mean of f| rather than the fractional form.
    pub fn classical_lhs(self) -> bool {
        matches!(self, TheoremId::Classical | TheoremId::C3 | TheoremId::C5 | TheoremId::C6)
    }

    /// Overrides the parameters the inequality fixes.
    pub fn pin(self, s: &Scenario) -> Scenario {
        let mut s = *s;
        match self {
            TheoremId::Classical => s.mu = 1.0,
            TheoremId::T1 | TheoremId::T2 => {}
            TheoremId::C1 => s.alpha = 1.0,
            TheoremId::C2 | TheoremId::C4 => {
                s.alpha = 1.0;
                s.m = 1.0;
            }
            TheoremId::C3 => {
                s.alpha = 1.0;
                s.m = 1.0;
                s.mu = 1.0;
            }
            TheoremId::C5 => s.mu = 1.0,
            TheoremId::C6 => {
                s.mu = 1.0;
                s.p = 1.0;
            }
        }
        s
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown theorem id '{s}'")))
    }
}

/// One instance of an inequality: interval, point and every parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Scenario {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub mu: f64,
    pub alpha: f64,
    pub m: f64,
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub big_m: f64,
    pub p: f64,
    pub q: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario { a: 0.0, b: 1.0, x: 0.5, mu: 1.0, alpha: 1.0, m: 1.0, big_m: 1.0, p: 1.0, q: 2.0 }
    }
}

impl Scenario {
    /// Checks the geometry: 0 ≤ a < b and x in [a, b].
    pub fn validate_interval(&self) -> Result<()> {
        let all = [self.a, self.b, self.x, self.mu, self.alpha, self.m, self.big_m, self.p, self.q];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("scenario parameters must be finite"));
        }
        if !(self.a >= 0.0) {
            return Err(Error::domain(format!("a = {} must be >= 0", self.a)));
        }
        if !(self.b > self.a) {
            return Err(Error::domain(format!("need a < b, got a = {}, b = {}", self.a, self.b)));
        }
        if !(self.x >= self.a && self.x <= self.b) {
            return Err(Error::domain(format!("x = {} must lie in [a, b] = [{}, {}]", self.x, self.a, self.b)));
        }
        Ok(())
    }

    /// Checks every invariant the given inequality relies on except M ≤ 1,
    /// which is part of the hypothesis audit.
    pub fn validate_for(&self, theorem: TheoremId) -> Result<()> {
        self.validate_interval()?;
        if !(self.big_m > 0.0) {
            return Err(Error::domain(format!("M = {} must be positive", self.big_m)));
        }
        if theorem == TheoremId::Classical {
            return Ok(());
        }
        if !(self.mu > 0.0) {
            return Err(Error::domain(format!("mu = {} must be positive", self.mu)));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::domain(format!("alpha = {} must lie in (0,1]", self.alpha)));
        }
        if !(self.m > 0.0 && self.m <= 1.0) {
            return Err(Error::domain(format!("m = {} must lie in (0,1]", self.m)));
        }
        if theorem.family() == BoundFamily::Holder {
            if !(self.q > 1.0) {
                return Err(Error::domain(format!("q = {} must exceed 1", self.q)));
            }
            if !(self.p >= 0.0 && self.p <= self.q) {
                return Err(Error::domain(format!("p = {} must lie in [0, q] = [0, {}]", self.p, self.q)));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_m_domain(big_m: f64) -> Result<()> {
    if big_m > 0.0 && big_m <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("M must lie in (0,1], got {big_m}")))
    }
}
