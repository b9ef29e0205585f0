//! Reproducible numeric demonstrations of formulas that do not hold.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::{lemma1_lhs, lemma1_rhs, rhs, Scenario, SignConvention};
use crate::convexity::{check_alpha_m_log_convex, Grid, DEFAULT_TOL};
use crate::error::Result;
use crate::funclib::{make_spec, BuiltinFamily, Source};
use crate::math;
use crate::quadrature::{integrate, QuadratureConfig};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Finding {
    pub id: String,
    pub summary: String,
    pub inputs: Vec<(String, f64)>,
    pub values: Vec<(String, f64)>,
}

fn named(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn lemma_sign(cfg: &QuadratureConfig) -> Result<Finding> {
    let f = make_spec(Source::parse_expr("x^2")?, (0.0, 1.0))?;
    let s = Scenario { a: 0.0, b: 1.0, x: 0.5, mu: 1.0, ..Scenario::default() };
    let lhs = lemma1_lhs(&f, &s, cfg)?.value;
    let plus = lemma1_rhs(&f, &s, SignConvention::PaperPlus, cfg)?.value;
    let minus = lemma1_rhs(&f, &s, SignConvention::CorrectedMinus, cfg)?.value;
    Ok(Finding {
        id: "lemma_sign".into(),
        summary: "f(t) = t^2: the identity holds with a minus sign on its second term, not a plus".into(),
        inputs: named(&[("a", s.a), ("b", s.b), ("x", s.x), ("mu", s.mu)]),
        values: named(&[("lhs", lhs), ("rhs_paper_plus", plus), ("rhs_corrected_minus", minus)]),
    })
}

fn corollary4() -> Result<Finding> {
    let s = Scenario { a: 0.0, b: 1.0, x: 0.3, mu: 0.5, alpha: 1.0, m: 1.0, big_m: 0.5, p: 1.0, q: 2.0 };
    let exact = rhs::rhs_corollary4(&s)?;
    let printed = rhs::printed_corollary4(&s)?;
    let parent = rhs::rhs_theorem2(&s)?;
    Ok(Finding {
        id: "corollary4_printed".into(),
        summary: "alpha = m = 1 in the Hoelder bound keeps a factor M^(1/q) and the (mu+1) powers; the alternative form drops both"
            .into(),
        inputs: named(&[("a", s.a), ("b", s.b), ("x", s.x), ("mu", s.mu), ("M", s.big_m), ("p", s.p), ("q", s.q)]),
        values: named(&[("printed", printed), ("exact", exact), ("theorem2_pinned", parent)]),
    })
}

fn aa6_asymmetry(cfg: &QuadratureConfig) -> Result<Finding> {
    let (alpha, m, big_m, mu, p) = (0.5, 0.5, 0.5, 1.0, 1.0);
    let weight = |t: f64| math::powf(big_m, m + math::powf(t, alpha) * (1.0 - m));
    let symmetric = integrate(|t| math::powf(t, mu * p) * weight(t), 0.0, 1.0, cfg)?.value;
    let printed = integrate(|t| math::powf(t, mu * p) * math::powf(t, mu) * weight(t), 0.0, 1.0, cfg)?.value;
    Ok(Finding {
        id: "aa6_extra_factor".into(),
        summary: "the second Hoelder integral carries an extra t^mu; the symmetric integral without it is used".into(),
        inputs: named(&[("alpha", alpha), ("m", m), ("M", big_m), ("mu", mu), ("p", p)]),
        values: named(&[("symmetric", symmetric), ("with_extra_t_mu", printed)]),
    })
}

fn expdecay_class() -> Result<Finding> {
    let f = make_spec(Source::Builtin(BuiltinFamily::ExpDecayPrime { m_bound: 0.8, lambda: 1.0 }), (0.0, 2.0))?;
    let g = f.abs_derivative_pow(1.0);
    let r = check_alpha_m_log_convex(&g, 2.0, 0.5, 0.5, Grid::default(), DEFAULT_TOL)?;
    let w = r.witness.unwrap_or(crate::convexity::Witness { x: 0.0, y: 0.0, t: 0.0 });
    Ok(Finding {
        id: "expdecay_not_alpha_m_log_convex".into(),
        summary: "0.8 e^-x is not (alpha,m)-log-convex at alpha = m = 0.5 on [0, 2]: for log-linear g the t^alpha weight loses once x > m y".into(),
        inputs: named(&[("alpha", 0.5), ("m", 0.5), ("domain_end", 2.0)]),
        values: named(&[("worst_log_violation", r.worst_violation), ("witness_x", w.x), ("witness_y", w.y), ("witness_t", w.t)]),
    })
}

/// Every finding, or none when `enabled` is false.
pub fn discrepancy_log(enabled: bool, cfg: &QuadratureConfig) -> Result<Vec<Finding>> {
    if !enabled {
        return Ok(Vec::new());
    }
    Ok(vec![lemma_sign(cfg)?, corollary4()?, aa6_asymmetry(cfg)?, expdecay_class()?])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(f: &Finding, key: &str) -> f64 {
        f.values.iter().find(|(k, _)| k == key).unwrap().1
    }

    #[test]
    fn log_contents() {
        let log = discrepancy_log(true, &QuadratureConfig::default()).unwrap();
        assert_eq!(log.len(), 4);
        let sign = &log[0];
        assert!((value(sign, "lhs") + 1.0 / 12.0).abs() < 1e-12);
        assert!((value(sign, "rhs_corrected_minus") + 1.0 / 12.0).abs() < 1e-12);
        assert!((value(sign, "rhs_paper_plus") - 0.25).abs() < 1e-12);

        let c4 = &log[1];
        assert_eq!(value(c4, "exact"), value(c4, "theorem2_pinned"));
        assert!((value(c4, "printed") - value(c4, "exact")).abs() > 1e-3);

        let aa6 = &log[2];
        assert!(value(aa6, "with_extra_t_mu") < value(aa6, "symmetric"));
        assert!(value(&log[3], "worst_log_violation") > 1e-3);
    }

    #[test]
    fn gate() {
        assert!(discrepancy_log(false, &QuadratureConfig::default()).unwrap().is_empty());
    }
}
