//! The sweep config file: flat `key = value` lines.
//!
//! `#` starts a comment. Grid keys (`a`, `b`, `x`, `x_frac`, `mu`, `alpha`,
//! `m`, `M`, `p`, `q`) collect values across repeated lines and
//! comma-separated lists, or take a single generator `linspace(lo, hi, n)`
//! or `uniform(lo, hi, n)`. `p` entries may also be `q`, `q/k` or `k*q`.
//! `function` repeats, one descriptor per line. Everything else is a scalar
//! set at most once. See the README for the full key list.

use std::collections::BTreeMap;
use std::fmt;

use frac_ostrowski_core::bounds::ConstantMode;
use frac_ostrowski_core::convexity::Grid;
use frac_ostrowski_core::harness::{ParamGrid, PValue, SweepSpec, XGrid};
use frac_ostrowski_core::TheoremId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line, message: message.into() })
}

const GRID_KEYS: [&str; 10] = ["a", "b", "x", "x_frac", "mu", "alpha", "m", "M", "p", "q"];
const SCALAR_KEYS: [&str; 11] = [
    "theorem",
    "seed",
    "rel_tol",
    "abs_tol",
    "max_depth",
    "points_per_panel",
    "verdict_tol",
    "membership_grid",
    "membership_tol",
    "sup_grid",
    "exact_constants",
];

#[derive(Default)]
struct Entries {
    grids: BTreeMap<&'static str, Vec<(usize, String)>>,
    scalars: BTreeMap<&'static str, (usize, String)>,
    functions: Vec<String>,
}

fn lex(text: &str) -> Result<Entries, ConfigError> {
    let mut e = Entries::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return err(line, format!("expected key = value, got '{content}'"));
        };
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return err(line, format!("key '{key}' has no value"));
        }
        if key == "function" {
            e.functions.push(value.to_string());
        } else if let Some(k) = GRID_KEYS.iter().find(|k| **k == key) {
            e.grids.entry(k).or_default().push((line, value.to_string()));
        } else if let Some(k) = SCALAR_KEYS.iter().find(|k| **k == key) {
            if e.scalars.insert(k, (line, value.to_string())).is_some() {
                return err(line, format!("key '{key}' given twice"));
            }
        } else {
            return err(line, format!("unknown key '{key}'"));
        }
    }
    Ok(e)
}

fn number(line: usize, text: &str) -> Result<f64, ConfigError> {
    match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(line, format!("'{}' is not a finite number", text.trim())),
    }
}

fn generator(line: usize, text: &str) -> Result<Option<ParamGrid>, ConfigError> {
    let text = text.trim();
    let (name, rest) = match text.split_once('(') {
        Some((n, r)) if n.trim() == "linspace" || n.trim() == "uniform" => (n.trim(), r),
        _ => return Ok(None),
    };
    let Some(args) = rest.strip_suffix(')') else {
        return err(line, format!("missing ')' in '{text}'"));
    };
    let parts: Vec<&str> = args.split(',').collect();
    if parts.len() != 3 {
        return err(line, format!("{name} takes (lo, hi, n)"));
    }
    let lo = number(line, parts[0])?;
    let hi = number(line, parts[1])?;
    let Ok(n) = parts[2].trim().parse::<usize>() else {
        return err(line, format!("'{}' is not a point count", parts[2].trim()));
    };
    if lo > hi {
        return err(line, format!("{name} needs lo <= hi"));
    }
    Ok(Some(if name == "linspace" {
        ParamGrid::Linspace { lo, hi, n }
    } else {
        ParamGrid::Uniform { lo, hi, n }
    }))
}

fn grid(key: &str, lines: &[(usize, String)]) -> Result<ParamGrid, ConfigError> {
    if let [(line, text)] = lines {
        if let Some(g) = generator(*line, text)? {
            return Ok(g);
        }
    }
    let mut values = Vec::new();
    for (line, text) in lines {
        if generator(*line, text)?.is_some() {
            return err(*line, format!("a generator for '{key}' cannot be mixed with other values"));
        }
        for item in text.split(',') {
            values.push(number(*line, item)?);
        }
    }
    Ok(ParamGrid::Values(values))
}

fn p_value(line: usize, text: &str) -> Result<PValue, ConfigError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "q" {
        return Ok(PValue::TimesQ(1.0));
    }
    if let Some(d) = t.strip_prefix("q/") {
        let d = number(line, d)?;
        if d == 0.0 {
            return err(line, "p = q/0");
        }
        return Ok(PValue::TimesQ(1.0 / d));
    }
    if let Some(c) = t.strip_suffix("*q") {
        return Ok(PValue::TimesQ(number(line, c)?));
    }
    Ok(PValue::Absolute(number(line, &t)?))
}

fn scalar<T: std::str::FromStr>(e: &Entries, key: &str) -> Result<Option<T>, ConfigError> {
    match e.scalars.get(key) {
        None => Ok(None),
        Some((line, v)) => v
            .parse::<T>()
            .map(Some)
            .map_err(|_| ConfigError { line: *line, message: format!("invalid value '{v}' for '{key}'") }),
    }
}

/// Parses a config file into a sweep spec. Unset keys keep the defaults of
/// [`SweepSpec::new`].
pub fn parse_config(text: &str) -> Result<SweepSpec, ConfigError> {
    let e = lex(text)?;
    let Some((tline, tname)) = e.scalars.get("theorem") else {
        return err(0, "missing 'theorem'");
    };
    let theorem: TheoremId = tname
        .parse()
        .map_err(|_| ConfigError { line: *tline, message: format!("unknown theorem '{tname}'") })?;
    let mut spec = SweepSpec::new(theorem, e.functions.clone());

    for (key, lines) in &e.grids {
        match *key {
            "a" => spec.a = grid(key, lines)?,
            "b" => spec.b = grid(key, lines)?,
            "mu" => spec.mu = grid(key, lines)?,
            "alpha" => spec.alpha = grid(key, lines)?,
            "m" => spec.m = grid(key, lines)?,
            "M" => spec.big_m = grid(key, lines)?,
            "q" => spec.q = grid(key, lines)?,
            "x" | "x_frac" => {
                if e.grids.contains_key("x") && e.grids.contains_key("x_frac") {
                    return err(lines[0].0, "give either 'x' or 'x_frac', not both");
                }
                let g = grid(key, lines)?;
                spec.x = if *key == "x" { XGrid::Absolute(g) } else { XGrid::Fraction(g) };
            }
            "p" => {
                let mut ps = Vec::new();
                for (line, text) in lines {
                    for item in text.split(',') {
                        ps.push(p_value(*line, item)?);
                    }
                }
                spec.p = ps;
            }
            _ => unreachable!(),
        }
    }

    if let Some(seed) = scalar(&e, "seed")? {
        spec.seed = seed;
    }
    let v = &mut spec.verify;
    if let Some(x) = scalar(&e, "rel_tol")? {
        v.quadrature.rel_tol = x;
    }
    if let Some(x) = scalar(&e, "abs_tol")? {
        v.quadrature.abs_tol = x;
    }
    if let Some(x) = scalar(&e, "max_depth")? {
        v.quadrature.max_depth = x;
    }
    if let Some(x) = scalar(&e, "points_per_panel")? {
        v.quadrature.points_per_panel = x;
    }
    if let Some(x) = scalar(&e, "verdict_tol")? {
        v.verdict_tol = x;
    }
    if let Some(n) = scalar::<usize>(&e, "membership_grid")? {
        v.membership_grid = Grid::cube(n);
    }
    if let Some(x) = scalar(&e, "membership_tol")? {
        v.membership_tol = x;
    }
    if let Some(x) = scalar(&e, "sup_grid")? {
        v.sup_grid = x;
    }
    if let Some(x) = scalar::<bool>(&e, "exact_constants")? {
        v.constants = if x { ConstantMode::ExactIntegral } else { ConstantMode::Closed };
    }
    v.quadrature.validate().map_err(|e| ConfigError { line: 0, message: e.to_string() })?;
    Ok(spec)
}
