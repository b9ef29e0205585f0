use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::{BinaryOp, Expr, UnaryOp};
use crate::math;

/// A value and its derivative with respect to `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualValue {
    pub primal: f64,
    pub tangent: f64,
}

impl DualValue {
    pub const fn constant(v: f64) -> Self {
        DualValue { primal: v, tangent: 0.0 }
    }

    pub const fn variable(v: f64) -> Self {
        DualValue { primal: v, tangent: 1.0 }
    }

    /// Applies a scalar function with derivative `d` at the primal.
    fn chain(self, value: f64, d: f64) -> Self {
        // a zero tangent stays zero even when d is infinite
        let tangent = if self.tangent == 0.0 { 0.0 } else { d * self.tangent };
        DualValue { primal: value, tangent }
    }

    pub fn exp(self) -> Self {
        let v = math::exp(self.primal);
        self.chain(v, v)
    }

    pub fn ln(self) -> Self {
        self.chain(math::ln(self.primal), 1.0 / self.primal)
    }

    pub fn sin(self) -> Self {
        self.chain(math::sin(self.primal), math::cos(self.primal))
    }

    pub fn cos(self) -> Self {
        self.chain(math::cos(self.primal), -math::sin(self.primal))
    }

    pub fn sqrt(self) -> Self {
        let r = math::sqrt(self.primal);
        self.chain(r, 0.5 / r)
    }

    pub fn abs(self) -> Self {
        let s = if self.primal < 0.0 { -1.0 } else { 1.0 };
        DualValue { primal: math::abs(self.primal), tangent: s * self.tangent }
    }

    pub fn powf(self, c: f64) -> Self {
        self.chain(math::powf(self.primal, c), c * math::powf(self.primal, c - 1.0))
    }

    /// b^e = exp(e ln b); requires b > 0.
    pub fn pow(self, e: DualValue) -> Self {
        let v = math::powf(self.primal, e.primal);
        let lb = math::ln(self.primal);
        let mut tangent = 0.0;
        if e.tangent != 0.0 {
            tangent += e.tangent * lb;
        }
        if self.tangent != 0.0 {
            tangent += e.primal * self.tangent / self.primal;
        }
        DualValue { primal: v, tangent: v * tangent }
    }

    fn is_finite(self) -> bool {
        self.primal.is_finite() && self.tangent.is_finite()
    }
}

impl Add for DualValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DualValue { primal: self.primal + o.primal, tangent: self.tangent + o.tangent }
    }
}

impl Sub for DualValue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        DualValue { primal: self.primal - o.primal, tangent: self.tangent - o.tangent }
    }
}

impl Mul for DualValue {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        DualValue {
            primal: self.primal * o.primal,
            tangent: self.tangent * o.primal + self.primal * o.tangent,
        }
    }
}

impl Div for DualValue {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = 1.0 / o.primal;
        DualValue {
            primal: self.primal * inv,
            tangent: (self.tangent - self.primal * inv * o.tangent) * inv,
        }
    }
}

impl Neg for DualValue {
    type Output = Self;
    fn neg(self) -> Self {
        DualValue { primal: -self.primal, tangent: -self.tangent }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    /// Argument outside the function's domain (ln of a non-positive value, ...).
    Domain,
    DivisionByZero,
    /// The expression has no derivative at this point (abs at 0, sqrt at 0, ...).
    NonDifferentiable,
    /// Overflow or another non-finite intermediate.
    NonFinite,
}

/// Evaluation failure: the offending sub-expression and the point `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub node: String,
    pub x: f64,
    pub kind: EvalErrorKind,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            EvalErrorKind::Domain => "argument outside domain",
            EvalErrorKind::DivisionByZero => "division by zero",
            EvalErrorKind::NonDifferentiable => "not differentiable",
            EvalErrorKind::NonFinite => "non-finite value",
        };
        write!(f, "evaluation error in '{}' at x = {}: {what}", self.node, self.x)
    }
}

impl core::error::Error for EvalError {}

/// Evaluates `expr` and its exact derivative at `x`.
pub fn eval_dual(expr: &Expr, x: f64) -> Result<DualValue, EvalError> {
    let fail = |node: &Expr, kind| EvalError { node: node.to_string(), x, kind };
    let out = match expr {
        Expr::Const(c) => DualValue::constant(*c),
        Expr::Var => DualValue::variable(x),
        Expr::Unary(op, arg) => {
            let u = eval_dual(arg, x)?;
            match op {
                UnaryOp::Neg => -u,
                UnaryOp::Exp => u.exp(),
                UnaryOp::Sin => u.sin(),
                UnaryOp::Cos => u.cos(),
                UnaryOp::Ln => {
                    if !(u.primal > 0.0) {
                        return Err(fail(expr, EvalErrorKind::Domain));
                    }
                    u.ln()
                }
                UnaryOp::Sqrt => {
                    if u.primal < 0.0 {
                        return Err(fail(expr, EvalErrorKind::Domain));
                    }
                    if u.primal == 0.0 && u.tangent != 0.0 {
                        return Err(fail(expr, EvalErrorKind::NonDifferentiable));
                    }
                    u.sqrt()
                }
                UnaryOp::Abs => {
                    if u.primal == 0.0 && u.tangent != 0.0 {
                        return Err(fail(expr, EvalErrorKind::NonDifferentiable));
                    }
                    u.abs()
                }
            }
        }
        Expr::Binary(op, l, r) => {
            let a = eval_dual(l, x)?;
            let b = eval_dual(r, x)?;
            match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div => {
                    if b.primal == 0.0 {
                        return Err(fail(expr, EvalErrorKind::DivisionByZero));
                    }
                    a / b
                }
                BinaryOp::Pow => {
                    if r.is_constant() {
                        let c = b.primal;
                        let integral = c == math::floor(c);
                        if a.primal < 0.0 && !integral {
                            return Err(fail(expr, EvalErrorKind::Domain));
                        }
                        if a.primal == 0.0 {
                            if c < 0.0 {
                                return Err(fail(expr, EvalErrorKind::DivisionByZero));
                            }
                            if c < 1.0 && c != 0.0 && a.tangent != 0.0 {
                                return Err(fail(expr, EvalErrorKind::NonDifferentiable));
                            }
                        }
                        if c == 0.0 {
                            DualValue::constant(1.0)
                        } else {
                            a.powf(c)
                        }
                    } else {
                        if !(a.primal > 0.0) {
                            return Err(fail(expr, EvalErrorKind::Domain));
                        }
                        a.pow(b)
                    }
                }
            }
        }
    };
    if !out.is_finite() {
        return Err(fail(expr, EvalErrorKind::NonFinite));
    }
    Ok(out)
}
