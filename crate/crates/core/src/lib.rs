//! Riemann–Liouville fractional integrals and Ostrowski-type bounds.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every numerical
//! piece of the verifier: special functions, adaptive quadrature, the
//! fractional integral operators, a small expression language with exact
//! derivatives, convexity-class membership checks, the bound evaluators and
//! the sweep / sharpness machinery. IO, report formats and the command line
//! live in the `frac-ostrowski` crate.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod math;

pub mod bounds;
pub mod convexity;
pub mod error;
pub mod exprlang;
pub mod fracint;
pub mod funclib;
pub mod harness;
pub mod quadrature;
pub mod specfun;

pub use bounds::{BoundReport, Scenario, SignConvention, TheoremId, VerifyConfig};
pub use error::{Error, Result};
pub use funclib::{BuiltinFamily, FunctionSpec, Source};
pub use quadrature::{IntegralResult, QuadratureConfig};

/// A real function of one variable whose evaluation may fail.
///
/// Implemented for plain closures and for [`FunctionSpec`].
pub trait RealFn {
    fn eval(&self, t: f64) -> Result<f64>;
}

impl<F: Fn(f64) -> f64> RealFn for F {
    fn eval(&self, t: f64) -> Result<f64> {
        Ok(self(t))
    }
}
