//! IO for the fractional Ostrowski verifier: the sweep config format,
//! report documents (JSON, CSV, text) and a parallel sweep driver.

pub mod config;
pub mod parallel;
pub mod report;

pub use frac_ostrowski_core as core;
