//! Exact computer algebra for q-series.
//!
//! The crate is layered bottom-up:
//!
//! - [`rational`] and [`polyring`]: exact rationals and sparse Laurent polynomials.
//! - [`qkernel`]: q-shifted factorials, Gaussian binomials, Cauchy-type and Hahn polynomials.
//! - [`qoperators`]: `D_q`, `θ_xy`, `θ_x` and the exponential operator series built on them.
//! - [`tseries`]: truncated power series with numeric `q`, plus basic hypergeometric builders.
//! - [`verifier`]: the identity registry, sampling engine and JSON reports.
//! - [`expr`]: the expression parser used by the command line.

pub mod expr;
pub mod polyring;
pub mod qkernel;
pub mod qoperators;
pub mod rational;
pub mod tseries;
pub mod verifier;

pub use polyring::{MultiPoly, Symbol};
pub use rational::ExactRational;
