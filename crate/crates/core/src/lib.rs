//! Cubic trigonometric B-spline collocation for the viscous Burgers equation
//! `U_t + U U_x - lambda U_xx = 0` with Crank-Nicolson time stepping.
//!
//! * [`basis`]: the spline basis, its derivatives and knot coefficients
//! * [`scheme`]: initial interpolation, per-step assembly and time marching
//! * [`linalg`]: tridiagonal and pentadiagonal direct solvers
//! * [`exact`]: Cole-Hopf series and travelling-wave reference solutions
//! * [`metrics`]: error norms and comparison tables
//! * [`cli`]: configuration, runs and benchmark reproduction

// `!(x > 0.0)` style checks also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod cli;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod metrics;
pub mod reference;
pub mod scheme;

pub use error::{Error, Result};
