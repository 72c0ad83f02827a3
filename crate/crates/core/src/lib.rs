//! Extremal bandlimited approximations of f_a(x) = (x²−a²)/(x²+a²)², the
//! Guinand–Weil explicit formula, and explicit bounds for the log-derivative
//! of the Riemann zeta function.

// Comparisons are written as !(x > y) on purpose so that NaN fails them;
// quadrature tables keep their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod exec;
pub mod explicit_formula;
pub mod extremal;
pub mod interp;
pub mod jet;
pub mod quad;
pub mod special;
pub mod zero_sums;

pub use error::{Error, Result};
pub use exec::Execution;
