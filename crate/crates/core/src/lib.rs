//! Exact mean-tail probabilities `P(X <= E[X])` for the binomial, Poisson,
//! geometric and Pascal families, their floor-breakpoint piece structure and
//! infima, and mechanical checks of the inequalities behind them.

pub mod distributions;
pub mod error;
pub mod meantail;
pub mod numerics;
mod par;
pub mod verification;

pub use error::{Error, Result};
pub use numerics::{CertifiedReal, Rational, Sign};
