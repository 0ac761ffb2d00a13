//! Exact rationals, certified enclosures, and adaptive sign decisions.

pub mod certified;
pub mod elementary;
pub mod integer;
pub mod rational;
pub mod sign;

pub use certified::{CertifiedReal, DEFAULT_MAX_PRECISION_BITS, DEFAULT_PRECISION_BITS};
pub use elementary::{exp_enclosure, ln2_enclosure, ln_ratio_enclosure};
pub use integer::{binom_coeff, SelfPowers};
pub use rational::{ratio, Rational};
pub use sign::{decide_sign, decide_sign_from, sign_of, Sign};
