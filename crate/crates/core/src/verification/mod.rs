//! Named checks producing [`VerificationReport`]s.

mod chvatal;
mod geometric;
mod grid;
mod pascal;
mod poisson;
mod probes;
mod report;

pub use chvatal::verify_chvatal;
pub use geometric::{verify_geometric, GEOMETRIC_SAMPLED_PIECES, GEOMETRIC_SAMPLES_PER_PIECE};
pub use grid::{ProbeGrid, Spacing};
pub use pascal::{
    identity_samples, probe_b_sequences, probe_gk_monotone, verify_closed_forms, verify_pascal_conjecture,
    verify_pascal_conjecture_many, verify_pascal_identity, IdentitySample, A3_4_ERRATUM,
};
pub use poisson::{
    verify_binomial_poisson_limit, verify_poisson_clt, verify_poisson_increasing, verify_poisson_lambda_monotone,
    Precision,
};
pub use probes::{
    h2, h3, probe_h2, probe_h3, probe_positivity_polynomials, quadratic_factor, quartic_factor, DEFAULT_BAND_FACTOR,
};
pub use report::{Counterexample, Status, VerificationReport};
