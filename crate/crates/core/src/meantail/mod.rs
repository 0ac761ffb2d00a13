//! Mean-tail functions `P(X <= E[X])`, their floor-breakpoint pieces and
//! per-piece infima, and global-infimum reports.

pub mod chvatal;
pub mod geometric;
pub mod pascal;
pub mod pieces;
pub mod poisson;

pub use chvatal::{chvatal_argmin, chvatal_q, nearest_to_two_thirds, ChvatalProfile};
pub use geometric::{geometric_a, geometric_f};
pub use pascal::{
    a2_closed, a3_closed, b2, b3, excess_over_first_piece, geometric_a_increasing_violation, pascal_a,
    pascal_a_via_binomial, pascal_claimed_infimum, pascal_f, pascal_g, sweep_pascal_minimum, MinimumSweep,
};
pub use pieces::{
    global_infimum, mean_tail, piece_decompose, piece_index_of, piece_interval, Approach, Claim, Family,
    InfimumReport, ParamInterval, PieceReport, Value, WitnessPoint, CLT_PROBE_LAMBDA,
};
pub use poisson::{poisson_mean_tail, poisson_piece_infimum};
