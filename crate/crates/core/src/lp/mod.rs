//! Linear programming: a dense equational-form simplex solver with basic
//! feasible solution output, the relaxed-radius LPs built on it, and the
//! rounding of fractional centers.

mod relaxed;
mod solver;

pub use relaxed::{
    relaxed_radius, relaxed_radius_by_weights, relaxed_radius_lp, round_center, FractionalCenter,
    VERTEX_TOL,
};
pub use solver::{
    complementary_slackness_residual, solve, LpProblem, LpSolution, LpStatus, VALUE_TOL,
};
