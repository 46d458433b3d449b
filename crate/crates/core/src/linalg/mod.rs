//! Exact linear algebra and linear feasibility.

mod feasibility;
mod fourier_motzkin;
mod matrix;

pub use feasibility::{
    maximize_coordinate, maximize_coordinate_with_point, optimize, solve_feasibility,
    FeasibilityError, FeasibilityOutcome, FeasibilityProblem, OptimizeOutcome, SignConstraint,
};
pub use fourier_motzkin::{fm_oracle, FM_VARIABLE_LIMIT};
pub use matrix::{rank_of, RationalMatrix};
