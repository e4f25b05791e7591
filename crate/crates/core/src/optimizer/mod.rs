//! Dense LP/QP kernel used by the geometric operations.

mod lp;
mod meb;
mod qp;
mod simplex;

pub use lp::{
    lp_solve, lp_solve_with, maximize_over_halfspaces, LinearProgram, LpSolution, LpStatus, Sense,
};
pub use meb::{min_enclosing_ball, Ball};
pub use qp::{
    min_norm_point, nearest_in_hull, nearest_point_qp, nearest_point_qp_with, wolfe, MinNorm,
    QpSolution,
};
pub use simplex::{solve_standard, StdSolution, StdStatus};
