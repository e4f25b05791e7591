//! Convex bodies, selections and splitting solvers for convex set-valued maps.

pub mod body;
pub mod demos;
pub mod error;
pub mod geometry;
pub mod io;
pub mod optimizer;
pub mod pset;
pub mod selection;
pub mod set_valued;
pub mod splitting;
pub mod tol;

pub use body::{ConvexBody, Estimate, HPolytope};
pub use error::{Error, Result};
pub use geometry::{vector, AffineSubspace, LinearSurjection, Matrix, Vector};
pub use tol::Tolerances;
