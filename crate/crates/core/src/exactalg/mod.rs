//! Exact arithmetic: rationals, dense rational matrices with fraction-free
//! elimination, and homogeneous polynomials in `x, y, z`.

pub mod matrix;
pub mod poly;
pub mod rat;

pub use matrix::{determinant, nullspace, rank, rank_int, rref, QMatrix};
pub use poly::{grid_len, monomial_basis, unisolvent_grid, Monomial, PlanePoly};
pub use rat::{parse_rat, rat, Rat};
