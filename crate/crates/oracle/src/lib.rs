//! Brute-force exact evaluation of the bounded q-series in the triple
//! bounded key identity and its relatives, and grid comparison of both sides
//! of each identity. Independent of the symbolic engine.

pub mod grid;
pub mod poly;
pub mod qbin;
pub mod stabilize;
pub mod sums;

pub use grid::{verify_grid, Counterexample, GridReport, GridSpec, Identity, Status};
pub use poly::{BiLaurent, QPoly};
pub use qbin::{q_bin, q_multinomial, tri};
pub use stabilize::{key_identity_truncation, stabilization_check};
pub use sums::{
    boundary_closed_form, eq52_closed_form, euler_left, euler_sides, g_poly, jacobi_left, jacobi_sides,
    p_poly, rhs_double, rhs_single,
};
