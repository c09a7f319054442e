//! Exact arithmetic: rationals, sparse multivariate polynomials, reduced
//! rational functions, factored rational functions and polynomial matrices.

pub mod factored;
pub mod laurent;
pub mod gcd;
pub mod matrix;
pub mod modular;
pub mod monomial;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use factored::{FactorBasis, FactoredRat};
pub use laurent::LaurentPoly;
pub use gcd::{coprime, gcd_many, poly_gcd, poly_lcm};
pub use matrix::{normalize_vector, nullspace, PolyMatrix};
pub use monomial::{LaurentMono, Monomial, MAX_VARS};
pub use poly::MultiPoly;
pub use ratfunc::{rat_reduce, RatFunc};
pub use rational::{parse_rational, rat, rat2, Rational};
