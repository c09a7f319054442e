//! Symbolic q-hypergeometric summands: symbols, linear and quadratic forms,
//! factors, rational tails, shift quotients and exact evaluation.

pub mod eval;
pub mod linform;
pub mod parse;
pub mod quotient;
pub mod summand;
pub mod vars;

pub use linform::LinForm;
pub use parse::{parse_substitution, parse_summand, SummandDoc};
pub use quotient::factored_equal;
pub use summand::{Factor, QuadForm, QuadPart, Summand, Tail, TailCoef, TailOp};
pub use vars::{SymbolClass, VarTable};
