pub mod algebra;
pub mod celine;
pub mod error;
pub mod qterm;
pub mod render;
pub mod structset;
pub mod sumrec;

pub use error::{Error, Result};
