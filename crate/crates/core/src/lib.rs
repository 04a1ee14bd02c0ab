//! Exact BSS register machines over the real algebraic numbers.

pub mod algebraic;
pub mod arith;
pub mod checks;
pub mod error;
pub mod machine;
pub mod poly;
pub mod problems;

pub use error::{Error, Result};
pub use poly::field::ExactField;
