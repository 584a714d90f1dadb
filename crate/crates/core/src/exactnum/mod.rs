//! Exact arithmetic over ℚ and ℚ(i).

mod gaussian;
mod rational;
mod surd;

pub use gaussian::GaussianRational;
pub use rational::{as_nonneg_int, Rational};
pub use surd::Surd;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed number literal `{0}`")]
    Malformed(String),
}
