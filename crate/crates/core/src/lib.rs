//! Ternary (3-Lie) brackets on the algebra `A` spanned by `L_r`, `M_r`,
//! their Nambu realizations, inner derivations and structure analysis.

pub mod algebra;
pub mod analysis;
pub mod brackets;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod nambu;
pub mod operators;
pub mod poly;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod window;

#[cfg(test)]
mod testing;

pub use algebra::{Basis, Element, Family, FunctionalSpec};
pub use brackets::{LieBracketSpec, TriBracketSpec};
pub use error::Error;
pub use rational::Rational;
pub use report::{Status, VerdictReport};
pub use window::Window;
