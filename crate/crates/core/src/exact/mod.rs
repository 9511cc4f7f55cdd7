//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! polynomial matrices and fraction-free determinants.

mod context;
mod error;
mod matrix;
mod monomial;
mod parse;
mod poly;
pub mod rational;

pub use context::{is_identifier, VarContext};
pub use error::{ExactError, Result};
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_poly_infer};
pub use poly::Poly;
pub use rational::Rational;
