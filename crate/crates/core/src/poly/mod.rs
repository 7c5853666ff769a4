//! Exact multivariate polynomial and rational-function arithmetic over the
//! integers.

mod gcd;
mod laurent;
mod monomial;
mod polynomial;
mod rational;
mod text;

pub use gcd::{gcd, lcm};
pub use laurent::LaurentForm;
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use rational::{monomial_function, RationalFunction};
pub use text::Universe;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("evaluation point has {found} coordinates, expected {expected}")]
    PointArity { expected: usize, found: usize },
    #[error("not a Laurent polynomial: denominator has {} terms", denominator.num_terms())]
    NotLaurent { denominator: Polynomial },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid or duplicate variable name `{0}`")]
    BadVariableName(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
