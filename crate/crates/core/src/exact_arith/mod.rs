//! Exact arithmetic: Gaussian rationals, bivariate polynomials over them and
//! canonical rational functions.

mod gauss;
pub(crate) mod gcd;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use gauss::GaussRat;
pub use poly::{Mono, Poly2, VarPair};
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid base variable name `{0}`")]
    InvalidVariable(String),
    #[error("index out of range")]
    IndexOutOfRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field operation on canonical rational functions.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc, ArithError> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.checked_div(b)?,
    })
}
