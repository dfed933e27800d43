//! Exact arithmetic in the single formal variable `q`.
//!
//! [`LaurentPoly`] holds finite Laurent polynomials with arbitrary-precision
//! integer coefficients; [`RationalFunctionQ`] is the canonical quotient of two
//! integer polynomials. Both are immutable values and can be shared freely
//! across threads.

mod cyclotomic;
mod laurent;
mod poly;
mod rational;

pub use cyclotomic::cyclotomic;
pub use laurent::LaurentPoly;
pub use rational::RationalFunctionQ;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Coefficient and count domain.
pub type ExactInteger = BigInt;

/// Exact rational numbers, used for point evaluation.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("evaluation point {0} is a pole")]
    Pole(String),
    #[error("malformed serialized value: {0}")]
    Malformed(String),
}

/// The ring operations shared by [`LaurentPoly`] and [`RationalFunctionQ`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Field operations on [`RationalFunctionQ`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn lp_arith(a: &LaurentPoly, b: &LaurentPoly, op: RingOp) -> LaurentPoly {
    match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    }
}

pub fn rf_make(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFunctionQ, ArithError> {
    RationalFunctionQ::new(num, den)
}

pub fn rf_arith(a: &RationalFunctionQ, b: &RationalFunctionQ, op: FieldOp) -> Result<RationalFunctionQ, ArithError> {
    match op {
        FieldOp::Add => Ok(a + b),
        FieldOp::Sub => Ok(a - b),
        FieldOp::Mul => Ok(a * b),
        FieldOp::Div => a.checked_div(b),
    }
}

pub fn rf_eval(f: &RationalFunctionQ, q0: &BigRational) -> Result<BigRational, ArithError> {
    f.eval(q0)
}
