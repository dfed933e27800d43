//! `q`-Pochhammer symbols, truncated formal power series in `x` with
//! rational-function coefficients, and exact summation of products of
//! `(1 - q^i)` factors.
//!
//! Infinite products `(a;q)_inf` never appear as products here: they are
//! represented by their classical series expansions (Euler's identity and the
//! `q`-binomial theorem), truncated at a fixed order in `x`.

mod pochhammer;
mod rewrite;
mod series;
mod term;

pub use pochhammer::{poch_finite, qq, PochLength, PochSpec, Sign};
pub use rewrite::poch_rewrite_check;
pub(crate) use rewrite::rewrite_sides;
pub use series::{
    euler_product_agrees, euler_series, qbinom_ratio_agrees, qbinom_series, series_coeff, series_mul,
    telescoping_product, TruncatedSeriesX,
};
pub use term::{sum_terms, QTerm};

use thiserror::Error;

use crate::exact::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("infinite Pochhammer symbols have no finite product value")]
    InfiniteLength,
    #[error("product over {lo}..={hi} has upper index more than one below the lower index")]
    MalformedRange { lo: i64, hi: i64 },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `n choose 2`, valid for negative `n` as well.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}
