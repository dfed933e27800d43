//! Small finite fields, dense matrices over them, and exhaustive counting
//! oracles checked against closed-form matrix and subspace counts.

mod count;
mod factor;
mod field;
mod matrix;

pub use count::{
    count_rect_by_rank, count_square_by_rank_trace, grassmann_count, grassmann_formula, landsberg_formula,
    prasad_delta, prasad_formula, rank_histogram, rank_trace_histogram, CountReport,
};
pub use factor::{block_constant, rank_factorize, reduce_to_canonical, BlockKind};
pub use field::{GFq, SUPPORTED_ORDERS};
pub(crate) use matrix::rank_gf2;
pub use matrix::GFMatrix;

use thiserror::Error;

/// Default cap on the number of candidates an enumeration may visit.
pub const DEFAULT_LIMIT: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("GF({0}) is not supported; orders are 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedOrder(u32),
    #[error("tables for GF({0}) violate the field axioms")]
    NotAField(u32),
    #[error("trace needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parameter bound violated: {0}")]
    Bounds(String),
    #[error("enumerating {q}^{exponent} candidates exceeds the limit {limit}; use the closed formula instead")]
    Infeasible { q: u32, exponent: u32, limit: u64 },
    #[error("trace classes disagree on nonzero traces: {0:?}")]
    NonConstantTrace(Vec<u64>),
}

/// `q^exponent` if it does not exceed `limit`.
pub(crate) fn feasible(q: u32, exponent: u32, limit: u64) -> Result<u64, GfError> {
    (q as u64).checked_pow(exponent).filter(|&size| size <= limit).ok_or(GfError::Infeasible { q, exponent, limit })
}
