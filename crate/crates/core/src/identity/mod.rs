//! Both sides of the main dimension identity, of its compact form and of the
//! inner-sum lemma, evaluated as exact rational functions of `q`, together
//! with step-by-step verification of every rewrite that links them.

mod chain;
mod sides;

pub use chain::{conclusion_chain, lemma1_chain, simplification_chain, verify_lemma1, verify_main};
pub use sides::{
    compact_rhs_at_k, compact_sides, lemma1_extended_lhs, lemma1_sides, nested_term, raw_rhs, raw_rhs_with, theorem_lhs,
};

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{ArithError, LaurentPoly, RationalFunctionQ};
use crate::qseries::{QSeriesError, TruncatedSeriesX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("n must be at least 1, got {0}")]
    NonPositive(i64),
    #[error("k = {k} outside 0..={n}")]
    KOutOfRange { n: i64, k: i64 },
    #[error(transparent)]
    Series(#[from] QSeriesError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub(crate) fn check_n(n: i64) -> Result<(), IdentityError> {
    if n < 1 {
        Err(IdentityError::NonPositive(n))
    } else {
        Ok(())
    }
}

/// One side of a checked step. Steps quantified over several indices carry
/// the instance values in lexicographic index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Integer(i64),
    Rational(RationalFunctionQ),
    List(Vec<RationalFunctionQ>),
    Series(TruncatedSeriesX),
}

impl From<RationalFunctionQ> for ReportValue {
    fn from(v: RationalFunctionQ) -> Self {
        ReportValue::Rational(v)
    }
}

impl From<LaurentPoly> for ReportValue {
    fn from(v: LaurentPoly) -> Self {
        ReportValue::Rational(RationalFunctionQ::from_poly(v))
    }
}

impl From<Vec<RationalFunctionQ>> for ReportValue {
    fn from(v: Vec<RationalFunctionQ>) -> Self {
        ReportValue::List(v)
    }
}

impl From<TruncatedSeriesX> for ReportValue {
    fn from(v: TruncatedSeriesX) -> Self {
        ReportValue::Series(v)
    }
}

impl From<i64> for ReportValue {
    fn from(v: i64) -> Self {
        ReportValue::Integer(v)
    }
}

/// Outcome of one identity check. `equal` is true iff `lhs == rhs` as
/// canonical values; `elapsed_ms` is the only non-deterministic field.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub n: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub equal: bool,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn compare(
        identity: impl Into<String>,
        n: i64,
        k: Option<i64>,
        lhs: impl Into<ReportValue>,
        rhs: impl Into<ReportValue>,
        started: Instant,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        VerificationReport {
            identity: identity.into(),
            n,
            k,
            equal: lhs == rhs,
            lhs,
            rhs,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}
