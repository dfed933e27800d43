use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::QSeriesError;
use crate::exact::{ArithError, LaurentPoly, RationalFunctionQ};
use crate::exec::Exec;

/// A single `q`-hypergeometric term `c * q^e * prod_i (1 - q^i)^(m_i)`.
///
/// Multiplicities `m_i` may be negative, so ratios of Pochhammer products are
/// represented exactly with factors cancelling as they are added. Builder
/// methods consume and return the term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTerm {
    coeff: BigInt,
    q_exp: i64,
    factors: BTreeMap<u32, i32>,
}

impl QTerm {
    pub fn new(coeff: i64) -> Self {
        QTerm { coeff: BigInt::from(coeff), q_exp: 0, factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::new(1)
    }

    /// `(-1)^e`
    pub fn sign_power(e: i64) -> Self {
        Self::new(if e.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn times_sign_power(mut self, e: i64) -> Self {
        if e.rem_euclid(2) == 1 {
            self.coeff = -self.coeff;
        }
        self
    }

    pub fn times_q(mut self, e: i64) -> Self {
        self.q_exp += e;
        self
    }

    pub fn times_int(mut self, c: &BigInt) -> Self {
        self.coeff *= c;
        self
    }

    /// Multiply by `(1 - q^i)^power` (`power` may be negative).
    pub fn times_one_minus(mut self, i: u32, power: i32) -> Self {
        assert!(i >= 1, "factor 1 - q^0 vanishes");
        let slot = self.factors.entry(i).or_insert(0);
        *slot += power;
        if *slot == 0 {
            self.factors.remove(&i);
        }
        self
    }

    /// Multiply by `(q;q)_j`.
    pub fn times_qq(self, j: u32) -> Self {
        (1..=j).fold(self, |t, i| t.times_one_minus(i, 1))
    }

    /// Divide by `(q;q)_j`.
    pub fn over_qq(self, j: u32) -> Self {
        (1..=j).fold(self, |t, i| t.times_one_minus(i, -1))
    }

    /// Multiply by `(q^a; q)_len` for any integer `a`. Factors `1 - q^(-i)`
    /// are rewritten as `-q^(-i) (1 - q^i)`; a factor `1 - q^0` zeroes the term.
    pub fn times_poch(self, a: i64, len: u32) -> Self {
        self.poch_power(a, len, 1).expect("numerator factors never fail")
    }

    /// Divide by `(q^a; q)_len`; fails if the product vanishes.
    pub fn over_poch(self, a: i64, len: u32) -> Result<Self, QSeriesError> {
        self.poch_power(a, len, -1)
    }

    fn poch_power(mut self, a: i64, len: u32, power: i32) -> Result<Self, QSeriesError> {
        for k in 0..len as i64 {
            let e = a + k;
            match e {
                0 if power > 0 => {
                    self.coeff = BigInt::zero();
                    self.factors.clear();
                    return Ok(self);
                }
                0 => return Err(ArithError::DivisionByZero.into()),
                e if e > 0 => self = self.times_one_minus(e as u32, power),
                e => {
                    self.coeff = -self.coeff;
                    self.q_exp += e * power as i64;
                    self = self.times_one_minus((-e) as u32, power);
                }
            }
        }
        Ok(self)
    }

    /// Multiply by `prod_{i=lo}^{hi} (q^i - 1)`, with `lo >= 1`.
    ///
    /// `hi == lo - 1` is the empty product; `hi < lo - 1` is a malformed range.
    pub fn times_q_minus_one_range(self, lo: i64, hi: i64) -> Result<Self, QSeriesError> {
        self.q_minus_one_range(lo, hi, 1)
    }

    /// Divide by `prod_{i=lo}^{hi} (q^i - 1)`.
    pub fn over_q_minus_one_range(self, lo: i64, hi: i64) -> Result<Self, QSeriesError> {
        self.q_minus_one_range(lo, hi, -1)
    }

    fn q_minus_one_range(mut self, lo: i64, hi: i64, power: i32) -> Result<Self, QSeriesError> {
        if hi < lo - 1 {
            return Err(QSeriesError::MalformedRange { lo, hi });
        }
        if lo < 1 && hi >= lo {
            return Err(QSeriesError::OutOfRange(format!("factor q^{lo} - 1 with {lo} < 1")));
        }
        for i in lo..=hi {
            // q^i - 1 = -(1 - q^i)
            self.coeff = -self.coeff;
            self = self.times_one_minus(i as u32, power);
        }
        Ok(self)
    }

    pub fn to_rational(&self) -> RationalFunctionQ {
        sum_terms(std::slice::from_ref(self), Exec::Sequential)
    }
}

/// Exact sum of terms, returned in canonical form.
///
/// All terms are brought over the smallest common denominator of the form
/// `prod (1 - q^i)^(d_i)`; numerators are expanded by repeated multiplication
/// with binomials, which needs no polynomial division at all.
pub fn sum_terms(terms: &[QTerm], exec: Exec) -> RationalFunctionQ {
    let live: Vec<&QTerm> = terms.iter().filter(|t| !t.is_zero()).collect();
    if live.is_empty() {
        return RationalFunctionQ::zero();
    }
    let mut common_den: BTreeMap<u32, u32> = BTreeMap::new();
    for t in &live {
        for (&i, &m) in &t.factors {
            if m < 0 {
                let slot = common_den.entry(i).or_insert(0);
                *slot = (*slot).max((-m) as u32);
            }
        }
    }
    let min_exp = live.iter().map(|t| t.q_exp).min().unwrap();

    let numerator = exec.map_reduce(
        &live,
        LaurentPoly::zero,
        |t| {
            let mut p = LaurentPoly::monomial(t.coeff.clone(), t.q_exp - min_exp);
            // Multiply the higher-degree binomials first while the polynomial is short.
            let mut mults: Vec<(u32, u32)> = Vec::new();
            for (&i, &m) in &t.factors {
                let extra = common_den.get(&i).copied().unwrap_or(0) as i32 + m;
                if extra > 0 {
                    mults.push((i, extra as u32));
                }
            }
            for (&i, &d) in &common_den {
                if !t.factors.contains_key(&i) {
                    mults.push((i, d));
                }
            }
            for (i, times) in mults.into_iter().rev() {
                for _ in 0..times {
                    p.mul_one_minus_q_pow(i);
                }
            }
            p
        },
        |a, b| &a + &b,
    );

    let mut den = LaurentPoly::one();
    for (&i, &d) in common_den.iter().rev() {
        for _ in 0..d {
            den.mul_one_minus_q_pow(i);
        }
    }
    let num = numerator.shift(min_exp);
    debug_assert!(!den.is_zero());
    RationalFunctionQ::new(num, den).expect("common denominator is nonzero")
}

impl Default for QTerm {
    fn default() -> Self {
        Self::one()
    }
}

impl From<i64> for QTerm {
    fn from(c: i64) -> Self {
        Self::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rf_make;
    use crate::qseries::qq;

    #[test]
    fn q_binomial_coefficient_is_polynomial() {
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let t = QTerm::one().times_qq(4).over_qq(2).over_qq(2);
        let r = t.to_rational();
        assert_eq!(r, RationalFunctionQ::from_poly(LaurentPoly::from_i64(0, &[1, 1, 2, 1, 1])));
    }

    #[test]
    fn negative_base_pochhammer() {
        // (q^-2;q)_2 = (1-q^-2)(1-q^-1)
        let t = QTerm::one().times_poch(-2, 2);
        let direct = &LaurentPoly::one_minus(1, -2) * &LaurentPoly::one_minus(1, -1);
        assert_eq!(t.to_rational(), RationalFunctionQ::from_poly(direct));
        assert!(QTerm::one().times_poch(-2, 3).is_zero());
        assert!(QTerm::one().over_poch(-1, 2).is_err());
    }

    #[test]
    fn ranges_and_empty_products() {
        let t = QTerm::one().times_q_minus_one_range(3, 2).unwrap();
        assert_eq!(t, QTerm::one());
        assert!(matches!(
            QTerm::one().times_q_minus_one_range(3, 1),
            Err(QSeriesError::MalformedRange { lo: 3, hi: 1 })
        ));
        // (q-1)(q^2-1) = (q;q)_2
        let t = QTerm::one().times_q_minus_one_range(1, 2).unwrap();
        assert_eq!(t.to_rational(), RationalFunctionQ::from_poly(qq(2)));
    }

    #[test]
    fn sums_over_mixed_denominators() {
        // 1/(1-q) + q/(1-q^2) = (1 + 2q)/(1 - q^2)
        let terms = [QTerm::one().over_qq(1), QTerm::one().times_q(1).times_one_minus(2, -1)];
        let expect = rf_make(LaurentPoly::from_i64(0, &[1, 2]), LaurentPoly::from_i64(0, &[1, 0, -1])).unwrap();
        assert_eq!(sum_terms(&terms, Exec::Sequential), expect);
        assert_eq!(sum_terms(&terms, Exec::default()), expect);
    }

    #[test]
    fn cancelling_sum_is_zero() {
        let a = QTerm::new(3).times_q(-4).over_qq(3);
        let b = QTerm::new(-3).times_q(-4).over_qq(3);
        assert!(sum_terms(&[a, b], Exec::Sequential).is_zero());
        assert!(sum_terms(&[], Exec::Sequential).is_zero());
    }
}
