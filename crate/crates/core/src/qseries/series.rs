use std::ops::{Add, Mul};

use serde::Serialize;

use super::{binom2, QSeriesError, QTerm};
use crate::exact::{LaurentPoly, RationalFunctionQ};

/// A formal power series in `x` truncated after `x^order`, with coefficients
/// in the rational functions of `q`.
///
/// Binary operations between series of different orders truncate to the
/// smaller order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TruncatedSeriesX {
    coeffs: Vec<RationalFunctionQ>,
}

impl TruncatedSeriesX {
    pub fn from_coeffs(coeffs: Vec<RationalFunctionQ>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least x^0");
        TruncatedSeriesX { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> RationalFunctionQ) -> Self {
        Self::from_coeffs((0..=order).map(f).collect())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |j| if j == 0 { RationalFunctionQ::one() } else { RationalFunctionQ::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunctionQ] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Result<&RationalFunctionQ, QSeriesError> {
        self.coeffs.get(j).ok_or(QSeriesError::IndexOutOfRange { index: j, order: self.order() })
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec())
    }

    /// Substitute `x -> sign * q^e * x`.
    pub fn substitute_scaled(&self, negate: bool, e: i64) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let mut m = LaurentPoly::q_pow(e * j as i64);
                    if negate && j % 2 == 1 {
                        m = -m;
                    }
                    c.mul_poly(&m)
                })
                .collect(),
        )
    }

    /// Cauchy product truncated to the smaller order.
    pub fn cauchy(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::from_fn(order, |j| (0..=j).map(|i| &self.coeffs[i] * &rhs.coeffs[j - i]).sum())
    }

    /// Coefficient-wise agreement through `x^order`.
    pub fn agrees_with(&self, other: &Self, order: usize) -> bool {
        order <= self.order() && order <= other.order() && self.coeffs[..=order] == other.coeffs[..=order]
    }
}

impl Add for &TruncatedSeriesX {
    type Output = TruncatedSeriesX;
    fn add(self, rhs: &TruncatedSeriesX) -> TruncatedSeriesX {
        let order = self.order().min(rhs.order());
        TruncatedSeriesX::from_fn(order, |j| &self.coeffs[j] + &rhs.coeffs[j])
    }
}

impl Mul for &TruncatedSeriesX {
    type Output = TruncatedSeriesX;
    fn mul(self, rhs: &TruncatedSeriesX) -> TruncatedSeriesX {
        self.cauchy(rhs)
    }
}

/// Expansion of `(q^e x; q)_inf` through `x^order`:
/// the coefficient of `x^j` is `(-1)^j q^(binom(j,2) + e j) / (q;q)_j`.
pub fn euler_series(e: i64, order: usize) -> TruncatedSeriesX {
    TruncatedSeriesX::from_fn(order, |j| {
        let j = j as i64;
        QTerm::sign_power(j).times_q(binom2(j) + e * j).over_qq(j as u32).to_rational()
    })
}

/// Expansion of `(a x; q)_inf / (x; q)_inf` with `a = q^a_exp` through `x^order`:
/// the coefficient of `x^j` is `(a;q)_j / (q;q)_j`.
pub fn qbinom_series(a_exp: i64, order: usize) -> TruncatedSeriesX {
    TruncatedSeriesX::from_fn(order, |j| QTerm::one().times_poch(a_exp, j as u32).over_qq(j as u32).to_rational())
}

pub fn series_mul(a: &TruncatedSeriesX, b: &TruncatedSeriesX) -> TruncatedSeriesX {
    a.cauchy(b)
}

pub fn series_coeff(s: &TruncatedSeriesX, j: usize) -> Result<RationalFunctionQ, QSeriesError> {
    s.coeff(j).cloned()
}

/// Cross-checks [`euler_series`]`(0, order)` against the finite product
/// `prod_{k=0}^{q_degree} (1 - x q^k)` expanded as a bivariate polynomial.
///
/// Factors with `k > q_degree` cannot touch `q`-degrees up to `q_degree`, so
/// every `x^j` coefficient must agree with the series coefficient through
/// `q^q_degree`. Agreement is tested as `P_j * den - num = O(q^(q_degree+1))`.
pub fn euler_product_agrees(order: usize, q_degree: u32) -> bool {
    let mut by_x: Vec<LaurentPoly> = vec![LaurentPoly::zero(); order + 1];
    by_x[0] = LaurentPoly::one();
    for k in 0..=q_degree as i64 {
        for j in (1..=order).rev() {
            let shifted = by_x[j - 1].shift(k);
            by_x[j] = (&by_x[j] - &shifted).truncate_above(q_degree as i64);
        }
    }
    let series = euler_series(0, order);
    series.coeffs().iter().zip(&by_x).all(|(c, p)| {
        let lhs = p * c.den();
        lhs.agrees_through(c.num(), q_degree as i64)
    })
}

/// `(x;q)_inf * (q^a x;q)_inf / (x;q)_inf = (q^a x;q)_inf` coefficient-wise.
pub fn qbinom_ratio_agrees(a_exp: i64, order: usize) -> bool {
    let lhs = euler_series(0, order).cauchy(&qbinom_series(a_exp, order));
    lhs.agrees_with(&euler_series(a_exp, order), order)
}

/// `(q^k x;q)_inf * [(x;q)_inf / (q^k x;q)_inf] * [(q^(k+n) x;q)_inf / (x;q)_inf]`
/// through `x^order`, each factor generated from its own series. The middle
/// factor is the `q`-binomial series at base `q^-k` with `x -> q^k x`.
/// The product telescopes to `(q^(k+n) x;q)_inf`.
pub fn telescoping_product(k: i64, n: i64, order: usize) -> TruncatedSeriesX {
    let ratio_down = qbinom_series(-k, order).substitute_scaled(false, k);
    euler_series(k, order).cauchy(&ratio_down).cauchy(&qbinom_series(k + n, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rf_make;
    use crate::qseries::qq;

    fn rf(num: LaurentPoly, den: LaurentPoly) -> RationalFunctionQ {
        rf_make(num, den).unwrap()
    }

    #[test]
    fn euler_leading_coefficients() {
        let s = euler_series(0, 4);
        assert_eq!(s.coeff(0).unwrap(), &RationalFunctionQ::one());
        assert_eq!(s.coeff(1).unwrap(), &rf(LaurentPoly::constant((-1).into()), qq(1)));
        assert_eq!(s.coeff(2).unwrap(), &rf(LaurentPoly::q_pow(1), qq(2)));
    }

    #[test]
    fn qbinom_coefficients() {
        let (n, k) = (3i64, 2i64);
        let s = qbinom_series(n + k, 5);
        assert_eq!(s.coeff(0).unwrap(), &RationalFunctionQ::one());
        assert_eq!(s.coeff(1).unwrap(), &rf(LaurentPoly::one_minus(1, n + k), qq(1)));
        let trivial = qbinom_series(0, 6);
        assert!(trivial.coeffs()[1..].iter().all(RationalFunctionQ::is_zero));
    }

    #[test]
    fn euler_square_first_coefficient() {
        let e = euler_series(0, 3);
        let sq = series_mul(&e, &e);
        assert_eq!(series_coeff(&sq, 1).unwrap(), rf(LaurentPoly::constant((-2).into()), qq(1)));
    }

    #[test]
    fn trivial_ratio_is_identity_for_product() {
        let e = euler_series(0, 5);
        assert_eq!(series_mul(&e, &qbinom_series(0, 5)), e);
    }

    #[test]
    fn coefficient_out_of_range() {
        let s = euler_series(0, 8);
        assert_eq!(series_coeff(&s, 0).unwrap(), RationalFunctionQ::one());
        assert_eq!(series_coeff(&s, 9), Err(QSeriesError::IndexOutOfRange { index: 9, order: 8 }));
    }

    #[test]
    fn shifted_euler_coefficient() {
        // coefficient of x^n in (q^(k+n) x; q)_inf
        let (n, k) = (3i64, 1i64);
        let s = euler_series(k + n, n as usize);
        let expect = QTerm::sign_power(n).times_q((k + n) * n + binom2(n)).over_qq(n as u32).to_rational();
        assert_eq!(series_coeff(&s, n as usize).unwrap(), expect);
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = euler_series(0, 3);
        let b = euler_series(1, 5);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn substitution_matches_generator() {
        assert_eq!(euler_series(0, 5).substitute_scaled(false, 3), euler_series(3, 5));
    }

    #[test]
    fn three_factor_product_telescopes() {
        for n in 1..=4 {
            for k in 0..=n {
                let order = n as usize + 2;
                assert_eq!(telescoping_product(k, n, order), euler_series(k + n, order), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn extra_euler_factor_breaks_telescoping() {
        let with_extra = telescoping_product(1, 2, 4).cauchy(&euler_series(0, 4));
        assert_ne!(with_extra, euler_series(3, 4));
    }

    #[test]
    fn small_product_cross_checks() {
        assert!(euler_product_agrees(4, 10));
        assert!(qbinom_ratio_agrees(2, 4));
        assert!(qbinom_ratio_agrees(-2, 4));
    }
}
