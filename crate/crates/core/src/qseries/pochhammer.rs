use num_bigint::BigInt;

use super::QSeriesError;
use crate::exact::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PochLength {
    Finite(u32),
    Infinite,
}

/// The symbol `(a;q)_length` with base `a = sign * q^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PochSpec {
    pub sign: Sign,
    pub exp: i64,
    pub length: PochLength,
}

impl PochSpec {
    pub fn finite(sign: Sign, exp: i64, length: u32) -> Self {
        PochSpec { sign, exp, length: PochLength::Finite(length) }
    }

    /// `(q^exp; q)_length`
    pub fn q_power(exp: i64, length: u32) -> Self {
        Self::finite(Sign::Plus, exp, length)
    }
}

/// `prod_{k=0}^{length-1} (1 - sign * q^(exp+k))`; the empty product is 1.
pub fn poch_finite(spec: PochSpec) -> Result<LaurentPoly, QSeriesError> {
    let PochLength::Finite(len) = spec.length else {
        return Err(QSeriesError::InfiniteLength);
    };
    let sign = spec.sign.value();
    let mut acc = LaurentPoly::one();
    for k in 0..len as i64 {
        let e = spec.exp + k;
        if sign == 1 && e == 0 {
            return Ok(LaurentPoly::zero());
        }
        if sign == 1 && e > 0 {
            acc.mul_one_minus_q_pow(e as u32);
        } else {
            acc = &acc * &(LaurentPoly::one() - LaurentPoly::monomial(BigInt::from(sign), e));
        }
    }
    Ok(acc)
}

/// `(q;q)_j`
pub fn qq(j: u32) -> LaurentPoly {
    poch_finite(PochSpec::q_power(1, j)).expect("finite length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn empty_product() {
        assert_eq!(poch_finite(PochSpec::q_power(1, 0)).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn q_q_two() {
        let p = poch_finite(PochSpec::q_power(1, 2)).unwrap();
        assert_eq!(p, LaurentPoly::from_i64(0, &[1, -1, -1, 1]));
        // (1-2)(1-4) = 3
        assert_eq!(p.eval(&BigRational::from_integer(2.into())).unwrap(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn vanishing_at_negative_base() {
        assert!(poch_finite(PochSpec::q_power(-1, 2)).unwrap().is_zero());
        for k in 0..6i64 {
            for len in (k as u32 + 1)..=6 {
                assert!(poch_finite(PochSpec::q_power(-k, len)).unwrap().is_zero(), "k={k} len={len}");
            }
            assert!(!poch_finite(PochSpec::q_power(-k, k as u32)).unwrap().is_zero());
        }
    }

    #[test]
    fn negative_sign_base() {
        // (-q;q)_2 = (1+q)(1+q^2)
        let p = poch_finite(PochSpec::finite(Sign::Minus, 1, 2)).unwrap();
        assert_eq!(p, LaurentPoly::from_i64(0, &[1, 1, 1, 1]));
    }

    #[test]
    fn infinite_rejected() {
        let spec = PochSpec { sign: Sign::Plus, exp: 0, length: PochLength::Infinite };
        assert_eq!(poch_finite(spec), Err(QSeriesError::InfiniteLength));
    }
}
