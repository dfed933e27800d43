use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly;
use super::ArithError;

/// A finite Laurent polynomial `sum_i coeffs[i] * q^(min_exp + i)`.
///
/// The representation is dense over the exponent span. Leading and trailing
/// zero coefficients are always stripped, and the zero polynomial is the
/// empty coefficient list with `min_exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(0, vec![c])
    }

    /// `c * q^exp`
    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// `q^exp`
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    /// `1 - sign * q^exp`, the generic Pochhammer factor.
    pub fn one_minus(sign: i64, exp: i64) -> Self {
        Self::one() - Self::monomial(BigInt::from(sign), exp)
    }

    fn normalize(&mut self) {
        poly::trim(&mut self.coeffs);
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    /// Coefficients in ascending exponent order, starting at `min_exp`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.min_exp;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Whether this is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.min_exp == 0 && self.coeffs.len() == 1)
    }

    /// Multiply by `q^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_exp: self.min_exp + exp, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply in place by `1 - q^shift` for `shift >= 1`.
    pub fn mul_one_minus_q_pow(&mut self, shift: u32) {
        assert!(shift >= 1);
        poly::mul_one_minus_q_pow(&mut self.coeffs, shift as usize);
        self.normalize();
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, ArithError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if q0.is_zero() && self.min_exp < 0 {
            return Err(ArithError::Pole(q0.to_string()));
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + BigRational::from_integer(c.clone());
        }
        Ok(acc * pow_rational(q0, self.min_exp))
    }

    /// Splits off the monomial factor: `(q^min_exp, polynomial part with
    /// nonzero constant term)`.
    pub(crate) fn split_q_power(self) -> (i64, Vec<BigInt>) {
        (self.min_exp, self.coeffs)
    }

    pub(crate) fn from_poly(coeffs: Vec<BigInt>) -> Self {
        Self::new(0, coeffs)
    }

    /// `q`-adic agreement: whether `self - other` has no terms of exponent `<= max_exp`.
    pub fn agrees_through(&self, other: &LaurentPoly, max_exp: i64) -> bool {
        let diff = self - other;
        diff.is_zero() || diff.min_exp > max_exp
    }

    /// Drop every term with exponent above `max_exp`.
    pub fn truncate_above(&self, max_exp: i64) -> Self {
        if self.is_zero() || self.min_exp > max_exp {
            return Self::zero();
        }
        let keep = ((max_exp - self.min_exp + 1) as usize).min(self.coeffs.len());
        Self::new(self.min_exp, self.coeffs[..keep].to_vec())
    }
}

pub(crate) fn pow_rational(q0: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q0.recip() } else { q0.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.min_exp - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[(rhs.min_exp - lo) as usize + i] += c;
        }
        LaurentPoly::new(lo, out)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::new(self.min_exp + rhs.min_exp, poly::mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| a * b)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + i as i64;
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    min_exp: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(ToString::to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| serde::de::Error::custom(ArithError::Malformed(e.to_string())))?;
        Ok(LaurentPoly::new(wire.min_exp, coeffs))
    }
}
