use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{cyclotomic, totient};
use super::laurent::LaurentPoly;
use super::{poly, ArithError};

/// A rational function `num / den` in `q` over the rationals, in canonical form.
///
/// Canonical means: both parts are plain polynomials (no negative powers),
/// they share no common factor of positive degree, the integer content of
/// the pair is 1, and the leading coefficient of `den` is positive. Two values
/// are equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunctionQ {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(canonicalize(num, den))
    }

    pub fn zero() -> Self {
        RationalFunctionQ { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(BigInt::from(c)))
    }

    /// Promote a Laurent polynomial; negative powers move into the denominator.
    pub fn from_poly(p: LaurentPoly) -> Self {
        if p.min_exp() >= 0 {
            return RationalFunctionQ { num: p, den: LaurentPoly::one() };
        }
        canonicalize(p, LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the value is a polynomial (denominator exactly 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(canonicalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        canonicalize(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &LaurentPoly) -> Result<Self, ArithError> {
        if p.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(canonicalize(self.num.clone(), &self.den * p))
    }

    /// Exact value at `q0`; fails when `q0` is a root of the denominator.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, ArithError> {
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(ArithError::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0)? / d)
    }

    pub fn eval_int(&self, q0: i64) -> Result<BigRational, ArithError> {
        self.eval(&BigRational::from_integer(BigInt::from(q0)))
    }
}

/// Bring `num / den` (den nonzero) to canonical form.
fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> RationalFunctionQ {
    if num.is_zero() {
        return RationalFunctionQ::zero();
    }
    let (num_shift, mut n) = num.split_q_power();
    let (den_shift, mut d) = den.split_q_power();
    // Both parts now have nonzero constant term; the q-power ratio is moved
    // onto whichever side keeps exponents non-negative.
    let shift = num_shift - den_shift;
    if shift > 0 {
        n = poly::mul(&n, &monomial_poly(shift as usize));
    } else if shift < 0 {
        d = poly::mul(&d, &monomial_poly((-shift) as usize));
    }

    if d.len() > 1 && n.len() > 1 {
        cancel_common_factor(&mut n, &mut d);
    }

    let g = poly::content(&n).gcd(&poly::content(&d));
    poly::div_scalar_exact(&mut n, &g);
    poly::div_scalar_exact(&mut d, &g);
    if d.last().unwrap().is_negative() {
        n.iter_mut().for_each(|c| *c = -&*c);
        d.iter_mut().for_each(|c| *c = -&*c);
    }
    RationalFunctionQ { num: LaurentPoly::from_poly(n), den: LaurentPoly::from_poly(d) }
}

fn monomial_poly(e: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); e + 1];
    v[e] = BigInt::one();
    v
}

/// Remove `gcd(n, d)` from both parts.
///
/// Denominators met in this crate are products of `(1 - q^i)` factors, i.e. of
/// cyclotomic polynomials, so the cyclotomic content of `d` is split off first
/// by trial division and cancelled against `n`. Whatever remains of `d` goes
/// through the general Euclidean gcd.
fn cancel_common_factor(n: &mut Vec<BigInt>, d: &mut Vec<BigInt>) {
    if let Some(q) = poly::div_exact(n, d) {
        *n = q;
        *d = vec![BigInt::one()];
        return;
    }

    let bound = 2 * (d.len() as u32) + 2;
    let mut rest = std::mem::take(d);
    let mut rest_res = poly::residues(&rest);
    let mut found: Vec<(u32, u32)> = Vec::new();
    let mut cyclo_part = vec![BigInt::one()];
    let mut idx = 1u32;
    while rest.len() > 1 && idx <= bound {
        if (totient(idx) as usize) < rest.len() {
            let phi = cyclotomic(idx);
            let mut mult = 0;
            while rest.len() >= phi.len() && poly::divides_mod_p(&rest_res, &phi) {
                match poly::div_monic_small(&rest, &phi) {
                    Some(q) => {
                        rest = q;
                        rest_res = poly::residues(&rest);
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                found.push((idx, mult));
            }
        }
        idx += 1;
    }

    let mut n_res = poly::residues(n);
    for &(idx, mult) in &found {
        let phi = cyclotomic(idx);
        let mut left = mult;
        while left > 0 && poly::divides_mod_p(&n_res, &phi) {
            match poly::div_monic_small(n, &phi) {
                Some(q) => {
                    *n = q;
                    n_res = poly::residues(n);
                    left -= 1;
                }
                None => break,
            }
        }
        let phi_big: Vec<BigInt> = phi.iter().map(|&c| BigInt::from(c)).collect();
        for _ in 0..left {
            cyclo_part = poly::mul(&cyclo_part, &phi_big);
        }
    }

    if rest.len() > 1 && n.len() > 1 {
        let g = poly::gcd(n, &rest);
        if g.len() > 1 {
            *n = poly::div_exact(n, &g).expect("gcd divides numerator");
            rest = poly::div_exact(&rest, &g).expect("gcd divides denominator");
        }
    }
    *d = poly::mul(&cyclo_part, &rest);
}

impl Add for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return canonicalize(&self.num + &rhs.num, self.den.clone());
        }
        canonicalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunctionQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunctionQ::from_poly(&self.num * &rhs.num);
        }
        canonicalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunctionQ> for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        -&self
    }
}

impl std::iter::Sum for RationalFunctionQ {
    fn sum<I: Iterator<Item = RationalFunctionQ>>(iter: I) -> Self {
        iter.fold(RationalFunctionQ::zero(), |a, b| a + b)
    }
}

impl From<LaurentPoly> for RationalFunctionQ {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQ({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RationalFunctionQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunctionQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        RationalFunctionQ::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}
