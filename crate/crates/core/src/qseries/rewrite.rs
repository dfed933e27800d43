use super::{binom2, poch_finite, qq, PochSpec, QSeriesError};
use crate::exact::{LaurentPoly, RationalFunctionQ};

fn poch(exp: i64, len: i64) -> LaurentPoly {
    poch_finite(PochSpec::q_power(exp, len as u32)).expect("finite length")
}

fn qq_i(len: i64) -> LaurentPoly {
    qq(len as u32)
}

fn sign(e: i64) -> LaurentPoly {
    LaurentPoly::from_i64(0, &[if e.rem_euclid(2) == 0 { 1 } else { -1 }])
}

/// Checks the three Pochhammer rewrites used to turn the inner `(m, l)` sum at
/// fixed `k` into a product of classical series:
///
/// 1. `(q;q)_{2n+k-l-m-1} / (q;q)_{k-l} = (-1)^l q^{kl - C(l,2)} (q^-k;q)_l (q^{k+1};q)_{2n-l-m-1}`
/// 2. `(q^{k+1};q)_{2n-l-m-1} = (q^{k+1};q)_{n-1} (q^{k+n};q)_{n-m-l}`
/// 3. `(q^{k+1};q)_{n-1} = (q;q)_{n-1} (q^n;q)_k / (q;q)_k`
///
/// Every side is evaluated independently as an exact product, so each
/// returned flag is an exact equality test.
pub fn poch_rewrite_check(n: i64, k: i64, m: i64, l: i64) -> Result<(bool, bool, bool), QSeriesError> {
    let [a, b, c] = rewrite_sides(n, k, m, l)?;
    Ok((a.0 == a.1, b.0 == b.1, c.0 == c.1))
}

pub(crate) type SidePair = (RationalFunctionQ, RationalFunctionQ);

/// Left and right sides of the three rewrites, in order.
pub(crate) fn rewrite_sides(n: i64, k: i64, m: i64, l: i64) -> Result<[SidePair; 3], QSeriesError> {
    if n < 1 || !(0..=n).contains(&k) || !(0..=n).contains(&m) || l < 0 || l > k.min(n - m) {
        return Err(QSeriesError::OutOfRange(format!(
            "(n, k, m, l) = ({n}, {k}, {m}, {l}) needs n >= 1, 0 <= k, m <= n, 0 <= l <= min(k, n - m)"
        )));
    }

    let lhs1 = RationalFunctionQ::new(qq_i(2 * n + k - l - m - 1), qq_i(k - l))?;
    let rhs1 = &(&sign(l) * &LaurentPoly::q_pow(k * l - binom2(l))) * &(&poch(-k, l) * &poch(k + 1, 2 * n - l - m - 1));

    let lhs2 = poch(k + 1, 2 * n - l - m - 1);
    let rhs2 = &poch(k + 1, n - 1) * &poch(k + n, n - m - l);

    let lhs3 = RationalFunctionQ::from_poly(poch(k + 1, n - 1));
    let rhs3 = RationalFunctionQ::new(&qq_i(n - 1) * &poch(n, k), qq_i(k))?;

    Ok([
        (lhs1, RationalFunctionQ::from_poly(rhs1)),
        (RationalFunctionQ::from_poly(lhs2), RationalFunctionQ::from_poly(rhs2)),
        (lhs3, rhs3),
    ])
}
