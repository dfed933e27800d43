use super::{check_n, IdentityError};
use crate::exact::{LaurentPoly, RationalFunctionQ};
use crate::exec::Exec;
use crate::qseries::{binom2, poch_finite, sum_terms, PochSpec, QTerm};

pub(crate) fn poch(exp: i64, len: i64) -> LaurentPoly {
    assert!(len >= 0, "negative Pochhammer length {len}");
    poch_finite(PochSpec::q_power(exp, len as u32)).expect("finite length")
}

pub(crate) fn qq(len: i64) -> LaurentPoly {
    poch(1, len)
}

pub(crate) fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn k_range(n: i64, k: i64) -> Result<(), IdentityError> {
    check_n(n)?;
    if !(0..=n).contains(&k) {
        return Err(IdentityError::KOutOfRange { n, k });
    }
    Ok(())
}

/// `q^(n(n-1)/2) * prod_{i=1}^{n-1} (q^n - q^i)`, expanded directly.
pub fn theorem_lhs(n: i64) -> Result<RationalFunctionQ, IdentityError> {
    check_n(n)?;
    let mut p = LaurentPoly::q_pow(n * (n - 1) / 2);
    for i in 1..n {
        p = &p * &(&LaurentPoly::q_pow(n) - &LaurentPoly::q_pow(i));
    }
    Ok(RationalFunctionQ::from_poly(p))
}

/// The unsimplified double sum over `(m, k)` with inner sum over `l`,
/// including the `q^(-3n^2)` prefactor, built exactly as displayed with
/// `prod (q^i - 1)` factors.
pub fn raw_rhs(n: i64) -> Result<RationalFunctionQ, IdentityError> {
    raw_rhs_with(n, Exec::default())
}

pub fn raw_rhs_with(n: i64, exec: Exec) -> Result<RationalFunctionQ, IdentityError> {
    check_n(n)?;
    let mut terms = Vec::new();
    for k in 0..=n {
        for m in 0..=n {
            for l in 0..=n - k.max(m) {
                let e = k * n + (n - k) * m + k * (k - 1) / 2 + m * (m - 1) / 2 + l * (l - 1) / 2 - 3 * n * n;
                let t = QTerm::sign_power(l)
                    .times_q(e)
                    .over_q_minus_one_range(1, k)?
                    .over_q_minus_one_range(1, m)?
                    .times_q_minus_one_range(l + 1, 3 * n - k - l - m - 1)?
                    .times_q_minus_one_range(n - k - l + 1, n)?
                    .times_q_minus_one_range(n - m - l + 1, n)?;
                terms.push(t);
            }
        }
    }
    Ok(sum_terms(&terms, exec))
}

fn compact_term(n: i64, k: i64, m: i64, l: i64) -> QTerm {
    QTerm::sign_power(k + m + l)
        .times_q(n * (k + m) - k * m + binom2(k) + binom2(m) + binom2(l))
        .times_qq((3 * n - k - l - m - 1) as u32)
        .times_qq(n as u32)
        .over_qq(k as u32)
        .over_qq(m as u32)
        .over_qq(l as u32)
        .over_qq((n - k - l) as u32)
        .over_qq((n - m - l) as u32)
}

/// `(q^(4n^2-n) / (1 - q^n), flat triple sum over (k, m, l))`.
pub fn compact_sides(n: i64) -> Result<(RationalFunctionQ, RationalFunctionQ), IdentityError> {
    check_n(n)?;
    let lhs = RationalFunctionQ::new(LaurentPoly::q_pow(4 * n * n - n), LaurentPoly::one_minus(1, n))?;
    let mut terms = Vec::new();
    for k in 0..=n {
        for m in 0..=n {
            for l in 0..=n - k.max(m) {
                terms.push(compact_term(n, k, m, l));
            }
        }
    }
    Ok((lhs, sum_terms(&terms, Exec::default())))
}

/// The compact triple sum restricted to one value of `k`.
pub fn compact_rhs_at_k(n: i64, k: i64) -> Result<RationalFunctionQ, IdentityError> {
    k_range(n, k)?;
    let terms: Vec<QTerm> = (0..=n).flat_map(|m| (0..=n - k.max(m)).map(move |l| compact_term(n, k, m, l))).collect();
    Ok(sum_terms(&terms, Exec::Sequential))
}

/// Outer factor `(-1)^k q^(kn + C(k,2)) / (q;q)_k` times the separately
/// summed inner `(m, l)` sum at this `k`.
pub fn nested_term(n: i64, k: i64) -> Result<RationalFunctionQ, IdentityError> {
    k_range(n, k)?;
    let outer = QTerm::sign_power(k).times_q(k * n + binom2(k)).over_qq(k as u32).to_rational();
    let mut inner = Vec::new();
    for m in 0..=n {
        for l in 0..=n - k.max(m) {
            inner.push(
                QTerm::sign_power(m + l)
                    .times_q(m * (n - k) + binom2(m) + binom2(l))
                    .times_qq((3 * n - k - l - m - 1) as u32)
                    .times_qq(n as u32)
                    .over_qq(m as u32)
                    .over_qq(l as u32)
                    .over_qq((n - k - l) as u32)
                    .over_qq((n - m - l) as u32),
            );
        }
    }
    Ok(&outer * &sum_terms(&inner, Exec::Sequential))
}

pub(crate) fn lemma1_lhs(n: i64, k: i64) -> RationalFunctionQ {
    let mut terms = Vec::new();
    for m in 0..=n {
        for l in 0..=k.min(n - m) {
            terms.push(
                QTerm::sign_power(m + l)
                    .times_q(m * k + binom2(m) + binom2(l))
                    .times_qq((2 * n + k - l - m - 1) as u32)
                    .times_qq(n as u32)
                    .over_qq(m as u32)
                    .over_qq(l as u32)
                    .over_qq((k - l) as u32)
                    .over_qq((n - m - l) as u32),
            );
        }
    }
    sum_terms(&terms, Exec::Sequential)
}

pub(crate) fn lemma1_rhs(n: i64, k: i64) -> RationalFunctionQ {
    let p = poch(k + 1, n - 1).shift((k + n) * n + binom2(n));
    RationalFunctionQ::from_poly(if n % 2 == 0 { p } else { -p })
}

/// Inner double sum over `(m, l)` at fixed `k` and its closed product form.
pub fn lemma1_sides(n: i64, k: i64) -> Result<(RationalFunctionQ, RationalFunctionQ), IdentityError> {
    k_range(n, k)?;
    Ok((lemma1_lhs(n, k), lemma1_rhs(n, k)))
}

/// The inner sum after the negative-base rewrite, as a product of three
/// series-coefficient factors, with `l` summed over `0..=l_max(m)`.
pub(crate) fn lemma1_factored(n: i64, k: i64, l_max: impl Fn(i64) -> i64) -> RationalFunctionQ {
    let mut terms = Vec::new();
    for m in 0..=n {
        for l in 0..=l_max(m) {
            terms.push(
                QTerm::sign_power(m)
                    .times_q(k * m + binom2(m))
                    .over_qq(m as u32)
                    .times_poch(-k, l as u32)
                    .times_q(k * l)
                    .over_qq(l as u32)
                    .times_poch(k + n, (n - m - l) as u32)
                    .over_qq((n - m - l) as u32),
            );
        }
    }
    sum_terms(&terms, Exec::Sequential).mul_poly(&(&qq(n) * &poch(k + 1, n - 1)))
}

/// The inner sum with `l` running over all of `0..=n-m`. The extra terms
/// carry `(q^-k;q)_l = 0` for `l > k`, so this equals the inner sum.
pub fn lemma1_extended_lhs(n: i64, k: i64) -> Result<RationalFunctionQ, IdentityError> {
    k_range(n, k)?;
    Ok(lemma1_factored(n, k, |m| n - m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn poly(min_exp: i64, c: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::from_poly(LaurentPoly::from_i64(min_exp, c))
    }

    #[test]
    fn closed_form_small_n() {
        assert_eq!(theorem_lhs(1).unwrap(), RationalFunctionQ::one());
        assert_eq!(theorem_lhs(2).unwrap(), poly(2, &[-1, 1]));
        assert_eq!(theorem_lhs(3).unwrap(), poly(6, &[1, -1, -1, 1]));
        assert_eq!(theorem_lhs(3).unwrap().eval_int(2).unwrap(), BigRational::from_integer(192.into()));
        assert_eq!(theorem_lhs(0), Err(IdentityError::NonPositive(0)));
    }

    #[test]
    fn raw_sum_small_n() {
        assert_eq!(raw_rhs(1).unwrap(), RationalFunctionQ::one());
        assert_eq!(raw_rhs(2).unwrap(), poly(2, &[-1, 1]));
        assert_eq!(raw_rhs(3).unwrap().eval_int(2).unwrap(), BigRational::from_integer(192.into()));
    }

    #[test]
    fn raw_sum_matches_float_free_numeric_oracle() {
        // Evaluate the raw double sum at q = 3 with plain rationals.
        fn rng(q: &BigRational, lo: i64, hi: i64) -> BigRational {
            (lo..=hi).fold(BigRational::from_integer(1.into()), |acc, i| {
                acc * (num_traits::pow(q.clone(), i as usize) - BigRational::from_integer(1.into()))
            })
        }
        let q = BigRational::from_integer(BigInt::from(3));
        for n in 1..=3i64 {
            let mut s = BigRational::from_integer(0.into());
            for m in 0..=n {
                for k in 0..=n {
                    let pre =
                        num_traits::pow(q.clone(), (k * n + (n - k) * m + k * (k - 1) / 2 + m * (m - 1) / 2) as usize)
                            / (rng(&q, 1, k) * rng(&q, 1, m));
                    let mut inner = BigRational::from_integer(0.into());
                    for l in 0..=n - k.max(m) {
                        let sg = BigRational::from_integer(sign(l).into());
                        inner += sg
                            * num_traits::pow(q.clone(), (l * (l - 1) / 2) as usize)
                            * rng(&q, l + 1, 3 * n - k - l - m - 1)
                            * rng(&q, n - k - l + 1, n)
                            * rng(&q, n - m - l + 1, n);
                    }
                    s += pre * inner;
                }
            }
            s /= num_traits::pow(q.clone(), (3 * n * n) as usize);
            assert_eq!(raw_rhs(n).unwrap().eval(&q).unwrap(), s, "n = {n}");
        }
    }

    #[test]
    fn compact_form_n1_and_n2() {
        let (l, r) = compact_sides(1).unwrap();
        let expect = RationalFunctionQ::new(LaurentPoly::q_pow(3), LaurentPoly::one_minus(1, 1)).unwrap();
        assert_eq!(l, expect);
        assert_eq!(r, expect);
        let (l, r) = compact_sides(2).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn lemma_small_cases() {
        let minus_q = poly(1, &[-1]);
        assert_eq!(lemma1_sides(1, 0).unwrap(), (minus_q.clone(), minus_q));
        let minus_q2 = poly(2, &[-1]);
        assert_eq!(lemma1_sides(1, 1).unwrap(), (minus_q2.clone(), minus_q2));
        let (l, r) = lemma1_sides(2, 1).unwrap();
        assert_eq!(l, r);
        assert_eq!(lemma1_sides(2, 3), Err(IdentityError::KOutOfRange { n: 2, k: 3 }));
    }

    #[test]
    fn fixed_k_slices_factor() {
        for n in 1..=4 {
            for k in 0..=n {
                assert_eq!(compact_rhs_at_k(n, k).unwrap(), nested_term(n, k).unwrap());
            }
        }
    }
}
