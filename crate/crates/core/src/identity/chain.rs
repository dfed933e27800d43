use std::time::Instant;

use super::sides::{
    compact_sides, k_range, lemma1_factored, lemma1_lhs, lemma1_rhs, nested_term, poch, qq, raw_rhs, sign, theorem_lhs,
};
use super::{check_n, IdentityError, VerificationReport};
use crate::exact::{LaurentPoly, RationalFunctionQ};
use crate::exec::Exec;
use crate::qseries::{
    binom2, euler_series, qbinom_series, rewrite_sides, series_coeff, sum_terms, telescoping_product, QTerm,
};

type Report = VerificationReport;

fn rf(num: LaurentPoly, den: LaurentPoly) -> RationalFunctionQ {
    RationalFunctionQ::new(num, den).expect("nonzero denominator")
}

fn signed(e: i64, p: LaurentPoly) -> LaurentPoly {
    if sign(e) == 1 {
        p
    } else {
        -p
    }
}

/// Multiplies by `1 - q^n`: identities with that pole are compared cleared.
fn cleared(v: &RationalFunctionQ, n: i64) -> RationalFunctionQ {
    v.mul_poly(&LaurentPoly::one_minus(1, n))
}

/// `prod_{i=lo}^{hi} (q^i - 1)` by direct expansion. An upper index one below
/// the lower one is the empty product; anything lower is a structural error.
fn q_minus_one_product(lo: i64, hi: i64) -> LaurentPoly {
    assert!(hi >= lo - 1, "malformed product range {lo}..={hi}");
    (lo..=hi).fold(LaurentPoly::one(), |acc, i| &acc * &(&LaurentPoly::q_pow(i) - &LaurentPoly::one()))
}

fn mono(e: i64) -> RationalFunctionQ {
    RationalFunctionQ::from_poly(LaurentPoly::q_pow(e))
}

fn triples(n: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (0..=n).flat_map(move |k| (0..=n).flat_map(move |m| (0..=n - k.max(m)).map(move |l| (k, m, l))))
}

/// Each factor of the raw sum against its Pochhammer form (rows quantified
/// over every admissible index), then the two normalizations leading to the
/// compact triple sum.
pub fn simplification_chain(n: i64) -> Result<Vec<Report>, IdentityError> {
    check_n(n)?;
    let mut out = Vec::new();
    let pairs: Vec<(i64, i64)> = (0..=n).flat_map(|k| (0..=n).map(move |m| (k, m))).collect();

    let t = Instant::now();
    out.push(Report::compare("row-1-half-power", n, None, mono(n * (n - 1) / 2), mono(binom2(n)), t));

    let t = Instant::now();
    let direct = (1..n).fold(LaurentPoly::one(), |acc, i| &acc * &(&LaurentPoly::q_pow(n) - &LaurentPoly::q_pow(i)));
    let pochform = signed(n - 1, qq(n - 1).shift(binom2(n)));
    out.push(Report::compare("row-2-vandermonde-product", n, None, direct, pochform, t));

    let t = Instant::now();
    let (l, r): (Vec<_>, Vec<_>) = pairs
        .iter()
        .map(|&(k, m)| {
            (
                mono(k * n + (n - k) * m + k * (k - 1) / 2 + m * (m - 1) / 2),
                mono(n * (k + m) - k * m + binom2(k) + binom2(m)),
            )
        })
        .unzip();
    out.push(Report::compare("row-3-outer-power", n, None, l, r, t));

    let t = Instant::now();
    let (l, r): (Vec<_>, Vec<_>) = pairs
        .iter()
        .map(|&(k, m)| {
            let direct = rf(LaurentPoly::one(), &q_minus_one_product(1, k) * &q_minus_one_product(1, m));
            (direct, rf(signed(k + m, LaurentPoly::one()), &qq(k) * &qq(m)))
        })
        .unzip();
    out.push(Report::compare("row-4-outer-denominator", n, None, l, r, t));

    let t = Instant::now();
    let (l, r): (Vec<_>, Vec<_>) = (0..=n).map(|l| (mono(l * (l - 1) / 2), mono(binom2(l)))).unzip();
    out.push(Report::compare("row-5-inner-power", n, None, l, r, t));

    let t = Instant::now();
    let (l, r): (Vec<_>, Vec<_>) = triples(n)
        .map(|(k, m, l)| {
            let top = 3 * n - k - l - m - 1;
            let direct = RationalFunctionQ::from_poly(q_minus_one_product(l + 1, top));
            (direct, rf(signed(n + k + m + 1, qq(top)), qq(l)))
        })
        .unzip();
    out.push(Report::compare("row-6-long-product", n, None, l, r, t));

    for (label, first) in [("row-7-k-tail-product", true), ("row-8-m-tail-product", false)] {
        let t = Instant::now();
        let (l, r): (Vec<_>, Vec<_>) = triples(n)
            .map(|(k, m, l)| {
                let j = if first { k } else { m };
                let direct = RationalFunctionQ::from_poly(q_minus_one_product(n - j - l + 1, n));
                (direct, rf(signed(j + l, qq(n)), qq(n - j - l)))
            })
            .unzip();
        out.push(Report::compare(label, n, None, l, r, t));
    }

    // Both sides after substituting every row.
    let t = Instant::now();
    let raw = raw_rhs(n)?;
    let substituted: Vec<QTerm> = triples(n)
        .map(|(k, m, l)| {
            QTerm::sign_power(k + m)
                .times_q(n * (k + m) - k * m + binom2(k) + binom2(m) - 3 * n * n)
                .over_qq(k as u32)
                .over_qq(m as u32)
                .times_sign_power(l)
                .times_q(binom2(l))
                .times_sign_power(n + k + m + 1)
                .times_qq((3 * n - k - l - m - 1) as u32)
                .over_qq(l as u32)
                .times_sign_power(k + l)
                .times_qq(n as u32)
                .over_qq((n - k - l) as u32)
                .times_sign_power(m + l)
                .times_qq(n as u32)
                .over_qq((n - m - l) as u32)
        })
        .collect();
    let substituted = sum_terms(&substituted, Exec::default());
    out.push(Report::compare("substituted-sum", n, None, raw.clone(), substituted.clone(), t));

    let t = Instant::now();
    let simplified_lhs = signed(n - 1, qq(n - 1).shift(2 * binom2(n)));
    out.push(Report::compare("substituted-identity", n, None, simplified_lhs, substituted, t));

    // Multiply by q^(3n^2) and divide by (-1)^(n-1) (q;q)_n.
    let t = Instant::now();
    let normalized = raw.mul_poly(&LaurentPoly::q_pow(3 * n * n)).div_poly(&signed(n - 1, qq(n)))?;
    let mut nested = RationalFunctionQ::zero();
    for k in 0..=n {
        for m in 0..=n {
            let outer = QTerm::sign_power(k + m)
                .times_q(n * (k + m) - k * m + binom2(k) + binom2(m))
                .over_qq(k as u32)
                .over_qq(m as u32)
                .to_rational();
            let inner: Vec<QTerm> = (0..=n - k.max(m))
                .map(|l| {
                    QTerm::sign_power(l)
                        .times_q(binom2(l))
                        .times_qq((3 * n - k - l - m - 1) as u32)
                        .over_qq(l as u32)
                        .times_qq(n as u32)
                        .over_qq((n - k - l) as u32)
                        .over_qq((n - m - l) as u32)
                })
                .collect();
            nested = &nested + &(&outer * &sum_terms(&inner, Exec::Sequential));
        }
    }
    out.push(Report::compare("normalized-sum", n, None, normalized, nested.clone(), t));

    let t = Instant::now();
    let lhs = rf(LaurentPoly::q_pow(3 * n * n + 2 * binom2(n)), LaurentPoly::one_minus(1, n));
    out.push(Report::compare("normalized-identity", n, None, cleared(&lhs, n), cleared(&nested, n), t));

    let t = Instant::now();
    out.push(Report::compare("exponent", n, None, 3 * n * n + 2 * binom2(n), 4 * n * n - n, t));

    let t = Instant::now();
    let (_, flat) = compact_sides(n)?;
    out.push(Report::compare("triple-sum", n, None, nested, flat, t));
    Ok(out)
}

/// Every rewrite taking the inner `(m, l)` sum at fixed `k` to its product
/// form, including the series step that reads the sum off as a coefficient.
pub fn lemma1_chain(n: i64, k: i64) -> Result<Vec<Report>, IdentityError> {
    k_range(n, k)?;
    let kk = Some(k);
    let mut out = Vec::new();
    let instances: Vec<(i64, i64)> = (0..=n).flat_map(|m| (0..=k.min(n - m)).map(move |l| (m, l))).collect();

    let mut rewrites: [(Vec<RationalFunctionQ>, Vec<RationalFunctionQ>); 2] = Default::default();
    let t = Instant::now();
    for &(m, l) in &instances {
        let [a, b, _] = rewrite_sides(n, k, m, l)?;
        rewrites[0].0.push(a.0);
        rewrites[0].1.push(a.1);
        rewrites[1].0.push(b.0);
        rewrites[1].1.push(b.1);
    }
    let [(l0, r0), (l1, r1)] = rewrites;
    out.push(Report::compare("ratio-rewrite", n, kk, l0, r0, t));

    let t = Instant::now();
    let lhs = lemma1_lhs(n, k);
    let negative_base: Vec<QTerm> = instances
        .iter()
        .map(|&(m, l)| {
            QTerm::sign_power(m)
                .times_q(k * (m + l) + binom2(m))
                .times_poch(-k, l as u32)
                .times_poch(k + 1, (2 * n - l - m - 1) as u32)
                .over_qq(m as u32)
                .over_qq(l as u32)
                .over_qq((n - m - l) as u32)
        })
        .collect();
    let negative_base = sum_terms(&negative_base, Exec::Sequential).mul_poly(&qq(n));
    out.push(Report::compare("negative-base-form", n, kk, lhs.clone(), negative_base.clone(), t));

    out.push(Report::compare("poch-split", n, kk, l1, r1, Instant::now()));

    let t = Instant::now();
    let factored = lemma1_factored(n, k, |m| k.min(n - m));
    out.push(Report::compare("factored-form", n, kk, negative_base, factored.clone(), t));

    let t = Instant::now();
    let extended = lemma1_factored(n, k, |m| n - m);
    out.push(Report::compare("extend-range", n, kk, factored, extended.clone(), t));

    let t = Instant::now();
    let order = n as usize;
    let product = telescoping_product(k, n, order);
    let target = euler_series(k + n, order);
    out.push(Report::compare("telescoping", n, kk, product.clone(), target.clone(), t));

    let t = Instant::now();
    let prefactor = &qq(n) * &poch(k + 1, n - 1);
    let from_series = series_coeff(&product, order)?.mul_poly(&prefactor);
    out.push(Report::compare("series-coefficient", n, kk, extended, from_series, t));

    let t = Instant::now();
    let closed = QTerm::sign_power(n).times_q((k + n) * n + binom2(n)).over_qq(n as u32).to_rational();
    out.push(Report::compare("euler-coefficient", n, kk, series_coeff(&target, order)?, closed, t));

    let t = Instant::now();
    out.push(Report::compare("inner-sum", n, kk, lhs, lemma1_rhs(n, k), t));
    Ok(out)
}

/// The eight steps from the compact identity to its closed form:
/// k-outer nesting, reindexing, lemma substitution, rescaling, Pochhammer
/// rewrite, coefficient extraction, series product and the final match.
pub fn conclusion_chain(n: i64) -> Result<Vec<Report>, IdentityError> {
    check_n(n)?;
    let mut out = Vec::new();

    let t = Instant::now();
    let (_, flat) = compact_sides(n)?;
    let nested: Vec<RationalFunctionQ> = (0..=n).map(|k| nested_term(n, k)).collect::<Result<_, _>>()?;
    let nested_sum: RationalFunctionQ = nested.into_iter().sum();
    out.push(Report::compare("a-k-outer-nesting", n, None, flat, nested_sum.clone(), t));

    let t = Instant::now();
    let outer_rev =
        |k: i64| QTerm::sign_power(n - k).times_q((n - k) * n + binom2(n - k)).over_qq((n - k) as u32).to_rational();
    let reindexed: RationalFunctionQ = (0..=n).map(|k| &outer_rev(k) * &lemma1_lhs(n, k)).sum();
    out.push(Report::compare("b-reindex", n, None, nested_sum, reindexed.clone(), t));

    let t = Instant::now();
    let plugged: RationalFunctionQ = (0..=n).map(|k| &outer_rev(k) * &lemma1_rhs(n, k)).sum();
    out.push(Report::compare("c-substitute-inner", n, None, reindexed, plugged.clone(), t));

    let t = Instant::now();
    let rescaled = plugged.div_poly(&LaurentPoly::q_pow(2 * n * n + binom2(n)))?;
    let divided: RationalFunctionQ = (0..=n)
        .map(|k| {
            QTerm::sign_power(k)
                .times_q(binom2(n - k))
                .over_qq((n - k) as u32)
                .to_rational()
                .mul_poly(&poch(k + 1, n - 1))
        })
        .sum();
    out.push(Report::compare("d-rescale", n, None, rescaled, divided.clone(), t));

    let t = Instant::now();
    let k_sum: RationalFunctionQ = (0..=n)
        .map(|k| {
            QTerm::sign_power(k)
                .times_poch(n, k as u32)
                .over_qq(k as u32)
                .times_q(binom2(n - k))
                .over_qq((n - k) as u32)
                .to_rational()
        })
        .sum();
    out.push(Report::compare("e-poch-rewrite", n, None, divided, k_sum.mul_poly(&qq(n - 1)), t));

    let t = Instant::now();
    let order = n as usize;
    let a =
        qbinom_series(n, order).substitute_scaled(true, 0).cauchy(&euler_series(0, order).substitute_scaled(true, 0));
    out.push(Report::compare("f-coefficient", n, None, k_sum, series_coeff(&a, order)?, t));

    let t = Instant::now();
    let shifted = euler_series(n, order).substitute_scaled(true, 0);
    out.push(Report::compare("g-series-product", n, None, a, shifted.clone(), t));

    let t = Instant::now();
    let lhs = series_coeff(&shifted, order)?.mul_poly(&qq(n - 1));
    let rhs = rf(LaurentPoly::q_pow(2 * n * n - n - binom2(n)), LaurentPoly::one_minus(1, n));
    out.push(Report::compare("h-closed-form", n, None, cleared(&lhs, n), cleared(&rhs, n), t));
    Ok(out)
}

/// The main identity: closed product against the raw double sum.
pub fn verify_main(n: i64) -> Result<Report, IdentityError> {
    let t = Instant::now();
    let lhs = theorem_lhs(n)?;
    let rhs = raw_rhs(n)?;
    Ok(Report::compare("main", n, None, lhs, rhs, t))
}

pub fn verify_lemma1(n: i64, k: i64) -> Result<Report, IdentityError> {
    k_range(n, k)?;
    let t = Instant::now();
    Ok(Report::compare("inner-sum", n, Some(k), lemma1_lhs(n, k), lemma1_rhs(n, k), t))
}
