// Dense polynomial kernels over Z. A polynomial is a coefficient vector in
// ascending exponent order with no trailing zeros; the zero polynomial is empty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// In-place multiplication by `1 - q^shift` (`shift >= 1`).
pub(crate) fn mul_one_minus_q_pow(p: &mut Vec<BigInt>, shift: usize) {
    if p.is_empty() {
        return;
    }
    let old_len = p.len();
    p.resize(old_len + shift, BigInt::zero());
    for i in (shift..old_len + shift).rev() {
        let (lo, hi) = p.split_at_mut(i);
        hi[0] -= &lo[i - shift];
    }
    trim(p);
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn div_scalar_exact(p: &mut [BigInt], c: &BigInt) {
    if c.is_one() {
        return;
    }
    for x in p.iter_mut() {
        *x /= c;
    }
}

/// Primitive part with a positive leading coefficient.
pub(crate) fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = p.to_vec();
    let c = content(&out);
    if !c.is_zero() {
        div_scalar_exact(&mut out, &c);
    }
    if out.last().is_some_and(Signed::is_negative) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// Quotient `a / b` when `b` divides `a` exactly over Z, otherwise `None`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lead = b.last().unwrap();
    let mut rem = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[i + j] -= &c * bj;
            }
        }
        quot[i] = c;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    while rem.len() > db && !rem.is_empty() {
        let shift = rem.len() - 1 - db;
        let top = rem.last().unwrap().clone();
        for x in rem.iter_mut() {
            *x *= &lead;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &top * bj;
        }
        trim(&mut rem);
    }
    rem
}

/// Greatest common divisor over Q, returned as a primitive integer polynomial
/// with positive leading coefficient (primitive Euclidean remainder sequence).
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut x, mut y) = if a.len() >= b.len() { (primitive(a), primitive(b)) } else { (primitive(b), primitive(a)) };
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    x
}

/// Monic divisor with machine-sized coefficients (used for cyclotomic factors).
pub(crate) fn div_monic_small(a: &[BigInt], b: &[i64]) -> Option<Vec<BigInt>> {
    debug_assert_eq!(b.last(), Some(&1));
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut rem = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = std::mem::take(&mut rem[i + b.len() - 1]);
        if c.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(b.len() - 1) {
            if bj != 0 {
                rem[i + j] -= &c * bj;
            }
        }
        quot[i] = c;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

pub(crate) const FINGERPRINT_PRIME: u64 = (1 << 61) - 1;

pub(crate) fn residues(p: &[BigInt]) -> Vec<u64> {
    let m = BigInt::from(FINGERPRINT_PRIME);
    p.iter()
        .map(|c| {
            let r = c.mod_floor(&m);
            u64::try_from(r).expect("residue fits")
        })
        .collect()
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FINGERPRINT_PRIME as u128) as u64
}

/// Whether the monic `b` divides `a` modulo the fingerprint prime. A `false`
/// answer proves non-divisibility over Z.
pub(crate) fn divides_mod_p(a: &[u64], b: &[i64]) -> bool {
    if a.len() < b.len() {
        return a.iter().all(|&x| x == 0);
    }
    let p = FINGERPRINT_PRIME;
    let bm: Vec<u64> = b.iter().map(|&x| if x >= 0 { x as u64 % p } else { p - ((-x) as u64 % p) }).collect();
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    for i in (db..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        let base = i - db;
        for (j, &bj) in bm.iter().enumerate().take(db) {
            if bj != 0 {
                let t = mulmod(c, bj);
                rem[base + j] = (rem[base + j] + p - t) % p;
            }
        }
        rem[i] = 0;
    }
    rem[..db].iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn binomial_multiplication_matches_schoolbook() {
        let mut a = p(&[3, -1, 4]);
        mul_one_minus_q_pow(&mut a, 2);
        assert_eq!(a, mul(&p(&[3, -1, 4]), &p(&[1, 0, -1])));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = p(&[1, 0, -1]);
        assert_eq!(div_exact(&a, &p(&[1, -1])), Some(p(&[1, 1])));
        assert_eq!(div_exact(&a, &p(&[2, 1])), None);
        assert_eq!(div_exact(&p(&[1, -1]), &p(&[2])), None);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (1+q)(2-q) and (1+q)(3+q^2)
        let a = mul(&p(&[1, 1]), &p(&[2, -1]));
        let b = mul(&p(&[1, 1]), &p(&[3, 0, 1]));
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
        assert_eq!(gcd(&p(&[2, 4]), &p(&[3])), p(&[1]));
    }

    #[test]
    fn fingerprint_division() {
        let a = mul(&p(&[1, 1, 1]), &p(&[5, -7, 2]));
        assert!(divides_mod_p(&residues(&a), &[1, 1, 1]));
        assert!(!divides_mod_p(&residues(&a), &[1, 1]));
        assert_eq!(div_monic_small(&a, &[1, 1, 1]), Some(p(&[5, -7, 2])));
    }
}
