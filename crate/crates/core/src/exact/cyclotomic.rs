use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (ascending) of the `d`-th cyclotomic polynomial.
///
/// Computed from `q^d - 1 = prod_{e | d} Phi_e` and memoised process-wide.
pub fn cyclotomic(d: u32) -> Arc<Vec<i64>> {
    assert!(d >= 1, "cyclotomic index starts at 1");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&d) {
        return Arc::clone(hit);
    }
    // q^d - 1, divided by every proper-divisor factor.
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = div_monic_i64(&p, &cyclotomic(e));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(d, Arc::clone(&p));
    p
}

fn div_monic_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + b.len() - 1];
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Euler's totient, used to bound the degrees of candidate factors.
pub(crate) fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
