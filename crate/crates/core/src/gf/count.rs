use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{feasible, GFMatrix, GFq, GfError};
use crate::exec::Exec;

const CHUNKS: u64 = 256;

/// Base-`q` odometer over matrix entries, least significant digit last.
struct Odometer {
    digits: Vec<u8>,
    q: u8,
}

impl Odometer {
    fn at(q: u32, len: usize, mut index: u64) -> Self {
        let mut digits = vec![0u8; len];
        for d in digits.iter_mut().rev() {
            *d = (index % q as u64) as u8;
            index /= q as u64;
        }
        Odometer { digits, q: q as u8 }
    }

    fn step(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
    }
}

fn big_pow(q: u32, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), e)
}

/// Histogram of ranks over all `s x t` matrices.
pub fn rank_histogram(field: &GFq, s: usize, t: usize, limit: u64, exec: Exec) -> Result<Vec<u64>, GfError> {
    let total = feasible(field.order(), (s * t) as u32, limit)?;
    let bins = s.min(t) + 1;
    Ok(exec.fold_chunks(
        0..total,
        CHUNKS,
        || vec![0u64; bins],
        |mut acc, range| {
            let mut odo = Odometer::at(field.order(), s * t, range.start);
            for _ in range {
                let m = GFMatrix::new(field, s, t, odo.digits.clone()).expect("in-range digits");
                acc[m.rank(field)] += 1;
                odo.step();
            }
            acc
        },
        |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
    ))
}

/// Counts indexed `[rank][trace]` over all square matrices of order `size`.
pub fn rank_trace_histogram(field: &GFq, size: usize, limit: u64, exec: Exec) -> Result<Vec<Vec<u64>>, GfError> {
    let total = feasible(field.order(), (size * size) as u32, limit)?;
    let q = field.order() as usize;
    Ok(exec.fold_chunks(
        0..total,
        CHUNKS,
        || vec![vec![0u64; q]; size + 1],
        |mut acc, range| {
            let mut odo = Odometer::at(field.order(), size * size, range.start);
            for _ in range {
                let m = GFMatrix::new(field, size, size, odo.digits.clone()).expect("in-range digits");
                acc[m.rank(field)][m.trace(field).unwrap() as usize] += 1;
                odo.step();
            }
            acc
        },
        |a, b| a.iter().zip(&b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect(),
    ))
}

/// Number of `s x t` matrices of rank `k`:
/// `prod_{i<k} (q^s - q^i)(q^t - q^i) / (q^k - q^i)`.
pub fn landsberg_formula(s: usize, t: usize, k: usize, q: u32) -> BigInt {
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..k {
        num *= (big_pow(q, s) - big_pow(q, i)) * (big_pow(q, t) - big_pow(q, i));
        den *= big_pow(q, k) - big_pow(q, i);
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// Number of `m`-dimensional subspaces of `F_q^n`.
pub fn grassmann_formula(n: usize, m: usize, q: u32) -> BigInt {
    assert!(m <= n, "subspace dimension {m} exceeds ambient {n}");
    let prod = |lo: usize, hi: usize| (lo..=hi).fold(BigInt::one(), |acc, i| acc * (big_pow(q, i) - 1));
    let (quot, rem) = prod(1, n).div_rem(&(prod(1, m) * prod(1, n - m)));
    debug_assert!(rem.is_zero());
    quot
}

/// `(-1)^(k-1) q^(k(k-1)/2) |Gr(m+k, m)|`.
pub fn prasad_formula(m: usize, k: usize, q: u32) -> BigInt {
    let v = big_pow(q, k * k.saturating_sub(1) / 2) * grassmann_formula(m + k, m, q);
    if k % 2 == 1 {
        v
    } else {
        -v
    }
}

/// `(enumerated, formula)` counts of `s x t` matrices of rank `k`.
pub fn count_rect_by_rank(
    field: &GFq,
    s: usize,
    t: usize,
    k: usize,
    limit: u64,
    exec: Exec,
) -> Result<(BigInt, BigInt), GfError> {
    if k > s.min(t) {
        return Err(GfError::Bounds(format!("rank {k} exceeds min({s}, {t})")));
    }
    let hist = rank_histogram(field, s, t, limit, exec)?;
    Ok((BigInt::from(hist[k]), landsberg_formula(s, t, k, field.order())))
}

/// Number of square matrices of order `size` with rank `k` and trace `alpha`.
pub fn count_square_by_rank_trace(
    field: &GFq,
    size: usize,
    k: usize,
    alpha: u8,
    limit: u64,
    exec: Exec,
) -> Result<BigInt, GfError> {
    if k > size || alpha as u32 >= field.order() {
        return Err(GfError::Bounds(format!("rank {k} of order {size}, trace {alpha} in GF({})", field.order())));
    }
    Ok(BigInt::from(rank_trace_histogram(field, size, limit, exec)?[k][alpha as usize]))
}

/// `(Y^1 - Y^0 enumerated, formula)` for square matrices of order `m + k` and
/// rank `k`. Fails unless every nonzero trace class has the same count.
pub fn prasad_delta(field: &GFq, m: usize, k: usize, limit: u64, exec: Exec) -> Result<(BigInt, BigInt), GfError> {
    let hist = rank_trace_histogram(field, m + k, limit, exec)?;
    let by_trace = &hist[k];
    if by_trace[1..].iter().any(|&c| c != by_trace[1]) {
        return Err(GfError::NonConstantTrace(by_trace.clone()));
    }
    let delta = BigInt::from(by_trace[1]) - BigInt::from(by_trace[0]);
    Ok((delta, prasad_formula(m, k, field.order())))
}

/// `(enumerated, formula)` number of `m`-dimensional subspaces of `F_q^n`.
///
/// Enumeration generates every reduced row-echelon `m x n` matrix of full
/// rank, pivot pattern by pivot pattern, and confirms each is its own
/// canonical form; each subspace has exactly one such basis.
pub fn grassmann_count(field: &GFq, n: usize, m: usize, limit: u64) -> Result<(BigInt, BigInt), GfError> {
    if m > n {
        return Err(GfError::Bounds(format!("subspace dimension {m} exceeds ambient {n}")));
    }
    let formula = grassmann_formula(n, m, field.order());
    if formula > BigInt::from(limit) {
        return Err(GfError::Infeasible { q: field.order(), exponent: (m * (n - m)) as u32, limit });
    }
    let mut count = 0u64;
    for pivots in combinations(n, m) {
        let free: Vec<(usize, usize)> =
            (0..m).flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c))).collect();
        let mut odo = Odometer::at(field.order(), free.len(), 0);
        for _ in 0..(field.order() as u64).pow(free.len() as u32) {
            let mut b = GFMatrix::zeros(m, n);
            for (r, &c) in pivots.iter().enumerate() {
                b.set(r, c, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&odo.digits) {
                b.set(r, c, v);
            }
            if b.rank(field) == m && b.rref(field) == b {
                count += 1;
            }
            odo.step();
        }
    }
    Ok((BigInt::from(count), formula))
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Enumerated count against its closed formula.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub count: &'static str,
    pub params: BTreeMap<&'static str, i64>,
    pub enumerated: String,
    pub formula: String,
    pub equal: bool,
}

impl CountReport {
    pub fn new(count: &'static str, params: &[(&'static str, i64)], enumerated: &BigInt, formula: &BigInt) -> Self {
        CountReport {
            count,
            params: params.iter().copied().collect(),
            enumerated: enumerated.to_string(),
            formula: formula.to_string(),
            equal: enumerated == formula,
        }
    }
}
